# Copyright 2024 The PySelfDual developers
#
# This file is part of PySelfDual.
#
# PySelfDual is free software: you can redistribute it and/or modify
# it under the terms of the GNU Lesser General Public License as published by
# the Free Software Foundation, either version 3 of the License, or any later version.
#
# PySelfDual is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
# GNU Lesser General Public License for more details.
#
# You should have received a copy of the GNU Lesser General Public License
# along with PySelfDual.  If not, see <http://www.gnu.org/licenses/>.

"""
Partition tree \\( \\Gamma \\) of a binary matrix A with rows sorted by
non-increasing weight.

The root holds every column index. Each row splits every node of the previous
level into the columns where the row is 1 (the 1-side) and those where it is 0
(the 0-side); empty children are dropped. The leaves group identical columns
of A, and A can be read back from the 1-side nodes of each level.

Column indices are 0-based in the API and 1-based when rendered.

The same split step drives isomorph rejection in the search: a candidate row
is only extended when, inside every block of the current partition, its 1s
sit at the lowest positions of the block (`block_sorted`). Any other row is a
column permutation of such a row that fixes the rows already chosen.
"""

# -*- coding: utf-8 -*-
from collections import namedtuple

from .gf2core import BitMatrix

ONE_SIDE = 1
ZERO_SIDE = 0

Node = namedtuple("Node", ["columns", "parent", "side"])
Node.__doc__ = """
A node of the partition tree.

Args:
    columns : tuple of int
        sorted 0-based column indices
    parent : int or None
        index of the parent node in the previous level
    side : int or None
        1 if the node holds the ones of its level's row, 0 otherwise
"""


def _has(row, j, width):
    return (row >> (width - 1 - j)) & 1


def refine(partition, row, width):
    """
    Split every block of `partition` by the support of `row`.

    Args:
        partition : sequence of tuples
            ordered blocks of 0-based column indices
        row : int
            packed row of `width` bits

    Returns:
        partition : tuple of tuples
            1-side before 0-side for every block, empty blocks dropped
    """
    blocks = []
    for block in partition:
        ones = tuple(j for j in block if _has(row, j, width))
        zeros = tuple(j for j in block if not _has(row, j, width))
        if ones:
            blocks.append(ones)
        if zeros:
            blocks.append(zeros)
    return tuple(blocks)


class PartitionTree(object):
    """
    The tree \\( \\Gamma \\) of a k-row matrix.

    Args:
        n_columns : int
            number of columns of the matrix
        levels : list of list of Node
            level 0 holds the root, level i + 1 the split by row i

    Attributes:
        k : int
            number of rows, i.e. `len(levels) - 1`
    """

    def __init__(self, n_columns, levels):
        self.n_columns = n_columns
        self.levels = [list(level) for level in levels]

    @property
    def k(self):
        return len(self.levels) - 1

    def partition(self, level=None):
        """ the blocks of a level, by default the leaves """
        if level is None:
            level = self.k
        return tuple(node.columns for node in self.levels[level] if node.columns)

    def __eq__(self, other):
        if not isinstance(other, PartitionTree):
            return NotImplemented
        return self.n_columns == other.n_columns and self.levels == other.levels

    def __repr__(self):
        return "PartitionTree(n_columns={}, k={})".format(self.n_columns, self.k)


def build_tree(A, require_sorted=True):
    """
    Build \\( \\Gamma \\) for the matrix `A`.

    Args:
        A : BitMatrix
            rows sorted by non-increasing weight
        require_sorted : bool
            raise if the rows are not sorted

    Returns:
        tree : PartitionTree
    """
    weights = [row.bit_count() for row in A.rows]
    if require_sorted and any(a < b for a, b in zip(weights, weights[1:])):
        raise ValueError("rows must have non-increasing weight, got {}".format(weights))

    width = A.col_count
    levels = [[Node(tuple(range(width)), None, None)]]
    for row in A.rows:
        level = []
        for index, node in enumerate(levels[-1]):
            ones = tuple(j for j in node.columns if _has(row, j, width))
            zeros = tuple(j for j in node.columns if not _has(row, j, width))
            if ones:
                level.append(Node(ones, index, ONE_SIDE))
            if zeros:
                level.append(Node(zeros, index, ZERO_SIDE))
        levels.append(level)
    return PartitionTree(width, levels)


def leaves(T):
    """ nonempty nodes of the last level, as lists of column indices """
    return [list(node.columns) for node in T.levels[-1] if node.columns]


def reconstruct(T, k=None):
    """
    Recover the matrix: row i is the indicator of the union of the
    1-side nodes of level i + 1.

    Args:
        T : PartitionTree
        k : int (optional)
            expected number of rows; the tree must then have k + 1 levels

    Raises:
        ValueError : the tree is not the tree of a matrix
    """
    if len(T.levels) < 1 or len(T.levels[0]) != 1:
        raise ValueError("level 0 must hold exactly the root")
    if k is not None and len(T.levels) != k + 1:
        raise ValueError(
            "expected {} levels for {} rows, got {}".format(k + 1, k, len(T.levels))
        )
    root = set(T.levels[0][0].columns)
    if root != set(range(T.n_columns)):
        raise ValueError("the root does not hold all {} columns".format(T.n_columns))

    for depth, level in enumerate(T.levels[1:], start=1):
        covered = [j for node in level for j in node.columns]
        if sorted(covered) != sorted(root):
            missing = sorted(root - set(covered))
            raise ValueError(
                "level {} does not partition the columns, missing {}".format(
                    depth, [j + 1 for j in missing]
                )
            )
        previous = T.levels[depth - 1]
        for node in level:
            if node.parent is None or not set(node.columns) <= set(
                previous[node.parent].columns
            ):
                raise ValueError("node {} is not inside its parent".format(node.columns))

    width = T.n_columns
    rows = []
    for level in T.levels[1:]:
        row = 0
        for node in level:
            if node.side == ONE_SIDE:
                for j in node.columns:
                    row |= 1 << (width - 1 - j)
        rows.append(row)
    return BitMatrix(rows, width)


def block_sorted(partition, candidate):
    """
    True iff inside every block the ones of `candidate` occupy the lowest
    positions of the block.

    Args:
        partition : sequence of sequences of int
            blocks of 0-based column indices covering the candidate
        candidate : BitVector
    """
    width = candidate.length
    covered = sorted(j for block in partition for j in block)
    if covered != list(range(width)):
        raise ValueError("partition does not cover the {} coordinates".format(width))
    for block in partition:
        seen_zero = False
        for j in sorted(block):
            if candidate[j]:
                if seen_zero:
                    return False
            else:
                seen_zero = True
    return True


def block_sorted_rows(partition, weight, width):
    """
    All rows of the given weight that are `block_sorted` against
    `partition`, lexicographically largest first.

    Args:
        partition : sequence of tuples
            blocks of sorted 0-based column indices
        weight : int
            number of ones
        width : int
            row length

    Yields:
        row : int
    """
    blocks = [tuple(sorted(block)) for block in partition]
    prefixes = []
    for block in blocks:
        masks = [0]
        for j in block:
            masks.append(masks[-1] | (1 << (width - 1 - j)))
        prefixes.append(masks)
    capacity = [0] * (len(blocks) + 1)
    for i in range(len(blocks) - 1, -1, -1):
        capacity[i] = capacity[i + 1] + len(blocks[i])
    if weight > capacity[0]:
        return

    def fill(index, remaining, row):
        if index == len(blocks):
            if remaining == 0:
                yield row
            return
        for count in range(min(len(blocks[index]), remaining), -1, -1):
            if remaining - count > capacity[index + 1]:
                break
            yield from fill(index + 1, remaining - count, row | prefixes[index][count])

    yield from fill(0, weight, 0)


def render_tree(T):
    """
    One line per node, indented two spaces per level, 1-based indices,
    followed by the leaf partition.
    """
    lines = []
    for depth, level in enumerate(T.levels):
        for node in level:
            side = "" if node.side is None else " ({}-side)".format(node.side)
            lines.append(
                "{}{{{}}}{}".format(
                    "  " * depth, ",".join(str(j + 1) for j in node.columns), side
                )
            )
    parts = ["{" + ",".join(str(j + 1) for j in leaf) + "}" for leaf in leaves(T)]
    lines.append("leaves: " + " ".join(parts))
    return "\n".join(lines) + "\n"
