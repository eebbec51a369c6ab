import itertools

import pytest
import numpy as np

from pyselfdual.gf2core import BitMatrix, BitVector
from pyselfdual.gammatree import (
    ONE_SIDE,
    Node,
    PartitionTree,
    block_sorted,
    block_sorted_rows,
    build_tree,
    leaves,
    reconstruct,
    refine,
    render_tree,
)

from conftest import gamma_example, random_sorted_matrices


def test_example_tree(gamma_example):
    T = build_tree(gamma_example)
    assert T.k == 6
    assert T.levels[0][0].columns == (0, 1, 2, 3, 4, 5)
    assert [node.columns for node in T.levels[1]] == [(0, 1, 2, 3, 4), (5,)]

    found = sorted(sorted(j + 1 for j in leaf) for leaf in leaves(T))
    error_msg = "FAILED! leaves are {}".format(found)
    assert found == [[1], [2, 3], [4], [5], [6]], error_msg


def test_small_trees():
    T = build_tree(BitMatrix.from_strings(["110"]))
    assert leaves(T) == [[0, 1], [2]]

    assert len(leaves(build_tree(BitMatrix.identity(3)))) == 3
    assert leaves(build_tree(BitMatrix.from_strings(["1111", "1111"]))) == [[0, 1, 2, 3]]


def test_unsorted_rows_rejected():
    with pytest.raises(ValueError):
        build_tree(BitMatrix.from_strings(["100", "110"]))
    T = build_tree(BitMatrix.from_strings(["100", "110"]), require_sorted=False)
    assert T.k == 2


def test_reconstruct_example(gamma_example):
    T = build_tree(gamma_example)
    assert reconstruct(T) == gamma_example
    assert reconstruct(T, k=6) == gamma_example
    with pytest.raises(ValueError):
        reconstruct(T, k=5)


def test_reconstruct_round_trip(random_sorted_matrices):
    failures = 0
    for A in random_sorted_matrices:
        T = build_tree(A)
        if reconstruct(T, k=A.row_count) != A:
            failures += 1
        assert len(leaves(T)) <= A.col_count
    error_msg = "FAILED! {} of {} matrices did not round-trip".format(failures, len(random_sorted_matrices))
    assert failures == 0, error_msg


def test_leaves_group_identical_columns(random_sorted_matrices):
    for A in random_sorted_matrices[:200]:
        columns = A.columns()
        for leaf in leaves(build_tree(A)):
            assert len(set(columns[j] for j in leaf)) == 1
        assert len(leaves(build_tree(A))) == len(set(columns))


def test_reconstruct_rejects_missing_column():
    root = Node((0, 1, 2, 3), None, None)
    level = [Node((0, 1), 0, ONE_SIDE), Node((2,), 0, 0)]
    T = PartitionTree(4, [[root], level])
    with pytest.raises(ValueError) as info:
        reconstruct(T)
    assert "[4]" in str(info.value)


def test_reconstruct_depth_zero():
    T = build_tree(BitMatrix([], 4))
    M = reconstruct(T, k=0)
    assert M.row_count == 0 and M.col_count == 4


def test_block_sorted():
    partition = [(0, 1, 2), (3, 4, 5)]
    assert block_sorted(partition, BitVector.from_string("110100"))
    assert not block_sorted(partition, BitVector.from_string("101100"))
    assert block_sorted([tuple(range(6))], BitVector.from_string("111000"))

    with pytest.raises(ValueError):
        block_sorted([(0, 1)], BitVector.from_string("110"))


def test_block_sorted_rows():
    rows = list(block_sorted_rows([(0, 1, 2), (3, 4)], 2, 5))
    strings = [str(BitVector(row, 5)) for row in rows]
    assert strings == ["11000", "10010", "00011"]
    assert strings == sorted(strings, reverse=True)

    assert list(block_sorted_rows([(0, 1)], 3, 2)) == []


def test_refine():
    assert refine([(0, 1, 2, 3)], 0b1010, 4) == ((0, 2), (1, 3))
    assert refine([(0, 1), (2, 3)], 0b1100, 4) == ((0, 1), (2, 3))


def test_block_sorting_is_sound():
    # every rejected row is the image of an accepted one under a column
    # permutation that leaves the partial matrix unchanged
    rng = np.random.default_rng(3)
    for width in range(1, 7):
        for _ in range(10):
            k = int(rng.integers(1, 4))
            A = BitMatrix.from_array(rng.integers(0, 2, size=(k, width)))
            partition = build_tree(A, require_sorted=False).partition()
            for weight in range(width + 1):
                accepted = set(block_sorted_rows(partition, weight, width))
                for ones in itertools.combinations(range(width), weight):
                    row = sum(1 << (width - 1 - j) for j in ones)
                    candidate = BitVector(row, width)
                    assert block_sorted(partition, candidate) == (row in accepted)
                    perm = list(range(width))
                    for block in partition:
                        block = sorted(block)
                        order = sorted(block, key=lambda j: -candidate[j])
                        for target, source in zip(block, order):
                            perm[target] = source
                    assert A.permute_columns(perm) == A
                    image = BitMatrix([row], width).permute_columns(perm).rows[0]
                    assert image in accepted


def test_render_tree(gamma_example):
    text = render_tree(build_tree(gamma_example))
    lines = text.splitlines()
    assert lines[0] == "{1,2,3,4,5,6}"
    assert lines[1] == "  {1,2,3,4,5} (1-side)"
    assert lines[2] == "  {6} (0-side)"
    assert lines[-1] == "leaves: {1} {2,3} {4} {5} {6}"
