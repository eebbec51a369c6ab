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
This PySelfDual module decides permutation equivalence of binary codes and
removes equivalent duplicates from search output:

- `pyselfdual.equivalence.signature` computes a permutation-invariant
  signature whose last field is a canonical generator matrix
- `pyselfdual.equivalence.are_equivalent` screens on cheap invariants and
  then compares canonical forms
- `pyselfdual.equivalence.dedupe` keeps one code per signature

The canonical form is found by partition refinement and backtracking over
column orderings. Columns are coloured by a pair invariant: for every weight
class of codewords, the number of codewords of that weight with a 1 in both
columns. An ordered partition of the columns is refined until it is
equitable with respect to these colours; the search then individualises one
column of the first non-trivial cell and refines again. Every leaf is a
column ordering; its certificate is the reduced row-echelon form of the
permuted generator. The canonical leaf minimises the pair (refinement trace,
certificate). Automorphisms found on the way prune branches that lie in the
same orbit.
"""

# -*- coding: utf-8 -*-
import warnings
from collections import namedtuple

import numpy as np

from .codemodel import LinearCode, weight_enumerator
from .gf2core import BitMatrix, permute_word, rref, span_words

MAX_SIGNATURE_DIMENSION = 20
DEFAULT_MAX_NODES = 100000

CodeSignature = namedtuple(
    "CodeSignature", ["n", "k", "enumerator", "column_invariants", "fingerprint"]
)
CodeSignature.__doc__ = """
Permutation-invariant signature of a code.

Args:
    n : int
        length
    k : int
        dimension
    enumerator : tuple of int
        weight enumerator
    column_invariants : tuple of tuples
        sorted per-column counts of codewords of each weight covering the column
    fingerprint : bytes
        canonical generator matrix, one big-endian row after the other
"""


class CanonicalBudgetExceeded(RuntimeError):
    """ The backtracking search for a canonical form ran out of nodes """

    def __init__(self, nodes):
        super(CanonicalBudgetExceeded, self).__init__(
            "canonical form search exceeded {} nodes".format(nodes)
        )
        self.nodes = nodes


def _incidence(C):
    """ 0/1 matrix of all codewords (rows) against columns """
    words = span_words(C.rows, C.n)
    shifts = np.arange(C.n - 1, -1, -1)
    if words.dtype == object:
        X = np.array([[(int(w) >> int(s)) & 1 for s in shifts] for w in words], dtype=np.int64)
    else:
        X = ((words[:, None] >> shifts.astype(np.uint64)) & np.uint64(1)).astype(np.int64)
    return X


def _pair_colours(C):
    """
    Colour matrix P of shape (n, n): P[i, j] encodes, for every nonzero
    codeword weight, the number of codewords of that weight with a 1 in
    column i and in column j. Colours are numbered in sorted order of these
    count vectors, so equivalent codes get identical numbering.

    Returns:
        P : 2D numpy int array
        profiles : list of tuple
            P-count vectors on the diagonal, one per column
    """
    X = _incidence(C)
    weights = X.sum(axis=1)
    classes = [w for w in np.unique(weights) if w > 0]
    n = C.n
    if not classes:
        return np.zeros((n, n), dtype=np.int64), [() for _ in range(n)]
    stack = []
    for w in classes:
        Xw = X[weights == w]
        stack.append(Xw.T @ Xw)
    M = np.stack(stack, axis=-1)
    flat = M.reshape(n * n, len(classes))
    _, inverse = np.unique(flat, axis=0, return_inverse=True)
    P = np.asarray(inverse).reshape(n, n)
    profiles = [tuple(int(v) for v in M[i, i]) for i in range(n)]
    return P, profiles


def _refine(P, cells):
    """
    Refine an ordered partition until it is equitable under P.

    Returns:
        cells : list of lists
        trace : tuple
            the sequence of splits, which only depends on positions and colours
    """
    cells = [list(cell) for cell in cells]
    trace = []
    split = True
    while split:
        split = False
        for a in range(len(cells)):
            counts = np.sort(P[:, cells[a]], axis=1)
            refined = []
            for b, cell in enumerate(cells):
                if len(cell) == 1:
                    refined.append(cell)
                    continue
                groups = {}
                for v in cell:
                    groups.setdefault(tuple(counts[v].tolist()), []).append(v)
                if len(groups) == 1:
                    refined.append(cell)
                    continue
                keys = sorted(groups)
                trace.append((a, b, tuple((key, len(groups[key])) for key in keys)))
                refined.extend(groups[key] for key in keys)
                split = True
            if split:
                cells = refined
                break
    return cells, tuple(trace)


class _CanonicalSearch(object):
    """
    Backtracking over individualisations. `best` holds the smallest
    (trace, certificate) seen with its column ordering.
    """

    def __init__(self, C, max_nodes):
        self.code = C
        self.max_nodes = max_nodes
        self.P, self.profiles = _pair_colours(C)
        self.nodes = 0
        self.first = None
        self.best = None
        self.automorphisms = []

    def run(self):
        n = self.code.n
        order = sorted(range(n), key=lambda j: int(self.P[j, j]))
        cells = []
        for j in order:
            if cells and self.P[cells[-1][0], cells[-1][0]] == self.P[j, j]:
                cells[-1].append(j)
            else:
                cells.append([j])
        cells, trace = _refine(self.P, cells)
        self._search(cells, (trace,), ())
        return self.best

    def _certificate(self, labelling):
        n = self.code.n
        rows = [permute_word(row, labelling, n) for row in self.code.rows]
        R, rank, _ = rref(BitMatrix(rows, n))
        return R.rows[:rank]

    def _same_orbit(self, v, explored, path):
        parent = list(range(self.code.n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for sigma in self.automorphisms:
            if any(sigma[p] != p for p in path):
                continue
            for x, y in enumerate(sigma):
                rx, ry = find(x), find(y)
                if rx != ry:
                    parent[rx] = ry
        root = find(v)
        return any(find(u) == root for u in explored)

    def _leaf(self, cells, traces, path):
        labelling = [cell[0] for cell in cells]
        key = (traces, self._certificate(labelling))
        if self.first is None:
            self.first = (key, labelling, path)
            self.best = (key, labelling)
            return None
        if key == self.first[0]:
            self._record(self.first[1], labelling)
            # the whole subtree below the divergence point is an image of the first one
            common = 0
            for a, b in zip(path, self.first[2]):
                if a != b:
                    break
                common += 1
            return common
        if key < self.best[0]:
            self.best = (key, labelling)
        elif key == self.best[0]:
            self._record(self.best[1], labelling)
        return None

    def _record(self, source, target):
        sigma = [0] * len(source)
        for a, b in zip(source, target):
            sigma[a] = b
        self.automorphisms.append(tuple(sigma))

    def _search(self, cells, traces, path):
        self.nodes += 1
        if self.nodes > self.max_nodes:
            raise CanonicalBudgetExceeded(self.max_nodes)
        if self.best is not None and traces > self.best[0][0][: len(traces)]:
            return None
        target = next((i for i, cell in enumerate(cells) if len(cell) > 1), None)
        if target is None:
            return self._leaf(cells, traces, path)

        depth = len(path)
        explored = []
        for v in sorted(cells[target]):
            if explored and self._same_orbit(v, explored, path):
                continue
            explored.append(v)
            rest = [u for u in cells[target] if u != v]
            split = cells[:target] + [[v], rest] + cells[target + 1 :]
            refined, trace = _refine(self.P, split)
            jump = self._search(refined, traces + (trace,), path + (v,))
            if jump is not None and jump < depth:
                return jump
        return None


def canonical_form(C, max_nodes=DEFAULT_MAX_NODES):
    """
    Canonical representative of the permutation class of `C`.

    Args:
        C : LinearCode
        max_nodes : int
            backtracking budget

    Returns:
        canonical : LinearCode
            generated by the canonical reduced row-echelon matrix
        permutation : list of int
            column `j` of `canonical` is column `permutation[j]` of `C`
    """
    search = _run_canonical(C, max_nodes)
    (_, certificate), labelling = search.best
    return LinearCode(list(certificate), C.n), list(labelling)


def _run_canonical(C, max_nodes):
    if C.k > MAX_SIGNATURE_DIMENSION:
        raise ValueError(
            "dimension {} is over the enumeration guard {}".format(
                C.k, MAX_SIGNATURE_DIMENSION
            )
        )
    search = _CanonicalSearch(C, max_nodes)
    search.run()
    if search.nodes > max_nodes // 2:
        warnings.warn(
            "canonical form used {} of {} nodes".format(search.nodes, max_nodes),
            RuntimeWarning,
        )
    return search


def _column_invariants(C):
    _, profiles = _pair_colours(C)
    return tuple(sorted(profiles))


def signature(C, max_nodes=DEFAULT_MAX_NODES):
    """
    Permutation-invariant signature. Equal signatures mean equivalent codes.

    Returns:
        signature : CodeSignature
    """
    search = _run_canonical(C, max_nodes)
    (_, certificate), _ = search.best
    width = (C.n + 7) // 8
    fingerprint = b"".join(row.to_bytes(width, "big") for row in certificate)
    return CodeSignature(
        C.n,
        C.k,
        tuple(weight_enumerator(C)),
        tuple(sorted(search.profiles)),
        fingerprint,
    )


def are_equivalent(C1, C2, max_nodes=DEFAULT_MAX_NODES):
    """
    True iff a column permutation maps `C1` onto `C2`.

    Raises:
        ValueError : different length or dimension
        CanonicalBudgetExceeded : backtracking budget exhausted
    """
    if (C1.n, C1.k) != (C2.n, C2.k):
        raise ValueError(
            "codes have different parameters {} and {}".format((C1.n, C1.k), (C2.n, C2.k))
        )
    if weight_enumerator(C1) != weight_enumerator(C2):
        return False
    if _column_invariants(C1) != _column_invariants(C2):
        return False
    return signature(C1, max_nodes).fingerprint == signature(C2, max_nodes).fingerprint


def dedupe(codes, max_nodes=DEFAULT_MAX_NODES):
    """
    One representative per equivalence class, first-seen order.

    Args:
        codes : iterable of LinearCode
            all of the same length and dimension

    Returns:
        representatives : list of LinearCode
    """
    seen = {}
    shape = None
    for C in codes:
        if shape is None:
            shape = (C.n, C.k)
        elif (C.n, C.k) != shape:
            raise ValueError(
                "cannot dedupe codes of parameters {} and {}".format(shape, (C.n, C.k))
            )
        key = signature(C, max_nodes)
        if key not in seen:
            seen[key] = C
    return list(seen.values())
