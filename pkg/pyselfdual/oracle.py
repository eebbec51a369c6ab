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
Ground truth for short self-dual codes, computed independently of the search
engine. Only the GF(2) primitives of `pyselfdual.gf2core` are shared; the
distance, the neighbor construction and the equivalence tests are separate.

Two classifications are available:

- `enumerate_all_self_dual(n)` lists every self-dual code of length
  \\( n \\le 12 \\) by its reduced row-echelon generator and groups them into
  orbits of the symmetric group. The corpus size must equal
  \\( \\prod_{i=1}^{n/2-1} (2^i + 1) \\), see `mass_formula`.
- `neighbor_closure(n)` starts from \\( i_2^{n/2} \\) and closes under the
  neighbor relation up to equivalence, for \\( n \\le 18 \\). Equivalence is
  decided by graph isomorphism (networkx VF2) of the incidence graph between
  columns and the short codewords spanning the code.

Usage:
    >>> corpus = enumerate_all_self_dual(8)
    >>> corpus.total
    135
    >>> [c.d for c in classify(corpus, d_min=4, code_type="II")]
    [4]
"""

# -*- coding: utf-8 -*-
import io
import itertools
import json
import os
from collections import deque, namedtuple

import networkx as nx
import numpy as np
from absl import logging
from networkx.algorithms.isomorphism import categorical_node_match

from .gf2core import BitMatrix, EchelonBasis, permute_word, popcount_array, rref, span_words

MAX_DIRECT_LENGTH = 12
MAX_CLOSURE_LENGTH = 18
MAX_BRUTE_FORCE_LENGTH = 10
DEFAULT_MAX_CLASSES = 1000

OracleClass = namedtuple("OracleClass", ["generator", "d", "code_type", "orbit_size"])
OracleClass.__doc__ = """
One equivalence class of self-dual codes.

Args:
    generator : BitMatrix
        reduced row-echelon generator of the representative
    d : int
        minimum distance
    code_type : str
        "I" (singly-even) or "II" (doubly-even)
    orbit_size : int or None
        number of distinct codes in the class; None when unknown
"""


class OracleBudgetError(RuntimeError):
    """ The closure produced more classes than allowed """

    def __init__(self, n, max_classes):
        super(OracleBudgetError, self).__init__(
            "neighbor closure of length {} exceeded {} classes".format(n, max_classes)
        )
        self.n = n
        self.max_classes = max_classes


class OracleCorpus(object):
    """
    Classified self-dual codes of one length.

    Args:
        n : int
            length
        classes : list of OracleClass
            one per equivalence class, in discovery order
        codes : list of tuple (optional)
            every code as its tuple of RREF rows; only kept by a fresh direct
            enumeration
        total : int (optional)
            number of distinct codes, known for the direct enumeration
    """

    def __init__(self, n, classes, codes=None, total=None):
        self.n = n
        self.classes = list(classes)
        self.codes = codes
        self.total = total

    def __len__(self):
        return len(self.classes)

    def __repr__(self):
        return "OracleCorpus(n={}, classes={}, total={})".format(
            self.n, len(self.classes), self.total
        )


def mass_formula(n):
    """ number of self-dual codes of even length n """
    if n < 2 or n % 2:
        raise ValueError("n = {} is not a positive even length".format(n))
    count = 1
    for i in range(1, n // 2):
        count *= 2 ** i + 1
    return count


def _key(rows, n):
    R, rank, _ = rref(BitMatrix(rows, n))
    return R.rows[:rank]


def _weight_counts(rows, n):
    """ number of codewords of each weight 0..n """
    return np.bincount(popcount_array(span_words(rows, n)), minlength=n + 1)


def _describe(rows, n):
    counts = _weight_counts(rows, n)
    d = next((w for w in range(1, n + 1) if counts[w]), 0)
    doubly = all(counts[w] == 0 for w in range(n + 1) if w % 4)
    return d, "II" if doubly else "I"


def _require_length(n, guard):
    if n < 2 or n % 2:
        raise ValueError("n = {} is not a positive even length".format(n))
    if n > guard:
        raise ValueError("n = {} is over the oracle guard {}".format(n, guard))


## ===================
## direct enumeration


def _rref_self_dual(n):
    """
    Every self-dual code of length n as its RREF rows. A row is its pivot bit
    plus an odd number of free bits after the pivot, which keeps it even and
    zero on the other pivot columns.
    """
    k = n // 2
    for pivots in itertools.combinations(range(n), k):
        pivot_set = set(pivots)
        candidates = []
        for p in pivots:
            free = [j for j in range(p + 1, n) if j not in pivot_set]
            rows = []
            for size in range(1, len(free) + 1, 2):
                for subset in itertools.combinations(free, size):
                    row = 1 << (n - 1 - p)
                    for j in subset:
                        row |= 1 << (n - 1 - j)
                    rows.append(row)
            candidates.append(rows)
        if any(not rows for rows in candidates):
            continue

        stack = [()]
        while stack:
            prefix = stack.pop()
            if len(prefix) == k:
                yield prefix
                continue
            for row in reversed(candidates[len(prefix)]):
                if all((row & other).bit_count() % 2 == 0 for other in prefix):
                    stack.append(prefix + (row,))


def _orbits(keys, n):
    """
    Partition codes into orbits under column permutations, closing under the
    transposition of the first two columns and the cyclic shift; these two
    generate the symmetric group.
    """
    generators = [[1, 0] + list(range(2, n)), list(range(1, n)) + [0]]
    if n == 2:
        generators = generators[:1]
    unseen = set(keys)
    orbits = []
    for key in keys:
        if key not in unseen:
            continue
        unseen.discard(key)
        orbit = [key]
        queue = deque([key])
        while queue:
            current = queue.popleft()
            for perm in generators:
                image = _key([permute_word(row, perm, n) for row in current], n)
                if image in unseen:
                    unseen.discard(image)
                    orbit.append(image)
                    queue.append(image)
        orbits.append(orbit)
    return orbits


def enumerate_all_self_dual(n):
    """
    All self-dual codes of length n and their equivalence classes.

    Args:
        n : int
            even, at most 12

    Returns:
        corpus : OracleCorpus
    """
    _require_length(n, MAX_DIRECT_LENGTH)
    keys = list(_rref_self_dual(n))
    logging.info("oracle: %d self-dual codes of length %d", len(keys), n)
    classes = []
    for orbit in _orbits(keys, n):
        representative = min(orbit)
        d, code_type = _describe(representative, n)
        classes.append(OracleClass(BitMatrix(representative, n), d, code_type, len(orbit)))
    return OracleCorpus(n, classes, codes=keys, total=len(keys))


def classify(corpus, d_min=None, code_type=None):
    """
    Classes of `corpus` with minimum distance at least `d_min` and the given
    type ("I", "II" or None for both).
    """
    if code_type is not None and code_type not in ("I", "II"):
        raise ValueError("unknown self-dual type '{}'".format(code_type))
    return [
        c
        for c in corpus.classes
        if (d_min is None or c.d >= d_min) and (code_type is None or c.code_type == code_type)
    ]


def brute_force_equivalent(rows1, rows2, n):
    """
    True iff some column permutation maps the code spanned by `rows1` onto
    the one spanned by `rows2`; tries all n! permutations.
    """
    if n > MAX_BRUTE_FORCE_LENGTH:
        raise ValueError("n = {} is too long for a full permutation scan".format(n))
    target = _key(rows2, n)
    if len(target) != len(_key(rows1, n)):
        return False
    if list(_weight_counts(rows1, n)) != list(_weight_counts(rows2, n)):
        return False
    for perm in itertools.permutations(range(n)):
        if _key([permute_word(row, perm, n) for row in rows1], n) == target:
            return True
    return False


## ===================
## neighbor closure


def _neighbors(rows, n):
    """
    Self-dual neighbors of the self-dual code spanned by the RREF `rows`:
    two for every even x on the non-pivot columns.
    """
    pivots = [n - row.bit_length() for row in rows]
    free = [j for j in range(n) if j not in set(pivots)]
    for subset in range(1, 1 << len(free)):
        if subset.bit_count() % 2:
            continue
        x = 0
        for i, j in enumerate(free):
            if (subset >> i) & 1:
                x |= 1 << (n - 1 - j)
        odd = next(row for row in rows if (row & x).bit_count() % 2)
        kept = [row ^ odd if (row & x).bit_count() % 2 else row for row in rows if row != odd]
        yield _key(kept + [x], n)
        yield _key(kept + [x ^ odd], n)


def _incidence_graph(rows, n):
    """
    Columns and the nonzero codewords up to the smallest weight t whose words
    span the code, with an edge wherever a word has a 1.
    """
    words = span_words(rows, n)
    weights = popcount_array(words)
    order = np.argsort(weights, kind="stable")
    basis = EchelonBasis(n)
    t = 0
    for index in order:
        if weights[index] == 0:
            continue
        if basis.add(int(words[index])):
            t = int(weights[index])
            if basis.rank == len(rows):
                break

    G = nx.Graph()
    G.add_nodes_from((("c", j) for j in range(n)), kind="column")
    for index in np.nonzero((weights > 0) & (weights <= t))[0]:
        word = int(words[index])
        G.add_node(("w", int(index)), kind="word")
        for j in range(n):
            if (word >> (n - 1 - j)) & 1:
                G.add_edge(("w", int(index)), ("c", j))
    return G


def _invariant(rows, n):
    """ weight distribution and sorted per-column weight profiles """
    words = span_words(rows, n)
    weights = popcount_array(words)
    shifts = np.arange(n - 1, -1, -1)
    if words.dtype == object:
        X = np.array([[(int(w) >> int(s)) & 1 for s in shifts] for w in words], dtype=np.int64)
    else:
        X = ((words[:, None] >> shifts.astype(np.uint64)) & np.uint64(1)).astype(np.int64)
    profile = np.stack([X[weights == w].sum(axis=0) for w in range(1, n + 1)], axis=1)
    columns = tuple(sorted(tuple(int(v) for v in row) for row in profile))
    return tuple(int(c) for c in np.bincount(weights, minlength=n + 1)), columns


def _isomorphic(G1, G2):
    return nx.is_isomorphic(G1, G2, node_match=categorical_node_match("kind", None))


def neighbor_closure(n, max_classes=DEFAULT_MAX_CLASSES):
    """
    Equivalence classes of self-dual codes of length n reached from
    \\( i_2^{n/2} \\) through neighbors. The closure stops at a fixpoint,
    when no neighbor of a known class is new.

    Raises:
        OracleBudgetError : more than `max_classes` classes
    """
    _require_length(n, MAX_CLOSURE_LENGTH)
    start = _key([0b11 << (n - 2 - 2 * i) for i in range(n // 2)], n)

    representatives = [start]
    graphs = [_incidence_graph(start, n)]
    buckets = {_invariant(start, n): [0]}
    seen = {start}
    queue = deque([start])
    while queue:
        rows = queue.popleft()
        for neighbor in _neighbors(rows, n):
            if neighbor in seen:
                continue
            seen.add(neighbor)
            invariant = _invariant(neighbor, n)
            graph = _incidence_graph(neighbor, n)
            bucket = buckets.setdefault(invariant, [])
            if any(_isomorphic(graph, graphs[i]) for i in bucket):
                continue
            bucket.append(len(representatives))
            representatives.append(neighbor)
            graphs.append(graph)
            queue.append(neighbor)
            if len(representatives) > max_classes:
                raise OracleBudgetError(n, max_classes)
    logging.info("oracle: %d classes of length %d by neighbor closure", len(representatives), n)

    classes = []
    for rows in representatives:
        d, code_type = _describe(rows, n)
        classes.append(OracleClass(BitMatrix(rows, n), d, code_type, None))
    return OracleCorpus(n, classes)


def neighbor_closure_classify(n, d_min=None, code_type=None, max_classes=DEFAULT_MAX_CLASSES):
    """ classes of the neighbor closure filtered as in `classify` """
    return classify(neighbor_closure(n, max_classes), d_min, code_type)


def same_class(rows1, rows2, n):
    """ equivalence of two codes through their incidence graphs """
    if _invariant(rows1, n) != _invariant(rows2, n):
        return False
    return _isomorphic(_incidence_graph(rows1, n), _incidence_graph(rows2, n))


## ===================
## cache


def load_or_build_corpus(n, cache_dir=None, max_classes=DEFAULT_MAX_CLASSES):
    """
    Classified corpus of length n: direct enumeration up to length 12,
    neighbor closure above. With `cache_dir` the classes are stored as a code
    file next to a JSON summary, both listed in a checksum manifest, and
    reused while the checksums match.

    Returns:
        corpus : OracleCorpus
            `codes` is None when the corpus comes from the cache
    """
    from .iopersist import parse_codes, verify_manifest, write_manifest

    if cache_dir is not None:
        codes_file = os.path.join(cache_dir, "selfdual_n{}.txt".format(n))
        summary_file = os.path.join(cache_dir, "selfdual_n{}.json".format(n))
        manifest = os.path.join(cache_dir, "selfdual_n{}.md5.json".format(n))
        if verify_manifest(manifest):
            logging.info("oracle: loading cached corpus %s", codes_file)
            with io.open(summary_file, "r", encoding="utf-8") as f:
                summary = json.load(f)
            with io.open(codes_file, "r", encoding="utf-8") as f:
                parsed = parse_codes(f.read(), path=codes_file, with_headers=True)
            classes = [
                OracleClass(code.generator, header[2], header[3].value, size)
                for (code, header), size in zip(parsed, summary["orbit_sizes"])
            ]
            return OracleCorpus(n, classes, total=summary["total"])

    if n <= MAX_DIRECT_LENGTH:
        corpus = enumerate_all_self_dual(n)
    else:
        corpus = neighbor_closure(n, max_classes)

    if cache_dir is not None:
        if not os.path.isdir(cache_dir):
            os.makedirs(cache_dir)
        blocks = []
        for c in corpus.classes:
            lines = ["n={} k={} d={} type={}".format(n, n // 2, c.d, c.code_type)]
            lines.extend(c.generator.to_strings())
            blocks.append("\n".join(lines) + "\n")
        with io.open(codes_file, "w", encoding="utf-8") as f:
            f.write("\n".join(blocks))
        with io.open(summary_file, "w", encoding="utf-8") as f:
            json.dump(
                {"n": n, "total": corpus.total, "orbit_sizes": [c.orbit_size for c in corpus.classes]},
                f,
                indent=2,
            )
        write_manifest(manifest, [codes_file, summary_file])
    return corpus
