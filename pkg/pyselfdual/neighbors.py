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
Neighbors of self-dual codes.

Two self-dual codes of length n are neighbors when their intersection has
dimension n/2 - 1. A type I code C with \\( n \\equiv 0 \\bmod 4 \\) has
exactly two neighbors through its maximal doubly-even subcode
\\( C_{k-1} \\): with \\( C = \\langle C_{k-1}, \\gamma_1 \\rangle \\) and
\\( \\gamma_2 \\in C_{k-1}^\\perp \\setminus C \\) they are
\\( \\langle C_{k-1}, \\gamma_2 \\rangle \\) and
\\( \\langle C_{k-1}, \\gamma_1 + \\gamma_2 \\rangle \\), and they are either
both doubly-even or both singly-even.

When they are doubly-even every singly-even word of \\( C_{k-1}^\\perp \\)
already lies in C, so a code of minimum distance d has no singly-even word of
weight below d anywhere in \\( C_{k-1}^\\perp \\).
"""

# -*- coding: utf-8 -*-
from collections import namedtuple

import numpy as np

from .codemodel import (
    CodeType,
    LinearCode,
    classify_type,
    intersection,
    is_self_dual,
    max_doubly_even_subcode,
    min_distance,
)
from .gf2core import BitVector, as_word, popcount_array, rref, span_words

NeighborPair = namedtuple("NeighborPair", ["base", "gamma1", "gamma2", "kernel", "n1", "n2"])
NeighborPair.__doc__ = """
The two neighbors of a type I code through its maximal doubly-even subcode.

Args:
    base : LinearCode
        the type I code
    gamma1 : BitVector
        singly-even generator of `base` over `kernel`
    gamma2 : BitVector
        vector of the dual of `kernel` outside `base`
    kernel : LinearCode
        maximal doubly-even subcode of `base`
    n1 : LinearCode
        \\( \\langle kernel, \\gamma_2 \\rangle \\)
    n2 : LinearCode
        \\( \\langle kernel, \\gamma_1 + \\gamma_2 \\rangle \\)
"""


def _require_self_dual(*codes):
    lengths = set(C.n for C in codes)
    if len(lengths) > 1:
        raise ValueError("codes have different lengths {}".format(sorted(lengths)))
    for C in codes:
        if not is_self_dual(C):
            raise ValueError("{!r} is not self-dual".format(C))


def are_neighbors(C1, C2):
    """ True iff \\( \\dim(C_1 \\cap C_2) = n/2 - 1 \\) """
    _require_self_dual(C1, C2)
    return intersection(C1, C2).k == C1.n // 2 - 1


def _gamma1(C):
    for row in C.rows:
        if row.bit_count() % 4 == 2:
            return row
    raise RuntimeError("type I code without a singly-even generator row")


def _gamma2(C, kernel, choice):
    basis = kernel.dual().rows
    if choice == "last":
        basis = basis[::-1]
    elif choice != "first":
        raise ValueError("unknown choice rule '{}'".format(choice))
    for row in basis:
        if row not in C:
            return row
    raise RuntimeError("the dual of the doubly-even subcode lies inside the code")


def neighbors_through_kernel(C, choice="first"):
    """
    The two neighbors of a type I code through its maximal doubly-even subcode.

    Args:
        C : LinearCode
            self-dual type I code with \\( n \\equiv 0 \\bmod 4 \\)
        choice : str
            "first" or "last": which end of the dual basis of the kernel
            \\( \\gamma_2 \\) is taken from

    Returns:
        pair : NeighborPair
    """
    _require_self_dual(C)
    if classify_type(C) is not CodeType.TYPE_I:
        raise ValueError("neighbors through the kernel need a type I code")
    if C.n % 4:
        raise ValueError(
            "n = {} is not divisible by 4, the all-ones word is not in the kernel".format(
                C.n
            )
        )

    kernel = max_doubly_even_subcode(C)
    gamma1 = _gamma1(C)
    gamma2 = _gamma2(C, kernel, choice)
    if (gamma1 & gamma2).bit_count() % 2 != 1:
        raise RuntimeError("gamma1 and gamma2 are orthogonal")

    n1 = LinearCode(list(kernel.rows) + [gamma2], C.n)
    n2 = LinearCode(list(kernel.rows) + [gamma1 ^ gamma2], C.n)
    return NeighborPair(
        C, BitVector(gamma1, C.n), BitVector(gamma2, C.n), kernel, n1, n2
    )


def neighbors_doubly_even(pair):
    """ True iff both neighbors of `pair` are doubly-even """
    return classify_type(pair.n1) is CodeType.TYPE_II


def check_neighbor_weight_window(C1, C2, d=None):
    """
    For a singly-even C1 and a doubly-even neighbor C2 sharing the maximal
    doubly-even subcode of C1: every singly-even word of
    \\( C_{k-1}^\\perp \\) lies in C1 and has weight in [d, n - d], and there
    are exactly \\( 2^{k-1} \\) of them.

    Args:
        d : int (optional)
            defaults to the minimum distance of C1
    """
    _require_self_dual(C1, C2)
    if classify_type(C1) is not CodeType.TYPE_I:
        raise ValueError("C1 must be singly-even")
    if classify_type(C2) is not CodeType.TYPE_II:
        raise ValueError("C2 must be doubly-even")
    kernel = max_doubly_even_subcode(C1)
    if intersection(C1, C2) != kernel:
        raise ValueError("C1 and C2 do not meet in the doubly-even subcode of C1")
    if d is None:
        d = min_distance(C1)

    n, k = C1.n, C1.k
    words = span_words(kernel.dual().rows, n)
    weights = popcount_array(words)
    singly = words[weights % 4 == 2]
    if singly.size != 2 ** (k - 1):
        return False
    if not all(int(word) in C1 for word in singly):
        return False
    singly_weights = weights[weights % 4 == 2]
    return bool(np.all((singly_weights >= d) & (singly_weights <= n - d)))


def singly_even_dual_filter(C, d):
    """
    Reject a type I code whose singly-even words forced into C by the
    neighbor theorem have weight below d.

    The dual of the doubly-even subcode \\( C_{k-1} \\) splits into four
    cosets of \\( C_{k-1} \\): itself, \\( \\gamma_1 + C_{k-1} \\subset C \\)
    and two more. When the two others are doubly-even, the singly-even words
    of the dual are exactly \\( \\gamma_1 + C_{k-1} \\); when they are
    singly-even they belong to the neighbors and are not constrained. Either
    way the words to check form the coset \\( \\gamma_1 + C_{k-1} \\).

    The coset lies inside C, so a code passing the distance check always
    passes this one. As a search condition it only saves time when it runs
    before the distance check, since it looks at half of the words.

    Returns:
        bool : False iff such a word has weight < d
    """
    _require_self_dual(C)
    if classify_type(C) is not CodeType.TYPE_I:
        raise ValueError("the filter applies to type I codes")
    kernel = max_doubly_even_subcode(C)
    coset = span_words(kernel.rows, C.n) ^ as_word(_gamma1(C), C.n)
    return int(popcount_array(coset).min()) >= d


def all_neighbors(C):
    """
    Every self-dual neighbor of a self-dual code, two for each even coset
    \\( x + C \\), \\( x \\notin C \\): with \\( D = C \\cap x^\\perp \\) they
    are \\( \\langle D, x \\rangle \\) and \\( \\langle D, x + c \\rangle \\)
    for any \\( c \\in C \\setminus D \\).

    Returns:
        neighbors : list of LinearCode
    """
    _require_self_dual(C)
    n = C.n
    _, rank, pivots = rref(C.generator)
    free = [j for j in range(n) if j not in set(pivots)]
    result = []
    for subset in range(1, 1 << len(free)):
        if subset.bit_count() % 2:
            continue
        x = 0
        for i, j in enumerate(free):
            if (subset >> i) & 1:
                x |= 1 << (n - 1 - j)
        odd = [row for row in C.rows if (row & x).bit_count() % 2]
        pivot = odd[0]
        D = [row ^ pivot if (row & x).bit_count() % 2 else row for row in C.rows if row != pivot]
        result.append(LinearCode(D + [x], n))
        result.append(LinearCode(D + [x ^ pivot], n))
    return result
