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
This PySelfDual module contains the `pyselfdual.codemodel.LinearCode` class
and the facts about self-dual codes the search relies on:

- self-orthogonality, self-duality and the Type I / Type II classification
- minimum distance and weight enumerator by Gray-code enumeration
- the maximal doubly-even subcode and the chain of doubly-even subcodes
  \\( \\langle 1 \\rangle = C_1 \\subset C_2 \\subset \\dots \\subset C_{k-1} \\subset C \\)
- the distance bound \\( d \\le 4\\lfloor n/24 \\rfloor + 4 \\)
  (\\( + 6 \\) if \\( n \\equiv 22 \\bmod 24 \\))
- the parity rule on the number of singly-even rows of a standard-form generator

A code of type I is self-dual with at least one codeword of weight
\\( \\equiv 2 \\bmod 4 \\), a code of type II is self-dual with all weights
divisible by 4.
"""

# -*- coding: utf-8 -*-
from enum import Enum
from functools import cached_property

import numpy as np

from .gf2core import (
    BitMatrix,
    BitVector,
    EchelonBasis,
    as_word,
    dual_basis,
    popcount_array,
    span_words,
)

MAX_ENUMERATION_DIMENSION = 30
_GRAY_CHUNK_BITS = 16


class ParameterError(ValueError):
    """
    Invalid code parameters. `key` names the offending parameter
    (one of "n", "k", "d", "type").
    """

    def __init__(self, key, message):
        super(ParameterError, self).__init__("{}: {}".format(key, message))
        self.key = key


class CodeType(Enum):
    TYPE_I = "I"
    TYPE_II = "II"
    NOT_SELF_DUAL = "linear"

    @classmethod
    def parse(cls, value):
        """ accepts a `CodeType`, its value ("I", "II", "linear") or its name """
        if isinstance(value, cls):
            return value
        text = str(value).strip()
        for member in cls:
            if text == member.value or text.upper() == member.name:
                return member
        raise ParameterError(
            "type", "unknown code type '{}', expected I, II or linear".format(value)
        )

    @property
    def self_dual(self):
        return self is not CodeType.NOT_SELF_DUAL


class LinearCode(object):
    """
    A binary linear (n, k) code given by a full-rank generator matrix.

    Args:
        generator : BitMatrix or list of int
            k rows of length n; rows must be linearly independent
        n : int
            code length, required when `generator` is a list of packed rows

    Attributes:
        n : int
            length
        k : int
            dimension
        generator : BitMatrix
            k x n generator matrix, row order as given

    Notes:
        Minimum distance, weight enumerator and type are computed on first
        access and cached; the generator is never modified after construction.
        Two codes compare equal when they have the same row space.
    """

    def __init__(self, generator, n=None):
        if isinstance(generator, BitMatrix):
            matrix = generator
        else:
            if n is None:
                raise ValueError("the code length n is required for packed rows")
            matrix = BitMatrix(generator, n)

        self.n = matrix.col_count
        self.generator = matrix

        basis = EchelonBasis(self.n)
        for row in matrix.rows:
            if not basis.add(row):
                raise ValueError("generator rows are linearly dependent")
        self.k = basis.rank
        self._basis = basis
        self.key = tuple(basis.rows())

    @classmethod
    def span(cls, rows, n):
        """ the code spanned by `rows`, which may be dependent """
        basis = EchelonBasis(n, rows)
        return cls(basis.rows(), n)

    @classmethod
    def from_strings(cls, strings):
        return cls(BitMatrix.from_strings(strings))

    @property
    def rows(self):
        return self.generator.rows

    def __contains__(self, word):
        if isinstance(word, BitVector):
            if word.length != self.n:
                return False
            word = word.bits
        return self._basis.contains(word)

    def __eq__(self, other):
        if not isinstance(other, LinearCode):
            return NotImplemented
        return self.n == other.n and self.key == other.key

    def __hash__(self):
        return hash((self.n, self.key))

    def __repr__(self):
        return "LinearCode(n={}, k={}, rows={})".format(
            self.n, self.k, self.generator.to_strings()
        )

    def codewords(self):
        """ all \\( 2^k \\) codewords as a numpy word array """
        if self.k > MAX_ENUMERATION_DIMENSION:
            raise ValueError(
                "dimension {} is over the enumeration guard {}".format(
                    self.k, MAX_ENUMERATION_DIMENSION
                )
            )
        return span_words(self.rows, self.n)

    def dual(self):
        return LinearCode(dual_basis(self.generator))

    def permute_columns(self, perm):
        return LinearCode(self.generator.permute_columns(perm))

    @cached_property
    def minimum_distance(self):
        return min_distance(self)

    @cached_property
    def weight_distribution(self):
        return weight_enumerator(self)

    @cached_property
    def code_type(self):
        return classify_type(self)


def intersection(C1, C2):
    """ \\( C_1 \\cap C_2 = (C_1^\\perp + C_2^\\perp)^\\perp \\) """
    if C1.n != C2.n:
        raise ValueError("codes have different lengths {}".format((C1.n, C2.n)))
    duals = C1.dual().rows + C2.dual().rows
    return LinearCode.span(duals, C1.n).dual()


def is_self_orthogonal(C):
    rows = C.rows
    for i, ri in enumerate(rows):
        for rj in rows[i:]:
            if (ri & rj).bit_count() & 1:
                return False
    return True


def is_self_dual(C):
    return 2 * C.k == C.n and is_self_orthogonal(C)


def classify_type(C):
    """
    Type of a code. For a self-dual code the weights are additive modulo 4
    over the generator rows, since every pair of codewords overlaps evenly,
    so inspecting the rows is enough.
    """
    if not is_self_dual(C):
        return CodeType.NOT_SELF_DUAL
    if all(row.bit_count() % 4 == 0 for row in C.rows):
        return CodeType.TYPE_II
    return CodeType.TYPE_I


def _gray_weight_chunks(C):
    """
    Yield the weights of all codewords in chunks. The low rows are tabulated
    once; the high rows are walked in Gray-code order, one XOR per step.
    """
    if C.k > MAX_ENUMERATION_DIMENSION:
        raise ValueError(
            "dimension {} is over the enumeration guard {}".format(
                C.k, MAX_ENUMERATION_DIMENSION
            )
        )
    rows = C.rows
    low_count = min(C.k, _GRAY_CHUNK_BITS)
    low = span_words(rows[:low_count], C.n)
    high = rows[low_count:]

    yield popcount_array(low)
    current = 0
    for step in range(1, 1 << len(high)):
        # bit that flips between gray(step - 1) and gray(step)
        flip = (step & -step).bit_length() - 1
        current ^= high[flip]
        yield popcount_array(low ^ as_word(current, C.n))


def min_distance(C):
    """ minimum weight over the \\( 2^k - 1 \\) nonzero codewords """
    if C.k < 1:
        raise ValueError("the zero code has no minimum distance")
    best = C.n
    for index, weights in enumerate(_gray_weight_chunks(C)):
        if index == 0:
            weights = weights[1:]
        if weights.size:
            best = min(best, int(weights.min()))
    return best


def weight_enumerator(C):
    """ entry i is the number of codewords of weight i """
    counts = np.zeros(C.n + 1, dtype=np.int64)
    for weights in _gray_weight_chunks(C):
        counts += np.bincount(weights, minlength=C.n + 1)
    return [int(c) for c in counts]


def contains_all_ones(C):
    return ((1 << C.n) - 1) in C


def _require_type_one(C):
    if not is_self_dual(C):
        raise ValueError("code is not self-dual")
    if classify_type(C) is not CodeType.TYPE_I:
        raise ValueError("code is not of type I")


def max_doubly_even_subcode(C):
    """
    Kernel of \\( c \\mapsto w(c)/2 \\bmod 2 \\) on a type I code, the unique
    maximal doubly-even subcode. It has dimension k - 1.
    """
    _require_type_one(C)
    halves = [(row.bit_count() // 2) & 1 for row in C.rows]
    pivot = halves.index(1)
    pivot_row = C.rows[pivot]
    kernel = []
    for i, row in enumerate(C.rows):
        if i == pivot:
            continue
        kernel.append(row ^ pivot_row if halves[i] else row)
    return LinearCode(kernel, C.n)


def doubly_even_chain(C):
    """
    A chain of doubly-even self-orthogonal subcodes \\( C_1 \\subset \\dots
    \\subset C_{k-1} \\) of a type I code with \\( n \\equiv 0 \\bmod 4 \\),
    where \\( C_1 = \\langle 1 \\rangle \\) and \\( C_{k-1} \\) is the maximal
    doubly-even subcode. Basis vectors are added greedily in lexicographic
    order.

    Returns:
        chain : list of LinearCode
            `chain[i]` has dimension `i + 1`
    """
    if C.n % 4:
        raise ValueError(
            "n = {} is not divisible by 4, the all-ones word is not doubly-even".format(
                C.n
            )
        )
    _require_type_one(C)
    kernel = max_doubly_even_subcode(C)

    ones = (1 << C.n) - 1
    basis = EchelonBasis(C.n, [ones])
    ordered = [ones]
    for row in sorted(kernel.key):
        if basis.add(row):
            ordered.append(row)

    return [LinearCode(ordered[: i + 1], C.n) for i in range(len(ordered))]


def distance_bound(n, code_type=CodeType.TYPE_I):
    """
    Upper bound on the minimum distance of a self-dual code of length `n`:
    \\( 4\\lfloor n/24 \\rfloor + 6 \\) if \\( n \\equiv 22 \\bmod 24 \\),
    \\( 4\\lfloor n/24 \\rfloor + 4 \\) otherwise.
    """
    code_type = CodeType.parse(code_type)
    if n % 2:
        raise ParameterError("n", "self-dual codes have even length, got {}".format(n))
    if not code_type.self_dual:
        raise ParameterError("type", "the bound only applies to self-dual codes")
    if n % 24 == 22:
        return 4 * (n // 24) + 6
    return 4 * (n // 24) + 4


def singly_even_row_count(G):
    """ number of rows of weight \\( \\equiv 2 \\bmod 4 \\) """
    rows = G.rows if isinstance(G, (BitMatrix, LinearCode)) else G
    return sum(1 for row in rows if row.bit_count() % 4 == 2)


def check_row_parity(G, n, code_type=CodeType.TYPE_I):
    """
    Parity rule for a standard-form generator \\( (I_k | A) \\) of a self-dual
    code: the sum of all rows is the all-ones word, so the singly-even rows
    add up to \\( n \\bmod 4 \\).

    Returns:
        bool : for \\( n \\equiv 0 \\bmod 4 \\) the count of singly-even rows is
        even, at least 2 for type I and 0 for type II; for
        \\( n \\equiv 2 \\bmod 4 \\) the count is odd.
    """
    code_type = CodeType.parse(code_type)
    count = singly_even_row_count(G)
    if n % 4 == 0:
        if count % 2:
            return False
        if code_type is CodeType.TYPE_I:
            return count >= 2
        if code_type is CodeType.TYPE_II:
            return count == 0
        return True
    # n = 2 mod 4 extends the rule: w(1) = n is singly-even
    return count % 2 == 1


def validate_parameters(n, k, d, code_type):
    """
    Check a search target. Raises `ParameterError` naming the bad key.

    Returns:
        code_type : CodeType
    """
    code_type = CodeType.parse(code_type)
    for key, value in (("n", n), ("k", k), ("d", d)):
        if not isinstance(value, (int, np.integer)) or isinstance(value, bool):
            raise ParameterError(key, "expected an integer, got {!r}".format(value))
    if n < 1:
        raise ParameterError("n", "length must be positive, got {}".format(n))
    if d < 1:
        raise ParameterError("d", "minimum distance must be positive, got {}".format(d))

    if code_type.self_dual:
        if n % 2:
            raise ParameterError("n", "self-dual codes have even length, got {}".format(n))
        if 2 * k != n:
            raise ParameterError(
                "k", "a self-dual code has k = n/2 = {}, got {}".format(n // 2, k)
            )
        if code_type is CodeType.TYPE_II and n % 8:
            raise ParameterError(
                "type", "type II codes exist only for n divisible by 8, got {}".format(n)
            )
        bound = distance_bound(n, code_type)
        if d > bound:
            raise ParameterError(
                "d", "d = {} exceeds the bound {} for n = {}".format(d, bound, n)
            )
    else:
        if not 1 <= k <= n:
            raise ParameterError("k", "need 1 <= k <= n, got k = {}".format(k))
        if d > n - k + 1:
            raise ParameterError(
                "d", "d = {} exceeds the Singleton bound {}".format(d, n - k + 1)
            )
    return code_type


def full_rows(A_rows, n):
    """ rows of \\( (I_k | A) \\) from the packed rows of A """
    return [(1 << (n - 1 - i)) | row for i, row in enumerate(A_rows)]


def from_standard_form(A, n=None):
    """
    Code generated by \\( (I_k | A) \\).

    Args:
        A : BitMatrix or list of int
            the k x (n - k) block; `n` is required for packed rows
    """
    if isinstance(A, BitMatrix):
        n = A.row_count + A.col_count
        A = A.rows
    return LinearCode(full_rows(A, n), n)

