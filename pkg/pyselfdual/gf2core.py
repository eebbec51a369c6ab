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
This PySelfDual module contains the bit-packed arithmetic over GF(2) used by
every other module:

- `pyselfdual.gf2core.BitVector` and `pyselfdual.gf2core.BitMatrix`
- weight, sum, overlap \\( \\mu(x,y) \\) and inner product of vectors
- reduced row-echelon form, standard form \\( (I_k | A) \\) and dual bases
- bulk enumeration of the row space of a matrix into a numpy word array

Vectors are packed into a Python `int`. Coordinate 1 is the most significant
bit, i.e. coordinate `j` (0-based) of a length `n` vector is bit `n - 1 - j`.
The string `"1100"` is therefore the integer `0b1100`.
"""

# -*- coding: utf-8 -*-
import numpy as np

_POPCOUNT8 = np.array([bin(i).count("1") for i in range(256)], dtype=np.uint8)


def _check_lengths(x, y):
    if x.length != y.length:
        raise ValueError(
            "vectors have different lengths {}".format((x.length, y.length))
        )


class BitVector(object):
    """
    A binary vector of fixed length.

    Args:
        bits : int
            packed coordinates, coordinate 1 is the most significant bit
        length : int
            number of coordinates

    Attributes:
        bits : int
            packed coordinates
        length : int
            number of coordinates
    """

    def __init__(self, bits, length):
        bits = int(bits)
        length = int(length)
        if length < 0:
            raise ValueError("length must be nonnegative, got {}".format(length))
        if bits < 0 or bits >> length:
            raise ValueError(
                "bits {} do not fit into {} coordinates".format(bits, length)
            )
        self.bits = bits
        self.length = length

    @classmethod
    def from_string(cls, string):
        string = string.strip()
        if set(string) - {"0", "1"}:
            raise ValueError("'{}' is not a 0/1 string".format(string))
        return cls(int(string, 2) if string else 0, len(string))

    @classmethod
    def from_array(cls, array):
        array = np.asarray(array, dtype=int).ravel()
        return cls.from_string("".join(str(b & 1) for b in array))

    @classmethod
    def zeros(cls, length):
        return cls(0, length)

    @classmethod
    def ones(cls, length):
        return cls((1 << length) - 1, length)

    def to_array(self):
        return np.array([int(c) for c in str(self)], dtype=np.uint8)

    def support(self):
        """ 0-based indices of the 1-coordinates """
        return [j for j in range(self.length) if (self.bits >> (self.length - 1 - j)) & 1]

    def __getitem__(self, j):
        if not 0 <= j < self.length:
            raise IndexError("coordinate {} out of range".format(j))
        return (self.bits >> (self.length - 1 - j)) & 1

    def __len__(self):
        return self.length

    def __add__(self, other):
        return add(self, other)

    __xor__ = __add__

    def __eq__(self, other):
        if not isinstance(other, BitVector):
            return NotImplemented
        return self.length == other.length and self.bits == other.bits

    def __hash__(self):
        return hash((self.length, self.bits))

    def __str__(self):
        if self.length == 0:
            return ""
        return format(self.bits, "0{}b".format(self.length))

    def __repr__(self):
        return "BitVector('{}')".format(self)


def weight(v):
    """ Number of 1-coordinates of `v` """
    return v.bits.bit_count()


def add(x, y):
    """ Coordinatewise XOR of two vectors of equal length """
    _check_lengths(x, y)
    return BitVector(x.bits ^ y.bits, x.length)


def mu(x, y):
    """
    Overlap \\( \\mu(x,y) \\): the number of coordinates which are 1 in both
    `x` and `y`, so that \\( w(x+y) = w(x) + w(y) - 2\\mu(x,y) \\).
    """
    _check_lengths(x, y)
    return (x.bits & y.bits).bit_count()


def inner_product(x, y):
    _check_lengths(x, y)
    return (x.bits & y.bits).bit_count() & 1


def permute_word(word, perm, n):
    """
    Permute the coordinates of a packed word: coordinate `j` of the result
    is coordinate `perm[j]` of `word`.
    """
    out = 0
    for j, p in enumerate(perm):
        if (word >> (n - 1 - p)) & 1:
            out |= 1 << (n - 1 - j)
    return out


class BitMatrix(object):
    """
    An ordered list of packed rows of equal length.

    Args:
        rows : list
            rows as packed `int` or `BitVector`
        col_count : int
            number of columns (length of every row)

    Attributes:
        rows : tuple of int
            packed rows, row order is significant
        row_count : int
            number of rows
        col_count : int
            number of columns
    """

    def __init__(self, rows, col_count):
        col_count = int(col_count)
        packed = []
        for row in rows:
            if isinstance(row, BitVector):
                if row.length != col_count:
                    raise ValueError(
                        "row length {} does not match {} columns".format(
                            row.length, col_count
                        )
                    )
                row = row.bits
            row = int(row)
            if row < 0 or row >> col_count:
                raise ValueError(
                    "row {} does not fit into {} columns".format(row, col_count)
                )
            packed.append(row)
        self.rows = tuple(packed)
        self.col_count = col_count

    @property
    def row_count(self):
        return len(self.rows)

    @classmethod
    def from_strings(cls, strings):
        strings = [s.strip() for s in strings]
        if not strings:
            raise ValueError("cannot infer the column count of an empty matrix")
        vectors = [BitVector.from_string(s) for s in strings]
        return cls(vectors, vectors[0].length)

    @classmethod
    def from_array(cls, array):
        array = np.atleast_2d(np.asarray(array, dtype=int))
        return cls([BitVector.from_array(row) for row in array], array.shape[1])

    @classmethod
    def identity(cls, size):
        return cls([1 << (size - 1 - i) for i in range(size)], size)

    def to_array(self):
        array = np.zeros((self.row_count, self.col_count), dtype=np.uint8)
        for i, row in enumerate(self.rows):
            for j in range(self.col_count):
                array[i, j] = (row >> (self.col_count - 1 - j)) & 1
        return array

    def to_strings(self):
        return [str(BitVector(row, self.col_count)) for row in self.rows]

    def column(self, j):
        """ column `j` packed with row 0 as the most significant bit """
        shift = self.col_count - 1 - j
        col = 0
        for row in self.rows:
            col = (col << 1) | ((row >> shift) & 1)
        return col

    def columns(self):
        return [self.column(j) for j in range(self.col_count)]

    def transpose(self):
        return BitMatrix(self.columns(), self.row_count)

    def permute_columns(self, perm):
        """
        Column `j` of the returned matrix is column `perm[j]` of this one.
        """
        perm = [int(p) for p in perm]
        if sorted(perm) != list(range(self.col_count)):
            raise ValueError("{} is not a permutation of the columns".format(perm))
        return BitMatrix(
            [permute_word(row, perm, self.col_count) for row in self.rows],
            self.col_count,
        )

    def submatrix(self, start, stop):
        """ columns `start` to `stop - 1` of every row """
        width = stop - start
        mask = (1 << width) - 1
        shift = self.col_count - stop
        return BitMatrix([(row >> shift) & mask for row in self.rows], width)

    def __getitem__(self, i):
        return BitVector(self.rows[i], self.col_count)

    def __iter__(self):
        for row in self.rows:
            yield BitVector(row, self.col_count)

    def __len__(self):
        return self.row_count

    def __eq__(self, other):
        if not isinstance(other, BitMatrix):
            return NotImplemented
        return self.col_count == other.col_count and self.rows == other.rows

    def __hash__(self):
        return hash((self.col_count, self.rows))

    def __str__(self):
        return "\n".join(self.to_strings())

    def __repr__(self):
        return "BitMatrix({}, {})".format(self.to_strings(), self.col_count)


class EchelonBasis(object):
    """
    Incrementally maintained reduced basis of a subspace of GF(2)^n.

    Every stored vector has a distinct leading bit and no other stored
    vector has that bit set, so membership is one reduction pass.
    """

    def __init__(self, n, rows=()):
        self.n = n
        self.pivots = {}
        for row in rows:
            self.add(row)

    def reduce(self, word):
        for lead, row in self.pivots.items():
            if (word >> lead) & 1:
                word ^= row
        return word

    def contains(self, word):
        return self.reduce(word) == 0

    def add(self, word):
        """ Add `word` to the basis; returns False if it is already spanned """
        word = self.reduce(word)
        if word == 0:
            return False
        lead = word.bit_length() - 1
        for other, row in self.pivots.items():
            if (row >> lead) & 1:
                self.pivots[other] = row ^ word
        self.pivots[lead] = word
        return True

    @property
    def rank(self):
        return len(self.pivots)

    def rows(self):
        """ basis rows sorted by leading coordinate, i.e. the RREF rows """
        return [self.pivots[lead] for lead in sorted(self.pivots, reverse=True)]


def rref(M):
    """
    Reduced row-echelon form over GF(2).

    Args:
        M : BitMatrix

    Returns:
        R : BitMatrix
            reduced matrix with the same number of rows, zero rows last
        rank : int
            rank of `M`
        pivot_columns : list of int
            0-based pivot column of each of the first `rank` rows
    """
    n = M.col_count
    rows = list(M.rows)
    rank = 0
    pivots = []
    for col in range(n):
        bit = 1 << (n - 1 - col)
        pivot = None
        for i in range(rank, len(rows)):
            if rows[i] & bit:
                pivot = i
                break
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        for i in range(len(rows)):
            if i != rank and rows[i] & bit:
                rows[i] ^= rows[rank]
        pivots.append(col)
        rank += 1
        if rank == len(rows):
            break
    return BitMatrix(rows, n), rank, pivots


def standard_form(M):
    """
    Bring a full-rank matrix to standard form \\( (I_k | A) \\).

    Args:
        M : BitMatrix
            k x n generator of rank k

    Returns:
        G : BitMatrix
            the matrix \\( (I_k | A) \\)
        column_permutation : 1D numpy int array
            `G` is the row reduction of `M.permute_columns(column_permutation)`,
            i.e. column `j` of `G` comes from column `column_permutation[j]` of `M`
    """
    R, rank, pivots = rref(M)
    if rank < M.row_count:
        raise ValueError(
            "matrix has rank {} but {} rows".format(rank, M.row_count)
        )
    pivot_set = set(pivots)
    perm = pivots + [j for j in range(M.col_count) if j not in pivot_set]
    G = R.permute_columns(perm)
    return G, np.array(perm, dtype=int)


def dual_basis(G):
    """
    Basis of the dual space: an (n-k) x n full-rank matrix H with \\( GH^T = 0 \\).
    For \\( G = (I_k | A) \\) this is exactly \\( (A^T | I_{n-k}) \\).
    """
    n = G.col_count
    Gs, perm = standard_form(G)
    k = Gs.row_count
    A = Gs.submatrix(k, n)
    r = n - k
    rows = []
    for i in range(r):
        rows.append((A.column(i) << r) | (1 << (r - 1 - i)))
    H = BitMatrix(rows, n)
    inverse = np.empty(n, dtype=int)
    inverse[perm] = np.arange(n)
    return H.permute_columns(inverse)


def popcount_array(words):
    """ popcount of every entry of a word array from `span_words` """
    words = np.asarray(words)
    if words.dtype == object:
        return np.fromiter(
            (int(w).bit_count() for w in words), dtype=np.int64, count=words.size
        )
    if hasattr(np, "bitwise_count"):
        return np.bitwise_count(words).astype(np.int64)
    words = np.ascontiguousarray(words, dtype=np.uint64)
    return _POPCOUNT8[words.view(np.uint8)].reshape(words.shape + (8,)).sum(
        axis=-1, dtype=np.int64
    )


def word_dtype(n):
    return np.uint64 if n <= 64 else object


def as_word(word, n):
    """ a scalar matching the dtype `span_words` uses for length `n` """
    return np.uint64(word) if n <= 64 else int(word)


def span_words(rows, n):
    """
    All \\( 2^k \\) combinations of `rows`. Entry `m` is the sum of the rows
    whose index bits are set in `m`, row 0 being the least significant bit.

    Args:
        rows : list of int
            packed rows of length `n`
        n : int
            word length; uint64 words up to 64 coordinates, Python ints above

    Returns:
        words : 1D numpy array
    """
    words = np.zeros(1, dtype=word_dtype(n))
    for row in rows:
        words = np.concatenate([words, words ^ as_word(row, n)])
    return words
