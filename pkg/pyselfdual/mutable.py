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
The \\( \\mu \\)-table: admissible overlaps between two rows \\( r_1, r_2 \\) of
the A-block of a standard-form generator \\( (I_k | A) \\) of a self-dual
(n, k, d) code.

For full rows \\( g_i = (e_i | r_i) \\) the sum \\( g_1 + g_2 \\) has weight
\\( 2 + w_1 + w_2 - 2\\mu \\), which must lie in \\( [d, n-d] \\). Row
orthogonality forces \\( \\mu \\) to be even (the identity parts are disjoint)
and two supports inside \\( n - k \\) columns overlap in at least
\\( w_1 + w_2 - (n - k) \\) positions.
"""

# -*- coding: utf-8 -*-
from .codemodel import CodeType, ParameterError, validate_parameters


def allowed_row_weights(n, k, d, code_type, max_row_weight=None, parity=True):
    """
    Admissible weights w of an A-row, in descending order.

    Args:
        n, k, d : int
            target parameters
        code_type : CodeType or str
            "I" needs w odd, "II" needs \\( w \\equiv 3 \\bmod 4 \\)
        max_row_weight : int (optional)
            upper bound on the full-row weight \\( 1 + w \\)
        parity : bool
            apply the parity rule of the type; without it only the weight
            window is applied

    Returns:
        weights : list of int
    """
    code_type = validate_parameters(n, k, d, code_type)
    if code_type.self_dual:
        upper = min(k, n - k)
    else:
        upper = n - k
    weights = []
    for w in range(upper, -1, -1):
        full = 1 + w
        if max_row_weight is not None and full > max_row_weight:
            continue
        if code_type.self_dual:
            # a lone row of a k = 1 code is the all-ones word
            if not (d <= full <= n - d or (k == 1 and full == n)):
                continue
            if parity and code_type is CodeType.TYPE_I and full % 2:
                continue
            if parity and code_type is CodeType.TYPE_II and full % 4:
                continue
        elif full < d:
            continue
        weights.append(w)
    return weights


def mu_set(w1, w2, n, k, d):
    """
    Admissible values of \\( \\mu(r_1, r_2) \\) for A-rows of weights
    `w1` and `w2`.

    Returns:
        values : list of int
            sorted, possibly empty
    """
    low = max(0, w1 + w2 - (n - k))
    high = min(w1, w2)
    values = []
    for m in range(low, high + 1):
        if m % 2:
            continue
        pair = 2 + w1 + w2 - 2 * m
        # g1 + g2 = 1 is only possible when the two rows are the whole code
        if d <= pair <= n - d or (k == 2 and pair == n):
            values.append(m)
    return values


class MuTable(object):
    """
    Admissible \\( \\mu \\) values for every pair of admissible A-row weights.

    Args:
        n, k, d : int
            target parameters
        code_type : CodeType
            type of the target code
        allowed_row_weights : list of int
            descending A-row weights
        cells : dict
            (w1, w2) -> tuple of admissible \\( \\mu \\)

    Notes:
        Empty cells are stored as empty tuples so that they can be queried.
    """

    def __init__(self, n, k, d, code_type, allowed_row_weights, cells):
        self.n = n
        self.k = k
        self.d = d
        self.code_type = code_type
        self.allowed_row_weights = list(allowed_row_weights)
        self.cells = dict(cells)

    def __getitem__(self, pair):
        return self.cells[pair]

    def __contains__(self, pair):
        return pair in self.cells

    def admits(self, w1, w2, value):
        return value in self.cells.get((w1, w2), ())

    def __eq__(self, other):
        if not isinstance(other, MuTable):
            return NotImplemented
        return (self.n, self.k, self.d, self.code_type, self.cells) == (
            other.n,
            other.k,
            other.d,
            other.code_type,
            other.cells,
        )

    def render(self):
        """
        Text layout: one row and one column per admissible weight in
        descending order, cells as "{a,b}" or "-" for an empty set,
        fields padded to a common width and separated by " | ".

        ```
        w(r1)\\w(r2) | 27   | 25   | ...
        27          | -    | -    | ...
        ```
        """
        weights = self.allowed_row_weights
        corner = "w(r1)\\w(r2)"
        texts = {}
        for pair, values in self.cells.items():
            texts[pair] = "{" + ",".join(str(v) for v in values) + "}" if values else "-"

        first_width = max([len(corner)] + [len(str(w)) for w in weights])
        width = max([len(str(w)) for w in weights] + [len(t) for t in texts.values()])

        lines = []
        header = [corner.ljust(first_width)] + [str(w).ljust(width) for w in weights]
        lines.append(" | ".join(header).rstrip())
        for w1 in weights:
            fields = [str(w1).ljust(first_width)]
            fields += [texts[(w1, w2)].ljust(width) for w2 in weights]
            lines.append(" | ".join(fields).rstrip())
        return "\n".join(lines) + "\n"


def build_table(n, k, d, code_type, max_row_weight=None):
    """
    Build the full, symmetric \\( \\mu \\)-table of a self-dual target.
    """
    code_type = CodeType.parse(code_type)
    if not code_type.self_dual:
        raise ParameterError("type", "the mu-table only applies to self-dual codes")
    weights = allowed_row_weights(n, k, d, code_type, max_row_weight)
    cells = {}
    for w1 in weights:
        for w2 in weights:
            cells[(w1, w2)] = tuple(mu_set(w1, w2, n, k, d))
    return MuTable(n, k, d, code_type, weights, cells)
