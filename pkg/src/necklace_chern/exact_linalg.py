"""Exact rational matrices: minors, maximal-minor sums, Pfaffians, parity.

All arithmetic is over `fractions.Fraction`; there is no floating point
anywhere.  The module houses the two matrix routes to the rational parity
of a word: the sum of maximal minors of the column-normalized word matrix,
and the Pfaffian of the skew matrix of column-pair minor sums.  The two
routes stay independent so tests can compare them against each other and
against the subword oracle.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import (
    DimensionMismatchError,
    InvalidInputError,
    OddSizeError,
    ZeroColumnSumError,
)
from .words_necklaces import Word

__all__ = [
    "ExactMatrix",
    "SkewMatrix",
    "word_matrix",
    "normalized_word_matrix",
    "apply_as_operator",
    "determinant",
    "sum_maximal_minors",
    "column_subset_minor_sum",
    "pfaffian",
    "okada_matrix",
    "matrix_parity",
]

Rational = Fraction
_EntryLike = object  # ints, Fractions and "p/q" strings are accepted


def _as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise InvalidInputError("matrix entries must be rational numbers")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise InvalidInputError(f"cannot interpret {value!r} as an exact rational")


@dataclass(frozen=True)
class ExactMatrix:
    """A rectangular matrix of arbitrary-precision rationals."""

    entries: Tuple[Tuple[Fraction, ...], ...]

    def __post_init__(self) -> None:
        if not self.entries:
            raise InvalidInputError("matrix needs at least one row")
        width = len(self.entries[0])
        if width == 0:
            raise InvalidInputError("matrix needs at least one column")
        for row in self.entries:
            if len(row) != width:
                raise InvalidInputError("matrix rows have unequal lengths")

    @staticmethod
    def from_rows(rows: Sequence[Sequence[_EntryLike]]) -> "ExactMatrix":
        return ExactMatrix(tuple(tuple(_as_fraction(x) for x in row) for row in rows))

    @staticmethod
    def identity(size: int) -> "ExactMatrix":
        return ExactMatrix.from_rows(
            [[1 if i == j else 0 for j in range(size)] for i in range(size)]
        )

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0])

    def entry(self, i: int, j: int) -> Fraction:
        return self.entries[i][j]

    def row(self, i: int) -> Tuple[Fraction, ...]:
        return self.entries[i]

    def column(self, j: int) -> Tuple[Fraction, ...]:
        return tuple(row[j] for row in self.entries)

    def column_sum(self, j: int) -> Fraction:
        return sum((row[j] for row in self.entries), Fraction(0))

    def submatrix(
        self, row_indices: Sequence[int], col_indices: Optional[Sequence[int]] = None
    ) -> "ExactMatrix":
        cols = range(self.cols) if col_indices is None else col_indices
        return ExactMatrix(
            tuple(tuple(self.entries[i][j] for j in cols) for i in row_indices)
        )

    def delete_column(self, j: int) -> "ExactMatrix":
        keep = [c for c in range(self.cols) if c != j]
        return self.submatrix(range(self.rows), keep)

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(tuple(zip(*self.entries)))


@dataclass(frozen=True)
class SkewMatrix:
    """A square matrix with exact antisymmetry and zero diagonal.

    Pfaffians exist for even sizes only; odd sizes may be constructed (the
    Pfaffian then reports the failure) but antisymmetry is always enforced.
    """

    entries: Tuple[Tuple[Fraction, ...], ...]

    def __post_init__(self) -> None:
        n = len(self.entries)
        for row in self.entries:
            if len(row) != n:
                raise InvalidInputError("skew matrix must be square")
        for i in range(n):
            if self.entries[i][i] != 0:
                raise InvalidInputError(f"diagonal entry ({i},{i}) is nonzero")
            for j in range(i + 1, n):
                if self.entries[i][j] != -self.entries[j][i]:
                    raise InvalidInputError(
                        f"entries ({i},{j}) and ({j},{i}) are not opposite"
                    )

    @staticmethod
    def from_rows(rows: Sequence[Sequence[_EntryLike]]) -> "SkewMatrix":
        return SkewMatrix(tuple(tuple(_as_fraction(x) for x in row) for row in rows))

    @staticmethod
    def from_upper_triangle(
        size: int, upper: Dict[Tuple[int, int], _EntryLike]
    ) -> "SkewMatrix":
        table = [[Fraction(0)] * size for _ in range(size)]
        for (i, j), value in upper.items():
            if not 0 <= i < j < size:
                raise InvalidInputError(f"({i},{j}) is not an upper-triangle index")
            v = _as_fraction(value)
            table[i][j] = v
            table[j][i] = -v
        return SkewMatrix(tuple(tuple(row) for row in table))

    @property
    def size(self) -> int:
        return len(self.entries)

    def entry(self, i: int, j: int) -> Fraction:
        return self.entries[i][j]

    def to_exact_matrix(self) -> ExactMatrix:
        return ExactMatrix(self.entries)


# =========================================================================
# Word matrices
# =========================================================================


def word_matrix(w: Word) -> ExactMatrix:
    """The 0/1 matrix L(w) with entry (i, j) = 1 iff w(i) = j."""
    return ExactMatrix.from_rows(
        [[1 if letter == j else 0 for j in range(w.alphabet_size)] for letter in w.letters]
    )


def normalized_word_matrix(w: Word) -> ExactMatrix:
    """The column-normalized word matrix: entry (i, j) = 1/m_j iff w(i) = j."""
    mult = w.multiplicities()
    return ExactMatrix(
        tuple(
            tuple(
                Fraction(1, mult[j]) if letter == j else Fraction(0)
                for j in range(w.alphabet_size)
            )
            for letter in w.letters
        )
    )


def apply_as_operator(
    m: ExactMatrix, t: Sequence[_EntryLike]
) -> Tuple[Fraction, ...]:
    """Apply a column-stochastic matrix to a barycentric point, exactly.

    ``t`` must have one nonnegative entry per column, summing to one; the
    result has one entry per row.
    """
    point = tuple(_as_fraction(x) for x in t)
    if len(point) != m.cols:
        raise DimensionMismatchError(
            f"point has {len(point)} coordinates, matrix has {m.cols} columns"
        )
    if any(x < 0 for x in point):
        raise InvalidInputError("barycentric coordinates must be nonnegative")
    if sum(point) != 1:
        raise InvalidInputError("barycentric coordinates must sum to one")
    return tuple(
        sum((row[j] * point[j] for j in range(m.cols)), Fraction(0))
        for row in m.entries
    )


# =========================================================================
# Determinants and minor sums
# =========================================================================


def _det_int(rows: List[List[int]]) -> int:
    """Fraction-free (Bareiss) determinant of a small integer matrix."""
    n = len(rows)
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    if n == 3:
        a, b, c = rows[0]
        d, e, f = rows[1]
        g, h, i = rows[2]
        return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)
    m = [row[:] for row in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for swap in range(k + 1, n):
                if m[swap][k] != 0:
                    m[k], m[swap] = m[swap], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * pivot - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = pivot
    return sign * m[n - 1][n - 1]


def _integer_scaled(m: ExactMatrix) -> Tuple[List[List[int]], Fraction]:
    """Scale columns to integers; returns (int matrix, maximal-minor scale).

    Every maximal minor of the original equals the integer minor divided by
    the product of the column scaling factors.
    """
    scales: List[int] = []
    for j in range(m.cols):
        denom = 1
        for i in range(m.rows):
            d = m.entries[i][j].denominator
            denom = denom * d // gcd(denom, d)
        scales.append(denom)
    table = [
        [int(m.entries[i][j] * scales[j]) for j in range(m.cols)]
        for i in range(m.rows)
    ]
    factor = 1
    for s in scales:
        factor *= s
    return table, Fraction(1, factor)


def determinant(m: ExactMatrix) -> Fraction:
    """Exact determinant of a square matrix (fraction-free elimination)."""
    if m.rows != m.cols:
        raise DimensionMismatchError(f"determinant of a {m.rows}x{m.cols} matrix")
    table, scale = _integer_scaled(m)
    return _det_int(table) * scale


def _cofactor_determinant(m: ExactMatrix) -> Fraction:
    """Direct cofactor expansion; the small-size oracle used in tests."""
    if m.rows != m.cols:
        raise DimensionMismatchError(f"determinant of a {m.rows}x{m.cols} matrix")
    n = m.rows
    if n == 1:
        return m.entries[0][0]
    total = Fraction(0)
    rest_rows = range(1, n)
    for j in range(n):
        a = m.entries[0][j]
        if a == 0:
            continue
        minor = m.submatrix(rest_rows, [c for c in range(n) if c != j])
        total += (-1) ** j * a * _cofactor_determinant(minor)
    return total


def sum_maximal_minors(m: ExactMatrix) -> Fraction:
    """Sum of the determinants of all maximal (cols x cols) row selections.

    Rows are kept in increasing order inside each selection; the sum does
    not depend on the enumeration order.
    """
    if m.rows < m.cols:
        raise DimensionMismatchError(
            f"need at least as many rows as columns, got {m.rows}x{m.cols}"
        )
    table, scale = _integer_scaled(m)
    k = m.cols
    total = 0
    for selection in itertools.combinations(range(m.rows), k):
        total += _det_int([table[i] for i in selection])
    return total * scale


def column_subset_minor_sum(m: ExactMatrix, columns: Sequence[int]) -> Fraction:
    """Sum of all |columns| x |columns| minors using exactly those columns.

    Computed over all row selections of matching size with both index sets
    increasing.  The empty column set gives 1 (the empty minor).
    """
    columns = tuple(columns)
    if len(set(columns)) != len(columns):
        raise InvalidInputError("column subset contains repeats")
    if not columns:
        return Fraction(1)
    sub = m.submatrix(range(m.rows), sorted(columns))
    return sum_maximal_minors(sub)


# =========================================================================
# Pfaffians and the Okada matrix
# =========================================================================


def pfaffian(s: SkewMatrix) -> Fraction:
    """Pfaffian by the recursive expansion along the first row.

    Pf of the empty matrix is 1; Pf(M)^2 equals det(M).  The memoized
    recursion costs O(2^n) subsets in the worst case (factorial without the
    memo), which is fine up to size 12 or so; the skew matrices built in
    this package stay far smaller (size k+1 or k+2 for a k+1 column input).

    Raises
    ------
    OddSizeError
        For matrices of odd size, whose Pfaffian does not exist.
    """
    n = s.size
    if n % 2 == 1:
        raise OddSizeError(f"Pfaffian of an odd size {n}")
    memo: Dict[Tuple[int, ...], Fraction] = {}

    def rec(indices: Tuple[int, ...]) -> Fraction:
        if not indices:
            return Fraction(1)
        cached = memo.get(indices)
        if cached is not None:
            return cached
        first = indices[0]
        total = Fraction(0)
        for pos in range(1, len(indices)):
            a = s.entries[first][indices[pos]]
            if a == 0:
                continue
            rest = indices[1:pos] + indices[pos + 1 :]
            term = a * rec(rest)
            total += term if pos % 2 == 1 else -term
        memo[indices] = total
        return total

    return rec(tuple(range(n)))


def okada_matrix(x: ExactMatrix) -> SkewMatrix:
    """The skew matrix of column-subset minor sums whose Pfaffian is the
    full maximal-minor sum.

    For an input with an odd number of columns k+1 the result has size k+2:
    row and column 0 hold the single-column sums and the remaining block
    holds the column-pair sums.  For an even number of columns the result
    is the k+1 sized block of column-pair sums alone.
    """
    if x.rows < x.cols:
        raise DimensionMismatchError(
            f"need at least as many rows as columns, got {x.rows}x{x.cols}"
        )
    k1 = x.cols
    singles = [x.column_sum(j) for j in range(k1)]
    pairs: Dict[Tuple[int, int], Fraction] = {}
    for a in range(k1):
        for b in range(a + 1, k1):
            total = Fraction(0)
            for i, ip in itertools.combinations(range(x.rows), 2):
                total += (
                    x.entries[i][a] * x.entries[ip][b]
                    - x.entries[i][b] * x.entries[ip][a]
                )
            pairs[(a, b)] = total
    if k1 % 2 == 1:
        upper: Dict[Tuple[int, int], Fraction] = {}
        for j in range(k1):
            upper[(0, j + 1)] = singles[j]
        for (a, b), v in pairs.items():
            upper[(a + 1, b + 1)] = v
        return SkewMatrix.from_upper_triangle(k1 + 1, upper)
    return SkewMatrix.from_upper_triangle(k1, pairs)


def matrix_parity(x: ExactMatrix) -> Fraction:
    """Maximal-minor sum divided by the product of the column sums.

    Scale invariant per column; on word matrices (normalized or not) it
    equals the rational parity of the word.

    Raises
    ------
    ZeroColumnSumError
        When some column sums to zero and the quotient is undefined.
    """
    if x.rows < x.cols:
        raise DimensionMismatchError(
            f"need at least as many rows as columns, got {x.rows}x{x.cols}"
        )
    denominator = Fraction(1)
    for j in range(x.cols):
        s_j = x.column_sum(j)
        if s_j == 0:
            raise ZeroColumnSumError(f"column {j} sums to zero")
        denominator *= s_j
    return sum_maximal_minors(x) / denominator
