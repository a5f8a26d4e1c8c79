"""Exact linear algebra over the rationals.

Everything here works on :class:`fractions.Fraction` entries; no floating
point is ever introduced.  Matrices are immutable.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence


class SingularMatrix(ValueError):
    pass


class DimensionMismatch(ValueError):
    pass


def to_fraction(value) -> Fraction:
    """Coerce ints, Fractions and strings like ``"3/2"`` to a Fraction.

    Floats are rejected: a float has already lost the exact value.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot convert {type(value).__name__} to an exact rational")


def fraction_str(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class RatMatrix:
    rows: int
    cols: int
    entries: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise DimensionMismatch(
                f"{len(self.entries)} entries for a {self.rows}x{self.cols} matrix"
            )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> RatMatrix:
        rows = [list(r) for r in rows]
        n_rows = len(rows)
        n_cols = len(rows[0]) if rows else 0
        if any(len(r) != n_cols for r in rows):
            raise DimensionMismatch("ragged rows")
        return cls(n_rows, n_cols, tuple(to_fraction(x) for r in rows for x in r))

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence], n_rows: int | None = None) -> RatMatrix:
        cols = [list(c) for c in cols]
        if not cols:
            return cls(n_rows or 0, 0, ())
        return cls.from_rows(list(zip(*cols)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> RatMatrix:
        return cls(rows, cols, (Fraction(0),) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> RatMatrix:
        return cls(n, n, tuple(Fraction(int(i == j)) for i in range(n) for j in range(n)))

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> list[Fraction]:
        return list(self.entries[i * self.cols:(i + 1) * self.cols])

    def col(self, j: int) -> list[Fraction]:
        return [self.entries[i * self.cols + j] for i in range(self.rows)]

    def to_rows(self) -> list[list[Fraction]]:
        return [self.row(i) for i in range(self.rows)]

    def columns(self) -> list[list[Fraction]]:
        return [self.col(j) for j in range(self.cols)]

    @property
    def T(self) -> RatMatrix:
        return RatMatrix.from_rows(self.columns()) if self.cols else RatMatrix(0, self.rows, ())

    def __matmul__(self, other: RatMatrix) -> RatMatrix:
        if self.cols != other.rows:
            raise DimensionMismatch(f"{self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        ocols = other.columns()
        out = []
        for i in range(self.rows):
            r = self.row(i)
            for c in ocols:
                out.append(sum((a * b for a, b in zip(r, c) if a and b), Fraction(0)))
        return RatMatrix(self.rows, other.cols, tuple(out))

    def __add__(self, other: RatMatrix) -> RatMatrix:
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatch("shape mismatch in addition")
        return RatMatrix(self.rows, self.cols, tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: RatMatrix) -> RatMatrix:
        return self + other.scale(-1)

    def scale(self, c) -> RatMatrix:
        c = to_fraction(c)
        return RatMatrix(self.rows, self.cols, tuple(c * a for a in self.entries))

    def apply(self, v: Sequence) -> list[Fraction]:
        if len(v) != self.cols:
            raise DimensionMismatch(f"vector of length {len(v)} for {self.cols} columns")
        return [sum((a * b for a, b in zip(self.row(i), v) if a and b), Fraction(0))
                for i in range(self.rows)]

    def is_zero(self) -> bool:
        return not any(self.entries)

    def trace(self) -> Fraction:
        if self.rows != self.cols:
            raise DimensionMismatch("trace of a non-square matrix")
        return sum((self[i, i] for i in range(self.rows)), Fraction(0))

    def rank(self) -> int:
        return len(rref(self.to_rows())[1])

    def det(self) -> Fraction:
        if self.rows != self.cols:
            raise DimensionMismatch("determinant of a non-square matrix")
        return determinant(self.to_rows())

    def inverse(self) -> RatMatrix:
        if self.rows != self.cols:
            raise DimensionMismatch("inverse of a non-square matrix")
        n = self.rows
        aug = [r + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(self.to_rows())]
        red, pivots = rref(aug)
        if pivots[:n] != list(range(n)):
            raise SingularMatrix("matrix is not invertible")
        return RatMatrix.from_rows([r[n:] for r in red[:n]])


def rref(rows: Iterable[Sequence[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form and pivot columns."""
    m = [list(map(to_fraction, r)) for r in rows]
    if not m:
        return m, []
    n_rows, n_cols = len(m), len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(n_cols):
        piv = next((i for i in range(r, n_rows) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(n_rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == n_rows:
            break
    return m, pivots


def determinant(rows: Sequence[Sequence[Fraction]]) -> Fraction:
    m = [list(map(to_fraction, r)) for r in rows]
    n = len(m)
    det = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det *= m[c][c]
        for i in range(c + 1, n):
            if m[i][c] != 0:
                f = m[i][c] / m[c][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return det


def nullspace(mat: RatMatrix) -> list[list[Fraction]]:
    """Basis of {v : mat v = 0}, one vector per free column."""
    red, pivots = rref(mat.to_rows())
    free = [c for c in range(mat.cols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * mat.cols
        v[f] = Fraction(1)
        for r, p in enumerate(pivots):
            v[p] = -red[r][f]
        basis.append(v)
    return basis


def column_basis(vectors: Sequence[Sequence[Fraction]], dim: int) -> list[list[Fraction]]:
    """A linearly independent subset spanning the same space (canonical reduced form)."""
    vectors = [list(map(to_fraction, v)) for v in vectors]
    if not vectors:
        return []
    red, pivots = rref(vectors)
    return [red[i] for i in range(len(pivots))]


def solve(mat: RatMatrix, rhs: Sequence[Fraction]) -> list[Fraction] | None:
    """One exact solution of ``mat x = rhs``, or None if inconsistent."""
    aug = [r + [to_fraction(b)] for r, b in zip(mat.to_rows(), rhs)]
    red, pivots = rref(aug)
    if mat.cols in pivots:
        return None
    x = [Fraction(0)] * mat.cols
    for r, p in enumerate(pivots):
        x[p] = red[r][mat.cols]
    return x
