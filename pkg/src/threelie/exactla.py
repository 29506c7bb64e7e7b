"""Exact rational linear algebra.

Scalars are :class:`fractions.Fraction`; matrices are immutable and dense.
Elimination is fraction-free (integer Gauss-Jordan with exact Bareiss
divisions) and only normalizes to reduced rationals at the end, so every
rank, kernel and solve result is exact.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, Optional, Sequence, Union

Scalar = Union[int, Fraction, str]
Vector = tuple  # tuple[Fraction, ...]
_INT = re.compile(r"[+-]?[0-9]+")

__all__ = [
    "DimensionError",
    "RationalMatrix",
    "as_fraction",
    "format_rational",
    "kernel_basis",
    "parse_rational",
    "rank",
    "rref",
    "solve",
    "vector",
]


class DimensionError(ValueError):
    """Operands have incompatible shapes."""


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"`` or ``"p"``; unreduced input is accepted and reduced."""
    if not isinstance(text, str):
        raise ValueError(f"rational must be a string, got {type(text).__name__}")
    num, sep, den = text.strip().partition("/")
    if not _INT.fullmatch(num) or (sep and not _INT.fullmatch(den)):
        raise ValueError(f"not a rational literal: {text!r}")
    p = int(num)
    q = int(den) if sep else 1
    if q == 0:
        raise ValueError(f"zero denominator: {text!r}")
    return Fraction(p, q)


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def as_fraction(x: Scalar) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return parse_rational(x)
    if isinstance(x, bool) or not isinstance(x, int):
        raise TypeError(f"exact scalar required, got {type(x).__name__}")
    return Fraction(x)


def vector(values: Iterable[Scalar]) -> Vector:
    return tuple(as_fraction(v) for v in values)


def zero_vector(n: int) -> Vector:
    return (Fraction(0),) * n


def unit_vector(n: int, i: int) -> Vector:
    v = [Fraction(0)] * n
    v[i] = Fraction(1)
    return tuple(v)


def vec_add(u: Sequence[Fraction], v: Sequence[Fraction]) -> Vector:
    # skipping zero terms matters: most vectors here are sparse
    return tuple((a + b if a else b) if b else a for a, b in zip(u, v))


def vec_sub(u: Sequence[Fraction], v: Sequence[Fraction]) -> Vector:
    return tuple((a - b if a else -b) if b else a for a, b in zip(u, v))


def vec_scale(c: Fraction, v: Sequence[Fraction]) -> Vector:
    return tuple(c * a for a in v)


def is_zero(v: Iterable[Fraction]) -> bool:
    return not any(v)


@dataclass(frozen=True)
class RationalMatrix:
    """Dense immutable matrix over the rationals, stored row-major."""

    rows: int
    cols: int
    entries: tuple  # tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise DimensionError("negative shape")
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise DimensionError(f"entries do not match shape {self.rows}x{self.cols}")

    # construction

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Scalar]], cols: Optional[int] = None) -> RationalMatrix:
        data = tuple(vector(r) for r in rows)
        if cols is None:
            cols = len(data[0]) if data else 0
        return cls(len(data), cols, data)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[Scalar]], rows: int) -> RationalMatrix:
        cols = [vector(c) for c in columns]
        if any(len(c) != rows for c in cols):
            raise DimensionError("column length mismatch")
        return cls(rows, len(cols), tuple(tuple(c[i] for c in cols) for i in range(rows)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> RationalMatrix:
        return cls(rows, cols, tuple((Fraction(0),) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, n: int) -> RationalMatrix:
        return cls(n, n, tuple(unit_vector(n, i) for i in range(n)))

    @classmethod
    def diagonal(cls, values: Sequence[Scalar]) -> RationalMatrix:
        vals = vector(values)
        n = len(vals)
        return cls(n, n, tuple(tuple(vals[i] if i == j else Fraction(0) for j in range(n)) for i in range(n)))

    # access

    @property
    def shape(self) -> tuple:
        return (self.rows, self.cols)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def row(self, i: int) -> Vector:
        return self.entries[i]

    def column(self, j: int) -> Vector:
        return tuple(r[j] for r in self.entries)

    def columns(self) -> list:
        return [self.column(j) for j in range(self.cols)]

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.entries)

    def is_square(self) -> bool:
        return self.rows == self.cols

    # arithmetic

    def _check_same(self, other: RationalMatrix):
        if self.shape != other.shape:
            raise DimensionError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other: RationalMatrix) -> RationalMatrix:
        self._check_same(other)
        return RationalMatrix(self.rows, self.cols, tuple(vec_add(a, b) for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: RationalMatrix) -> RationalMatrix:
        self._check_same(other)
        return RationalMatrix(self.rows, self.cols, tuple(vec_sub(a, b) for a, b in zip(self.entries, other.entries)))

    def __neg__(self) -> RationalMatrix:
        return self.scale(Fraction(-1))

    def scale(self, c: Scalar) -> RationalMatrix:
        c = as_fraction(c)
        return RationalMatrix(self.rows, self.cols, tuple(vec_scale(c, r) for r in self.entries))

    def __rmul__(self, c):
        return self.scale(c)

    def __matmul__(self, other: RationalMatrix) -> RationalMatrix:
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        if self.cols != other.rows:
            raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
        orows = [[(j, x) for j, x in enumerate(row) if x] for row in other.entries]
        zero = Fraction(0)
        out = []
        for r in self.entries:
            acc = {}
            for k, a in enumerate(r):
                if a:
                    for j, x in orows[k]:
                        acc[j] = acc[j] + a * x if j in acc else a * x
            out.append(tuple(acc.get(j, zero) for j in range(other.cols)))
        return RationalMatrix(self.rows, other.cols, tuple(out))

    def apply(self, v: Sequence[Fraction]) -> Vector:
        """Matrix-vector product."""
        if len(v) != self.cols:
            raise DimensionError(f"vector of length {len(v)} for {self.shape} matrix")
        nz = [(k, a) for k, a in enumerate(v) if a]
        return tuple(sum((r[k] * a for k, a in nz), Fraction(0)) for r in self.entries)

    def transpose(self) -> RationalMatrix:
        return RationalMatrix(self.cols, self.rows, tuple(self.columns()))

    def __pow__(self, k: int) -> RationalMatrix:
        if not self.is_square():
            raise DimensionError("power of a non-square matrix")
        if k < 0:
            raise ValueError("negative power")
        result = RationalMatrix.identity(self.rows)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def hstack(self, other: RationalMatrix) -> RationalMatrix:
        if self.rows != other.rows:
            raise DimensionError("row count mismatch in hstack")
        return RationalMatrix(self.rows, self.cols + other.cols, tuple(a + b for a, b in zip(self.entries, other.entries)))

    def vstack(self, other: RationalMatrix) -> RationalMatrix:
        if self.cols != other.cols:
            raise DimensionError("column count mismatch in vstack")
        return RationalMatrix(self.rows + other.rows, self.cols, self.entries + other.entries)

    def inverse(self) -> RationalMatrix:
        if not self.is_square():
            raise DimensionError("inverse of a non-square matrix")
        n = self.rows
        red, pivots = rref(self.hstack(RationalMatrix.identity(n)))
        if pivots[:n] != list(range(n)):
            raise ZeroDivisionError("matrix is singular")
        return RationalMatrix(n, n, tuple(r[n:] for r in red.entries))

    def __repr__(self):
        body = "; ".join(" ".join(format_rational(x) for x in r) for r in self.entries)
        return f"RationalMatrix({self.rows}x{self.cols}: [{body}])"


def _integer_rows(m: RationalMatrix) -> list:
    # Row scaling by a nonzero integer preserves the row space.
    out = []
    for r in m.entries:
        den = lcm(*(x.denominator for x in r)) if r else 1
        out.append([int(x * den) for x in r])
    return out


def rref(m: RationalMatrix) -> tuple:
    """Reduced row echelon form and the strictly increasing pivot columns.

    Fraction-free Gauss-Jordan: every update ``(p*a - b*c) / prev`` divides
    exactly, so rows stay integral until the final normalization.  Pivots are
    the first nonzero entry in column order, which makes output deterministic.
    """
    a = _integer_rows(m)
    nrows, ncols = m.rows, m.cols
    prev = 1
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if a[i][c] != 0), None)
        if p is None:
            continue
        if p != r:
            a[p], a[r] = a[r], a[p]
        piv = a[r][c]
        prow = a[r]
        for i in range(nrows):
            if i == r:
                continue
            row = a[i]
            f = row[c]
            if f == 0 and piv == prev:
                continue
            for j in range(ncols):
                q, rem = divmod(piv * row[j] - f * prow[j], prev)
                assert rem == 0, "inexact fraction-free division"
                row[j] = q
        prev = piv
        pivots.append(c)
        r += 1
    out = []
    for i in range(nrows):
        if i < len(pivots):
            d = a[i][pivots[i]]
            out.append(tuple(Fraction(x, d) for x in a[i]))
        else:
            out.append((Fraction(0),) * ncols)
    return RationalMatrix(nrows, ncols, tuple(out)), pivots


def rank(m: RationalMatrix) -> int:
    return len(rref(m)[1])


def kernel_basis(m: RationalMatrix) -> list:
    """Basis of the right null space, one vector per free column.

    Each vector has a 1 in its free column and zeros in the other free
    columns.
    """
    red, pivots = rref(m)
    pivset = set(pivots)
    basis = []
    for f in range(m.cols):
        if f in pivset:
            continue
        v = [Fraction(0)] * m.cols
        v[f] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -red.entries[i][f]
        basis.append(tuple(v))
    return basis


def solve(m: RationalMatrix, b: Sequence[Scalar]) -> Optional[Vector]:
    """Some ``x`` with ``m x = b``, or ``None`` when the system is inconsistent.

    Free variables are set to zero.
    """
    b = vector(b)
    if len(b) != m.rows:
        raise DimensionError(f"right-hand side has length {len(b)}, expected {m.rows}")
    aug = m.hstack(RationalMatrix(m.rows, 1, tuple((x,) for x in b)))
    red, pivots = rref(aug)
    if pivots and pivots[-1] == m.cols:
        return None
    x = [Fraction(0)] * m.cols
    for i, pc in enumerate(pivots):
        x[pc] = red.entries[i][m.cols]
    return tuple(x)


def column_space_pivots(m: RationalMatrix) -> list:
    """Indices of columns of ``m`` forming a basis of its column space."""
    return rref(m)[1]
