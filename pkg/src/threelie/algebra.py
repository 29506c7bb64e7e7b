"""3-Lie algebras given by structure constants.

An algebra stores ``[e_i, e_j, e_k] = sum_l c^l_{ijk} e_l`` only for
``i < j < k``; every other ordering is recovered with a permutation sign, so
skew-symmetry is structural rather than something to validate.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import product
from typing import Iterator, Mapping, Optional

from . import basis
from .exactla import (
    DimensionError,
    RationalMatrix,
    as_fraction,
    unit_vector,
    vec_add,
    vec_scale,
    vec_sub,
    zero_vector,
)
from .report import Violation, collect, nonzero

__all__ = [
    "PairElement",
    "ThreeLieAlgebra",
    "abelian",
    "ad_homomorphism_defect",
    "ad_matrix",
    "adjoint_rep",
    "bracket",
    "change_basis",
    "check_fundamental_identity",
    "check_leibniz_rule",
    "circle",
    "is_three_lie",
    "pair",
    "wedge",
]


def _normalize_vector(values, dim: int, where) -> tuple:
    if isinstance(values, Mapping):
        v = [Fraction(0)] * dim
        for l, c in values.items():
            l = int(l)
            if not 0 <= l < dim:
                raise DimensionError(f"output index {l} out of range at {where}")
            v[l] = as_fraction(c)
        return tuple(v)
    v = tuple(as_fraction(c) for c in values)
    if len(v) != dim:
        raise DimensionError(f"value at {where} has length {len(v)}, expected {dim}")
    return v


@dataclass(frozen=True)
class ThreeLieAlgebra:
    """Skew trilinear bracket on a ``dim``-dimensional rational space.

    ``structure`` may be given as a mapping from canonical triples to either a
    dense coefficient sequence or a sparse ``{l: value}`` mapping; it is stored
    as a sorted tuple of ``(triple, vector)`` with zero brackets dropped.
    """

    dim: int
    structure: tuple = ()
    labels: Optional[tuple] = field(default=None, compare=True)

    def __post_init__(self):
        if self.dim < 0:
            raise DimensionError("dimension must be nonnegative")
        items = self.structure.items() if isinstance(self.structure, Mapping) else self.structure
        table = {}
        for t, values in items:
            t = tuple(int(i) for i in t)
            if len(t) != 3 or not all(0 <= i < self.dim for i in t):
                raise DimensionError(f"triple {t} out of range for dim {self.dim}")
            if not t[0] < t[1] < t[2]:
                raise ValueError(f"triple {t} is not strictly increasing")
            if t in table:
                raise ValueError(f"duplicate triple {t}")
            table[t] = _normalize_vector(values, self.dim, t)
        norm = tuple(sorted((t, v) for t, v in table.items() if any(v)))
        object.__setattr__(self, "structure", norm)
        if self.labels is not None:
            labels = tuple(str(s) for s in self.labels)
            if len(labels) != self.dim:
                raise DimensionError("basis label count does not match dimension")
            object.__setattr__(self, "labels", labels)

    @cached_property
    def table(self) -> dict:
        return dict(self.structure)

    def constant(self, i: int, j: int, k: int) -> tuple:
        """``[e_i, e_j, e_k]`` for arbitrary (not necessarily sorted) indices."""
        s, t = basis.canonical((i, j, k))
        if s == 0:
            return zero_vector(self.dim)
        v = self.table.get(t)
        if v is None:
            return zero_vector(self.dim)
        return v if s == 1 else vec_scale(Fraction(-1), v)

    def is_abelian(self) -> bool:
        return not self.structure

    def __repr__(self):
        return f"ThreeLieAlgebra(dim={self.dim}, nonzero_brackets={len(self.structure)})"


def abelian(dim: int) -> ThreeLieAlgebra:
    return ThreeLieAlgebra(dim)


def _check_len(A: ThreeLieAlgebra, *vs):
    for v in vs:
        if len(v) != A.dim:
            raise DimensionError(f"vector of length {len(v)} for algebra of dim {A.dim}")


def _nz(v) -> list:
    return [(i, c) for i, c in enumerate(v) if c]


def bracket(A: ThreeLieAlgebra, x, y, z) -> tuple:
    """Trilinear, totally skew bracket of three coordinate vectors."""
    _check_len(A, x, y, z)
    out = [Fraction(0)] * A.dim
    table = A.table
    if not table:
        return tuple(out)
    for (i, a), (j, b), (k, c) in product(_nz(x), _nz(y), _nz(z)):
        s, t = basis.canonical((i, j, k))
        if s == 0:
            continue
        v = table.get(t)
        if v is None:
            continue
        coef = a * b * c if s == 1 else -(a * b * c)
        for l, vl in enumerate(v):
            if vl:
                out[l] += coef * vl
    return tuple(out)


def _fi_defect(A: ThreeLieAlgebra, x1, x2, y1, y2, y3) -> tuple:
    lhs = bracket(A, x1, x2, bracket(A, y1, y2, y3))
    r1 = bracket(A, bracket(A, x1, x2, y1), y2, y3)
    r2 = bracket(A, y1, bracket(A, x1, x2, y2), y3)
    r3 = bracket(A, y1, y2, bracket(A, x1, x2, y3))
    return vec_sub(lhs, vec_add(vec_add(r1, r2), r3))


def iter_fundamental_identity(A: ThreeLieAlgebra) -> Iterator[Violation]:
    # Both sides are skew in (x1, x2) and in (y1, y2, y3), so canonical
    # basis tuples are enough.
    e = [unit_vector(A.dim, i) for i in range(A.dim)]
    for a, b in basis.pairs(A.dim):
        for c, d, f in basis.triples(A.dim):
            yield from nonzero("fundamental_identity", ((a, b), (c, d, f)), _fi_defect(A, e[a], e[b], e[c], e[d], e[f]))


def check_fundamental_identity(A: ThreeLieAlgebra, max_violations: Optional[int] = None) -> list:
    """Every canonical basis tuple at which the fundamental identity fails."""
    return collect(iter_fundamental_identity(A), max_violations)


@lru_cache(maxsize=512)
def is_three_lie(A: ThreeLieAlgebra) -> bool:
    return next(iter_fundamental_identity(A), None) is None


def change_basis(A: ThreeLieAlgebra, P: RationalMatrix) -> ThreeLieAlgebra:
    """Structure constants in the basis ``f_a = sum_i P[i, a] e_i``."""
    if P.shape != (A.dim, A.dim):
        raise DimensionError("change of basis must be a dim x dim matrix")
    Pinv = P.inverse()
    cols = P.columns()
    struct = {}
    for t in basis.triples(A.dim):
        v = Pinv.apply(bracket(A, *(cols[i] for i in t)))
        if any(v):
            struct[t] = v
    return ThreeLieAlgebra(A.dim, struct)


# fundamental objects


@dataclass(frozen=True)
class PairElement:
    """Element of the exterior square, coefficients on canonical pairs."""

    dim: int
    coeffs: tuple

    def __post_init__(self):
        c = tuple(as_fraction(x) for x in self.coeffs)
        if len(c) != len(basis.pairs(self.dim)):
            raise DimensionError(f"pair element needs {len(basis.pairs(self.dim))} coefficients")
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def zero(cls, dim: int) -> PairElement:
        return cls(dim, zero_vector(len(basis.pairs(dim))))

    def terms(self) -> list:
        """Nonzero ``((i, j), coefficient)`` with ``i < j``."""
        return [(p, c) for p, c in zip(basis.pairs(self.dim), self.coeffs) if c]

    def __add__(self, other: PairElement) -> PairElement:
        return PairElement(self.dim, vec_add(self.coeffs, other.coeffs))

    def __sub__(self, other: PairElement) -> PairElement:
        return PairElement(self.dim, vec_sub(self.coeffs, other.coeffs))

    def scale(self, c) -> PairElement:
        return PairElement(self.dim, vec_scale(as_fraction(c), self.coeffs))

    def is_zero(self) -> bool:
        return not any(self.coeffs)


def pair(dim: int, i: int, j: int) -> PairElement:
    """The basis fundamental object ``(e_i, e_j)``; zero when ``i == j``."""
    return wedge(unit_vector(dim, i), unit_vector(dim, j))


def wedge(u, v) -> PairElement:
    if len(u) != len(v):
        raise DimensionError("wedge of vectors of different length")
    dim = len(u)
    return PairElement(dim, tuple(u[i] * v[j] - u[j] * v[i] for i, j in basis.pairs(dim)))


def ad_matrix(A: ThreeLieAlgebra, x: PairElement) -> RationalMatrix:
    """Matrix of ``w -> [x1, x2, w]`` extended linearly to pair elements."""
    if x.dim != A.dim:
        raise DimensionError("pair element and algebra dimensions differ")
    cols = []
    for w in range(A.dim):
        col = zero_vector(A.dim)
        for (i, j), c in x.terms():
            col = vec_add(col, vec_scale(c, A.constant(i, j, w)))
        cols.append(col)
    return RationalMatrix.from_columns(cols, A.dim)


def circle(A: ThreeLieAlgebra, x: PairElement, y: PairElement) -> PairElement:
    """``x o y = ([x1,x2,y1], y2) + (y1, [x1,x2,y2])``, bilinearly extended."""
    D = ad_matrix(A, x)
    out = PairElement.zero(A.dim)
    for (c, d), coef in y.terms():
        ec, ed = unit_vector(A.dim, c), unit_vector(A.dim, d)
        term = wedge(D.column(c), ed) + wedge(ec, D.column(d))
        out = out + term.scale(coef)
    return out


def iter_leibniz_rule(A: ThreeLieAlgebra) -> Iterator[Violation]:
    ps = [pair(A.dim, i, j) for i, j in basis.pairs(A.dim)]
    idx = basis.pairs(A.dim)
    for a, x in enumerate(ps):
        for b, y in enumerate(ps):
            xy = circle(A, x, y)
            for c, z in enumerate(ps):
                lhs = circle(A, x, circle(A, y, z))
                rhs = circle(A, xy, z) + circle(A, y, circle(A, x, z))
                yield from nonzero("leibniz_rule", (idx[a], idx[b], idx[c]), (lhs - rhs).coeffs)


def check_leibniz_rule(A: ThreeLieAlgebra, max_violations: Optional[int] = None) -> list:
    """Basis pairs where ``x o (y o z) = (x o y) o z + y o (x o z)`` fails."""
    return collect(iter_leibniz_rule(A), max_violations)


def ad_homomorphism_defect(A: ThreeLieAlgebra, x: PairElement, y: PairElement, w) -> tuple:
    """``ad(x)ad(y)w - ad(y)ad(x)w - ad(x o y)w``."""
    _check_len(A, w)
    X, Y = ad_matrix(A, x), ad_matrix(A, y)
    XY = ad_matrix(A, circle(A, x, y))
    return vec_sub(vec_sub(X.apply(Y.apply(w)), Y.apply(X.apply(w))), XY.apply(w))


def iter_ad_homomorphism(A: ThreeLieAlgebra) -> Iterator[Violation]:
    idx = basis.pairs(A.dim)
    for p in idx:
        for q in idx:
            x, y = pair(A.dim, *p), pair(A.dim, *q)
            for w in range(A.dim):
                d = ad_homomorphism_defect(A, x, y, unit_vector(A.dim, w))
                yield from nonzero("ad_homomorphism", (p, q, w), d)


def adjoint_rep(A: ThreeLieAlgebra):
    """The representation of the algebra on itself, ``rho(x1, x2) = ad(x1, x2)``."""
    from .representation import Representation

    return Representation(A.dim, A.dim, {p: ad_matrix(A, pair(A.dim, *p)) for p in basis.pairs(A.dim)})
