"""Representations of a 3-Lie algebra and the induced Leibniz actions on Hom(g, V).

A representation stores one ``dimV x dimV`` matrix per canonical pair
``i < j``; ``rho(e_j, e_i) = -rho(e_i, e_j)`` and ``rho(e_i, e_i) = 0``
follow from the sign-adjusted lookup.  Linear maps ``g -> V`` (``HomGV``) are
plain ``dimV x dim`` :class:`RationalMatrix` values.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Iterator, Mapping, Optional, Sequence

from . import basis
from .algebra import PairElement, ThreeLieAlgebra, ad_matrix, bracket, circle, pair, wedge
from .exactla import DimensionError, RationalMatrix, unit_vector
from .report import Violation, collect, nonzero

__all__ = [
    "Representation",
    "action_L",
    "action_R",
    "check_R1",
    "check_R2",
    "check_leibniz_module_axioms",
    "conjugate",
    "direct_sum",
    "is_representation",
    "restrict",
    "rho",
    "zero_rep",
]

AXIOMS = ("LLM", "LML", "MLL", "MMM")


def _as_matrix(m, n: int) -> RationalMatrix:
    if not isinstance(m, RationalMatrix):
        m = RationalMatrix.from_rows(m, cols=n)
    if m.shape != (n, n):
        raise DimensionError(f"action matrix has shape {m.shape}, expected {(n, n)}")
    return m


@dataclass(frozen=True)
class Representation:
    """``rho: wedge^2 g -> End(V)`` given on canonical basis pairs; absent pairs act by zero."""

    dim: int
    dimV: int
    action: tuple = ()

    def __post_init__(self):
        items = self.action.items() if isinstance(self.action, Mapping) else self.action
        table = {}
        for p, m in items:
            p = tuple(int(i) for i in p)
            if len(p) != 2 or not all(0 <= i < self.dim for i in p):
                raise DimensionError(f"pair {p} out of range for dim {self.dim}")
            if not p[0] < p[1]:
                raise ValueError(f"pair {p} is not strictly increasing")
            if p in table:
                raise ValueError(f"duplicate pair {p}")
            table[p] = _as_matrix(m, self.dimV)
        object.__setattr__(self, "action", tuple(sorted((p, m) for p, m in table.items() if not m.is_zero())))

    @cached_property
    def table(self) -> dict:
        return dict(self.action)

    @cached_property
    def _zero(self) -> RationalMatrix:
        return RationalMatrix.zeros(self.dimV, self.dimV)

    def matrix(self, i: int, j: int) -> RationalMatrix:
        """``rho(e_i, e_j)`` for any ordering of the indices."""
        if i == j:
            return self._zero
        m = self.table.get((min(i, j), max(i, j)))
        if m is None:
            return self._zero
        return m if i < j else -m

    def apply(self, u, v, w) -> tuple:
        """``rho(u, v) w`` for coordinate vectors ``u, v`` in g and ``w`` in V."""
        out = [Fraction(0)] * self.dimV
        if not self.table or not any(w):
            return tuple(out)
        for (i, j), m in self.action:
            c = u[i] * v[j] - u[j] * v[i]
            if c:
                for l, val in enumerate(m.apply(w)):
                    if val:
                        out[l] += c * val
        return tuple(out)

    def __repr__(self):
        return f"Representation(dim={self.dim}, dimV={self.dimV}, nonzero_pairs={len(self.action)})"


def zero_rep(dim: int, dimV: int) -> Representation:
    return Representation(dim, dimV)


def _check_compatible(A: ThreeLieAlgebra, R: Representation):
    if A.dim != R.dim:
        raise DimensionError(f"representation of a dim-{R.dim} algebra used with dim {A.dim}")


def rho(R: Representation, x: PairElement) -> RationalMatrix:
    """Linear extension of the stored pair matrices to a pair element."""
    if x.dim != R.dim:
        raise DimensionError("pair element and representation dimensions differ")
    out = RationalMatrix.zeros(R.dimV, R.dimV)
    for (i, j), c in x.terms():
        m = R.table.get((i, j))
        if m is not None:
            out = out + m.scale(c)
    return out


def _flat(m: RationalMatrix) -> tuple:
    return tuple(x for r in m.entries for x in r)


def iter_R1(A: ThreeLieAlgebra, R: Representation) -> Iterator[Violation]:
    idx = basis.pairs(A.dim)
    for p in idx:
        X = R.matrix(*p)
        for q in idx:
            Y = R.matrix(*q)
            rhs = rho(R, circle(A, pair(A.dim, *p), pair(A.dim, *q)))
            yield from nonzero("R1", (p, q), _flat(X @ Y - Y @ X - rhs))


def check_R1(A: ThreeLieAlgebra, R: Representation, max_violations: Optional[int] = None) -> list:
    """Canonical pairs where ``[rho(x), rho(y)] = rho(x o y)`` fails."""
    _check_compatible(A, R)
    return collect(iter_R1(A, R), max_violations)


def iter_R2(A: ThreeLieAlgebra, R: Representation) -> Iterator[Violation]:
    e = [unit_vector(A.dim, i) for i in range(A.dim)]
    M = R.matrix
    for x in range(A.dim):
        for y1, y2, y3 in basis.triples(A.dim):
            lhs = rho(R, wedge(e[x], bracket(A, e[y1], e[y2], e[y3])))
            rhs = M(y2, y3) @ M(x, y1) + M(y3, y1) @ M(x, y2) + M(y1, y2) @ M(x, y3)
            yield from nonzero("R2", (x, (y1, y2, y3)), _flat(lhs - rhs))


def check_R2(A: ThreeLieAlgebra, R: Representation, max_violations: Optional[int] = None) -> list:
    """Basis ``x1`` and canonical triples where the second representation identity fails.

    The left side ``rho(x1, [y1, y2, y3])`` is evaluated by bilinear expansion
    of the bracket over the stored pair matrices.
    """
    _check_compatible(A, R)
    return collect(iter_R2(A, R), max_violations)


@lru_cache(maxsize=512)
def is_representation(A: ThreeLieAlgebra, R: Representation) -> bool:
    _check_compatible(A, R)
    return next(iter_R1(A, R), None) is None and next(iter_R2(A, R), None) is None


def _check_hom(A: ThreeLieAlgebra, R: Representation, phi: RationalMatrix):
    if phi.shape != (R.dimV, A.dim):
        raise DimensionError(f"Hom(g, V) element must be {R.dimV}x{A.dim}, got {phi.shape}")


def action_L(A: ThreeLieAlgebra, R: Representation, x: PairElement, phi: RationalMatrix) -> RationalMatrix:
    """``[x, phi]_L(w) = rho(x) phi(w) - phi([x1, x2, w])``."""
    _check_compatible(A, R)
    _check_hom(A, R, phi)
    return rho(R, x) @ phi - phi @ ad_matrix(A, x)


def _action_R_basis(A, R, phi, i, j) -> RationalMatrix:
    phi_ad = phi @ ad_matrix(A, pair(A.dim, i, j))
    rho_phi = R.matrix(i, j) @ phi
    phi_i, phi_j = phi.column(i), phi.column(j)
    cols = []
    for k in range(A.dim):
        a = R.matrix(j, k).apply(phi_i)
        b = R.matrix(k, i).apply(phi_j)
        cols.append(tuple(p - q - s - t for p, q, s, t in zip(phi_ad.column(k), rho_phi.column(k), a, b)))
    return RationalMatrix.from_columns(cols, R.dimV)


def action_R(A: ThreeLieAlgebra, R: Representation, phi: RationalMatrix, x: PairElement) -> RationalMatrix:
    """``[phi, (x1, x2)]_R(x3) = phi([x1,x2,x3]) - rho(x1,x2)phi(x3) - rho(x2,x3)phi(x1) - rho(x3,x1)phi(x2)``.

    The formula is skew in ``(x1, x2)``, so it extends linearly to any pair
    element.
    """
    _check_compatible(A, R)
    _check_hom(A, R, phi)
    out = RationalMatrix.zeros(R.dimV, A.dim)
    for (i, j), c in x.terms():
        out = out + _action_R_basis(A, R, phi, i, j).scale(c)
    return out


def _matrix_units(rows: int, cols: int) -> list:
    units = []
    for i in range(cols):
        for l in range(rows):
            entries = [[Fraction(0)] * cols for _ in range(rows)]
            entries[l][i] = Fraction(1)
            units.append(((l, i), RationalMatrix.from_rows(entries, cols=cols)))
    return units


def _operator(fn, units: list, size: int) -> RationalMatrix:
    # matrix of a linear map on Hom(g, V) in row-major flattened coordinates
    cols = [None] * size
    for (l, i), m in units:
        cols[l * m.cols + i] = _flat(fn(m))
    return RationalMatrix.from_columns(cols, size)


def _combine(ops: dict, x: PairElement, size: int) -> RationalMatrix:
    out = RationalMatrix.zeros(size, size)
    for p, c in x.terms():
        out = out + ops[p].scale(c)
    return out


def check_leibniz_module_axioms(A: ThreeLieAlgebra, R: Representation, max_violations: Optional[int] = None) -> dict:
    """Violations of LLM, LML, MLL and MMM for the actions on Hom(g, V).

    Both actions are linear in the module element and in the pair element,
    so each axiom is an identity between operators on Hom(g, V) built from
    basis pairs.  A violation is reported per canonical basis pair ``x, y``
    and matrix unit of Hom(g, V), with the defect of that unit's image.
    """
    _check_compatible(A, R)
    report = {name: [] for name in AXIOMS}
    idx = basis.pairs(A.dim)
    units = _matrix_units(R.dimV, A.dim)
    size = R.dimV * A.dim
    Lop = {p: _operator(lambda m: action_L(A, R, pair(A.dim, *p), m), units, size) for p in idx}
    Rop = {p: _operator(lambda m: action_R(A, R, m, pair(A.dim, *p)), units, size) for p in idx}
    for p in idx:
        x = pair(A.dim, *p)
        Lx, Rx = Lop[p], Rop[p]
        for q in idx:
            y = pair(A.dim, *q)
            Ly, Ry = Lop[q], Rop[q]
            xy = circle(A, x, y)
            Lxy, Rxy = _combine(Lop, xy, size), _combine(Rop, xy, size)
            RyRx, LxRy, RyLx = Ry @ Rx, Lx @ Ry, Ry @ Lx
            defects = {
                "LLM": Lxy - (Lx @ Ly - Ly @ Lx),
                "LML": Rxy - (RyRx + LxRy),
                "MLL": Rxy - (LxRy - RyLx),
                "MMM": RyRx + RyLx,
            }
            for where, m in units:
                col = where[0] * A.dim + where[1]
                for name, d in defects.items():
                    bucket = report[name]
                    if max_violations is not None and len(bucket) >= max_violations:
                        continue
                    bucket.extend(nonzero(name, (p, q, where), d.column(col)))
    return report


# constructions


def direct_sum(R1: Representation, R2: Representation) -> Representation:
    if R1.dim != R2.dim:
        raise DimensionError("direct sum of representations of different algebras")
    n = R1.dimV + R2.dimV
    action = {}
    for p in basis.pairs(R1.dim):
        a, b = R1.matrix(*p), R2.matrix(*p)
        rows = [list(r) + [Fraction(0)] * R2.dimV for r in a.entries]
        rows += [[Fraction(0)] * R1.dimV + list(r) for r in b.entries]
        action[p] = RationalMatrix.from_rows(rows, cols=n)
    return Representation(R1.dim, n, action)


def conjugate(R: Representation, Q: RationalMatrix) -> Representation:
    """Same representation written in the basis of V given by the columns of ``Q``."""
    Qinv = Q.inverse()
    return Representation(R.dim, R.dimV, {p: Qinv @ m @ Q for p, m in R.action})


def restrict(R: Representation, coords: Sequence[int]) -> Representation:
    """Restriction to the coordinate subspace spanned by ``coords``, which must be invariant."""
    coords = list(coords)
    keep = set(coords)
    action = {}
    for p, m in R.action:
        for j in coords:
            for i in range(R.dimV):
                if i not in keep and m[i, j]:
                    raise ValueError(f"coordinate subspace {coords} is not invariant under rho{p}")
        action[p] = RationalMatrix.from_rows([[m[i, j] for j in coords] for i in coords], cols=len(coords))
    return Representation(R.dim, len(coords), action)


def change_algebra_basis(R: Representation, P: RationalMatrix) -> Representation:
    """The representation seen from the algebra basis ``f_a = sum_i P[i, a] e_i``."""
    cols = P.columns()
    return Representation(R.dim, R.dimV, {(a, b): rho(R, wedge(cols[a], cols[b])) for a, b in basis.pairs(R.dim)})


def hom_zero(A: ThreeLieAlgebra, R: Representation) -> RationalMatrix:
    return RationalMatrix.zeros(R.dimV, A.dim)


def as_hom(rows: Sequence[Sequence], dimV: int, dim: int) -> RationalMatrix:
    m = RationalMatrix.from_rows(rows, cols=dim)
    if m.shape != (dimV, dim):
        raise DimensionError(f"expected a {dimV}x{dim} matrix")
    return m
