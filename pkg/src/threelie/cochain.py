"""Cochains, the coboundary operator, and first cohomology.

Degree-n cochains are totally skew maps of ``2n + 1`` algebra arguments into
V (:class:`SkewCochain`).  The coboundary of a degree ``n - 1`` cochain is
stored as a :class:`PairCochain`: a map of n fundamental objects and one more
argument that is only required to be skew inside each pair.  Cocycles of
degree 1 are computed in that larger space, which needs no claim that the
coboundary preserves total skewness.

Column and coordinate orderings follow the lexicographic enumerations of
:mod:`threelie.basis`.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import product
from typing import Callable, Iterable, Mapping, Optional, Sequence

from . import basis
from .algebra import ThreeLieAlgebra, bracket, check_fundamental_identity, is_three_lie
from .exactla import (
    DimensionError,
    RationalMatrix,
    as_fraction,
    kernel_basis,
    rref,
    unit_vector,
    vec_add,
    vec_scale,
    vec_sub,
    zero_vector,
)
from .report import PreconditionError, StructuralError, collect, nonzero
from .representation import Representation, check_R1, check_R2, is_representation

__all__ = [
    "FirstCohomology",
    "PairCochain",
    "SkewCochain",
    "check_one_cocycle",
    "coboundary",
    "coboundary_space",
    "cocycle_space",
    "cohomology_dim",
    "d0",
    "d0_matrix",
    "d1_matrix",
    "eval_cochain",
    "first_cohomology",
    "is_one_cocycle",
    "is_zero_cocycle",
    "require_module",
]


def _vec(values, n: int, where) -> tuple:
    if isinstance(values, Mapping):
        v = [Fraction(0)] * n
        for l, c in values.items():
            l = int(l)
            if not 0 <= l < n:
                raise DimensionError(f"output index {l} out of range at {where}")
            v[l] = as_fraction(c)
        return tuple(v)
    v = tuple(as_fraction(c) for c in values)
    if len(v) != n:
        raise DimensionError(f"value at {where} has length {len(v)}, expected {n}")
    return v


@dataclass(frozen=True)
class SkewCochain:
    """Totally skew ``(2*degree + 1)``-linear map ``g x ... x g -> V``.

    ``coeffs`` maps strictly increasing index tuples to V-vectors (dense
    sequences or sparse ``{l: value}`` mappings).  Degree 0 is a linear map
    ``g -> V``; see :meth:`from_hom`.
    """

    dim: int
    dimV: int
    degree: int
    coeffs: tuple = ()

    def __post_init__(self):
        if self.degree < 0:
            raise ValueError("degree must be nonnegative")
        m = self.arity
        items = self.coeffs.items() if isinstance(self.coeffs, Mapping) else self.coeffs
        table = {}
        for t, values in items:
            t = tuple(int(i) for i in t)
            if len(t) != m or not all(0 <= i < self.dim for i in t):
                raise DimensionError(f"argument tuple {t} invalid for arity {m}, dim {self.dim}")
            if any(a >= b for a, b in zip(t, t[1:])):
                raise ValueError(f"argument tuple {t} is not strictly increasing")
            if t in table:
                raise ValueError(f"duplicate argument tuple {t}")
            table[t] = _vec(values, self.dimV, t)
        object.__setattr__(self, "coeffs", tuple(sorted((t, v) for t, v in table.items() if any(v))))

    @property
    def arity(self) -> int:
        return 2 * self.degree + 1

    @cached_property
    def table(self) -> dict:
        return dict(self.coeffs)

    def value(self, idx: Sequence[int]) -> tuple:
        """Value on basis vectors with indices in any order."""
        s, t = basis.canonical(idx)
        v = self.table.get(t) if s else None
        if v is None:
            return zero_vector(self.dimV)
        return v if s == 1 else vec_scale(Fraction(-1), v)

    @classmethod
    def zero(cls, dim: int, dimV: int, degree: int) -> SkewCochain:
        return cls(dim, dimV, degree)

    @classmethod
    def from_hom(cls, phi: RationalMatrix) -> SkewCochain:
        """Degree-0 cochain of a ``dimV x dim`` matrix."""
        return cls(phi.cols, phi.rows, 0, {(i,): phi.column(i) for i in range(phi.cols)})

    def to_hom(self) -> RationalMatrix:
        if self.degree != 0:
            raise ValueError("only degree-0 cochains are linear maps g -> V")
        cols = [self.value((i,)) for i in range(self.dim)]
        return RationalMatrix.from_columns(cols, self.dimV)

    def coordinates(self) -> tuple:
        out = []
        for t in basis.tuples(self.dim, self.arity):
            out.extend(self.table.get(t, zero_vector(self.dimV)))
        return tuple(out)

    @classmethod
    def from_coordinates(cls, dim: int, dimV: int, degree: int, coords: Sequence) -> SkewCochain:
        ts = basis.tuples(dim, 2 * degree + 1)
        if len(coords) != len(ts) * dimV:
            raise DimensionError("coordinate vector has the wrong length")
        return cls(dim, dimV, degree, {t: coords[k * dimV:(k + 1) * dimV] for k, t in enumerate(ts)})

    def _same_space(self, other: SkewCochain):
        if (self.dim, self.dimV, self.degree) != (other.dim, other.dimV, other.degree):
            raise DimensionError("cochains live in different spaces")

    def __add__(self, other: SkewCochain) -> SkewCochain:
        self._same_space(other)
        return SkewCochain.from_coordinates(self.dim, self.dimV, self.degree, vec_add(self.coordinates(), other.coordinates()))

    def __sub__(self, other: SkewCochain) -> SkewCochain:
        self._same_space(other)
        return SkewCochain.from_coordinates(self.dim, self.dimV, self.degree, vec_sub(self.coordinates(), other.coordinates()))

    def scale(self, c) -> SkewCochain:
        c = as_fraction(c)
        return SkewCochain(self.dim, self.dimV, self.degree, {t: vec_scale(c, v) for t, v in self.coeffs})

    def is_zero(self) -> bool:
        return not self.coeffs

    def __repr__(self):
        return f"SkewCochain(degree={self.degree}, dim={self.dim}, dimV={self.dimV}, nonzero={len(self.coeffs)})"


def _pair_keys(dim: int, n: int) -> list:
    return [(*ps, w) for ps in product(basis.pairs(dim), repeat=n) for w in range(dim)]


@dataclass(frozen=True)
class PairCochain:
    """Map of ``degree`` fundamental objects and one further argument into V.

    Keys are ``(pair_1, ..., pair_n, w)`` with canonical pairs; values are
    skew within each pair and carry no symmetry across slots.
    """

    dim: int
    dimV: int
    degree: int
    coeffs: tuple = ()

    def __post_init__(self):
        items = self.coeffs.items() if isinstance(self.coeffs, Mapping) else self.coeffs
        table = {}
        for key, values in items:
            *ps, w = key
            ps = tuple(tuple(int(i) for i in p) for p in ps)
            if len(ps) != self.degree:
                raise DimensionError(f"key {key} does not have {self.degree} pairs")
            for p in ps:
                if len(p) != 2 or not (0 <= p[0] < p[1] < self.dim):
                    raise ValueError(f"pair {p} is not canonical for dim {self.dim}")
            if not 0 <= int(w) < self.dim:
                raise DimensionError(f"argument {w} out of range")
            table[(*ps, int(w))] = _vec(values, self.dimV, key)
        object.__setattr__(self, "coeffs", tuple(sorted((k, v) for k, v in table.items() if any(v))))

    @property
    def arity(self) -> int:
        return 2 * self.degree + 1

    @cached_property
    def table(self) -> dict:
        return dict(self.coeffs)

    def value(self, idx: Sequence[int]) -> tuple:
        """Value on basis vectors given as a flat index list of length ``2n + 1``."""
        sign = 1
        ps = []
        for k in range(self.degree):
            a, b = idx[2 * k], idx[2 * k + 1]
            if a == b:
                return zero_vector(self.dimV)
            if a > b:
                a, b = b, a
                sign = -sign
            ps.append((a, b))
        v = self.table.get((*ps, idx[-1]))
        if v is None:
            return zero_vector(self.dimV)
        return v if sign == 1 else vec_scale(Fraction(-1), v)

    def coordinates(self) -> tuple:
        out = []
        for key in _pair_keys(self.dim, self.degree):
            out.extend(self.table.get(key, zero_vector(self.dimV)))
        return tuple(out)

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_totally_skew(self) -> bool:
        """Whether the stored values come from a totally skew map."""
        for idx in product(range(self.dim), repeat=self.arity):
            s, t = basis.canonical(idx)
            v = self.value(idx)
            if s == 0:
                if any(v):
                    return False
            elif v != vec_scale(Fraction(s), self.value(t)):
                return False
        return True

    def to_skew(self) -> SkewCochain:
        if not self.is_totally_skew():
            raise StructuralError("pair cochain is not totally skew")
        return SkewCochain(
            self.dim, self.dimV, self.degree, {t: self.value(t) for t in basis.tuples(self.dim, self.arity)}
        )

    def __repr__(self):
        return f"PairCochain(degree={self.degree}, dim={self.dim}, dimV={self.dimV}, nonzero={len(self.coeffs)})"


def _nz(v) -> list:
    return [(i, c) for i, c in enumerate(v) if c]


def _eval(omega, args) -> tuple:
    out = [Fraction(0)] * omega.dimV
    if not omega.coeffs:
        return tuple(out)
    if isinstance(omega, SkewCochain):
        table = omega.table
        for combo in product(*(_nz(a) for a in args)):
            idx = [i for i, _ in combo]
            s, t = basis.canonical(idx)
            if s == 0:
                continue
            v = table.get(t)
            if v is None:
                continue
            c = Fraction(s)
            for _, a in combo:
                c *= a
            for l, vl in enumerate(v):
                if vl:
                    out[l] += c * vl
        return tuple(out)
    for combo in product(*(_nz(a) for a in args)):
        v = omega.value([i for i, _ in combo])
        if not any(v):
            continue
        c = Fraction(1)
        for _, a in combo:
            c *= a
        for l, vl in enumerate(v):
            if vl:
                out[l] += c * vl
    return tuple(out)


def eval_cochain(omega, args: Sequence) -> tuple:
    """Multilinear evaluation of a skew or pair cochain on coordinate vectors."""
    if len(args) != omega.arity:
        raise DimensionError(f"degree-{omega.degree} cochain takes {omega.arity} arguments, got {len(args)}")
    for a in args:
        if len(a) != omega.dim:
            raise DimensionError("argument length does not match algebra dimension")
    return _eval(omega, args)


def require_module(A: ThreeLieAlgebra, R: Representation):
    """Raise :class:`PreconditionError` unless A is 3-Lie and R a representation of it."""
    if A.dim != R.dim:
        raise DimensionError(f"representation of a dim-{R.dim} algebra used with dim {A.dim}")
    if not is_three_lie(A):
        raise PreconditionError("algebra violates the fundamental identity", check_fundamental_identity(A, 10))
    if not is_representation(A, R):
        raise PreconditionError("not a representation", check_R1(A, R, 10) + check_R2(A, R, 10))


def _coboundary_value(A: ThreeLieAlgebra, R: Representation, omega, args: list) -> tuple:
    # args[m] is x_{m+1}; the cochain has degree n - 1 and takes 2n - 1 arguments.
    n = omega.degree + 1
    ev = lambda xs: _eval(omega, xs)  # noqa: E731
    out = zero_vector(R.dimV)
    edge = Fraction((-1) ** (n + 1))
    t = R.apply(args[2 * n], args[2 * n - 2], ev(args[: 2 * n - 2] + [args[2 * n - 1]]))
    out = vec_add(out, vec_scale(edge, t))
    t = R.apply(args[2 * n - 1], args[2 * n], ev(args[: 2 * n - 1]))
    out = vec_add(out, vec_scale(edge, t))
    for k in range(1, n + 1):
        a, b = args[2 * k - 2], args[2 * k - 1]
        rest = args[: 2 * k - 2] + args[2 * k:]
        t = R.apply(a, b, ev(rest))
        out = vec_add(out, t if k % 2 == 1 else vec_scale(Fraction(-1), t))
        sign = Fraction((-1) ** k)
        for j in range(2 * k, 2 * n + 1):
            # position of x_{j+1} inside rest
            pos = j - 2
            inserted = rest[:pos] + [bracket(A, a, b, args[j])] + rest[pos + 1:]
            out = vec_add(out, vec_scale(sign, ev(inserted)))
    return out


def _pmap(fn: Callable, items: Iterable, jobs: int = 1) -> list:
    items = list(items)
    if jobs <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items))


def coboundary(A: ThreeLieAlgebra, R: Representation, omega, validate: bool = True) -> PairCochain:
    """Coboundary of a degree ``n - 1`` cochain, as a degree-n pair cochain.

    Evaluated term by term on basis arguments:

        (-1)^(n+1) rho(x_{2n+1}, x_{2n-1}) w(.., x_{2n})
      + (-1)^(n+1) rho(x_{2n}, x_{2n+1}) w(.., x_{2n-1})
      + sum_k (-1)^(k+1) rho(x_{2k-1}, x_{2k}) w(.. drop pair k ..)
      + sum_k sum_{j > 2k} (-1)^k w(.. drop pair k, x_j -> [x_{2k-1}, x_{2k}, x_j] ..)
    """
    if omega.dim != A.dim or omega.dimV != R.dimV:
        raise DimensionError("cochain does not match algebra and module")
    if validate:
        require_module(A, R)
    n = omega.degree + 1
    e = [unit_vector(A.dim, i) for i in range(A.dim)]
    values = {}
    for key in _pair_keys(A.dim, n):
        *ps, w = key
        args = [e[i] for p in ps for i in p] + [e[w]]
        v = _coboundary_value(A, R, omega, args)
        if any(v):
            values[key] = v
    return PairCochain(A.dim, R.dimV, n, values)


def coboundary_at(A: ThreeLieAlgebra, R: Representation, omega, args: Sequence) -> tuple:
    """The coboundary of ``omega`` evaluated on arbitrary coordinate vectors."""
    if len(args) != omega.arity + 2:
        raise DimensionError(f"coboundary of a degree-{omega.degree} cochain takes {omega.arity + 2} arguments")
    return _coboundary_value(A, R, omega, [tuple(a) for a in args])


def d0(A: ThreeLieAlgebra, R: Representation, nu: RationalMatrix, validate: bool = True) -> SkewCochain:
    """``d0 nu(x1,x2,x3) = rho(x3,x1)nu(x2) + rho(x2,x3)nu(x1) + rho(x1,x2)nu(x3) - nu([x1,x2,x3])``.

    The result is checked to be totally skew before it is returned.
    """
    if nu.shape != (R.dimV, A.dim):
        raise DimensionError(f"expected a {R.dimV}x{A.dim} matrix, got {nu.shape}")
    return coboundary(A, R, SkewCochain.from_hom(nu), validate=validate).to_skew()


def is_zero_cocycle(A: ThreeLieAlgebra, R: Representation, nu: RationalMatrix) -> bool:
    return d0(A, R, nu).is_zero()


def iter_one_cocycle(A: ThreeLieAlgebra, R: Representation, omega: SkewCochain):
    e = [unit_vector(A.dim, i) for i in range(A.dim)]
    w = lambda *xs: _eval(omega, xs)  # noqa: E731
    for a, b in basis.pairs(A.dim):
        x1, x2 = e[a], e[b]
        for c, d, f in basis.triples(A.dim):
            y1, y2, y3 = e[c], e[d], e[f]
            lhs = vec_add(w(x1, x2, bracket(A, y1, y2, y3)), R.apply(x1, x2, w(y1, y2, y3)))
            rhs = zero_vector(R.dimV)
            for t in (
                w(bracket(A, x1, x2, y1), y2, y3),
                w(bracket(A, x1, x2, y2), y3, y1),
                w(y1, y2, bracket(A, x1, x2, y3)),
                R.apply(y2, y3, w(x1, x2, y1)),
                R.apply(y3, y1, w(x1, x2, y2)),
                R.apply(y1, y2, w(x1, x2, y3)),
            ):
                rhs = vec_add(rhs, t)
            yield from nonzero("one_cocycle", ((a, b), (c, d, f)), vec_sub(lhs, rhs))


def _check_degree_one(A, R, omega):
    if not isinstance(omega, SkewCochain) or omega.degree != 1:
        raise ValueError("a degree-1 skew cochain is required")
    if omega.dim != A.dim or omega.dimV != R.dimV:
        raise DimensionError("cochain does not match algebra and module")


def check_one_cocycle(A: ThreeLieAlgebra, R: Representation, omega: SkewCochain, max_violations: Optional[int] = None) -> list:
    """Canonical basis tuples ``(x1, x2), (y1, y2, y3)`` where the 1-cocycle identity fails."""
    _check_degree_one(A, R, omega)
    require_module(A, R)
    return collect(iter_one_cocycle(A, R, omega), max_violations)


def is_one_cocycle(A: ThreeLieAlgebra, R: Representation, omega: SkewCochain) -> bool:
    _check_degree_one(A, R, omega)
    require_module(A, R)
    return next(iter_one_cocycle(A, R, omega), None) is None


# matrices of d0 and d1


def _hom_units(dim: int, dimV: int) -> list:
    """Matrix units of Hom(g, V), ordered by (input index, output index)."""
    units = []
    for i in range(dim):
        for l in range(dimV):
            rows = [[Fraction(0)] * dim for _ in range(dimV)]
            rows[l][i] = Fraction(1)
            units.append(RationalMatrix.from_rows(rows, cols=dim))
    return units


def d0_matrix(A: ThreeLieAlgebra, R: Representation, jobs: int = 1) -> RationalMatrix:
    """Matrix of d0 from Hom(g, V) coordinates to degree-1 skew coordinates."""
    require_module(A, R)
    cols = _pmap(lambda u: d0(A, R, u, validate=False).coordinates(), _hom_units(A.dim, R.dimV), jobs)
    nrows = len(basis.triples(A.dim)) * R.dimV
    return RationalMatrix.from_columns(cols, nrows)


def _skew_units(dim: int, dimV: int, degree: int) -> list:
    n = len(basis.tuples(dim, 2 * degree + 1)) * dimV
    return [SkewCochain.from_coordinates(dim, dimV, degree, unit_vector(n, k)) for k in range(n)]


def d1_matrix(A: ThreeLieAlgebra, R: Representation, jobs: int = 1) -> RationalMatrix:
    """Matrix of d1 from degree-1 skew coordinates to degree-2 pair coordinates."""
    require_module(A, R)
    cols = _pmap(lambda w: coboundary(A, R, w, validate=False).coordinates(), _skew_units(A.dim, R.dimV, 1), jobs)
    nrows = len(basis.pairs(A.dim)) ** 2 * A.dim * R.dimV
    return RationalMatrix.from_columns(cols, nrows)


def _distinct_nonzero_rows(m: RationalMatrix) -> RationalMatrix:
    # Same kernel, far fewer rows: most pair-cochain coordinates vanish or repeat.
    seen = set()
    rows = []
    for r in m.entries:
        if any(r) and r not in seen:
            seen.add(r)
            rows.append(r)
    return RationalMatrix(len(rows), m.cols, tuple(rows))


@dataclass(frozen=True)
class FirstCohomology:
    """Bases of degree-1 cocycles and coboundaries and the quotient dimension."""

    cocycles: tuple
    coboundaries: tuple
    zero_cocycles_dim: int

    @property
    def dim_Z(self) -> int:
        return len(self.cocycles)

    @property
    def dim_B(self) -> int:
        return len(self.coboundaries)

    @property
    def dim_H(self) -> int:
        return self.dim_Z - self.dim_B


def cocycle_space(A: ThreeLieAlgebra, R: Representation, jobs: int = 1) -> list:
    """Basis of degree-1 cocycles: the kernel of the assembled d1 matrix."""
    M = _distinct_nonzero_rows(d1_matrix(A, R, jobs))
    return [SkewCochain.from_coordinates(A.dim, R.dimV, 1, v) for v in kernel_basis(M)]


def coboundary_space(A: ThreeLieAlgebra, R: Representation, jobs: int = 1) -> list:
    """Basis of degree-1 coboundaries: pivot columns of the d0 matrix."""
    M = d0_matrix(A, R, jobs)
    _, pivots = rref(M)
    return [SkewCochain.from_coordinates(A.dim, R.dimV, 1, M.column(j)) for j in pivots]


def first_cohomology(A: ThreeLieAlgebra, R: Representation, jobs: int = 1) -> FirstCohomology:
    D0 = d0_matrix(A, R, jobs)
    _, pivots = rref(D0)
    B = [SkewCochain.from_coordinates(A.dim, R.dimV, 1, D0.column(j)) for j in pivots]
    D1 = _distinct_nonzero_rows(d1_matrix(A, R, jobs))
    Z = [SkewCochain.from_coordinates(A.dim, R.dimV, 1, v) for v in kernel_basis(D1)]
    for b in B:
        if any(D1.apply(b.coordinates())):
            raise StructuralError("a coboundary is not a cocycle; d1 d0 != 0")
    return FirstCohomology(tuple(Z), tuple(B), D0.cols - len(pivots))


def cohomology_dim(A: ThreeLieAlgebra, R: Representation, jobs: int = 1) -> int:
    """``dim Z^1 - dim B^1``."""
    return first_cohomology(A, R, jobs).dim_H


def complement_basis(sub: Sequence[SkewCochain], whole: Sequence[SkewCochain]) -> list:
    """Elements of ``whole`` extending a basis of ``sub`` to a basis of ``span(whole)``."""
    if not whole:
        return []
    cols = [c.coordinates() for c in sub] + [c.coordinates() for c in whole]
    M = RationalMatrix.from_columns(cols, len(cols[0]))
    _, pivots = rref(M)
    k = len(sub)
    return [whole[j - k] for j in pivots if j >= k]
