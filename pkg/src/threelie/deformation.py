"""Infinitesimal deformations and Nijenhuis operators.

A deformation candidate is a skew trilinear map ``g^3 -> g`` stored exactly
like an algebra's structure constants, so it is a :class:`ThreeLieAlgebra`
value that may or may not satisfy the fundamental identity.  Linear operators
are square :class:`RationalMatrix` values acting on coordinate vectors.

The deformation parameter is never symbolic.  Polynomial identities in it are
either split by degree and checked coefficientwise, or checked at enough
sample values to pin the polynomial.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Optional, Sequence

from . import basis
from .algebra import ThreeLieAlgebra, adjoint_rep, bracket, check_fundamental_identity, is_three_lie
from .cochain import check_one_cocycle, SkewCochain
from .exactla import DimensionError, RationalMatrix, as_fraction, format_rational, unit_vector, vec_add, vec_scale, vec_sub, zero_vector
from .report import PreconditionError, collect, nonzero

__all__ = [
    "CompatibilityVerdict",
    "DeformationVerdict",
    "NijenhuisVerdict",
    "PowerReport",
    "TrivialityCertificate",
    "check_infinitesimal_deformation",
    "check_power_identities",
    "cross_term_violations",
    "expanded_torsion_violations",
    "intertwining_violations",
    "mixed_cube_violations",
    "deformed_bracket",
    "is_compatible",
    "is_nijenhuis",
    "iterated_twist",
    "lambda_separation_check",
    "polynomial_operator",
    "trivial_deformation_from_nijenhuis",
    "twisted_bracket",
]

TRIVIALITY_SAMPLES = (Fraction(1), Fraction(-1), Fraction(2))


def _check_operator(A: ThreeLieAlgebra, N: RationalMatrix):
    if N.shape != (A.dim, A.dim):
        raise DimensionError(f"operator must be {A.dim}x{A.dim}, got {N.shape}")


def _require_three_lie(A: ThreeLieAlgebra):
    if not is_three_lie(A):
        raise PreconditionError("algebra violates the fundamental identity", check_fundamental_identity(A, 10))


def _from_basis_values(dim: int, value) -> ThreeLieAlgebra:
    struct = {}
    for t in basis.triples(dim):
        v = value(*t)
        if any(v):
            struct[t] = v
    return ThreeLieAlgebra(dim, struct)


def deformed_bracket(A: ThreeLieAlgebra, omega: ThreeLieAlgebra, lam) -> ThreeLieAlgebra:
    """Structure constants ``c + lam * omega``; no validity claim."""
    if omega.dim != A.dim:
        raise DimensionError("deformation and algebra dimensions differ")
    lam = as_fraction(lam)
    return _from_basis_values(A.dim, lambda i, j, k: vec_add(A.constant(i, j, k), vec_scale(lam, omega.constant(i, j, k))))


@dataclass(frozen=True)
class DeformationVerdict:
    """``cocycle``: omega is a 1-cocycle in the adjoint representation.
    ``bracket``: omega alone satisfies the fundamental identity."""

    cocycle: bool
    bracket: bool
    cocycle_violations: tuple = ()
    bracket_violations: tuple = ()

    @property
    def ok(self) -> bool:
        return self.cocycle and self.bracket


def as_cochain(omega: ThreeLieAlgebra) -> SkewCochain:
    """A g-valued skew trilinear map read as a degree-1 cochain with V = g."""
    return SkewCochain(omega.dim, omega.dim, 1, dict(omega.structure))


def check_infinitesimal_deformation(
    A: ThreeLieAlgebra, omega: ThreeLieAlgebra, max_violations: Optional[int] = None
) -> DeformationVerdict:
    """Decide whether ``[.,.,.] + lam * omega`` is a 3-Lie bracket for every lam.

    The fundamental-identity defect of the deformed bracket is
    ``lam * D1 + lam^2 * D2``; ``D1 = 0`` is the adjoint 1-cocycle condition
    and ``D2 = 0`` is the fundamental identity for omega itself.
    """
    if omega.dim != A.dim:
        raise DimensionError("deformation and algebra dimensions differ")
    _require_three_lie(A)
    cv = check_one_cocycle(A, adjoint_rep(A), as_cochain(omega), max_violations)
    bv = check_fundamental_identity(omega, max_violations)
    return DeformationVerdict(not cv, not bv, tuple(cv), tuple(bv))


def lambda_separation_check(A: ThreeLieAlgebra, omega: ThreeLieAlgebra) -> bool:
    """Fundamental identity of the deformed bracket at lam = 1 and lam = 2.

    Both samples vanish iff ``D1 + D2 = 0`` and ``2 D1 + 4 D2 = 0``, i.e. iff
    both defect coefficients vanish.
    """
    _require_three_lie(A)
    return all(is_three_lie(deformed_bracket(A, omega, lam)) for lam in (1, 2))


def _apply_all(N: RationalMatrix, dim: int) -> list:
    return [N.column(i) for i in range(dim)]


def twisted_bracket(A: ThreeLieAlgebra, N: RationalMatrix) -> ThreeLieAlgebra:
    """``[x,y,z]_N = [Nx,y,z] + [x,Ny,z] + [x,y,Nz] - N[x,y,z]``."""
    return iterated_twist(A, A, N)


def iterated_twist(A: ThreeLieAlgebra, omega0: ThreeLieAlgebra, N: RationalMatrix) -> ThreeLieAlgebra:
    """The N-twist with the base bracket replaced by ``omega0``."""
    _check_operator(A, N)
    if omega0.dim != A.dim:
        raise DimensionError("bracket and algebra dimensions differ")
    e = [unit_vector(A.dim, i) for i in range(A.dim)]
    Ne = _apply_all(N, A.dim)

    def value(i, j, k):
        v = bracket(omega0, Ne[i], e[j], e[k])
        v = vec_add(v, bracket(omega0, e[i], Ne[j], e[k]))
        v = vec_add(v, bracket(omega0, e[i], e[j], Ne[k]))
        return vec_sub(v, N.apply(omega0.constant(i, j, k)))

    return _from_basis_values(A.dim, value)


def _two_N_terms(A, N1, N2, x1, x2, x3) -> tuple:
    # [N1x1, N2x2, x3] + [N1x1, x2, N2x3] + [x1, N1x2, N2x3]
    v = bracket(A, N1.apply(x1), N2.apply(x2), x3)
    v = vec_add(v, bracket(A, N1.apply(x1), x2, N2.apply(x3)))
    return vec_add(v, bracket(A, x1, N1.apply(x2), N2.apply(x3)))


@dataclass(frozen=True)
class NijenhuisVerdict:
    """``torsion``: violations of ``N[x]_N = [Nx1,Nx2,x3] + [Nx1,x2,Nx3] + [x1,Nx2,Nx3]``.
    ``image_bracket``: violations of ``[Nx1, Nx2, Nx3] = 0``.
    ``second_order``: whether ``N omega`` equals the two-N terms for omega the
    twisted bracket; reported separately and not part of :attr:`ok`."""

    torsion: tuple
    image_bracket: tuple
    second_order: bool

    @property
    def ok(self) -> bool:
        return not self.torsion and not self.image_bracket

    def violations(self) -> list:
        return list(self.torsion) + list(self.image_bracket)


def is_nijenhuis(A: ThreeLieAlgebra, N: RationalMatrix, max_violations: Optional[int] = None) -> NijenhuisVerdict:
    """Check both Nijenhuis conditions on canonical basis triples.

    Each condition is trilinear and changes sign under any transposition of
    the arguments, so canonical triples suffice.
    """
    _check_operator(A, N)
    _require_three_lie(A)
    omega = twisted_bracket(A, N)
    e = [unit_vector(A.dim, i) for i in range(A.dim)]
    torsion, image = [], []
    for t in basis.triples(A.dim):
        x1, x2, x3 = (e[i] for i in t)
        rhs = _two_N_terms(A, N, N, x1, x2, x3)
        torsion.extend(nonzero("torsion", t, vec_sub(N.apply(omega.constant(*t)), rhs)))
        image.extend(nonzero("image_bracket", t, bracket(A, N.apply(x1), N.apply(x2), N.apply(x3))))
    second_order = not torsion  # with omega = [.]_N the two conditions coincide
    cap = max_violations
    return NijenhuisVerdict(tuple(collect(torsion, cap)), tuple(collect(image, cap)), second_order)


def expanded_torsion_violations(A: ThreeLieAlgebra, N: RationalMatrix) -> list:
    """The torsion condition written as ``N^2[x] = N(one-N terms) - (two-N terms)``."""
    _check_operator(A, N)
    e = [unit_vector(A.dim, i) for i in range(A.dim)]
    N2 = N @ N
    out = []
    for t in basis.triples(A.dim):
        x1, x2, x3 = (e[i] for i in t)
        one = bracket(A, N.apply(x1), x2, x3)
        one = vec_add(one, bracket(A, x1, N.apply(x2), x3))
        one = vec_add(one, bracket(A, x1, x2, N.apply(x3)))
        rhs = vec_sub(N.apply(one), _two_N_terms(A, N, N, x1, x2, x3))
        out.extend(nonzero("expanded_torsion", t, vec_sub(N2.apply(A.constant(*t)), rhs)))
    return out


def _require_nijenhuis(A, N, what="operator"):
    verdict = is_nijenhuis(A, N, 10)
    if not verdict.ok:
        raise PreconditionError(f"{what} is not a Nijenhuis operator", verdict.violations())


@dataclass(frozen=True)
class TrivialityCertificate:
    """Evidence that the twisted bracket generates a trivial deformation.

    ``intertwining`` maps each sampled lam to the basis triples where
    ``T(lam)[x]_lam = [T(lam)x1, T(lam)x2, T(lam)x3]`` fails, ``T = id + lam N``.
    """

    deformation: DeformationVerdict
    intertwining: dict = field(default_factory=dict)
    second_order: bool = True

    @property
    def ok(self) -> bool:
        return self.deformation.ok and not any(self.intertwining.values())


def intertwining_violations(A: ThreeLieAlgebra, omega: ThreeLieAlgebra, N: RationalMatrix, lam) -> list:
    lam = as_fraction(lam)
    T = RationalMatrix.identity(A.dim) + N.scale(lam)
    deformed = deformed_bracket(A, omega, lam)
    e = [unit_vector(A.dim, i) for i in range(A.dim)]
    out = []
    for t in basis.triples(A.dim):
        lhs = T.apply(deformed.constant(*t))
        rhs = bracket(A, *(T.apply(e[i]) for i in t))
        out.extend(nonzero("intertwining", (t, format_rational(lam)), vec_sub(lhs, rhs)))
    return out


def trivial_deformation_from_nijenhuis(A: ThreeLieAlgebra, N: RationalMatrix):
    """``(omega, certificate)`` for the deformation generated by a Nijenhuis operator.

    The intertwining identity is cubic in lam; it is checked exactly at three
    nonzero sample values, which together with the value 0 (where it is the
    identity) pins the polynomial.
    """
    _require_nijenhuis(A, N)
    omega = twisted_bracket(A, N)
    verdict = check_infinitesimal_deformation(A, omega)
    inter = {lam: tuple(intertwining_violations(A, omega, N, lam)) for lam in TRIVIALITY_SAMPLES}
    e = [unit_vector(A.dim, i) for i in range(A.dim)]
    second = all(
        N.apply(omega.constant(*t)) == _two_N_terms(A, N, N, *(e[i] for i in t)) for t in basis.triples(A.dim)
    )
    return omega, TrivialityCertificate(verdict, inter, second)


@dataclass(frozen=True)
class PowerReport:
    """``twists[(k, r)]``: whether ``[.]_{N^(k+r)} = ([.]_{N^k})_{N^r}``;
    ``powers[k]``: whether ``N^k`` is Nijenhuis."""

    twists: dict
    powers: dict

    @property
    def ok(self) -> bool:
        return all(self.twists.values()) and all(self.powers.values())


def check_power_identities(A: ThreeLieAlgebra, N: RationalMatrix, kmax: int) -> PowerReport:
    _require_nijenhuis(A, N)
    pw = {k: N ** k for k in range(1, kmax + 1)}
    tw = {k: twisted_bracket(A, pw[k]) for k in pw}
    twists = {}
    for k in range(1, kmax):
        for r in range(1, kmax - k + 1):
            twists[(k, r)] = tw[k + r] == iterated_twist(A, tw[k], pw[r])
    powers = {k: is_nijenhuis(A, pw[k]).ok for k in pw}
    return PowerReport(twists, powers)


def cross_term_violations(A: ThreeLieAlgebra, N1: RationalMatrix, N2: RationalMatrix) -> list:
    """Where ``N1[x]_{N2} + N2[x]_{N1}`` differs from the six mixed two-operator terms."""
    _check_operator(A, N1)
    _check_operator(A, N2)
    t1, t2 = twisted_bracket(A, N1), twisted_bracket(A, N2)
    e = [unit_vector(A.dim, i) for i in range(A.dim)]
    out = []
    for t in basis.triples(A.dim):
        xs = [e[i] for i in t]
        lhs = vec_add(N1.apply(t2.constant(*t)), N2.apply(t1.constant(*t)))
        rhs = vec_add(_two_N_terms(A, N2, N1, *xs), _two_N_terms(A, N1, N2, *xs))
        out.extend(nonzero("cross_term", t, vec_sub(lhs, rhs)))
    return out


def _mixed(A, ops, x, pattern) -> tuple:
    return bracket(A, *(ops[p].apply(v) for p, v in zip(pattern, x)))


# the two short sums as printed, and the full set of six mixed patterns
_PRINTED_MIXED = ((0, 0, 1), (0, 1, 1), (1, 0, 0), (1, 1, 0))
_ALL_MIXED = ((0, 0, 1), (0, 1, 0), (1, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 0))


def mixed_cube_violations(A: ThreeLieAlgebra, N1: RationalMatrix, N2: RationalMatrix, full: bool = False) -> list:
    """Violations of the vanishing of mixed images ``[N_a x1, N_b x2, N_c x3]``.

    With ``full=False`` the four-term sum
    ``[N1x1,N1x2,N2x3] + [N1x1,N2x2,N2x3] + [N2x1,N1x2,N1x3] + [N2x1,N2x2,N1x3]``
    is checked; it is not skew, so every ordered basis triple is visited.
    With ``full=True`` all six mixed patterns are summed, which is exactly the
    mixed part of ``[(N1+N2)x1, (N1+N2)x2, (N1+N2)x3]``; that sum is skew and
    canonical triples suffice.
    """
    _check_operator(A, N1)
    _check_operator(A, N2)
    ops = (N1, N2)
    e = [unit_vector(A.dim, i) for i in range(A.dim)]
    patterns = _ALL_MIXED if full else _PRINTED_MIXED
    triples = basis.triples(A.dim) if full else product(range(A.dim), repeat=3)
    name = "mixed_cube_full" if full else "mixed_cube"
    out = []
    for t in triples:
        xs = [e[i] for i in t]
        total = zero_vector(A.dim)
        for pat in patterns:
            total = vec_add(total, _mixed(A, ops, xs, pat))
        out.extend(nonzero(name, tuple(t), total))
    return out


@dataclass(frozen=True)
class CompatibilityVerdict:
    sum_nijenhuis: bool
    cross_term: bool
    mixed_cube: bool
    mixed_cube_full: bool
    violations: tuple = ()

    @property
    def ok(self) -> bool:
        return self.sum_nijenhuis


def is_compatible(A: ThreeLieAlgebra, N1: RationalMatrix, N2: RationalMatrix) -> CompatibilityVerdict:
    """Whether ``N1 + N2`` is Nijenhuis, alongside the two component conditions.

    The cross-term condition together with the full six-term mixed condition
    is equivalent to the sum being Nijenhuis.  The four-term mixed condition
    implies the six-term one, so cross-term plus four-term is sufficient.
    """
    _require_nijenhuis(A, N1, "first operator")
    _require_nijenhuis(A, N2, "second operator")
    s = is_nijenhuis(A, N1 + N2)
    cross = cross_term_violations(A, N1, N2)
    mixed = mixed_cube_violations(A, N1, N2)
    full = mixed_cube_violations(A, N1, N2, full=True)
    return CompatibilityVerdict(
        s.ok, not cross, not mixed, not full, tuple(s.violations()) + tuple(cross) + tuple(mixed)
    )


def polynomial_operator(N: RationalMatrix, coefficients: Sequence) -> RationalMatrix:
    """``sum_i c_i N^i`` for ``i = 1..m``; there is no constant term."""
    if not N.is_square():
        raise DimensionError("operator must be square")
    out = RationalMatrix.zeros(N.rows, N.cols)
    power = N
    for c in coefficients:
        out = out + power.scale(as_fraction(c))
        power = power @ N
    return out
