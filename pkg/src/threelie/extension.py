"""Abelian extensions ``g (+) V`` and their classification by degree-1 cohomology.

Total algebras use a fixed coordinate split: indices ``[0, n)`` are the base
algebra and ``[n, n + m)`` are the module.  A section is an ``(n + m) x n``
matrix whose top ``n x n`` block is the identity.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Optional

from . import basis
from .algebra import ThreeLieAlgebra, bracket, is_three_lie
from .cochain import (
    SkewCochain,
    check_one_cocycle,
    complement_basis,
    d0,
    d0_matrix,
    first_cohomology,
    require_module,
)
from .exactla import DimensionError, RationalMatrix, solve, unit_vector, vec_sub
from .report import PreconditionError, StructuralError
from .representation import Representation

__all__ = [
    "AbelianExtension",
    "Classification",
    "are_equivalent",
    "build_extension",
    "canonical_section",
    "classify_extensions",
    "equivalence_map",
    "extract_cocycle",
    "induced_rep",
    "is_homomorphism",
    "validate_section",
]


@dataclass(frozen=True)
class AbelianExtension:
    """A total algebra whose last ``total.dim - split`` coordinates span an abelian ideal.

    Construction validates that the total algebra is 3-Lie, that any bracket
    with two module arguments vanishes, and that any bracket with one module
    argument lands in the module.  The base algebra is the projection of the
    bracket of three base vectors.
    """

    total: ThreeLieAlgebra
    split: int

    def __post_init__(self):
        if not 0 <= self.split <= self.total.dim:
            raise DimensionError(f"split {self.split} outside [0, {self.total.dim}]")
        problems = []
        n = self.split
        for t, v in self.total.structure:
            in_module = sum(i >= n for i in t)
            if in_module >= 2 and any(v):
                problems.append(f"bracket {list(t)} of two module vectors is nonzero")
            elif in_module == 1 and any(v[:n]):
                problems.append(f"bracket {list(t)} with a module vector leaves the module")
        if problems:
            raise StructuralError("; ".join(problems))
        if not is_three_lie(self.total):
            raise StructuralError("total algebra violates the fundamental identity")

    @property
    def module_dim(self) -> int:
        return self.total.dim - self.split

    @cached_property
    def base(self) -> ThreeLieAlgebra:
        n = self.split
        return ThreeLieAlgebra(n, {t: self.total.constant(*t)[:n] for t in basis.triples(n)})


def build_extension(A: ThreeLieAlgebra, R: Representation, omega: SkewCochain, validate: bool = True) -> AbelianExtension:
    """The total algebra of ``[x1+u1, x2+u2, x3+u3] =
    [x1,x2,x3] + omega(x1,x2,x3) + rho(x1,x2)u3 + rho(x2,x3)u1 + rho(x3,x1)u2``."""
    if omega.degree != 1 or omega.dim != A.dim or omega.dimV != R.dimV:
        raise DimensionError("cocycle does not match algebra and module")
    if validate:
        require_module(A, R)
        bad = check_one_cocycle(A, R, omega, 10)
        if bad:
            raise PreconditionError("cochain is not a 1-cocycle", bad)
    n, m = A.dim, R.dimV
    struct = {}
    # With base indices below module indices, canonical triples have at most
    # one module index worth storing, and it comes last.
    for t in basis.triples(n):
        v = A.constant(*t) + omega.value(t)  # base block, then module block
        if any(v):
            struct[t] = v
    for i, j in basis.pairs(n):
        M = R.matrix(i, j)
        for c in range(m):
            v = (0,) * n + M.column(c)
            if any(v):
                struct[(i, j, n + c)] = v
    return AbelianExtension(ThreeLieAlgebra(n + m, struct), n)


def canonical_section(E: AbelianExtension) -> RationalMatrix:
    """``sigma(e_i) = e_i``: the identity block over a zero block."""
    n = E.split
    return RationalMatrix.identity(n).vstack(RationalMatrix.zeros(E.module_dim, n))


def validate_section(E: AbelianExtension, sigma: RationalMatrix):
    n = E.split
    if sigma.shape != (E.total.dim, n):
        raise DimensionError(f"section must be {E.total.dim}x{n}, got {sigma.shape}")
    top = RationalMatrix.from_rows([sigma.row(i) for i in range(n)], cols=n)
    if top != RationalMatrix.identity(n):
        raise PreconditionError("projection after section is not the identity")


def induced_rep(E: AbelianExtension, sigma: RationalMatrix) -> Representation:
    """``rho(e_i, e_j)u = [sigma e_i, sigma e_j, u]`` read in module coordinates."""
    validate_section(E, sigma)
    n, m = E.split, E.module_dim
    s = sigma.columns()
    action = {}
    for i, j in basis.pairs(n):
        cols = [bracket(E.total, s[i], s[j], unit_vector(n + m, n + c))[n:] for c in range(m)]
        action[(i, j)] = RationalMatrix.from_columns(cols, m)
    return Representation(n, m, action)


def extract_cocycle(E: AbelianExtension, sigma: RationalMatrix) -> SkewCochain:
    """``omega(x1,x2,x3) = [sigma x1, sigma x2, sigma x3] - sigma([x1,x2,x3])``."""
    validate_section(E, sigma)
    n = E.split
    base = E.base
    s = sigma.columns()
    values = {}
    for t in basis.triples(n):
        diff = vec_sub(bracket(E.total, *(s[i] for i in t)), sigma.apply(base.constant(*t)))
        if any(diff[:n]):
            raise StructuralError(f"cocycle value at {list(t)} has a component outside the module")
        values[t] = diff[n:]
    return SkewCochain(n, E.module_dim, 1, values)


def are_equivalent(
    A: ThreeLieAlgebra, R: Representation, omega: SkewCochain, omega2: SkewCochain, jobs: int = 1
) -> Optional[RationalMatrix]:
    """A map ``nu: g -> V`` with ``d0 nu = omega - omega2``, or None.

    Such a nu makes ``x + u -> x + nu(x) + u`` an isomorphism from the
    omega-extension to the omega2-extension that fixes V and covers the
    identity of g.  Any solution is returned; solutions differ by 0-cocycles.
    """
    for w in (omega, omega2):
        bad = check_one_cocycle(A, R, w, 10)
        if bad:
            raise PreconditionError("cochain is not a 1-cocycle", bad)
    D0 = d0_matrix(A, R, jobs)
    x = solve(D0, (omega - omega2).coordinates())
    if x is None:
        return None
    # coordinates of Hom(g, V) are ordered by (input index, output index)
    rows = [[x[i * R.dimV + l] for i in range(A.dim)] for l in range(R.dimV)]
    nu = RationalMatrix.from_rows(rows, cols=A.dim)
    if d0(A, R, nu) != omega - omega2:
        raise StructuralError("solver returned a non-solution")
    return nu


def equivalence_map(A: ThreeLieAlgebra, nu: RationalMatrix) -> RationalMatrix:
    """Matrix of ``x + u -> x + nu(x) + u`` on total coordinates."""
    n, m = A.dim, nu.rows
    top = RationalMatrix.identity(n).hstack(RationalMatrix.zeros(n, m))
    bottom = nu.hstack(RationalMatrix.identity(m))
    return top.vstack(bottom)


@dataclass(frozen=True)
class Classification:
    """Degree-1 cohomology data and one extension per cohomology basis direction."""

    dim_H: int
    cocycles: tuple
    coboundaries: tuple
    representatives: tuple  # (cocycle, AbelianExtension) pairs
    zero_cocycles_dim: int


def classify_extensions(A: ThreeLieAlgebra, R: Representation, jobs: int = 1) -> Classification:
    require_module(A, R)
    H = first_cohomology(A, R, jobs)
    reps = complement_basis(H.coboundaries, H.cocycles)
    if len(reps) != H.dim_H:
        raise StructuralError("coboundaries are not contained in the cocycles")
    pairs = tuple((w, build_extension(A, R, w, validate=False)) for w in reps)
    return Classification(H.dim_H, H.cocycles, H.coboundaries, pairs, H.zero_cocycles_dim)


def is_homomorphism(src: ThreeLieAlgebra, dst: ThreeLieAlgebra, F: RationalMatrix) -> bool:
    """``F[x, y, z] = [Fx, Fy, Fz]`` on all canonical basis triples."""
    cols = F.columns()
    return all(
        F.apply(src.constant(*t)) == bracket(dst, *(cols[i] for i in t)) for t in basis.triples(src.dim)
    )
