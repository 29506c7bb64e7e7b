"""Shared random generators for the test suite.

Everything is seeded through an explicit ``random.Random`` so failures
reproduce; hypothesis strategies wrap the same generators where useful.
"""

from __future__ import annotations

import random
from fractions import Fraction
from functools import lru_cache

import pytest

from threelie import basis
from threelie.algebra import ThreeLieAlgebra, abelian, adjoint_rep, change_basis
from threelie.cochain import SkewCochain, first_cohomology
from threelie.exactla import RationalMatrix
from threelie.fixtures import A4, H4, coadjoint_rep
from threelie.representation import Representation, zero_rep


def rat(rng: random.Random, span: int = 4) -> Fraction:
    return Fraction(rng.randint(-span, span), rng.randint(1, 3))


def rand_matrix(rng: random.Random, rows: int, cols: int, density: float = 1.0) -> RationalMatrix:
    return RationalMatrix.from_rows(
        [[rat(rng) if rng.random() < density else 0 for _ in range(cols)] for _ in range(rows)], cols=cols
    )


def rand_invertible(rng: random.Random, n: int) -> RationalMatrix:
    """Product of unit lower and upper triangular matrices times a nonzero diagonal."""
    L = [[(1 if i == j else rat(rng, 2) if i > j else 0) for j in range(n)] for i in range(n)]
    U = [[(rng.choice([1, -1, 2, Fraction(1, 2)]) if i == j else rat(rng, 2) if i < j else 0) for j in range(n)] for i in range(n)]
    return RationalMatrix.from_rows(L) @ RationalMatrix.from_rows(U)


def fixture_algebras() -> list:
    return [A4(), H4(), abelian(3), abelian(4), abelian(5)]


def rand_algebra(rng: random.Random) -> ThreeLieAlgebra:
    """A fixture algebra, sometimes written in a random basis."""
    A = rng.choice(fixture_algebras())
    if not A.is_abelian() and rng.random() < 0.5:
        A = change_basis(A, rand_invertible(rng, A.dim))
    return A


def h4_nilpotent_rep(rng: random.Random, dimV: int) -> Representation:
    """``rho(e_i, e_j) = a_ij E`` on H4 with ``E^2 = 0`` and ``a_ij = 0`` when 3 is involved."""
    E = [[0] * dimV for _ in range(dimV)]
    E[0][dimV - 1] = 1
    E = RationalMatrix.from_rows(E, cols=dimV)
    return Representation(4, dimV, {p: E.scale(rat(rng)) for p in basis.pairs(3)})


def rand_module(rng: random.Random, A: ThreeLieAlgebra, max_dimV: int = 5) -> Representation:
    """Adjoint, coadjoint or zero representation of A (and nilpotent ones for H4 itself)."""
    options = ["zero", "adjoint", "coadjoint"]
    if A == H4():
        options.append("nilpotent")
    kind = rng.choice(options)
    if kind in ("adjoint", "coadjoint") and A.dim > max_dimV:
        kind = "zero"
    if kind == "zero":
        return zero_rep(A.dim, rng.randint(1, 3))
    if kind == "adjoint":
        return adjoint_rep(A)
    if kind == "coadjoint":
        return coadjoint_rep(A)
    return h4_nilpotent_rep(rng, rng.randint(2, 3))


def rand_skew(rng: random.Random, dim: int, dimV: int, degree: int = 1, density: float = 0.5) -> SkewCochain:
    coeffs = {}
    for t in basis.tuples(dim, 2 * degree + 1):
        if rng.random() < density:
            coeffs[t] = [rat(rng) for _ in range(dimV)]
    return SkewCochain(dim, dimV, degree, coeffs)


def rand_skew_bracket(rng: random.Random, dim: int, density: float = 0.5) -> ThreeLieAlgebra:
    struct = {}
    for t in basis.triples(dim):
        if rng.random() < density:
            struct[t] = [rat(rng) for _ in range(dim)]
    return ThreeLieAlgebra(dim, struct)


@lru_cache(maxsize=None)
def cohomology_of(A: ThreeLieAlgebra, R: Representation):
    return first_cohomology(A, R)


def rand_cocycle(rng: random.Random, A: ThreeLieAlgebra, R: Representation) -> SkewCochain:
    out = SkewCochain.zero(A.dim, R.dimV, 1)
    for z in cohomology_of(A, R).cocycles:
        out = out + z.scale(rat(rng))
    return out


@pytest.fixture
def rng():
    return random.Random(20261015)
