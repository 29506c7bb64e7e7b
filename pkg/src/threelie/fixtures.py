"""Small named algebras, representations and operators used in examples and tests."""

from __future__ import annotations

from .algebra import ThreeLieAlgebra, abelian, adjoint_rep
from .exactla import RationalMatrix
from .representation import Representation

__all__ = ["A4", "H4", "abelian", "adjoint_rep", "coadjoint_rep", "non_three_lie", "h4_nijenhuis_operators", "h4_non_nijenhuis"]


def A4() -> ThreeLieAlgebra:
    """The simple 4-dimensional algebra, ``[e_i, e_j, e_k] = sum_l eps_ijkl e_l``."""
    return ThreeLieAlgebra(
        4,
        {
            (0, 1, 2): {3: 1},
            (0, 1, 3): {2: -1},
            (0, 2, 3): {1: 1},
            (1, 2, 3): {0: -1},
        },
    )


def H4() -> ThreeLieAlgebra:
    """Heisenberg-type algebra with the single bracket ``[e1, e2, e3] = e4``."""
    return ThreeLieAlgebra(4, {(0, 1, 2): {3: 1}})


def non_three_lie() -> ThreeLieAlgebra:
    """A skew bracket on four generators that violates the fundamental identity.

    Every skew bracket in dimension three satisfies the identity, so a failing
    example needs two interacting brackets.
    """
    return ThreeLieAlgebra(4, {(0, 1, 2): {3: 1}, (0, 1, 3): {0: 1}})


def coadjoint_rep(A: ThreeLieAlgebra) -> Representation:
    """``rho*(x1, x2) = -ad(x1, x2)^T`` acting on the dual space."""
    ad = adjoint_rep(A)
    return Representation(A.dim, A.dim, {p: -m.transpose() for p, m in ad.action})


def h4_nijenhuis_operators() -> list:
    """Diagonal Nijenhuis operators on :func:`H4`."""
    return [RationalMatrix.diagonal([1, 1, 0, 1]), RationalMatrix.diagonal([1, 0, 0, 0])]


def h4_non_nijenhuis() -> RationalMatrix:
    """The identity, whose image bracket is the full bracket of H4."""
    return RationalMatrix.identity(4)
