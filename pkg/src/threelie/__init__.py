"""Exact computations for finite-dimensional 3-Lie algebras over the rationals.

Algebras, representations and cochains are immutable values with rational
coefficients; every check returns the basis tuples where an identity fails.
"""

from .algebra import (
    PairElement,
    ThreeLieAlgebra,
    abelian,
    adjoint_rep,
    bracket,
    change_basis,
    check_fundamental_identity,
    check_leibniz_rule,
    circle,
    is_three_lie,
    pair,
    wedge,
)
from .cochain import (
    FirstCohomology,
    PairCochain,
    SkewCochain,
    check_one_cocycle,
    coboundary,
    cohomology_dim,
    d0,
    first_cohomology,
    is_one_cocycle,
    is_zero_cocycle,
)
from .deformation import (
    check_infinitesimal_deformation,
    check_power_identities,
    deformed_bracket,
    is_compatible,
    is_nijenhuis,
    iterated_twist,
    lambda_separation_check,
    polynomial_operator,
    trivial_deformation_from_nijenhuis,
    twisted_bracket,
)
from .exactla import DimensionError, RationalMatrix, format_rational, parse_rational
from .extension import (
    AbelianExtension,
    are_equivalent,
    build_extension,
    canonical_section,
    classify_extensions,
    extract_cocycle,
    induced_rep,
)
from .report import PreconditionError, StructuralError, ThreeLieError, Violation
from .representation import (
    Representation,
    check_leibniz_module_axioms,
    check_R1,
    check_R2,
    is_representation,
)

__version__ = "0.1.0"

__all__ = [
    "abelian",
    "AbelianExtension",
    "adjoint_rep",
    "are_equivalent",
    "bracket",
    "build_extension",
    "canonical_section",
    "change_basis",
    "check_fundamental_identity",
    "check_infinitesimal_deformation",
    "check_leibniz_module_axioms",
    "check_leibniz_rule",
    "check_one_cocycle",
    "check_power_identities",
    "check_R1",
    "check_R2",
    "circle",
    "classify_extensions",
    "coboundary",
    "cohomology_dim",
    "d0",
    "deformed_bracket",
    "DimensionError",
    "extract_cocycle",
    "first_cohomology",
    "FirstCohomology",
    "format_rational",
    "induced_rep",
    "is_compatible",
    "is_nijenhuis",
    "is_one_cocycle",
    "is_representation",
    "is_three_lie",
    "is_zero_cocycle",
    "iterated_twist",
    "lambda_separation_check",
    "pair",
    "PairCochain",
    "PairElement",
    "parse_rational",
    "polynomial_operator",
    "PreconditionError",
    "RationalMatrix",
    "Representation",
    "SkewCochain",
    "StructuralError",
    "ThreeLieAlgebra",
    "ThreeLieError",
    "trivial_deformation_from_nijenhuis",
    "twisted_bracket",
    "Violation",
    "wedge",
]
