"""LS-sequences: generalized van der Corput sequences of points and partitions."""

from .core import (
    AdmissibleCounter,
    CountVector,
    DomainError,
    ForbiddenSet,
    admissible_integers,
    compose_psi,
    counts,
    counts_closed_form,
    generate_points,
    is_admissible,
    iter_points,
    psi,
    radical_inverse,
    to_digits,
)
from .discrepancy import (
    brute_force_discrepancy,
    extreme_discrepancy,
    regime_analysis,
    star_discrepancy,
)
from .partition import lambda_tuple, ls_partition, rho_refine, verify_equivalence
from .qgamma import LSParams, ParameterError, QGammaElement, parse_element, solve_gamma

__version__ = "0.1.0"

__all__ = [
    "AdmissibleCounter",
    "CountVector",
    "DomainError",
    "ForbiddenSet",
    "LSParams",
    "ParameterError",
    "QGammaElement",
    "admissible_integers",
    "brute_force_discrepancy",
    "compose_psi",
    "counts",
    "counts_closed_form",
    "extreme_discrepancy",
    "generate_points",
    "is_admissible",
    "iter_points",
    "lambda_tuple",
    "ls_partition",
    "parse_element",
    "psi",
    "radical_inverse",
    "regime_analysis",
    "rho_refine",
    "solve_gamma",
    "star_discrepancy",
    "to_digits",
    "verify_equivalence",
]
