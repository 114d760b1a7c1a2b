"""Numerical criteria for Riesz bases of dilated periodic functions.

The library decides, for several families of 2-periodic odd profiles,
whether the system of integer dilations is fully equivalent to the Fourier
sine basis of L^2(0, 1).  The decision runs through a multi-term sufficient
condition on the Fourier coefficients: a torus minimum of a small Dirichlet
polynomial must dominate an envelope-controlled tail.  On top of the check
sit threshold root-finders reproducing the published parameter boundaries,
figure-data scans, and chord/tangent lower bounds for p-sine coefficients.
"""

from .coeff_bounds import (
    BoundResult,
    MonotonePartition,
    build_partition,
    chord_bound,
    interval_bound,
    lower_bound_spk,
    tangent_bounds,
)
from .criterion import (
    EQUIVALENT,
    INCONCLUSIVE,
    CriterionReport,
    check_multi_term,
    check_two_term,
    cubic_family_check,
    psine_family_check,
    psine_tail_check,
)
from .dirichlet import (
    DirichletPolynomial,
    SupportSet,
    build_support,
    eval_multiplier_truncated,
    eval_poly,
    jump_smoothed_multiplier,
)
from .profiles import (
    CoefficientSeries,
    ProfileSpec,
    coeff,
    coeffs,
    cubic,
    envelope,
    envelope_sum,
    eval_profile,
    jump,
    jump_smoothed,
    psine,
    trapezoid,
)
from .ptrig import PExponent, PTrigContext, arcsin_p, norm_arcsin_p, pi_p, sin_p
from .thresholds import (
    ThresholdRecipe,
    alpha3_witness,
    figure_table,
    named_thresholds,
    recipe,
    solve,
)
from .torusmin import TorusMinResult, min_modulus, min_modulus_three_term, zero_free_check

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "PExponent",
    "PTrigContext",
    "pi_p",
    "arcsin_p",
    "norm_arcsin_p",
    "sin_p",
    "ProfileSpec",
    "jump",
    "jump_smoothed",
    "trapezoid",
    "cubic",
    "psine",
    "eval_profile",
    "coeff",
    "coeffs",
    "envelope",
    "envelope_sum",
    "CoefficientSeries",
    "SupportSet",
    "build_support",
    "DirichletPolynomial",
    "eval_poly",
    "eval_multiplier_truncated",
    "jump_smoothed_multiplier",
    "TorusMinResult",
    "min_modulus",
    "min_modulus_three_term",
    "zero_free_check",
    "EQUIVALENT",
    "INCONCLUSIVE",
    "CriterionReport",
    "check_multi_term",
    "check_two_term",
    "psine_tail_check",
    "psine_family_check",
    "cubic_family_check",
    "ThresholdRecipe",
    "solve",
    "recipe",
    "named_thresholds",
    "figure_table",
    "alpha3_witness",
    "MonotonePartition",
    "BoundResult",
    "build_partition",
    "chord_bound",
    "tangent_bounds",
    "lower_bound_spk",
    "interval_bound",
]
