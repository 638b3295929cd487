"""Numerical evaluation of Fourier transforms and dyadic-shell energies."""

from .bessel import UnsupportedOrderError, bessel_j, bessel_j_array
from .cantor import cantor_fourier, make_cantor_evaluator, truncation_factors
from .cone import (
    GridTooCoarseError,
    NonpositiveRadiusError,
    cone_profile,
    cone_profile_batch,
    make_cone_evaluator,
)
from .evaluators import RadialProfileEvaluator, Scalar1DEvaluator
from .kernels import BACKEND, HAVE_COMPILED
from .phase import BoundReport, PhaseSampleSpec, RegionBound, stationary_phase_check
from .shells import (
    AllShellsZeroError,
    BudgetExceededError,
    InsufficientShellsError,
    QuadratureBudget,
    RegressionFit,
    ShellEstimate,
    ShellError,
    ThetaOutOfRangeError,
    collect_shells,
    estimate_spectrum_point,
    estimate_spectrum_points,
    fits_from_shells,
    max_workers,
    shell_integral,
    shell_integral_multi,
    sphere_area,
)

__all__ = [
    "BACKEND",
    "HAVE_COMPILED",
    "AllShellsZeroError",
    "BoundReport",
    "BudgetExceededError",
    "GridTooCoarseError",
    "InsufficientShellsError",
    "NonpositiveRadiusError",
    "PhaseSampleSpec",
    "QuadratureBudget",
    "RadialProfileEvaluator",
    "RegionBound",
    "RegressionFit",
    "Scalar1DEvaluator",
    "ShellEstimate",
    "ShellError",
    "ThetaOutOfRangeError",
    "UnsupportedOrderError",
    "bessel_j",
    "bessel_j_array",
    "cantor_fourier",
    "cone_profile",
    "cone_profile_batch",
    "collect_shells",
    "estimate_spectrum_point",
    "estimate_spectrum_points",
    "fits_from_shells",
    "make_cantor_evaluator",
    "make_cone_evaluator",
    "max_workers",
    "shell_integral",
    "shell_integral_multi",
    "sphere_area",
    "stationary_phase_check",
    "truncation_factors",
]
