"""Hyperbolic metric density at the center of a rectangular lattice complement.

The lattice is {2 m pi k + 2 n pi i} for an aspect ratio k > 0. The package
computes the density a(k) of the hyperbolic metric of the complement at the
lattice-cell center through theta-function evaluations, a Lame connection
problem along the two symmetry half-axes, and a tangency condition that
pins the accessory parameter.
"""

from .accessory import (
    AccessoryResult,
    NearSingularQuotient,
    NoSignChange,
    OutsideBracket,
    SweepRow,
    TangencyData,
    a_normalized,
    a_of_k,
    find_normalized_max,
    solve_accessory,
    solve_for_aspect,
    sweep_rows,
    tangency_data,
    two_omega,
)
from .closed_forms import (
    ClosedFormReport,
    agm_constant,
    aspect_slope_origin,
    center_density_closed,
    closed_form_report,
    density_slope_half,
    strip_map,
)
from .lame_solver import (
    BracketNotFound,
    EigenBounds,
    EndpointMatrix,
    StepSizeUnderflow,
    integrate_imag_axis,
    integrate_real_axis,
    lambda_bounds,
)
from .lattice import (
    HalfPeriodValues,
    LatticeGeometry,
    P_imag,
    P_real,
    TooCloseToPole,
    half_period_values,
    laurent_check,
    weierstrass_p,
    wp_minus_e2,
)
from .special_functions import (
    ArgumentOutOfStrip,
    ThetaContext,
    ThetaZeroValues,
    agm,
    beta_quarter,
    kappa2,
    kappa2_prime,
    theta_at,
    theta_zero_values,
)
from .verify import CheckOutcome, FunctionalResiduals, run_all

__version__ = "0.1.0"

__all__ = [
    "AccessoryResult",
    "ArgumentOutOfStrip",
    "BracketNotFound",
    "CheckOutcome",
    "ClosedFormReport",
    "EigenBounds",
    "EndpointMatrix",
    "FunctionalResiduals",
    "HalfPeriodValues",
    "LatticeGeometry",
    "NearSingularQuotient",
    "NoSignChange",
    "OutsideBracket",
    "P_imag",
    "P_real",
    "StepSizeUnderflow",
    "SweepRow",
    "TangencyData",
    "ThetaContext",
    "ThetaZeroValues",
    "TooCloseToPole",
    "a_normalized",
    "a_of_k",
    "agm",
    "agm_constant",
    "aspect_slope_origin",
    "beta_quarter",
    "center_density_closed",
    "closed_form_report",
    "density_slope_half",
    "find_normalized_max",
    "half_period_values",
    "integrate_imag_axis",
    "integrate_real_axis",
    "kappa2",
    "kappa2_prime",
    "lambda_bounds",
    "laurent_check",
    "run_all",
    "solve_accessory",
    "solve_for_aspect",
    "strip_map",
    "sweep_rows",
    "tangency_data",
    "theta_at",
    "theta_zero_values",
    "two_omega",
    "weierstrass_p",
    "wp_minus_e2",
    "__version__",
]
