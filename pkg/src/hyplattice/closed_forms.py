"""Closed-form constants tied to the square aspect and the thin limit.

The square-lattice center density has the closed form

    a(1) = 2 |d(kappa2)/dtau at tau = i| * (8 pi / B(1/4, 1/4)),

numerically 7.41630, and coincides with B(1/4, 1/4) itself to all
computed digits. The thin-aspect limit is a(0) = 4: each boundary row
of lattice points with spacing s behaves like a straight boundary line
pushed outward by (2 log 2 / pi) s, so the effective strip height is
2 pi (1 + (4 log 2 / pi) k) and the native entry slope is
a'(0) = (8/pi) log 4. Per unit of the vertical period 2 pi that slope
reads (4/pi^2) log 4 = 0.5618439, the form quoted for the thin limit.
The half-strip comparison map

    F(y) = arccosh((2 - kappa2(y)) / kappa2(y)) / pi

tends to y - log(4)/pi as y grows.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .special_functions import beta_quarter, kappa2, kappa2_prime

__all__ = [
    "ClosedFormReport",
    "LN4_OVER_PI",
    "agm_constant",
    "aspect_slope_origin",
    "center_density_closed",
    "closed_form_report",
    "density_slope_half",
    "strip_map",
]

LN4_OVER_PI = math.log(4.0) / math.pi


def agm_constant() -> float:
    """2 pi sqrt(2) / B(1/4, 1/4), which equals agm(1, sqrt(2))."""
    return 2.0 * math.pi * math.sqrt(2.0) / beta_quarter()


def density_slope_half() -> float:
    """Comparison-density slope at the symmetric point: 8 pi / B(1/4, 1/4)."""
    return 2.0 * math.sqrt(2.0) * agm_constant()


def center_density_closed() -> float:
    """Square-aspect center density from the modular derivative."""
    return 2.0 * abs(kappa2_prime(1.0)) * density_slope_half()


def aspect_slope_origin() -> float:
    """Thin-limit entry slope of the period-normalized density a(k)/(2 pi).

    Equals (4/pi^2) log 4; the native a(k) enters with 2 pi times this.
    """
    return 4.0 * math.log(4.0) / math.pi ** 2


def strip_map(y: float) -> float:
    """Half-strip comparison map F(y) = arccosh((2 - kappa2)/kappa2) / pi.

    Strictly increasing with F(1) = 0.56110 and F(y) -> y - log(4)/pi.
    """
    k2 = kappa2(y)
    return math.acosh((2.0 - k2) / k2) / math.pi


@dataclass(frozen=True)
class ClosedFormReport:
    agm_c: float
    slope_half: float
    kappa2_prime_abs: float
    a_one: float
    slope_origin: float
    strip_one: float
    strip_offset: float


def closed_form_report() -> ClosedFormReport:
    """Bundle of the closed-form values, for checks and display."""
    return ClosedFormReport(
        agm_c=agm_constant(),
        slope_half=density_slope_half(),
        kappa2_prime_abs=abs(kappa2_prime(1.0)),
        a_one=center_density_closed(),
        slope_origin=aspect_slope_origin(),
        strip_one=strip_map(1.0),
        strip_offset=LN4_OVER_PI,
    )
