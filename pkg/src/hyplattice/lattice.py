"""Rectangular lattice geometry and the recentred Weierstrass data.

The lattice is {2 m omega + 2 n omega' : m, n integers} with omega = pi k
and omega' = pi i, so the period ratio is i / k and the nome exp(-pi / k).

P denotes the quarter-shifted, recentred combination

    P(z) = (wp(z + omega + omega') - e2) / 4.

It vanishes at the origin, is nonpositive along the real half-period
segment [0, omega] with minimum (e3 - e2) / 4 at omega, and nonnegative
along the imaginary segment [0, pi] with maximum (e1 - e2) / 4 at pi.
P_real and P_imag evaluate the two restrictions directly from scalar
theta quotients without complex arithmetic.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache

from .special_functions import ThetaContext, theta_zero_values

__all__ = [
    "HalfPeriodValues",
    "LatticeGeometry",
    "P_imag",
    "P_real",
    "TooCloseToPole",
    "half_period_values",
    "laurent_check",
    "weierstrass_p",
    "wp_minus_e2",
]


class TooCloseToPole(ValueError):
    """Raised when an evaluation point nearly coincides with a lattice node."""


@dataclass(frozen=True)
class LatticeGeometry:
    """Aspect ratio k together with derived half-periods and nome."""

    k: float
    omega: float
    omega_prime: complex
    tau_im: float
    nome: float

    @classmethod
    def from_aspect(cls, k: float) -> "LatticeGeometry":
        kk = float(k)
        if not (math.isfinite(kk) and kk > 0.0):
            raise ValueError(f"aspect must be finite and positive, got {k!r}")
        return cls(
            k=kk,
            omega=math.pi * kk,
            omega_prime=complex(0.0, math.pi),
            tau_im=1.0 / kk,
            nome=math.exp(-math.pi / kk),
        )


@dataclass(frozen=True)
class HalfPeriodValues:
    """Half-period values e1 > e2 > e3; their sum vanishes."""

    e1: float
    e2: float
    e3: float


@lru_cache(maxsize=None)
def half_period_values(lat: LatticeGeometry) -> HalfPeriodValues:
    tz = theta_zero_values(ThetaContext.for_nome(lat.nome))
    f = (math.pi / lat.omega) ** 2 / 12.0
    t2, t3, t4 = tz.th2 ** 4, tz.th3 ** 4, tz.th4 ** 4
    return HalfPeriodValues(e1=f * (t3 + t4), e2=f * (t2 - t4), e3=-f * (t2 + t3))


@lru_cache(maxsize=None)
def _series(lat: LatticeGeometry):
    """Coefficient pack shared by the axis evaluators.

    Returns (numf, odd, even2) where numf = theta1'(0) / (2 omega theta3(0)),
    odd[n] = (-1)^n q^((n+1/2)^2) and even2[n-1] = 2 q^(n^2).
    """
    ctx = ThetaContext.for_nome(lat.nome)
    tz = theta_zero_values(ctx)
    q = lat.nome
    odd = tuple(
        (-(q ** ((n + 0.5) ** 2)) if n % 2 else q ** ((n + 0.5) ** 2))
        for n in range(ctx.trunc + 1)
    )
    even2 = tuple(2.0 * q ** (n * n) for n in range(1, ctx.trunc + 1))
    return tz.th1prime / (2.0 * lat.omega * tz.th3), odd, even2


def P_real(lat: LatticeGeometry, sigma: float) -> float:
    """P restricted to the real axis. Nonpositive, with P_real(0) = 0."""
    if sigma == 0.0:
        return 0.0
    numf, odd, even2 = _series(lat)
    ang = math.pi * sigma / (2.0 * lat.omega)
    two = 2.0 * ang
    arg = ang
    s1 = 0.0
    for a in odd:
        s1 += a * math.sin(arg)
        arg += two
    arg = two
    s3 = 1.0
    for b in even2:
        s3 += b * math.cos(arg)
        arg += two
    t = numf * s1 / s3
    return -t * t


def P_imag(lat: LatticeGeometry, t: float) -> float:
    """P along the imaginary axis, P(i t). Nonnegative, with P_imag(0) = 0.

    The hyperbolic terms stay inside double range for aspects in
    [0.01, 50] and |t| <= pi; far outside that envelope they can overflow.
    """
    if t == 0.0:
        return 0.0
    numf, odd, even2 = _series(lat)
    ang = math.pi * t / (2.0 * lat.omega)
    two = 2.0 * ang
    arg = ang
    s1 = 0.0
    for a in odd:
        s1 += a * math.sinh(arg)
        arg += two
    arg = two
    s3 = 1.0
    for b in even2:
        s3 += b * math.cosh(arg)
        arg += two
    u = numf * s1 / s3
    return u * u


def wp_minus_e2(lat: LatticeGeometry, z: complex) -> complex:
    """wp(z) - e2 as a single squared theta quotient, with no subtraction.

        wp(z) - e2 = [theta1'(0) theta3(v) / (2 omega theta3(0) theta1(v))]^2,
        v = z / (2 omega).

    Where wp is close to e2 the difference is far smaller than either term,
    so forming it this way preserves full relative accuracy. The point is
    first reduced to the centred fundamental cell (wp is even and doubly
    periodic), which keeps the series arguments in the strip where the
    terms decay. Points within 1e-8 of a lattice node raise TooCloseToPole.
    """
    zz = complex(z)
    two_w = 2.0 * lat.omega
    two_wp = 2.0 * math.pi
    zz = complex(
        zz.real - two_w * round(zz.real / two_w),
        zz.imag - two_wp * round(zz.imag / two_wp),
    )
    if abs(zz) < 1e-8:
        raise TooCloseToPole(f"point {z!r} is within 1e-8 of a lattice node")
    q = lat.nome
    piv = math.pi * (zz / two_w)
    t1 = 0j
    t3 = 1.0 + 0j
    peak1 = 0.0
    peak3 = 1.0
    calm_before = False
    n = 0
    while n <= 512:
        a = q ** ((n + 0.5) ** 2)
        w1 = (-a if n % 2 else a) * cmath.sin((2 * n + 1) * piv)
        t1 += w1
        m = n + 1
        w3 = 2.0 * q ** (m * m) * cmath.cos(2 * m * piv)
        t3 += w3
        peak1 = max(peak1, abs(w1))
        peak3 = max(peak3, abs(w3))
        calm = abs(w1) <= 1e-17 * peak1 and abs(w3) <= 1e-17 * peak3
        if calm and calm_before and n >= 2:
            break
        calm_before = calm
        n += 1
    tz = theta_zero_values(ThetaContext.for_nome(q))
    quot = tz.th1prime * t3 / (2.0 * lat.omega * tz.th3 * 2.0 * t1)
    return quot * quot


def weierstrass_p(lat: LatticeGeometry, z: complex) -> complex:
    """Weierstrass wp at a complex point: e2 plus the theta quotient square."""
    return half_period_values(lat).e2 + wp_minus_e2(lat, z)


def laurent_check(lat: LatticeGeometry, delta: float) -> float:
    """Pole probe delta^2 (wp(delta) - e2) / 4; tends to 1/4 as delta -> 0.

    By double periodicity and evenness this equals delta^2 P(omega +
    omega' - delta), the approach to the image pole along the inward
    real direction.
    """
    if not 1e-4 <= delta <= 1e-2:
        raise ValueError(f"delta must lie in [1e-4, 1e-2], got {delta!r}")
    return delta * delta * wp_minus_e2(lat, complex(delta, 0.0)).real / 4.0
