"""Accessory parameter search and the resulting center density.

For an in-bracket spectral parameter the two axis systems yield the
half-trace and half-difference quotients

    m  = (s/c + s'/c') / 2,    r  = (s'/c' - s/c) / 2 = 1 / (2 c c'),
    m1 = (v/u + v'/u') / 2,    r1 = (v'/u' - v/u) / 2 = 1 / (2 u u'),

all evaluated at the far endpoints. Every quotient is positive strictly
between the eigenvalue bounds. The accessory parameter lambda* is the
unique root of the tangency residual

    e(lambda) = m1^2 / sqrt(m1^2 + m^2) - r1,

which tends to -r1 < 0 at the lower bound and to v/u > 0 at the upper
one. The center density follows as a = m m1 / sqrt(m^2 + m1^2).
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from . import lame_solver, lattice

__all__ = [
    "AccessoryResult",
    "NearSingularQuotient",
    "NoSignChange",
    "OutsideBracket",
    "SweepRow",
    "TangencyData",
    "a_normalized",
    "a_of_k",
    "find_normalized_max",
    "solve_accessory",
    "solve_for_aspect",
    "sweep_rows",
    "tangency_data",
    "two_omega",
]


class OutsideBracket(ValueError):
    """Endpoint signs show the parameter lies outside the tangency bracket."""


class NearSingularQuotient(ArithmeticError):
    """A quotient denominator nearly vanished at an eigenvalue bound.

    sign_hint carries the limiting sign of the residual e on that side:
    -1 when the real-axis system degenerates, +1 for the imaginary one.
    """

    def __init__(self, message: str, sign_hint: float):
        super().__init__(message)
        self.sign_hint = sign_hint


class NoSignChange(RuntimeError):
    """The residual refused to straddle zero, or refused to settle on it."""


@dataclass(frozen=True)
class TangencyData:
    m: float
    r: float
    m1: float
    r1: float
    e: float
    a: float


@dataclass(frozen=True)
class AccessoryResult:
    lambda_star: float
    bracket: lame_solver.EigenBounds
    iterations: int
    residual: float
    tangency: TangencyData


@dataclass(frozen=True)
class SweepRow:
    k: float
    two_omega: float
    a_native: float
    a_normalized: float
    a_normalized_x2: float


def tangency_data(
    lat: lattice.LatticeGeometry, lam: float, tol: float = 1e-10
) -> TangencyData:
    """Quotient pack at one spectral parameter; tol goes to the integrators."""
    real = lame_solver.integrate_real_axis(lat, lam, tol)
    imag = lame_solver.integrate_imag_axis(lat, lam, tol)
    c, s, cp, sp = real.a11, real.a12, real.a21, real.a22
    u, v, up, vp = imag.a11, imag.a12, imag.a21, imag.a22
    scale_r = max(abs(c), abs(s), abs(cp), abs(sp))
    if abs(c) < 1e-12 * scale_r or abs(cp) < 1e-12 * scale_r:
        raise NearSingularQuotient(
            f"real-axis quotient degenerates at lambda = {lam!r}", sign_hint=-1.0
        )
    scale_i = max(abs(u), abs(v), abs(up), abs(vp))
    if abs(u) < 1e-12 * scale_i or abs(up) < 1e-12 * scale_i:
        raise NearSingularQuotient(
            f"imaginary-axis quotient degenerates at lambda = {lam!r}", sign_hint=1.0
        )
    if min(c, s, cp, sp, u, v, up, vp) <= 0.0:
        raise OutsideBracket(
            f"lambda = {lam!r} sits outside the tangency bracket"
        )
    m = 0.5 * (s / c + sp / cp)
    r = 0.5 * (sp / cp - s / c)
    m1 = 0.5 * (v / u + vp / up)
    r1 = 0.5 * (vp / up - v / u)
    return TangencyData(
        m=m,
        r=r,
        m1=m1,
        r1=r1,
        e=m1 * m1 / math.hypot(m1, m) - r1,
        a=m * m1 / math.hypot(m, m1),
    )


def solve_accessory(
    lat: lattice.LatticeGeometry, tol: float = 1e-10, swap_axes: bool = False
) -> AccessoryResult:
    """Locate the accessory parameter by sign bisection of the residual.

    The search runs inside the eigenvalue bracket, starting from small
    insets off both ends. Far from the root the integrators run at a
    loosened tolerance; once the interval is small relative to lambda the
    tight tolerance (tol / 100) takes over, and the bisection keeps going
    until the interval is pinched and |residual| <= tol.

    With swap_axes=True the mirrored residual m^2 / sqrt(m^2 + m1^2) - r
    is solved instead; its root is the accessory parameter of the
    inverted-aspect lattice, rescaled.
    """
    if not 1e-12 <= tol <= 1e-4:
        raise ValueError(f"tolerance must lie in [1e-12, 1e-4], got {tol!r}")
    tight = tol * 1e-2
    loose = max(1e-8, tight)
    bounds = lame_solver.lambda_bounds(lat, tol)
    gap = bounds.lambda_plus - bounds.lambda_minus

    def residual_of(td: TangencyData) -> float:
        if swap_axes:
            return td.m * td.m / math.hypot(td.m, td.m1) - td.r
        return td.e

    def sign_at(lam: float, itol: float):
        # module-level lookup keeps the quotient pack swappable in tests
        try:
            val = residual_of(tangency_data(lat, lam, itol))
        except NearSingularQuotient as exc:
            hint = -exc.sign_hint if swap_axes else exc.sign_hint
            return hint, None
        return math.copysign(1.0, val), val

    delta = 1e-4 * gap
    for _ in range(40):
        lo = bounds.lambda_minus + delta
        hi = bounds.lambda_plus - delta
        s_lo, _ = sign_at(lo, loose)
        s_hi, _ = sign_at(hi, loose)
        if s_lo * s_hi < 0.0:
            break
        delta *= 0.5
    else:
        raise NoSignChange(
            f"residual keeps one sign near both bounds {bounds} for aspect {lat.k!r}"
        )

    width_stop = tol * 10.0 * max(
        1.0, abs(bounds.lambda_minus), abs(bounds.lambda_plus)
    )
    iterations = 0
    lam_star = 0.5 * (lo + hi)
    while True:
        if iterations >= 200:
            raise NoSignChange(
                f"residual did not settle below {tol!r} in 200 bisections"
            )
        mid = 0.5 * (lo + hi)
        width = hi - lo
        itol = tight if width <= 1e-4 * max(1.0, abs(mid)) else loose
        s_mid, val = sign_at(mid, itol)
        iterations += 1
        if (
            width <= width_stop
            and itol == tight
            and val is not None
            and abs(val) <= tol
        ):
            lam_star = mid
            break
        if s_mid == s_lo:
            lo = mid
        else:
            hi = mid

    td = tangency_data(lat, lam_star, tight)
    # in-bracket quotients are positive by construction
    assert td.m > 0.0 and td.r > 0.0 and td.m1 > 0.0 and td.r1 > 0.0
    return AccessoryResult(
        lambda_star=lam_star,
        bracket=bounds,
        iterations=iterations,
        residual=residual_of(td),
        tangency=td,
    )


def solve_for_aspect(k: float, tol: float = 1e-10) -> AccessoryResult:
    """Accessory solve for aspect k within the supported envelope."""
    if not 0.01 <= k <= 50.0:
        raise ValueError(f"aspect must lie in [0.01, 50], got {k!r}")
    return solve_accessory(lattice.LatticeGeometry.from_aspect(k), tol)


def a_of_k(k: float, tol: float = 1e-10) -> float:
    """Center density of the lattice complement at aspect k."""
    return solve_for_aspect(k, tol).tangency.a


def two_omega(k: float) -> float:
    """Rescaled real period k / sqrt(1 + k^2) used by the sweep output."""
    return k / math.hypot(1.0, k)


def a_normalized(k: float, tol: float = 1e-10) -> float:
    """Center density rescaled by the cell diagonal, a / (2 pi sqrt(1 + k^2)).

    Invariant under k -> 1/k, with maximum at the square aspect k = 1.
    """
    return a_of_k(k, tol) / (2.0 * math.pi * math.hypot(1.0, k))


def find_normalized_max(tol: float = 1e-8):
    """Golden-section maximum of the normalized density over log-aspect.

    Returns (k_star, value). Raises BracketNotFound when the interior
    value fails to beat the endpoints and RuntimeError when the located
    maximum breaks the k -> 1/k symmetry.
    """
    lo, hi = -3.0, 3.0
    ratio = (math.sqrt(5.0) - 1.0) / 2.0

    def f(sv: float) -> float:
        return a_normalized(math.exp(sv), tol)

    f_lo, f_hi = f(lo), f(hi)
    x1 = hi - ratio * (hi - lo)
    x2 = lo + ratio * (hi - lo)
    f1, f2 = f(x1), f(x2)
    while hi - lo > 2e-4:
        if f1 >= f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - ratio * (hi - lo)
            f1 = f(x1)
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + ratio * (hi - lo)
            f2 = f(x2)
    if max(f1, f2) <= max(f_lo, f_hi):
        raise lame_solver.BracketNotFound(
            "no interior maximum of the normalized density"
        )
    k_star = math.exp(0.5 * (lo + hi))
    value = a_normalized(k_star, tol)
    mirror = a_normalized(1.0 / k_star, tol)
    if abs(value - mirror) > 1e-6 * value:
        raise RuntimeError(
            f"normalized density breaks aspect symmetry at {k_star!r}: "
            f"{value!r} vs {mirror!r}"
        )
    return k_star, value


def _sweep_point(args) -> SweepRow:
    k, tol = args
    a = a_of_k(k, tol)
    norm = a / (2.0 * math.pi * math.hypot(1.0, k))
    return SweepRow(
        k=k,
        two_omega=two_omega(k),
        a_native=a,
        a_normalized=norm,
        a_normalized_x2=2.0 * norm,
    )


def sweep_rows(
    k_min: float,
    k_max: float,
    points: int,
    tol: float = 1e-10,
    parallel: bool = True,
) -> list:
    """Geometrically spaced density table over [k_min, k_max]."""
    if not 0.02 <= k_min < k_max <= 50.0:
        raise ValueError(
            f"sweep range must satisfy 0.02 <= k_min < k_max <= 50, "
            f"got [{k_min!r}, {k_max!r}]"
        )
    if points < 2:
        raise ValueError(f"sweep needs at least 2 points, got {points!r}")
    ratio = k_max / k_min
    ks = [k_min * ratio ** (i / (points - 1)) for i in range(points)]
    jobs = [(k, tol) for k in ks]
    if parallel:
        try:
            with ProcessPoolExecutor() as pool:
                return list(pool.map(_sweep_point, jobs))
        except Exception:
            pass  # pool may be unavailable in constrained environments
    return [_sweep_point(job) for job in jobs]
