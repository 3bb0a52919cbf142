"""Jacobi theta series and modular helpers on the imaginary axis.

Conventions used throughout: the nome is real with 0 < q < 1 and theta
arguments are normalized so the real quasi-period equals 1,

    theta1(v) = 2 sum_{n>=0} (-1)^n q^((n+1/2)^2) sin((2n+1) pi v)
    theta2(v) = 2 sum_{n>=0} q^((n+1/2)^2) cos((2n+1) pi v)
    theta3(v) = 1 + 2 sum_{n>=1} q^(n^2) cos(2 n pi v)
    theta4(v) = 1 + 2 sum_{n>=1} (-1)^n q^(n^2) cos(2 n pi v)

so that theta1'(0) = pi theta2(0) theta3(0) theta4(0). Every series is
truncated at an index fixed per nome; see ThetaContext.for_nome.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

__all__ = [
    "ArgumentOutOfStrip",
    "ThetaContext",
    "ThetaZeroValues",
    "agm",
    "beta_quarter",
    "kappa2",
    "kappa2_prime",
    "theta_at",
    "theta_zero_values",
]


class ArgumentOutOfStrip(ValueError):
    """Argument lies too far from the real axis for the fixed truncation."""


@dataclass(frozen=True)
class ThetaContext:
    """A nome together with the series truncation index used everywhere."""

    q: float
    trunc: int

    @classmethod
    def for_nome(cls, q: float) -> "ThetaContext":
        """Pick the smallest truncation whose dropped tail is below roundoff.

        The cut is the smallest n >= 1 with q^(n^2) < 1e-16 (1 - q); the
        geometric bound on the remaining tail then sits under double
        precision roundoff of the leading terms.
        """
        if not (0.0 < q < 1.0):
            raise ValueError(f"nome must lie in (0, 1), got {q!r}")
        n = 1
        while q ** (n * n) >= 1e-16 * (1.0 - q):
            n += 1
        return cls(q=q, trunc=n)


@dataclass(frozen=True)
class ThetaZeroValues:
    """theta2, theta3, theta4 and theta1' evaluated at argument zero."""

    th2: float
    th3: float
    th4: float
    th1prime: float


def theta_zero_values(ctx: ThetaContext) -> ThetaZeroValues:
    """Zero-argument values of the four theta series for a fixed nome."""
    q = ctx.q
    even = 0.0
    alt = 0.0
    for n in range(1, ctx.trunc + 1):
        w = q ** (n * n)
        even += w
        alt += -w if n % 2 else w
    half = 0.0
    half_alt = 0.0
    for n in range(ctx.trunc + 1):
        w = q ** ((n + 0.5) ** 2)
        half += w
        half_alt += -(2 * n + 1) * w if n % 2 else (2 * n + 1) * w
    return ThetaZeroValues(
        th2=2.0 * half,
        th3=1.0 + 2.0 * even,
        th4=1.0 + 2.0 * alt,
        th1prime=2.0 * math.pi * half_alt,
    )


def theta_at(ctx: ThetaContext, index: int, v: complex) -> complex:
    """Evaluate theta_index at argument v.

    The fixed truncation is only adequate while the terms still decay,
    which requires q exp(2 pi |Im v|) < 0.9; outside that strip the call
    raises ArgumentOutOfStrip.
    """
    vz = complex(v)
    q = ctx.q
    if q * math.exp(2.0 * math.pi * abs(vz.imag)) >= 0.9:
        raise ArgumentOutOfStrip(
            f"argument {v!r} leaves the convergence strip for nome {q:.6g}"
        )
    if index == 1:
        acc = 0j
        for n in range(ctx.trunc + 1):
            term = q ** ((n + 0.5) ** 2) * cmath.sin((2 * n + 1) * math.pi * vz)
            acc += -term if n % 2 else term
        return 2.0 * acc
    if index == 2:
        acc = 0j
        for n in range(ctx.trunc + 1):
            acc += q ** ((n + 0.5) ** 2) * cmath.cos((2 * n + 1) * math.pi * vz)
        return 2.0 * acc
    if index == 3:
        acc = 1.0 + 0j
        for n in range(1, ctx.trunc + 1):
            acc += 2.0 * q ** (n * n) * cmath.cos(2 * n * math.pi * vz)
        return acc
    if index == 4:
        acc = 1.0 + 0j
        for n in range(1, ctx.trunc + 1):
            term = 2.0 * q ** (n * n) * cmath.cos(2 * n * math.pi * vz)
            acc += -term if n % 2 else term
        return acc
    raise ValueError(f"theta index must be 1, 2, 3 or 4, got {index!r}")


def kappa2(y: float) -> float:
    """Modular square ratio (theta2/theta3)^4 at purely imaginary ratio i y.

    Decreases from 1 to 0 as y runs over (0, infinity); kappa2(1) = 1/2.
    """
    if not (math.isfinite(y) and y > 0.0):
        raise ValueError(f"y must be finite and positive, got {y!r}")
    tz = theta_zero_values(ThetaContext.for_nome(math.exp(-math.pi * y)))
    return (tz.th2 / tz.th3) ** 4


def kappa2_prime(y: float) -> complex:
    """Derivative of kappa2 with respect to the modular ratio at i y.

    Differentiating the theta series in the nome h = exp(-pi y) and using
    dh/dtau = i pi h gives a purely imaginary value with positive
    imaginary part.
    """
    if not (math.isfinite(y) and y > 0.0):
        raise ValueError(f"y must be finite and positive, got {y!r}")
    h = math.exp(-math.pi * y)
    ctx = ThetaContext.for_nome(h)
    tz = theta_zero_values(ctx)
    d2 = 0.0
    for n in range(ctx.trunc + 1):
        e = (n + 0.5) ** 2
        d2 += e * h ** (e - 1.0)
    d2 *= 2.0
    d3 = 0.0
    for n in range(1, ctx.trunc + 1):
        e = float(n * n)
        d3 += e * h ** (e - 1.0)
    d3 *= 2.0
    chain = 4.0 * tz.th2 ** 3 / tz.th3 ** 5 * (d2 * tz.th3 - tz.th2 * d3)
    return complex(0.0, math.pi * h * chain)


def beta_quarter() -> float:
    """The beta value Gamma(1/4)^2 / Gamma(1/2)."""
    g = math.gamma(0.25)
    return g * g / math.gamma(0.5)


def agm(a: float, b: float) -> float:
    """Arithmetic-geometric mean of two positive numbers."""
    if not (a > 0.0 and b > 0.0 and math.isfinite(a) and math.isfinite(b)):
        raise ValueError(f"agm needs finite positive arguments, got {a!r}, {b!r}")
    while abs(a - b) >= 1e-15 * a:
        a, b = (a + b) / 2.0, math.sqrt(a * b)
    return (a + b) / 2.0
