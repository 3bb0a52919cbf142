"""Shooting integrator for the axis restrictions of w'' = (lambda - P) w.

Along the real half-period the fundamental system (c, s) with
c(0) = 1, c'(0) = 0, s(0) = 0, s'(0) = 1 satisfies

    w''(sigma) = (lambda - P_real(sigma)) w(sigma),        sigma in [0, omega],

and rotating the argument onto the imaginary axis turns the same
equation into a real one for u(t) = c(i t) and v(t) = -i s(i t):

    w''(t) = (P_imag(t) - lambda) w(t),                    t in [0, pi].

Both systems conserve the Wronskian c s' - s c' = 1 exactly, which the
endpoint determinant exposes as an accuracy probe.

The integrator is an embedded 5(4) Runge-Kutta pair with local
extrapolation, first-same-as-last reuse and a PI-free standard step
controller; the state is kept in four unrolled floats since the two
solutions share every coefficient evaluation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import lattice

__all__ = [
    "BracketNotFound",
    "EigenBounds",
    "EndpointMatrix",
    "StepSizeUnderflow",
    "integrate_imag_axis",
    "integrate_real_axis",
    "lambda_bounds",
]


class StepSizeUnderflow(RuntimeError):
    """The adaptive step fell below the resolvable width of the interval."""


class BracketNotFound(RuntimeError):
    """No admissible interval around lambda = 0 could be established."""


@dataclass(frozen=True)
class EndpointMatrix:
    """Fundamental matrix at the far end of an axis segment.

    a11 = c(L), a12 = s(L), a21 = c'(L), a22 = s'(L). czeros counts sign
    changes of c over the accepted mesh; det is the conserved Wronskian
    and equals 1 up to integration error.
    """

    a11: float
    a12: float
    a21: float
    a22: float
    czeros: int

    @property
    def det(self) -> float:
        return self.a11 * self.a22 - self.a12 * self.a21


@dataclass(frozen=True)
class EigenBounds:
    """Largest real-axis root and smallest imaginary-axis root, in order."""

    lambda_minus: float
    lambda_plus: float


# Dormand-Prince 5(4) tableau.
_A21 = 0.2
_A31, _A32 = 3.0 / 40.0, 9.0 / 40.0
_A41, _A42, _A43 = 44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0
_A51, _A52, _A53, _A54 = (
    19372.0 / 6561.0,
    -25360.0 / 2187.0,
    64448.0 / 6561.0,
    -212.0 / 729.0,
)
_A61, _A62, _A63, _A64, _A65 = (
    9017.0 / 3168.0,
    -355.0 / 33.0,
    46732.0 / 5247.0,
    49.0 / 176.0,
    -5103.0 / 18656.0,
)
_B1, _B3, _B4, _B5, _B6 = (
    35.0 / 384.0,
    500.0 / 1113.0,
    125.0 / 192.0,
    -2187.0 / 6784.0,
    11.0 / 84.0,
)
_E1, _E3, _E4, _E5, _E6, _E7 = (
    71.0 / 57600.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
)


def _integrate(q_of, length: float, rtol: float, atol: float):
    """Propagate the fundamental system over [0, length].

    Returns ((c, s, c', s'), czeros). Raises StepSizeUnderflow when the
    controller drives the step under 32 ulp of the interval.
    """
    c, s, cp, sp = 1.0, 0.0, 0.0, 1.0
    x = 0.0
    h = length / 256.0
    h_max = length / 32.0
    h_min = 32.0 * math.ulp(1.0) * length
    czeros = 0
    q = q_of(0.0)
    f1c, f1s, f1p, f1r = cp, sp, q * c, q * s
    while x < length:
        if h < h_min:
            raise StepSizeUnderflow(
                f"step {h:.3e} below floor {h_min:.3e} at x = {x:.6g}"
            )
        hc = h if x + h < length else length - x
        landing = hc == length - x

        c2 = c + hc * (_A21 * f1c)
        s2 = s + hc * (_A21 * f1s)
        p2 = cp + hc * (_A21 * f1p)
        r2 = sp + hc * (_A21 * f1r)
        q2 = q_of(x + 0.2 * hc)
        g2c, g2s = q2 * c2, q2 * s2

        c3 = c + hc * (_A31 * f1c + _A32 * p2)
        s3 = s + hc * (_A31 * f1s + _A32 * r2)
        p3 = cp + hc * (_A31 * f1p + _A32 * g2c)
        r3 = sp + hc * (_A31 * f1r + _A32 * g2s)
        q3 = q_of(x + 0.3 * hc)
        g3c, g3s = q3 * c3, q3 * s3

        c4 = c + hc * (_A41 * f1c + _A42 * p2 + _A43 * p3)
        s4 = s + hc * (_A41 * f1s + _A42 * r2 + _A43 * r3)
        p4 = cp + hc * (_A41 * f1p + _A42 * g2c + _A43 * g3c)
        r4 = sp + hc * (_A41 * f1r + _A42 * g2s + _A43 * g3s)
        q4 = q_of(x + 0.8 * hc)
        g4c, g4s = q4 * c4, q4 * s4

        c5 = c + hc * (_A51 * f1c + _A52 * p2 + _A53 * p3 + _A54 * p4)
        s5 = s + hc * (_A51 * f1s + _A52 * r2 + _A53 * r3 + _A54 * r4)
        p5 = cp + hc * (_A51 * f1p + _A52 * g2c + _A53 * g3c + _A54 * g4c)
        r5 = sp + hc * (_A51 * f1r + _A52 * g2s + _A53 * g3s + _A54 * g4s)
        q5 = q_of(x + (8.0 / 9.0) * hc)
        g5c, g5s = q5 * c5, q5 * s5

        c6 = c + hc * (_A61 * f1c + _A62 * p2 + _A63 * p3 + _A64 * p4 + _A65 * p5)
        s6 = s + hc * (_A61 * f1s + _A62 * r2 + _A63 * r3 + _A64 * r4 + _A65 * r5)
        p6 = cp + hc * (_A61 * f1p + _A62 * g2c + _A63 * g3c + _A64 * g4c + _A65 * g5c)
        r6 = sp + hc * (_A61 * f1r + _A62 * g2s + _A63 * g3s + _A64 * g4s + _A65 * g5s)
        q6 = q_of(x + hc)
        g6c, g6s = q6 * c6, q6 * s6

        cn = c + hc * (_B1 * f1c + _B3 * p3 + _B4 * p4 + _B5 * p5 + _B6 * p6)
        sn = s + hc * (_B1 * f1s + _B3 * r3 + _B4 * r4 + _B5 * r5 + _B6 * r6)
        pn = cp + hc * (_B1 * f1p + _B3 * g3c + _B4 * g4c + _B5 * g5c + _B6 * g6c)
        rn = sp + hc * (_B1 * f1r + _B3 * g3s + _B4 * g4s + _B5 * g5s + _B6 * g6s)
        # stages 6 and 7 share the node x + hc, so q6 serves both
        f7c, f7s, f7p, f7r = pn, rn, q6 * cn, q6 * sn

        ec = hc * (_E1 * f1c + _E3 * p3 + _E4 * p4 + _E5 * p5 + _E6 * p6 + _E7 * f7c)
        es = hc * (_E1 * f1s + _E3 * r3 + _E4 * r4 + _E5 * r5 + _E6 * r6 + _E7 * f7s)
        ep = hc * (_E1 * f1p + _E3 * g3c + _E4 * g4c + _E5 * g5c + _E6 * g6c + _E7 * f7p)
        er = hc * (_E1 * f1r + _E3 * g3s + _E4 * g4s + _E5 * g5s + _E6 * g6s + _E7 * f7r)

        wc = ec / (atol + rtol * max(abs(c), abs(cn)))
        ws = es / (atol + rtol * max(abs(s), abs(sn)))
        wp = ep / (atol + rtol * max(abs(cp), abs(pn)))
        wr = er / (atol + rtol * max(abs(sp), abs(rn)))
        err = math.sqrt(0.25 * (wc * wc + ws * ws + wp * wp + wr * wr))

        accept = err <= 1.0  # nan fails the comparison and rejects
        if accept:
            if c * cn < 0.0:
                czeros += 1
            c, s, cp, sp = cn, sn, pn, rn
            f1c, f1s, f1p, f1r = f7c, f7s, f7p, f7r
            x = length if landing else x + hc
        if err == 0.0 or math.isnan(err) or math.isinf(err):
            fac = 5.0 if err == 0.0 else 0.2
        else:
            fac = min(5.0, max(0.2, 0.9 * err ** -0.2))
        h = min(hc * fac, h_max)
    return (c, s, cp, sp), czeros


def _check_tol(tol: float) -> None:
    if not 1e-14 <= tol <= 1e-6:
        raise ValueError(f"integrator tolerance must lie in [1e-14, 1e-6], got {tol!r}")


def integrate_real_axis(
    lat: lattice.LatticeGeometry, lam: float, tol: float = 1e-10
) -> EndpointMatrix:
    """Endpoint fundamental matrix of w'' = (lambda - P_real) w at omega.

    tol drives the relative error weight; the absolute weight is tol/100.
    """
    _check_tol(tol)

    def q_of(x: float) -> float:
        return lam - lattice.P_real(lat, x)

    (c, s, cp, sp), nz = _integrate(q_of, lat.omega, tol, tol * 1e-2)
    return EndpointMatrix(a11=c, a12=s, a21=cp, a22=sp, czeros=nz)


def integrate_imag_axis(
    lat: lattice.LatticeGeometry, lam: float, tol: float = 1e-10
) -> EndpointMatrix:
    """Endpoint fundamental matrix of w'' = (P_imag - lambda) w at pi."""
    _check_tol(tol)

    def q_of(t: float) -> float:
        return lattice.P_imag(lat, t) - lam

    (c, s, cp, sp), nz = _integrate(q_of, abs(lat.omega_prime), tol, tol * 1e-2)
    return EndpointMatrix(a11=c, a12=s, a21=cp, a22=sp, czeros=nz)


def _inside(m: EndpointMatrix) -> bool:
    return m.czeros == 0 and m.a21 > 0.0


def _edge_bisect(matrix_at, width: float, loose: float, tight: float, stop: float):
    """Locate the edge of the oscillation-free set along one direction.

    matrix_at(lam, tol) -> EndpointMatrix. On the side of 0 that width
    points to, the set {lam : c has no interior zero and c'(end) > 0} is
    an interval with 0 inside it, and a21 has later sign changes past its
    first root, so plain sign bisection on a21 can latch onto the wrong
    one. The indicator cannot: past the first root either the slope has
    gone negative or a zero of c has entered through the far endpoint,
    and zeros never leave as lambda moves outward. At |width| the
    comparison equation oscillates through at least one full period,
    which puts the edge strictly inside the bisected interval. The
    returned value is the inner endpoint of the final interval, so it is
    itself admissible and any probe inset from it toward 0 stays so.
    """
    m0 = matrix_at(0.0, loose)
    if not _inside(m0):
        raise BracketNotFound(
            f"endpoint slope at lambda = 0 is not positive: {m0.a21!r}"
        )
    lo, hi = 0.0, width
    while abs(hi - lo) > stop:
        mid = 0.5 * (lo + hi)
        cur = tight if abs(hi - lo) <= 1e-4 * max(1.0, abs(mid)) else loose
        if _inside(matrix_at(mid, cur)):
            lo = mid
        else:
            hi = mid
    return lo


def lambda_bounds(lat: lattice.LatticeGeometry, tol: float = 1e-10) -> EigenBounds:
    """Bracketing pair for the accessory search.

    lambda_minus is the largest root of c'(omega; .), approached from 0
    downward; lambda_plus is the smallest root of u'(pi; .), approached
    from 0 upward. The window extents come from the extreme values of P
    on the two segments plus the principal oscillation scale, so each
    first root lies strictly inside its window.
    """
    if not 1e-12 <= tol <= 1e-4:
        raise ValueError(f"tolerance must lie in [1e-12, 1e-4], got {tol!r}")
    tight = tol * 1e-2
    loose = max(1e-8, tight)
    stop = tol * 1e2
    ev = lattice.half_period_values(lat)
    w_real = 0.25 * (ev.e2 - ev.e3) + (2.0 * math.pi / lat.omega) ** 2
    w_imag = 0.25 * (ev.e1 - ev.e2) + (2.0 * math.pi / abs(lat.omega_prime)) ** 2

    def real_at(lam: float, t: float) -> EndpointMatrix:
        return integrate_real_axis(lat, lam, t)

    def imag_at(lam: float, t: float) -> EndpointMatrix:
        return integrate_imag_axis(lat, lam, t)

    lam_minus = _edge_bisect(real_at, -w_real, loose, tight, stop)
    lam_plus = _edge_bisect(imag_at, w_imag, loose, tight, stop)
    return EigenBounds(lambda_minus=lam_minus, lambda_plus=lam_plus)
