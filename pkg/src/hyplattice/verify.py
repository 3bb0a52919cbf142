"""End-to-end consistency checks mirroring the acceptance gates.

Each check recomputes what it needs from scratch so that a fault injected
anywhere in the pipeline surfaces here instead of being papered over by a
cache.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass

from . import accessory, closed_forms, lame_solver, lattice, special_functions

__all__ = ["CheckOutcome", "FunctionalResiduals", "run_all"]

_GRID = (0.2, 0.5, 0.8, 1.25, 2.0, 5.0)


@dataclass(frozen=True)
class CheckOutcome:
    name: str
    ok: bool
    detail: str
    seconds: float


@dataclass(frozen=True)
class FunctionalResiduals:
    k: float
    a_k: float
    a_inv_k: float
    rel_residual: float


def _done(name: str, t0: float, ok: bool, detail: str) -> CheckOutcome:
    return CheckOutcome(name=name, ok=ok, detail=detail, seconds=time.perf_counter() - t0)


def check_center_square() -> CheckOutcome:
    """Square-aspect density from the solver against its closed form."""
    t0 = time.perf_counter()
    a_pipe = accessory.a_of_k(1.0, 1e-10)
    a_form = closed_forms.center_density_closed()
    rel = abs(a_pipe - a_form) / a_form
    ok = rel <= 1e-6 and 7.41 < a_pipe < 7.42 and 7.41 < a_form < 7.42
    return _done(
        "center-square",
        t0,
        ok,
        f"pipeline={a_pipe:.10f} closed={a_form:.10f} rel={rel:.2e}",
    )


def functional_equation_rows(tol: float = 1e-10) -> list:
    """Residual rows of a(1/k) = a(k)/k over the standard grid."""
    values = {k: accessory.a_of_k(k, tol) for k in _GRID}
    rows = []
    for k in _GRID:
        inv = 1.0 / k
        rel = abs(values[inv] - values[k] / k) / values[inv]
        rows.append(
            FunctionalResiduals(k=k, a_k=values[k], a_inv_k=values[inv], rel_residual=rel)
        )
    return rows


def check_functional_equation() -> CheckOutcome:
    t0 = time.perf_counter()
    rows = functional_equation_rows()
    worst = max(rows, key=lambda row: row.rel_residual)
    ok = all(row.rel_residual <= 1e-6 for row in rows)
    return _done(
        "functional-equation",
        t0,
        ok,
        f"worst rel={worst.rel_residual:.2e} at k={worst.k:g}",
    )


def check_slope_origin() -> CheckOutcome:
    """Extrapolated thin-limit slope of a(k)/(2 pi) against (4/pi^2) log 4."""
    t0 = time.perf_counter()
    d_coarse = (accessory.a_of_k(0.02, 1e-7) - 4.0) / 0.02
    d_fine = (accessory.a_of_k(0.01, 1e-7) - 4.0) / 0.01
    est = (2.0 * d_fine - d_coarse) / (2.0 * math.pi)
    target = 0.561842
    rel = abs(est - target) / target
    return _done(
        "slope-origin", t0, rel <= 0.01, f"estimate={est:.6f} target={target} rel={rel:.2e}"
    )


def check_slope_one() -> CheckOutcome:
    """Centred slope at the square aspect against a(1)/2."""
    t0 = time.perf_counter()
    a_one = accessory.a_of_k(1.0, 1e-10)
    slope = (accessory.a_of_k(1.01, 1e-10) - accessory.a_of_k(0.99, 1e-10)) / 0.02
    diff = abs(slope - 0.5 * a_one)
    return _done(
        "slope-one",
        t0,
        diff <= 1e-3 * a_one,
        f"slope={slope:.8f} half={0.5 * a_one:.8f} diff={diff:.2e}",
    )


def check_normalized_max() -> CheckOutcome:
    t0 = time.perf_counter()
    k_star, value = accessory.find_normalized_max(1e-8)
    width = accessory.two_omega(k_star)
    ok = (
        abs(width - 0.70711) <= 0.002
        and abs(value - 0.83465) <= 0.001
        and abs(2.0 * value - 1.6693) <= 0.002
    )
    return _done(
        "normalized-max",
        t0,
        ok,
        f"k*={k_star:.6f} two_omega={width:.5f} value={value:.6f} doubled={2 * value:.5f}",
    )


def check_bracket_grid() -> CheckOutcome:
    """Bounds ordering, root containment and residual size over the grid."""
    t0 = time.perf_counter()
    worst_e = 0.0
    ok = True
    for k in _GRID:
        res = accessory.solve_for_aspect(k, 1e-10)
        b = res.bracket
        worst_e = max(worst_e, abs(res.tangency.e))
        ok = ok and b.lambda_minus <= 0.0 <= b.lambda_plus
        ok = ok and b.lambda_minus <= res.lambda_star <= b.lambda_plus
        ok = ok and abs(res.tangency.e) <= 1e-10
    return _done("bracket-grid", t0, ok, f"worst |e|={worst_e:.2e}")


def check_wronskian() -> CheckOutcome:
    """Endpoint determinant of both axis systems stays at 1.

    Sampled across each bracket and on a fixed moderate grid. Parameters
    with strong endpoint growth are excluded on purpose: the determinant
    is a difference of products of the endpoint entries, so its floating
    error scales with the squared growth factor no matter how tightly
    the integrator is run, and the solver never probes that regime.
    """
    t0 = time.perf_counter()
    worst = 0.0

    def drift(lat: lattice.LatticeGeometry, lam: float) -> float:
        d = abs(lame_solver.integrate_real_axis(lat, lam, 1e-10).det - 1.0)
        return max(d, abs(lame_solver.integrate_imag_axis(lat, lam, 1e-10).det - 1.0))

    for k in (0.25, 1.0, 4.0):
        lat = lattice.LatticeGeometry.from_aspect(k)
        b = lame_solver.lambda_bounds(lat, 1e-10)
        for frac in (0.99, 0.5):
            worst = max(worst, drift(lat, frac * b.lambda_minus))
            worst = max(worst, drift(lat, frac * b.lambda_plus))
        worst = max(worst, drift(lat, 0.0))
    for k in (0.5, 1.0, 2.0):
        lat = lattice.LatticeGeometry.from_aspect(k)
        for lam in (-0.2, 0.0, 0.2):
            worst = max(worst, drift(lat, lam))
    return _done("wronskian", t0, worst <= 1e-9, f"worst |det-1|={worst:.2e}")


def check_dual_route() -> CheckOutcome:
    """Scalar axis evaluators against the complex Weierstrass route."""
    t0 = time.perf_counter()
    worst = 0.0
    for k in (0.25, 1.0, 4.0):
        lat = lattice.LatticeGeometry.from_aspect(k)
        shift = lat.omega + lat.omega_prime
        for i in range(1, 33):
            sig = lat.omega * i / 32.0
            direct = lattice.P_real(lat, sig)
            routed = lattice.wp_minus_e2(lat, sig + shift).real / 4.0
            worst = max(worst, abs(direct - routed) / max(abs(direct), abs(routed)))
            tt = math.pi * i / 32.0
            direct = lattice.P_imag(lat, tt)
            routed = lattice.wp_minus_e2(lat, 1j * tt + shift).real / 4.0
            worst = max(worst, abs(direct - routed) / max(abs(direct), abs(routed)))
    return _done("dual-route", t0, worst <= 1e-10, f"worst rel={worst:.2e}")


def check_laurent() -> CheckOutcome:
    t0 = time.perf_counter()
    lat = lattice.LatticeGeometry.from_aspect(2.0)
    value = lattice.laurent_check(lat, 1e-3)
    diff = abs(value - 0.25)
    return _done("laurent", t0, diff <= 1e-4, f"probe={value:.8f} diff={diff:.2e}")


def check_strip_map() -> CheckOutcome:
    t0 = time.perf_counter()
    half = special_functions.kappa2(1.0)
    f5 = closed_forms.strip_map(5.0)
    ok = abs(half - 0.5) <= 1e-12 and abs(f5 - (5.0 - 0.441271)) <= 1e-6
    return _done(
        "strip-map", t0, ok, f"kappa2(1)={half:.15f} F(5)={f5:.8f}"
    )


# (check, included in the fast pass)
_CHECKS = (
    (check_center_square, True),
    (check_functional_equation, False),
    (check_slope_origin, True),
    (check_slope_one, True),
    (check_normalized_max, True),
    (check_bracket_grid, True),
    (check_wronskian, True),
    (check_dual_route, True),
    (check_laurent, True),
    (check_strip_map, True),
)


def run_all(fast: bool = False) -> list:
    """Run the checks in order; fast mode skips the functional grid."""
    return [fn() for fn, in_fast in _CHECKS if in_fast or not fast]
