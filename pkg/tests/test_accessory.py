import math

import pytest

from hyplattice import accessory, closed_forms, lame_solver, lattice

FROZEN_DENSITY = {
    0.2: 4.697319177643,
    0.5: 5.687392288288,
    0.8: 6.694555727497,
    1.25: 8.368194659379,
    2.0: 11.374784576585,
    5.0: 23.486595887816,
}


@pytest.mark.parametrize("k", sorted(FROZEN_DENSITY))
def test_solve_grid_regression(k):
    res = accessory.solve_for_aspect(k, 1e-10)
    b = res.bracket
    assert b.lambda_minus <= 0.0 <= b.lambda_plus
    assert b.lambda_minus <= res.lambda_star <= b.lambda_plus
    assert abs(res.residual) <= 1e-10
    assert res.tangency.a == pytest.approx(FROZEN_DENSITY[k], rel=1e-9)
    for quot in (res.tangency.m, res.tangency.r, res.tangency.m1, res.tangency.r1):
        assert quot > 0.0


def test_square_aspect_against_closed_form():
    res = accessory.solve_for_aspect(1.0, 1e-10)
    assert abs(res.lambda_star) <= 1e-9
    assert res.tangency.a == pytest.approx(closed_forms.center_density_closed(), rel=1e-11)
    # the half-trace quotients coincide when both axes carry the same system
    assert res.tangency.m == pytest.approx(res.tangency.m1, rel=1e-9)


def test_swapped_residual_solves_dual_aspect():
    swapped = accessory.solve_accessory(
        lattice.LatticeGeometry.from_aspect(2.0), 1e-10, swap_axes=True
    )
    direct = accessory.solve_for_aspect(0.5, 1e-10)
    assert swapped.lambda_star == pytest.approx(-direct.lambda_star / 4.0, rel=1e-9)


@pytest.mark.parametrize("k", [0.5, 2.0])
def test_functional_equation(k):
    a_inv = accessory.a_of_k(1.0 / k, 1e-10)
    a = accessory.a_of_k(k, 1e-10)
    assert a_inv == pytest.approx(a / k, rel=1e-9)


def test_normalized_density_symmetry():
    assert accessory.a_normalized(2.0, 1e-10) == pytest.approx(
        accessory.a_normalized(0.5, 1e-10), rel=1e-9
    )
    assert accessory.two_omega(1.0) == pytest.approx(1.0 / math.sqrt(2.0), rel=1e-15)


def test_find_normalized_max():
    k_star, value = accessory.find_normalized_max(1e-8)
    assert abs(math.log(k_star)) < 2.5e-4
    # peak value equals the reciprocal of agm(1, sqrt(2))
    assert value == pytest.approx(0.8346268416740732, abs=5e-9)


def test_domain_validation():
    for k in (0.005, 60.0, 0.0):
        with pytest.raises(ValueError):
            accessory.solve_for_aspect(k, 1e-10)
    with pytest.raises(ValueError):
        accessory.solve_accessory(lattice.LatticeGeometry.from_aspect(1.0), 1e-13)
    with pytest.raises(ValueError):
        accessory.solve_accessory(lattice.LatticeGeometry.from_aspect(1.0), 1e-3)


@pytest.mark.parametrize("lam", [0.1, -0.1])
def test_tangency_data_outside_bracket(lam):
    with pytest.raises(accessory.OutsideBracket):
        accessory.tangency_data(lattice.LatticeGeometry.from_aspect(2.0), lam, 1e-10)


def test_no_sign_change(monkeypatch):
    stuck = accessory.TangencyData(m=1.0, r=1.0, m1=1.0, r1=1.0, e=1.0, a=1.0)
    monkeypatch.setattr(accessory, "tangency_data", lambda lat, lam, tol: stuck)
    with pytest.raises(accessory.NoSignChange):
        accessory.solve_accessory(lattice.LatticeGeometry.from_aspect(1.0), 1e-8)


def test_near_singular_hint_keeps_bisection_alive(monkeypatch):
    # a degenerate quotient near the lower probe must act as a sign, not
    # as a failure; the bisection then converges on the stub root
    root = 0.005

    def stubbed(lat, lam, tol):
        if lam < root:
            raise accessory.NearSingularQuotient("stub", sign_hint=-1.0)
        return accessory.TangencyData(
            m=1.0, r=1.0, m1=1.0, r1=1.0, e=lam - root, a=1.0
        )

    monkeypatch.setattr(accessory, "tangency_data", stubbed)
    res = accessory.solve_accessory(lattice.LatticeGeometry.from_aspect(1.0), 1e-8)
    assert res.lambda_star == pytest.approx(root, abs=1e-6)


def test_sweep_rows_serial_matches_parallel():
    serial = accessory.sweep_rows(0.5, 2.0, 4, 1e-7, parallel=False)
    parallel = accessory.sweep_rows(0.5, 2.0, 4, 1e-7, parallel=True)
    assert serial == parallel


def test_sweep_rows_layout():
    rows = accessory.sweep_rows(0.25, 4.0, 5, 1e-7, parallel=False)
    assert [r.k for r in rows] == pytest.approx(
        [0.25, 0.5, 1.0, 2.0, 4.0], rel=1e-12
    )
    for r in rows:
        assert r.two_omega == pytest.approx(r.k / math.hypot(1.0, r.k), rel=1e-15)
        assert r.a_normalized == pytest.approx(
            r.a_native / (2.0 * math.pi * math.hypot(1.0, r.k)), rel=1e-15
        )
        assert r.a_normalized_x2 == 2.0 * r.a_normalized


def test_sweep_rows_validation():
    with pytest.raises(ValueError):
        accessory.sweep_rows(2.0, 1.0, 5)
    with pytest.raises(ValueError):
        accessory.sweep_rows(0.001, 1.0, 5)
    with pytest.raises(ValueError):
        accessory.sweep_rows(0.5, 2.0, 1)
