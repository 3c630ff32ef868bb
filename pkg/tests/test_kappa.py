"""Scaling-deformed (3+1)-dimensional model: shell trajectories and the two
projected velocity laws."""
import numpy as np
import pytest

from poismech.errors import ContractViolation
from poismech.fitting import monotonicity_verdict
from poismech.kappa import (
    KappaSpec,
    classical_limit_deviation,
    closed_form_speeds,
    free_shell_trajectory,
    kappa_bivector,
    velocity_momentum_profile,
)

SPEC = KappaSpec(0.5)


def test_bivector_components():
    biv = kappa_bivector(SPEC)
    x = np.array([0.3, 1.2, -0.7, 0.4])
    # {x0, xk} = eps xk; spatial positions commute among themselves
    assert biv.component(0, 1, x) == pytest.approx(0.5 * 1.2, abs=1e-16)
    assert biv.component(0, 2, x) == pytest.approx(0.5 * (-0.7), abs=1e-16)
    assert biv.component(1, 2, x) == 0.0


def test_shell_trajectory_is_affine_with_constant_momenta():
    pvec = np.array([0.8, -0.3, 0.1])
    traj = free_shell_trajectory(SPEC, 1.0, pvec, 2.0, 16)
    p0 = np.sqrt(1.0 + pvec @ pvec)
    # momenta ride along unchanged
    shell = np.broadcast_to(np.r_[p0, pvec], (len(traj.times), 4))
    np.testing.assert_allclose(traj.points[:, 4:], shell, atol=1e-15)
    # base point moves with xdot = (-2 p0, 2 pvec)
    dt = np.diff(traj.times)[:, None]
    vel = np.diff(traj.points[:, :4], axis=0) / dt
    want = np.broadcast_to(np.r_[-2.0 * p0, 2.0 * pvec], vel.shape)
    np.testing.assert_allclose(vel, want, atol=1e-12)


def test_closed_form_speeds_match_projected_measurement():
    for p in (0.5, 1.5, 3.0):
        vl, vr = closed_form_speeds(SPEC, 1.0, p)
        grid = np.array([p])
        ml = velocity_momentum_profile(SPEC, 1.0, "left", grid)["v"][0]
        mr = velocity_momentum_profile(SPEC, 1.0, "right", grid)["v"][0]
        assert abs(vl - ml) < 1e-12
        assert abs(vr - mr) < 1e-12


def test_projected_speeds_bracket_the_ordinary_one():
    for p in (0.5, 1.5):
        vl, vr = closed_form_speeds(SPEC, 1.0, p)
        v0 = p / np.hypot(1.0, p)
        assert vr < v0 < vl


def test_projected_speeds_cross_the_light_cone():
    """At large momentum both projected speeds exceed 1 even though the
    unprojected shell speed never does."""
    vl, vr = closed_form_speeds(SPEC, 1.0, 3.0)
    assert vl > 1.0 and vr > 1.0
    assert 3.0 / np.hypot(1.0, 3.0) < 1.0


def test_right_speed_pole_is_guarded():
    # the right denominator p0 - (eps/2) p^2 vanishes near p = 4.12 here
    with pytest.raises(ContractViolation):
        closed_form_speeds(SPEC, 1.0, 4.5)
    with pytest.raises(ContractViolation):
        closed_form_speeds(SPEC, 1.0, -1.0)


def test_profiles_are_increasing_below_the_pole():
    grid = np.linspace(0.3, 3.0, 12)
    for proj in ("ordinary", "left", "right"):
        prof = velocity_momentum_profile(SPEC, 1.0, proj, grid)
        assert prof["verdict"] == "increasing"
        assert monotonicity_verdict(prof["v"]) == "increasing"
    with pytest.raises(ContractViolation):
        velocity_momentum_profile(SPEC, 1.0, "sideways", grid)


def test_symmetric_mean_restores_second_order_limit():
    """Either projected speed deviates from p/sqrt(p^2+m^2) at first order in
    the deformation strength, but their mean closes at second order."""
    grid = np.linspace(0.2, 2.0, 6)
    one_sided = []
    for eps in (0.01, 0.02):
        spec = KappaSpec(eps)
        vl = np.array([closed_form_speeds(spec, 1.0, p)[0] for p in grid])
        v0 = grid / np.sqrt(grid**2 + 1.0)
        one_sided.append(np.max(np.abs(vl - v0)))
    assert one_sided[1] / one_sided[0] == pytest.approx(2.0, rel=0.05)

    d1 = classical_limit_deviation(0.01)
    d2 = classical_limit_deviation(0.02)
    assert d2 / d1 == pytest.approx(4.0, rel=0.05)


def test_spec_validation():
    with pytest.raises(ContractViolation):
        KappaSpec(0.1, spatial_dim=0)
    with pytest.raises(ContractViolation):
        closed_form_speeds(SPEC, 0.0, 1.0)
    with pytest.raises(ContractViolation):
        free_shell_trajectory(SPEC, 1.0, np.zeros(2), 1.0, 8)
