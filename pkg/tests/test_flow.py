"""Adaptive RK4 flow integration: accuracy, order, and failure modes."""
import numpy as np
import pytest

from poismech.bracket import ScalarField
from poismech.errors import ContractViolation, DivergenceError, StiffnessError
from poismech.flow import StepControl, Trajectory, conservation_drift, integrate_flow
from poismech.groupoid import canonical_bivector

OSC = ScalarField(fn=lambda s: 0.5 * (s[0] ** 2 + s[1] ** 2), grad=lambda s: s.copy())


def rotation_exact(y0, t):
    # xdot = {H, x} = -p, pdot = x  for H = (x^2 + p^2)/2
    c, s = np.cos(t), np.sin(t)
    return np.array([c * y0[0] - s * y0[1], s * y0[0] + c * y0[1]])


def test_oscillator_endpoint_accuracy():
    can = canonical_bivector(1)
    y0 = np.array([1.0, 0.25])
    traj = integrate_flow(can, OSC, y0, 7.0, StepControl(h=1e-2, tol=1e-10))
    np.testing.assert_allclose(traj.points[-1], rotation_exact(y0, 7.0), atol=1e-8)
    assert traj.times[0] == 0.0 and traj.times[-1] == pytest.approx(7.0, abs=1e-12)
    assert conservation_drift(traj, OSC) < 1e-9


def test_fourth_order_convergence():
    """Halving a fixed step cuts the endpoint error by ~2^4 (the embedded
    Richardson estimate uses the same ratio); tol is set huge so no step is
    ever rejected and h stays nominal."""
    can = canonical_bivector(1)
    y0 = np.array([1.0, 0.0])
    errs = []
    for h in (0.1, 0.05):
        traj = integrate_flow(can, OSC, y0, 2.0, StepControl(h=h, tol=1e30))
        errs.append(np.max(np.abs(traj.points[-1] - rotation_exact(y0, 2.0))))
    ratio = errs[0] / errs[1]
    assert 16.0 * 0.7 < ratio < 16.0 * 1.3


def test_adaptive_halving_recovers_accuracy():
    can = canonical_bivector(1)
    y0 = np.array([0.0, 1.0])
    traj = integrate_flow(can, OSC, y0, 3.0, StepControl(h=0.5, tol=1e-12))
    # the nominal step is far too coarse for this tolerance, so the
    # controller must have halved its way down
    assert np.min(np.diff(traj.times)) < 0.5 / 4
    assert np.all(traj.step_stats <= 1e-12)
    np.testing.assert_allclose(traj.points[-1], rotation_exact(y0, 3.0), atol=1e-9)


# H = x^2 p drives xdot = -x^2: from x(0) = -1 the solution -1/(1 - t)
# leaves every compact set as t -> 1.
BLOWUP = ScalarField(fn=lambda s: s[0] ** 2 * s[1],
                     grad=lambda s: np.array([2.0 * s[0] * s[1], s[0] ** 2]))


def test_finite_time_blowup_stiffness():
    can = canonical_bivector(1)
    with pytest.raises(StiffnessError):
        integrate_flow(can, BLOWUP, np.array([-1.0, 1.0]), 2.0,
                       StepControl(h=1e-2, tol=1e-8))


@pytest.mark.filterwarnings("ignore:overflow", "ignore:invalid value")
def test_divergence_reports_last_good_time():
    can = canonical_bivector(1)
    with pytest.raises(DivergenceError) as info:
        # tol so loose that nothing is rejected before the state overflows
        integrate_flow(can, BLOWUP, np.array([-1.0, 1.0]), 2.0,
                       StepControl(h=0.5, tol=1e30))
    assert 0.0 < info.value.last_good_time < 2.0


def test_no_degenerate_final_interval():
    """Accumulated rounding in t must not leave a ~1e-13 sliver step at the
    end of the run; such an interval wrecks finite differences over the
    sample times."""
    can = canonical_bivector(1)
    traj = integrate_flow(can, OSC, np.array([1.0, 0.0]), 2.0,
                          StepControl(h=1e-3, tol=1e-8))
    assert np.min(np.diff(traj.times)) > 5e-4
    assert traj.times[-1] == pytest.approx(2.0, abs=1e-14)


def test_poststep_hook_is_applied_each_step():
    can = canonical_bivector(1)

    def renorm(y):
        return y / np.linalg.norm(y)

    traj = integrate_flow(can, OSC, np.array([1.0, 0.0]), 2.0,
                          StepControl(h=5e-2, tol=1e-8, poststep=renorm))
    radii = np.linalg.norm(traj.points, axis=1)
    np.testing.assert_allclose(radii, 1.0, atol=1e-14)


def test_hamiltonian_drift_warns():
    """A poststep that pushes the state off the level set accumulates energy
    drift far beyond the tolerance budget, which is reported as a warning."""
    can = canonical_bivector(1)
    with pytest.warns(RuntimeWarning, match="hamiltonian drift"):
        traj = integrate_flow(can, OSC, np.array([1.0, 0.0]), 1.0,
                              StepControl(h=1e-2, tol=1e-8,
                                          poststep=lambda y: y + 1e-4))
    assert traj.h_drift > 1e-3


def test_input_validation():
    can = canonical_bivector(1)
    with pytest.raises(ContractViolation):
        integrate_flow(can, OSC, np.zeros(3), 1.0)
    with pytest.raises(ContractViolation):
        integrate_flow(can, OSC, np.zeros(2), -1.0)
    with pytest.raises(ContractViolation):
        StepControl(h=0.0)
    with pytest.raises(ContractViolation):
        StepControl(tol=-1e-8)
    with pytest.raises(ContractViolation):
        Trajectory(np.zeros(3), np.zeros((2, 2)))
