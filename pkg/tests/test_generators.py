"""Vector-field generators, their exact flows, wedges, and cotangent lifts."""
import numpy as np
import pytest
from scipy.linalg import expm

from poismech.errors import ContractViolation
from poismech.generators import (
    AbelianRSpec,
    commutation_defect,
    cotangent_lift,
    linear,
    scaling,
    translation,
    wedge_bivector,
)


def test_translation_flow():
    X = translation([1.0, -2.0])
    x = np.array([0.5, 0.5])
    np.testing.assert_allclose(X.flow(0.3, x), [0.8, -0.1], atol=1e-15)
    np.testing.assert_allclose(X.value(x), [1.0, -2.0], atol=0)


def test_linear_flow_matches_expm():
    L = np.array([[0.1, -0.7], [0.4, 0.2]])
    X = linear(L)
    x = np.array([1.0, 2.0])
    for t in (0.5, -1.3):
        np.testing.assert_allclose(X.flow(t, x), expm(t * L) @ x, atol=1e-13)


def test_scaling_flow_hits_subset_only():
    X = scaling([1], 3)
    x = np.array([2.0, 3.0, 4.0])
    got = X.flow(0.1, x)
    np.testing.assert_allclose(got, [2.0, 3.0 * np.exp(0.1), 4.0], atol=1e-14)
    np.testing.assert_allclose(X.value(x), [0.0, 3.0, 0.0], atol=0)


def test_commutation_defect():
    # two scalings commute; a scaling and a generic rotation do not
    assert commutation_defect(scaling([0], 2), scaling([1], 2)) < 1e-12
    rot = linear(np.array([[0.0, -1.0], [1.0, 0.0]]))
    assert commutation_defect(scaling([0], 2), rot) > 1e-3


def test_rspec_requires_same_chart():
    with pytest.raises(ContractViolation):
        AbelianRSpec(0.1, translation([1.0]), translation([1.0, 0.0]))
    spec = AbelianRSpec(0.2, scaling([0], 2), scaling([1], 2))
    assert spec.dim == 2


def test_wedge_bivector_structure():
    """eps (v1 wedge v2) has matrix eps (v1 v2^T - v2 v1^T); dense and
    per-component entries must agree."""
    X1 = translation([1.0, 0.0, 0.0])
    X2 = translation([0.0, 2.0, 0.0])
    biv = wedge_bivector(0.5, X1, X2, ("a", "b", "c"))
    x = np.array([0.3, 0.1, -0.9])
    M = biv.matrix(x)
    want = 0.5 * (np.outer([1, 0, 0], [0, 2, 0]) - np.outer([0, 2, 0], [1, 0, 0]))
    np.testing.assert_allclose(M, want, atol=1e-15)
    for i in range(3):
        for j in range(3):
            assert biv.component(i, j, x) == M[i, j]


def test_cotangent_lift_translation():
    X = cotangent_lift(translation([1.0, -1.0]), 2)
    s = np.array([0.2, 0.3, 0.5, 0.7])  # (x, p)
    np.testing.assert_allclose(X.value(s), [1.0, -1.0, 0.0, 0.0], atol=0)
    np.testing.assert_allclose(X.flow(0.4, s), [0.6, -0.1, 0.5, 0.7], atol=1e-15)


def test_cotangent_lift_linear_preserves_pairing():
    """The lift flows x by e^{tL} and p by e^{-tL^T}, so <p, x> is invariant."""
    L = np.array([[0.2, 0.9], [-0.3, 0.1]])
    X = cotangent_lift(linear(L), 2)
    s = np.array([1.0, 2.0, -0.5, 0.25])
    for t in (0.7, -1.1):
        out = X.flow(t, s)
        np.testing.assert_allclose(out[:2], expm(t * L) @ s[:2], atol=1e-13)
        np.testing.assert_allclose(out[2:], expm(-t * L.T) @ s[2:], atol=1e-13)
        assert out[:2] @ out[2:] == pytest.approx(s[:2] @ s[2:], abs=1e-13)


def test_factory_validation():
    with pytest.raises(ContractViolation):
        linear(np.zeros((2, 3)))
    with pytest.raises(ContractViolation):
        scaling([5], 3)
    with pytest.raises(ContractViolation):
        scaling([], 3)
