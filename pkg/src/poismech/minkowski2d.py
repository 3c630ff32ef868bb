"""Two-dimensional Minkowski space-time with the quadratic light-cone
deformation.

In light-cone coordinates x+- = x0 +- x1 the deformed bracket is

    {x+, x-} = epsilon x+ x-,

the wedge of the two single-coordinate scalings.  Free-particle curves of
mass m come in two closed forms: axis-aligned hyperbolas

    (x+ - c+)(x- - c-) = -1 / (epsilon^2 m^2),   c+ c- < 0,

and the parametric momentum-space description

    q+(p) = e^{ alpha} sinh(eps p / 2)        / ((eps/2) m)
    q-(p) = e^{-alpha} sinh(eps (p - beta)/2) / ((eps/2) m),

whose p -> -+infinity velocity limits give the in/out scattering data.  The
asymptotic limit of the parametric curve is a hyperbolic tangent of
alpha -+ eps beta / 4; a circular-tangent variant of the same argument is
provided for comparison, but the default follows the numerical limit.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bracket import BivectorSpec
from .errors import ContractViolation
from .generators import AbelianRSpec, scaling, wedge_bivector

__all__ = [
    "Minkowski2DSpec",
    "ScatteringCurveSpec",
    "minkowski2d_bivector",
    "minkowski2d_rspec",
    "hyperbola_curve",
    "hyperbola_residual",
    "parametric_trajectory_2d",
    "velocity_on_curve",
    "scattering_data",
    "scattering_limits_numeric",
    "classical_limit_deviation",
]

COORD_NAMES = ("x_plus", "x_minus")


@dataclass(frozen=True)
class Minkowski2DSpec:
    """Deformation strength and particle mass for the 2D model."""

    epsilon: float
    mass: float = 1.0

    def __post_init__(self):
        if self.mass <= 0:
            raise ContractViolation("mass must be positive")


@dataclass(frozen=True)
class ScatteringCurveSpec:
    """Curve parameters: rapidity-like offset alpha and shift beta."""

    alpha: float
    beta: float


def minkowski2d_bivector(spec: Minkowski2DSpec) -> BivectorSpec:
    """pi = epsilon x+ x- d+ ^ d- on the light-cone chart."""
    X1 = scaling([0], 2)
    X2 = scaling([1], 2)
    return wedge_bivector(spec.epsilon, X1, X2, COORD_NAMES)


def minkowski2d_rspec(spec: Minkowski2DSpec) -> AbelianRSpec:
    """The commuting-generator pair (x+ d+, x- d-) with strength epsilon."""
    return AbelianRSpec(spec.epsilon, scaling([0], 2), scaling([1], 2))


def hyperbola_curve(
    spec: Minkowski2DSpec,
    c_plus: float,
    c_minus: float,
    grid: np.ndarray,
) -> np.ndarray:
    """Sample the free-particle hyperbola branch over a grid of x+ values.

    Requires c+ c- < 0 and epsilon != 0; the grid must avoid x+ = c+.
    Returns rows (x+, x-).
    """
    if spec.epsilon == 0.0:
        raise ContractViolation("hyperbola curve needs epsilon != 0")
    if c_plus * c_minus >= 0:
        raise ContractViolation("hyperbola centers need c+ c- < 0")
    grid = np.asarray(grid, dtype=float)
    if np.any(grid == c_plus):
        raise ContractViolation("grid touches the vertical asymptote x+ = c+")
    K = -1.0 / (spec.epsilon**2 * spec.mass**2)
    x_minus = c_minus + K / (grid - c_plus)
    return np.column_stack([grid, x_minus])


def hyperbola_residual(spec: Minkowski2DSpec, c_plus: float, c_minus: float,
                       points: np.ndarray) -> float:
    """max |(x+ - c+)(x- - c-) - K| over sampled points."""
    P = np.asarray(points, dtype=float)
    K = -1.0 / (spec.epsilon**2 * spec.mass**2)
    vals = (P[:, 0] - c_plus) * (P[:, 1] - c_minus)
    return float(np.max(np.abs(vals - K)))


def parametric_trajectory_2d(
    spec: Minkowski2DSpec,
    curve: ScatteringCurveSpec,
    p_grid: np.ndarray,
) -> np.ndarray:
    """Rows (p, q+, q-) of the parametric free-particle curve.

    At epsilon = 0 the curve degenerates to the straight line
    q+ = e^alpha p / m, q- = e^{-alpha} (p - beta) / m.
    """
    p = np.asarray(p_grid, dtype=float)
    e, m = spec.epsilon, spec.mass
    if e == 0.0:
        qp = np.exp(curve.alpha) * p / m
        qm = np.exp(-curve.alpha) * (p - curve.beta) / m
    else:
        qp = np.exp(curve.alpha) * np.sinh(e * p / 2.0) / ((e / 2.0) * m)
        qm = np.exp(-curve.alpha) * np.sinh(e * (p - curve.beta) / 2.0) / ((e / 2.0) * m)
    return np.column_stack([p, qp, qm])


def velocity_on_curve(spec: Minkowski2DSpec, curve: ScatteringCurveSpec,
                      p: float) -> float:
    """Coordinate velocity q1/q0 at parameter p, with q0 = (q+ + q-)/2 and
    q1 = (q+ - q-)/2."""
    row = parametric_trajectory_2d(spec, curve, np.array([p]))[0]
    qp, qm = row[1], row[2]
    return float((qp - qm) / (qp + qm))


def scattering_data(
    spec: Minkowski2DSpec,
    curve: ScatteringCurveSpec,
    velocity_map: str = "tanh",
) -> tuple[float, float]:
    """(v_in, v_out): the p -> -infinity / +infinity velocity limits.

    v_in = T(alpha - eps beta / 4), v_out = T(alpha + eps beta / 4), where T
    is tanh by default; T = tan is available for comparison but does not
    match the numerical limit of the parametric curve.
    """
    if velocity_map == "tanh":
        T = np.tanh
    elif velocity_map == "tan":
        T = np.tan
    else:
        raise ContractViolation(f"velocity_map must be 'tanh' or 'tan', got {velocity_map!r}")
    shift = spec.epsilon * curve.beta / 4.0
    return float(T(curve.alpha - shift)), float(T(curve.alpha + shift))


def scattering_limits_numeric(
    spec: Minkowski2DSpec,
    curve: ScatteringCurveSpec,
    p_scale: float = 40.0,
) -> tuple[float, float]:
    """Direct velocity evaluation at p = -+ p_scale / epsilon (plain
    -+ p_scale when epsilon = 0, where the curve is already straight)."""
    p_inf = p_scale if spec.epsilon == 0.0 else p_scale / abs(spec.epsilon)
    return (
        velocity_on_curve(spec, curve, -p_inf),
        velocity_on_curve(spec, curve, +p_inf),
    )


def classical_limit_deviation(
    epsilon: float,
    mass: float = 1.0,
    alpha: float = 0.3,
    beta: float = 2.0,
    p_grid: np.ndarray | None = None,
) -> float:
    """max |q(eps; p) - q(0; p)| over the grid — O(eps^2), since the
    parametric curve is even in eps."""
    if p_grid is None:
        p_grid = np.linspace(-3.0, 3.0, 25)
    curve = ScatteringCurveSpec(alpha, beta)
    q_eps = parametric_trajectory_2d(Minkowski2DSpec(epsilon, mass), curve, p_grid)
    q_zero = parametric_trajectory_2d(Minkowski2DSpec(0.0, mass), curve, p_grid)
    return float(np.max(np.abs(q_eps[:, 1:] - q_zero[:, 1:])))
