"""Curve diagnostics: line fits, axis-hyperbola fits, tail slopes.

Used by tests and the scenario runner to turn sampled curves into scalar
verdicts (collinearity residuals, asymptotic velocities, shape constants).
"""
from __future__ import annotations

import numpy as np

from .errors import EstimationError

__all__ = [
    "collinearity_residual",
    "tail_velocity",
    "fit_axis_hyperbola",
    "windowed_shape_constants",
    "central_derivative",
    "monotonicity_verdict",
    "fit_loglog_slope",
]


def collinearity_residual(points: np.ndarray) -> float:
    """Largest orthogonal distance from the samples to their best-fit line
    (total least squares via SVD)."""
    P = np.asarray(points, dtype=float)
    if P.ndim != 2 or P.shape[0] < 2:
        raise EstimationError("collinearity needs at least two points")
    C = P - P.mean(axis=0)
    U, s, Vt = np.linalg.svd(C, full_matrices=False)
    if s[0] == 0.0:
        return 0.0
    perp = C - np.outer(C @ Vt[0], Vt[0])
    return float(np.max(np.linalg.norm(perp, axis=1)))


def tail_velocity(times: np.ndarray, curve: np.ndarray, frac: float = 0.25,
                  min_samples: int = 8) -> np.ndarray:
    """Least-squares slope d(curve)/d(times[0-axis]) over the trailing
    fraction of samples.

    ``times`` is the abscissa (may itself be a curve coordinate); returns the
    slope vector of the remaining columns.
    """
    t = np.asarray(times, dtype=float)
    y = np.asarray(curve, dtype=float)
    n_tail = max(int(np.ceil(frac * t.size)), 0)
    if n_tail < min_samples:
        raise EstimationError(
            f"tail fit needs >= {min_samples} samples, window has {n_tail}"
        )
    t_tail = t[-n_tail:]
    y_tail = y[-n_tail:]
    A = np.column_stack([t_tail, np.ones(n_tail)])
    sol, *_ = np.linalg.lstsq(A, y_tail, rcond=None)
    return np.atleast_1d(sol[0])


def fit_axis_hyperbola(points: np.ndarray) -> tuple[float, float, float, float]:
    """Fit (q0 - c0)(q1 - c1) = K to planar samples.

    The model is linear in (c0, c1, c0*c1 - K):
        q0 q1 - c0 q1 - c1 q0 + (c0 c1 - K) = 0,
    so an ordinary least-squares solve recovers the centers and shape
    constant exactly on noiseless hyperbola data.  Returns
    (c0, c1, K, rms_residual).
    """
    P = np.asarray(points, dtype=float)
    if P.ndim != 2 or P.shape[1] != 2 or P.shape[0] < 4:
        raise EstimationError("hyperbola fit needs >= 4 planar points")
    A = np.column_stack([P[:, 1], P[:, 0], -np.ones(len(P))])
    rhs = P[:, 0] * P[:, 1]
    sol, *_ = np.linalg.lstsq(A, rhs, rcond=None)
    c0, c1, D = (float(v) for v in sol)
    K = c0 * c1 - D
    resid = A @ sol - rhs
    return c0, c1, K, float(np.sqrt(np.mean(resid**2)))


def windowed_shape_constants(points: np.ndarray, n_windows: int = 5) -> np.ndarray:
    """Fitted K of overlapping half-curve windows along a planar curve;
    a shape-constant curve gives a flat sequence."""
    P = np.asarray(points, dtype=float)
    n = len(P)
    w = n // 2
    if w < 4 or n_windows < 2:
        raise EstimationError("too few samples for windowed shape fit")
    starts = np.linspace(0, n - w, n_windows).astype(int)
    return np.array([fit_axis_hyperbola(P[s:s + w])[2] for s in starts])


def central_derivative(times: np.ndarray, values: np.ndarray) -> np.ndarray:
    """Second-order derivative estimates at interior samples of a possibly
    non-uniform grid.  Returns an array over times[1:-1]."""
    t = np.asarray(times, dtype=float)
    y = np.asarray(values)
    if t.size < 3:
        raise EstimationError("central derivative needs >= 3 samples")
    shape = (-1,) + (1,) * (y.ndim - 1)
    dm = (t[1:-1] - t[:-2]).reshape(shape)
    dp = (t[2:] - t[1:-1]).reshape(shape)
    return (dm**2 * y[2:] - dp**2 * y[:-2] + (dp**2 - dm**2) * y[1:-1]) / (
        dm * dp * (dm + dp)
    )


def monotonicity_verdict(values: np.ndarray, slack: float = 1e-12) -> str:
    """'increasing' / 'decreasing' / 'non-monotonic' for a sampled sequence."""
    d = np.diff(np.asarray(values, dtype=float))
    if np.all(d > -slack):
        return "increasing"
    if np.all(d < slack):
        return "decreasing"
    return "non-monotonic"


def fit_loglog_slope(xs: np.ndarray, ys: np.ndarray) -> float:
    """Least-squares slope of log y against log x (convergence-order fits)."""
    xs = np.asarray(xs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    if xs.size < 2:
        raise EstimationError("slope fit needs >= 2 samples")
    if np.any(xs <= 0) or np.any(ys <= 0):
        raise EstimationError("slope fit needs positive data")
    return float(np.polyfit(np.log(xs), np.log(ys), 1)[0])
