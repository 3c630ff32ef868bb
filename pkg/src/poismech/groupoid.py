"""Groupoid-style projections of cotangent-bundle states, for deformations
built from two commuting generators.

The canonical moment of a generator X at (x, p) is J = <p, X(x)>.  With
r(mu) = epsilon (<mu,X2> X1 - <mu,X1> X2), the two projections act on the
base point by exponentiating -+ (1/2) r J:

    left(x, p)  = flow_{X1}(-(eps/2) J2) o flow_{X2}(+(eps/2) J1) (x)
    right(x, p) = flow_{X1}(+(eps/2) J2) o flow_{X2}(-(eps/2) J1) (x)

so left with epsilon equals right with -epsilon along the identical code
path.  Because the generators commute, the composition order is immaterial.
"""
from __future__ import annotations

import numpy as np

from .bracket import BivectorSpec, add_bivectors
from .errors import ContractViolation
from .flow import Trajectory
from .generators import AbelianRSpec, GeneratorField, cotangent_lift, wedge_bivector

__all__ = [
    "moment_J0",
    "moment_pair",
    "groupoid_projection",
    "project_trajectory",
    "canonical_bivector",
    "shifted_bracket",
    "cotangent_wedge",
]


def moment_J0(x: np.ndarray, p: np.ndarray, X: GeneratorField) -> float:
    """<p, X(x)> — the canonical moment of the generator X at (x, p)."""
    x = np.asarray(x, dtype=float)
    p = np.asarray(p, dtype=float)
    if x.shape != p.shape or x.shape != (X.dim,):
        raise ContractViolation("moment needs x, p of the generator's dim")
    return float(p @ X.value(x))


def moment_pair(r: AbelianRSpec, x: np.ndarray, p: np.ndarray) -> tuple[float, float]:
    return moment_J0(x, p, r.X1), moment_J0(x, p, r.X2)


def groupoid_projection(r: AbelianRSpec, x: np.ndarray, p: np.ndarray, side: str) -> np.ndarray:
    """Left or right projected base point of the state (x, p)."""
    if side not in ("left", "right"):
        raise ContractViolation(f"side must be 'left' or 'right', got {side!r}")
    J1, J2 = moment_pair(r, x, p)
    sgn = -1.0 if side == "left" else +1.0
    t1 = sgn * 0.5 * r.epsilon * J2
    t2 = -sgn * 0.5 * r.epsilon * J1
    return r.X1.flow(t1, r.X2.flow(t2, np.asarray(x, dtype=float)))


def project_trajectory(r: AbelianRSpec, traj: Trajectory, side: str) -> Trajectory:
    """Pointwise projection of a phase-space trajectory (points = (x, p) rows)
    to a base-space curve, preserving the sampling times."""
    n = r.dim
    if traj.dim != 2 * n:
        raise ContractViolation(
            f"trajectory dim {traj.dim} is not twice the base dim {n}"
        )
    out = np.empty((len(traj.times), n))
    for i, row in enumerate(traj.points):
        out[i] = groupoid_projection(r, row[:n], row[n:], side)
    return Trajectory(traj.times.copy(), out)


def canonical_bivector(n: int, coord_names: tuple[str, ...] | None = None) -> BivectorSpec:
    """The cotangent-bundle structure on the 2n-chart (x, p):
    {x^i, p_j} = delta^i_j, all other coordinate brackets zero."""
    if coord_names is None:
        coord_names = tuple(f"x{i}" for i in range(n)) + tuple(f"p{i}" for i in range(n))
    comps = {(i, n + i): (lambda x: 1.0) for i in range(n)}

    def dense(x: np.ndarray) -> np.ndarray:
        P = np.zeros((2 * n, 2 * n))
        for i in range(n):
            P[i, n + i] = 1.0
            P[n + i, i] = -1.0
        return P

    return BivectorSpec(2 * n, coord_names, comps, dense=dense)


def cotangent_wedge(
    epsilon: float,
    gen_a: GeneratorField,
    gen_b: GeneratorField,
    coord_names: tuple[str, ...] | None = None,
) -> BivectorSpec:
    """epsilon * (lift of gen_a) ^ (lift of gen_b) on the 2n-chart — the
    r-part of a shifted cotangent structure."""
    n = gen_a.dim
    if coord_names is None:
        coord_names = tuple(f"x{i}" for i in range(n)) + tuple(f"p{i}" for i in range(n))
    return wedge_bivector(epsilon, cotangent_lift(gen_a, n), cotangent_lift(gen_b, n), coord_names)


def shifted_bracket(r_part: BivectorSpec, point: np.ndarray) -> np.ndarray:
    """Matrix of all coordinate brackets of (canonical + r_part) at the point.

    r_part must live on a 2n-chart; with r_part = 0 the result is the
    canonical block structure."""
    if r_part.dim % 2 != 0:
        raise ContractViolation("shifted bracket needs an even-dimensional chart")
    n = r_part.dim // 2
    total = add_bivectors(canonical_bivector(n, r_part.coord_names), r_part)
    return total.matrix(np.asarray(point, dtype=float))
