"""Coordinate Poisson-bracket engine.

A bivector field on an n-dimensional chart is stored through its independent
components  pi^{ij}(x)  for  i < j;  the full antisymmetric matrix is implied.
Brackets of scalar fields are evaluated as

    {f, g}(x) = sum_{i<j} pi^{ij}(x) * (d_i f d_j g - d_j f d_i g),

with analytic gradients when a field carries one and central finite
differences otherwise.  The global dynamical sign convention is

    xdot = {H, x},

which every flow in the package inherits.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Mapping

import numpy as np

from .errors import ContractViolation

__all__ = [
    "ScalarField",
    "BivectorSpec",
    "coordinate_field",
    "constant_field",
    "eval_bracket",
    "bracket_matrix",
    "hamiltonian_vector_field",
    "jacobi_residual",
    "jacobi_certificate",
    "JacobiCertificate",
    "pushforward_bivector",
    "gradient_deviation",
]

# central-difference step scale used when a field has no analytic gradient
_FD_SCALE = 1e-6
# coarser scale used for the nested differences inside the Jacobi residual
_FD_SCALE_NESTED = 1e-4


@dataclass(frozen=True)
class ScalarField:
    """A real scalar function on the chart, with an optional analytic gradient.

    ``fd_scale`` controls the relative central-difference step used when no
    gradient is supplied: h_i = fd_scale * max(1, |x_i|).
    """

    fn: Callable[[np.ndarray], float]
    grad: Callable[[np.ndarray], np.ndarray] | None = None
    fd_scale: float = _FD_SCALE

    def __call__(self, x: np.ndarray) -> float:
        return float(self.fn(np.asarray(x, dtype=float)))

    def gradient(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if self.grad is not None:
            return np.asarray(self.grad(x), dtype=float)
        out = np.empty_like(x)
        for i in range(x.size):
            h = self.fd_scale * max(1.0, abs(x[i]))
            xp = x.copy()
            xm = x.copy()
            xp[i] += h
            xm[i] -= h
            out[i] = (self.fn(xp) - self.fn(xm)) / (2.0 * h)
        return out


def coordinate_field(index: int, dim: int) -> ScalarField:
    """The coordinate function x^index, with its exact gradient."""
    if not 0 <= index < dim:
        raise ContractViolation(f"coordinate index {index} outside chart of dim {dim}")
    e = np.zeros(dim)
    e[index] = 1.0
    return ScalarField(fn=lambda x: float(x[index]), grad=lambda x: e)


def constant_field(value: float, dim: int) -> ScalarField:
    z = np.zeros(dim)
    return ScalarField(fn=lambda x: value, grad=lambda x: z)


@dataclass(frozen=True)
class BivectorSpec:
    """Bivector field pi on an n-dim chart.

    components maps (i, j) with i < j to a callable x -> pi^{ij}(x).  Missing
    pairs are identically zero.  ``dense``, when given, must return the full
    antisymmetric n x n matrix in one call and is used on hot paths
    (hamiltonian vector fields, bracket matrices); it has to agree with the
    per-component callables.
    """

    dim: int
    coord_names: tuple[str, ...]
    components: Mapping[tuple[int, int], Callable[[np.ndarray], float]]
    dense: Callable[[np.ndarray], np.ndarray] | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.dim < 1:
            raise ContractViolation("bivector needs dim >= 1")
        if len(self.coord_names) != self.dim:
            raise ContractViolation("coord_names length must equal dim")
        if len(set(self.coord_names)) != self.dim:
            raise ContractViolation("coord_names must be distinct")
        for (i, j) in self.components:
            if not (0 <= i < j < self.dim):
                raise ContractViolation(f"component key {(i, j)} must satisfy 0 <= i < j < dim")

    def component(self, i: int, j: int, x: np.ndarray) -> float:
        """pi^{ij}(x) for any index pair, with the antisymmetry sign."""
        if i == j:
            return 0.0
        sign = 1.0
        if i > j:
            i, j, sign = j, i, -1.0
        fn = self.components.get((i, j))
        if fn is None:
            return 0.0
        return sign * float(fn(x))

    def matrix(self, x: np.ndarray) -> np.ndarray:
        """Full antisymmetric component matrix at x."""
        x = np.asarray(x, dtype=float)
        if self.dense is not None:
            return np.asarray(self.dense(x), dtype=float)
        P = np.zeros((self.dim, self.dim))
        for (i, j), fn in self.components.items():
            v = float(fn(x))
            P[i, j] = v
            P[j, i] = -v
        return P


def add_bivectors(a: BivectorSpec, b: BivectorSpec) -> BivectorSpec:
    """Pointwise sum of two bivectors on the same chart."""
    if a.dim != b.dim:
        raise ContractViolation("bivector sum needs equal dims")
    keys = set(a.components) | set(b.components)
    comps = {}
    for k in keys:
        fa = a.components.get(k)
        fb = b.components.get(k)
        if fa is None:
            comps[k] = fb
        elif fb is None:
            comps[k] = fa
        else:
            comps[k] = (lambda fa_, fb_: lambda x: fa_(x) + fb_(x))(fa, fb)
    dense = None
    if a.dense is not None and b.dense is not None:
        dense = lambda x: a.dense(x) + b.dense(x)  # noqa: E731
    return BivectorSpec(a.dim, a.coord_names, comps, dense=dense)


def eval_bracket(biv: BivectorSpec, f: ScalarField, g: ScalarField, x: np.ndarray) -> float:
    """{f, g}(x).

    Swapping f and g negates every term exactly, so antisymmetry holds at
    machine level along the identical code path.
    """
    x = np.asarray(x, dtype=float)
    if x.shape != (biv.dim,):
        raise ContractViolation(f"point shape {x.shape} does not match chart dim {biv.dim}")
    gf = f.gradient(x)
    gg = g.gradient(x)
    total = 0.0
    for (i, j), fn in biv.components.items():
        w = gf[i] * gg[j] - gf[j] * gg[i]
        if w != 0.0:
            total += float(fn(x)) * w
    return total


def bracket_matrix(biv: BivectorSpec, x: np.ndarray) -> np.ndarray:
    """Matrix of coordinate brackets {x^i, x^j} at x (= the component matrix)."""
    return biv.matrix(np.asarray(x, dtype=float))


def hamiltonian_vector_field(biv: BivectorSpec, H: ScalarField, x: np.ndarray) -> np.ndarray:
    """xdot with xdot^i = {H, x^i}(x).

    Computed as the contraction -Pi(x) grad H(x); componentwise this equals
    eval_bracket(biv, H, x^i, x) up to floating-point reassociation.
    """
    x = np.asarray(x, dtype=float)
    P = biv.matrix(x)
    return -P @ H.gradient(x)


def jacobi_residual(biv: BivectorSpec, x: np.ndarray, triple: tuple[int, int, int]) -> float:
    """Cyclic sum {x^i,{x^j,x^k}} + {x^j,{x^k,x^i}} + {x^k,{x^i,x^j}} at x.

    Inner brackets are evaluated through eval_bracket (exact for coordinate
    pairs); the outer bracket differentiates them with central differences at
    the coarser nested step scale.
    """
    x = np.asarray(x, dtype=float)
    i, j, k = triple
    if len({i, j, k}) != 3:
        raise ContractViolation(f"jacobi triple {triple} must have distinct entries")
    for idx in triple:
        if not 0 <= idx < biv.dim:
            raise ContractViolation(f"jacobi index {idx} outside chart of dim {biv.dim}")

    coords = {m: coordinate_field(m, biv.dim) for m in triple}

    def inner(a: int, b: int) -> ScalarField:
        return ScalarField(
            fn=lambda y: eval_bracket(biv, coords[a], coords[b], y),
            fd_scale=_FD_SCALE_NESTED,
        )

    total = 0.0
    for (a, b, c) in ((i, j, k), (j, k, i), (k, i, j)):
        total += eval_bracket(biv, coords[a], inner(b, c), x)
    return total


@dataclass(frozen=True)
class JacobiCertificate:
    """Result of a randomized Jacobi check of one bivector."""

    dim: int
    n_points: int
    n_triples: int
    max_residual: float
    threshold: float
    vacuous: bool

    @property
    def passed(self) -> bool:
        return self.vacuous or self.max_residual < self.threshold


def jacobi_certificate(
    biv: BivectorSpec,
    n_points: int = 100,
    seed: int = 0,
    threshold: float = 1e-6,
    box: tuple[float, float] = (0.0, 1.0),
) -> JacobiCertificate:
    """Check the Jacobi identity at seeded uniform random points of a box,
    over every coordinate triple.

    Charts of dimension < 3 have no triple and certify vacuously.
    """
    triples = list(itertools.combinations(range(biv.dim), 3))
    if not triples:
        return JacobiCertificate(biv.dim, 0, 0, 0.0, threshold, vacuous=True)
    rng = np.random.default_rng(seed)
    lo, hi = box
    worst = 0.0
    for _ in range(n_points):
        x = rng.uniform(lo, hi, size=biv.dim)
        for t in triples:
            worst = max(worst, abs(jacobi_residual(biv, x, t)))
    return JacobiCertificate(biv.dim, n_points, len(triples), worst, threshold, vacuous=False)


def pushforward_bivector(
    biv: BivectorSpec,
    phi: Callable[[np.ndarray], np.ndarray],
    x: np.ndarray,
    out_dim: int,
    fd_scale: float = _FD_SCALE,
) -> np.ndarray:
    """Pointwise pushforward (dphi) Pi (dphi)^T at x, with a central-difference
    Jacobian of the map phi."""
    x = np.asarray(x, dtype=float)
    J = np.zeros((out_dim, x.size))
    for i in range(x.size):
        h = fd_scale * max(1.0, abs(x[i]))
        xp = x.copy()
        xm = x.copy()
        xp[i] += h
        xm[i] -= h
        J[:, i] = (np.asarray(phi(xp), dtype=float) - np.asarray(phi(xm), dtype=float)) / (2.0 * h)
    return J @ biv.matrix(x) @ J.T


def gradient_deviation(fld: ScalarField, x: np.ndarray) -> float:
    """Relative deviation between the analytic gradient and central
    differences; spot check for fields that carry a ``grad``."""
    if fld.grad is None:
        raise ContractViolation("field has no analytic gradient to check")
    x = np.asarray(x, dtype=float)
    ana = np.asarray(fld.grad(x), dtype=float)
    num = ScalarField(fn=fld.fn, fd_scale=fld.fd_scale).gradient(x)
    scale = max(1.0, float(np.max(np.abs(ana))), float(np.max(np.abs(num))))
    return float(np.max(np.abs(ana - num)) / scale)
