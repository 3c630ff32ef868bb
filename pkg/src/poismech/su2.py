"""Free motion on a compact group with a deformed momentum space.

The configuration space is the unit-determinant complex 2x2 group carrying a
multiplicative Poisson structure with deformation strength ``epsilon``.  Points
factor as ``A = u * B`` with ``u`` special unitary and ``B`` upper triangular
with positive diagonal; the ``B`` part plays the role of momentum.  Everything
here works in the real chart obtained by splitting the four entries into real
and imaginary parts, so the generic bracket/flow machinery from
:mod:`poismech.bracket` and :mod:`poismech.flow` applies unchanged.

Charts
------
* group chart (dim 8): ``(a_re, a_im, b_re, b_im, c_re, c_im, d_re, d_im)``
  for the matrix ``[[a, b], [c, d]]``.
* momentum chart (dim 3): ``(zeta, w_re, w_im)`` with ``zeta = log(rho)/eps``
  and ``w = n / (2 eps)`` in terms of the triangular factor
  ``B = [[rho, n], [0, 1/rho]]``.
* linear chart (dim 3): ``(x, y, z)`` carrying the undeformed rotation-algebra
  brackets ``{x,y}=z, {z,x}=y, {z,y}=-x``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .bracket import BivectorSpec, ScalarField
from .errors import ContractViolation, NumericDomainError
from .fitting import central_derivative
from .flow import StepControl, Trajectory, integrate_flow

GROUP_COORD_NAMES = (
    "a_re",
    "a_im",
    "b_re",
    "b_im",
    "c_re",
    "c_im",
    "d_re",
    "d_im",
)
MOMENTUM_COORD_NAMES = ("zeta", "w_re", "w_im")
LINEAR_COORD_NAMES = ("x", "y", "z")

_UNIMODULAR_TOL = 1e-9
_UNITARY_TOL = 1e-10
_RENORM_TRIGGER = 1e-10

# [[0, -1], [1, 0]]: conjugation by this matrix implements the antihomomorphism
# that sends a special unitary to its complex conjugate.
_Y = np.array([[0.0, -1.0], [1.0, 0.0]], dtype=complex)


# ---------------------------------------------------------------------------
# element types and chart conversions


@dataclass(frozen=True)
class SL2CElement:
    """Unit-determinant complex 2x2 matrix ``[[a, b], [c, d]]``."""

    a: complex
    b: complex
    c: complex
    d: complex

    def __post_init__(self):
        det = self.a * self.d - self.b * self.c
        if abs(det - 1.0) > _UNIMODULAR_TOL:
            raise ContractViolation(
                f"determinant {det} deviates from 1 by more than {_UNIMODULAR_TOL}"
            )

    @classmethod
    def from_matrix(cls, m: np.ndarray) -> "SL2CElement":
        m = np.asarray(m, dtype=complex)
        if m.shape != (2, 2):
            raise ContractViolation(f"expected a 2x2 matrix, got shape {m.shape}")
        return cls(m[0, 0], m[0, 1], m[1, 0], m[1, 1])

    @classmethod
    def renormalized(cls, m: np.ndarray) -> "SL2CElement":
        """Rescale ``m`` onto the unit-determinant slice, then wrap it."""
        m = np.asarray(m, dtype=complex)
        det = m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
        if det == 0:
            raise NumericDomainError("cannot renormalize a singular matrix")
        return cls.from_matrix(m / cmath.sqrt(det))

    @property
    def matrix(self) -> np.ndarray:
        return np.array([[self.a, self.b], [self.c, self.d]], dtype=complex)

    @property
    def real8(self) -> np.ndarray:
        return real8_from_matrix(self.matrix)


@dataclass(frozen=True)
class SU2Element:
    """Special unitary ``[[alpha, -conj(gamma)], [gamma, conj(alpha)]]``."""

    alpha: complex
    gamma: complex

    def __post_init__(self):
        norm = abs(self.alpha) ** 2 + abs(self.gamma) ** 2
        if abs(norm - 1.0) > _UNITARY_TOL:
            raise ContractViolation(
                f"|alpha|^2 + |gamma|^2 = {norm} deviates from 1 beyond {_UNITARY_TOL}"
            )

    @property
    def matrix(self) -> np.ndarray:
        return np.array(
            [
                [self.alpha, -np.conj(self.gamma)],
                [self.gamma, np.conj(self.alpha)],
            ],
            dtype=complex,
        )


@dataclass(frozen=True)
class SB2Element:
    """Upper triangular ``[[rho, n], [0, 1/rho]]`` with ``rho > 0``."""

    rho: float
    n: complex

    def __post_init__(self):
        if not (self.rho > 0.0 and math.isfinite(self.rho)):
            raise ContractViolation(f"diagonal scale must be positive, got {self.rho}")

    @property
    def matrix(self) -> np.ndarray:
        return np.array([[self.rho, self.n], [0.0, 1.0 / self.rho]], dtype=complex)


def real8_from_matrix(m: np.ndarray) -> np.ndarray:
    """Flatten a complex 2x2 matrix into the 8-dimensional group chart."""
    m = np.asarray(m, dtype=complex)
    flat = m.reshape(-1)
    out = np.empty(8)
    out[0::2] = flat.real
    out[1::2] = flat.imag
    return out


def matrix_from_real8(x: np.ndarray) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if x.shape != (8,):
        raise ContractViolation(f"group chart points have 8 components, got {x.shape}")
    return (x[0::2] + 1j * x[1::2]).reshape(2, 2)


def iwasawa(g: SL2CElement) -> tuple[SU2Element, SB2Element]:
    """Split ``g = u * B`` into unitary and triangular factors.

    The first column (a, c) fixes the unitary factor; the triangular one is
    whatever is left.  Exact for unit-determinant input up to rounding.
    """
    rho = math.hypot(abs(g.a), abs(g.c))
    if rho == 0.0:
        raise NumericDomainError("first column vanishes, no triangular factor")
    alpha = g.a / rho
    gamma = g.c / rho
    n = np.conj(alpha) * g.b + np.conj(gamma) * g.d
    return SU2Element(alpha, gamma), SB2Element(rho, n)


# ---------------------------------------------------------------------------
# the multiplicative bracket in the real chart

# Holomorphic brackets {z_k, z_l} / (i*eps) for letters (a, b, c, d) -> 0..3,
# and mixed brackets {z_k, conj(z_l)} / (i*eps).  Everything else follows by
# antisymmetry and by {conj f, conj g} = conj {f, g}.


def _uv_tables(a, b, c, d):
    ac, bc_, cc, dc = np.conj(a), np.conj(b), np.conj(c), np.conj(d)
    u = {
        (0, 1): -a * b,
        (0, 2): a * c,
        (0, 3): 0.0,
        (1, 2): 2.0 * a * d,
        (1, 3): b * d,
        (2, 3): -c * d,
    }
    v = {
        (0, 0): -(abs(a) ** 2 + 2.0 * abs(c) ** 2),
        (0, 1): -2.0 * c * dc,
        (0, 2): 0.0,
        (0, 3): a * dc,
        (1, 0): -2.0 * cc * d,
        (1, 1): -(abs(b) ** 2 + 2.0 * abs(a) ** 2 + 2.0 * abs(d) ** 2),
        (1, 2): b * cc,
        (1, 3): -2.0 * a * cc,
        (2, 0): 0.0,
        (2, 1): bc_ * c,
        (2, 2): -(abs(c) ** 2),
        (2, 3): 0.0,
        (3, 0): ac * d,
        (3, 1): -2.0 * ac * c,
        (3, 2): 0.0,
        (3, 3): -(abs(d) ** 2 + 2.0 * abs(c) ** 2),
    }
    return u, v


def sl2c_bracket_table(g: SL2CElement, epsilon: float) -> dict:
    """All pairwise brackets among entries and conjugate entries at ``g``.

    Keys are pairs of labels from ``a, b, c, d, a*, b*, c*, d*`` (star marks
    conjugation), ordered as listed; values are the complex bracket values.
    """
    letters = ("a", "b", "c", "d")
    u, v = _uv_tables(g.a, g.b, g.c, g.d)
    ie = 1j * epsilon
    out = {}
    for k in range(4):
        for l in range(k + 1, 4):
            hol = ie * u[(k, l)]
            out[(letters[k], letters[l])] = hol
            out[(letters[k] + "*", letters[l] + "*")] = np.conj(hol)
    for k in range(4):
        for l in range(4):
            out[(letters[k], letters[l] + "*")] = ie * v[(k, l)]
    return out


def _real_blocks(u_kl, v_kl):
    """Real brackets among (re_k, im_k, re_l, im_l) from complex ones.

    ``u_kl = {z_k, z_l}`` and ``v_kl = {z_k, conj z_l}``; conjugates follow
    from ``{conj f, conj g} = conj {f, g}``, which collapses the four real
    components to combinations of just these two values.
    """
    rr = 0.5 * (u_kl.real + v_kl.real)
    ri = 0.5 * (u_kl.imag - v_kl.imag)
    ir = 0.5 * (u_kl.imag + v_kl.imag)
    ii = 0.5 * (v_kl.real - u_kl.real)
    return rr, ri, ir, ii


def _sl2c_dense(epsilon: float):
    def dense(x: np.ndarray) -> np.ndarray:
        a, b, c, d = (x[0::2] + 1j * x[1::2]).tolist()
        u, v = _uv_tables(a, b, c, d)
        ie = 1j * epsilon
        p = np.zeros((8, 8))
        for k in range(4):
            # {re_k, im_k} = -(1/2) Im {z_k, conj z_k}
            val = -0.5 * (ie * v[(k, k)]).imag
            p[2 * k, 2 * k + 1] = val
            p[2 * k + 1, 2 * k] = -val
            for l in range(k + 1, 4):
                rr, ri, ir, ii = _real_blocks(ie * u[(k, l)], ie * v[(k, l)])
                p[2 * k, 2 * l] = rr
                p[2 * k, 2 * l + 1] = ri
                p[2 * k + 1, 2 * l] = ir
                p[2 * k + 1, 2 * l + 1] = ii
                p[2 * l, 2 * k] = -rr
                p[2 * l + 1, 2 * k] = -ri
                p[2 * l, 2 * k + 1] = -ir
                p[2 * l + 1, 2 * k + 1] = -ii
        return p

    return dense


def sl2c_bivector(epsilon: float) -> BivectorSpec:
    """Multiplicative bracket on the 8-dimensional real group chart.

    Satisfies the Jacobi identity identically on the ambient chart (not just
    on the unit-determinant slice), so certificates sampled from a box are
    meaningful.
    """
    dense = _sl2c_dense(epsilon)
    components = {}
    for i in range(8):
        for j in range(i + 1, 8):
            components[(i, j)] = (lambda x, i=i, j=j: dense(x)[i, j])
    return BivectorSpec(
        dim=8,
        coord_names=GROUP_COORD_NAMES,
        components=components,
        dense=dense,
    )


# ---------------------------------------------------------------------------
# hamiltonians on the group chart


def free_energy(m: np.ndarray) -> float:
    """Half the squared Frobenius norm of the matrix."""
    m = np.asarray(m, dtype=complex)
    return 0.5 * float(np.sum(np.abs(m) ** 2))


def free_hamiltonian_field(epsilon: float, kind: str = "trace") -> ScalarField:
    """Energy function on the group chart, in one of three normalizations.

    ``trace``       H  = half the squared Frobenius norm (the generator of the
                    deformed free flow).
    ``normalized``  (H - 1) / (4 eps^2), which equals half the squared-radius
                    Casimir of the momentum chart.
    ``classical``   half the squared geodesic radius, recovered from H by
                    inverting the deformation; smooth away from H = 1.
    """
    if kind == "trace":
        return ScalarField(
            fn=lambda x: 0.5 * float(np.dot(x, x)),
            grad=lambda x: np.asarray(x, dtype=float).copy(),
        )
    if kind == "normalized":
        if epsilon == 0.0:
            raise NumericDomainError("normalized energy undefined at epsilon = 0")
        scale = 1.0 / (4.0 * epsilon**2)

        return ScalarField(
            fn=lambda x: (0.5 * float(np.dot(x, x)) - 1.0) * scale,
            grad=lambda x: np.asarray(x, dtype=float) * scale,
        )
    if kind == "classical":
        if epsilon == 0.0:
            raise NumericDomainError("classical energy undefined at epsilon = 0")

        def fn(x):
            h = 0.5 * float(np.dot(x, x))
            if h < 1.0 - 1e-12:
                raise NumericDomainError(f"energy {h} below the flat floor 1")
            r = math.acosh(max(h, 1.0)) / (2.0 * epsilon)
            return 0.5 * r * r

        def grad(x):
            x = np.asarray(x, dtype=float)
            h = 0.5 * float(np.dot(x, x))
            if h < 1.0 - 1e-12:
                raise NumericDomainError(f"energy {h} below the flat floor 1")
            delta = max(h - 1.0, 0.0)
            if delta < 1e-6:
                ratio = 1.0 - delta / 3.0
            else:
                ratio = math.acosh(h) / math.sqrt(h * h - 1.0)
            return x * (ratio / (4.0 * epsilon**2))

        return ScalarField(fn=fn, grad=grad)
    raise ContractViolation(f"unknown energy kind {kind!r}")


def flow_rhs(m: np.ndarray, epsilon: float) -> np.ndarray:
    """Right-hand side of the free flow: ``i eps (H m + Y conj(m) Y)``."""
    m = np.asarray(m, dtype=complex)
    return 1j * epsilon * (free_energy(m) * m + _Y @ np.conj(m) @ _Y)


def legendre_velocity(b_part: SB2Element, epsilon: float, energy: float | None = None) -> np.ndarray:
    """Body-frame angular velocity of the unitary factor along the free flow.

    Anti-hermitian and traceless; constant along a free trajectory because the
    triangular factor is.
    """
    bm = b_part.matrix
    if energy is None:
        energy = free_energy(bm)
    binv = np.array(
        [[1.0 / b_part.rho, -b_part.n], [0.0, b_part.rho]], dtype=complex
    )
    return 1j * epsilon * (energy * np.eye(2) + _Y @ np.conj(bm) @ _Y @ binv)


def expm2(m: np.ndarray) -> np.ndarray:
    """Exponential of a complex 2x2 matrix in closed form."""
    m = np.asarray(m, dtype=complex)
    lam = 0.5 * (m[0, 0] + m[1, 1])
    n = m - lam * np.eye(2)
    theta2 = -(n[0, 0] * n[1, 1] - n[0, 1] * n[1, 0])
    theta = cmath.sqrt(theta2)
    if abs(theta) < 1e-4:
        cosh_t = 1.0 + theta2 / 2.0 + theta2**2 / 24.0
        sinhc_t = 1.0 + theta2 / 6.0 + theta2**2 / 120.0
    else:
        cosh_t = cmath.cosh(theta)
        sinhc_t = cmath.sinh(theta) / theta
    return cmath.exp(lam) * (cosh_t * np.eye(2) + sinhc_t * n)


def closed_form_flow(
    u0: SU2Element, b_part: SB2Element, epsilon: float, t: float
) -> np.ndarray:
    """Exact free trajectory through ``u0 * B``: rotate the unitary factor."""
    omega = legendre_velocity(b_part, epsilon)
    return u0.matrix @ expm2(t * omega) @ b_part.matrix


def free_flow(
    g0: SL2CElement,
    epsilon: float,
    t_end: float,
    step: StepControl | None = None,
) -> tuple[Trajectory, int]:
    """Integrate the free flow on the group chart.

    The determinant is conserved by the exact flow; whenever the numerical
    state drifts off the unit-determinant slice by more than 1e-10 it is
    rescaled back.  Returns the trajectory and the number of rescalings.
    """
    base = step if step is not None else StepControl()
    events = [0]

    def renorm(x: np.ndarray) -> np.ndarray:
        m = matrix_from_real8(x)
        det = m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
        if abs(det - 1.0) > _RENORM_TRIGGER:
            events[0] += 1
            return real8_from_matrix(m / cmath.sqrt(det))
        return x

    ctrl = StepControl(h=base.h, tol=base.tol, poststep=renorm)
    traj = integrate_flow(
        sl2c_bivector(epsilon),
        free_hamiltonian_field(epsilon, kind="trace"),
        g0.real8,
        t_end,
        step=ctrl,
    )
    return traj, events[0]


def flow_diagnostics(traj: Trajectory, epsilon: float) -> dict:
    """Conservation and factorization report for a free-flow trajectory.

    Returns max determinant residual, drift of the triangular factor, the
    worst deviation of the measured unitary angular velocity from its
    closed-form value, and the endpoint distance to the closed-form flow.
    """
    mats = np.array([matrix_from_real8(p) for p in traj.points])
    dets = mats[:, 0, 0] * mats[:, 1, 1] - mats[:, 0, 1] * mats[:, 1, 0]
    det_residual = float(np.max(np.abs(dets - 1.0)))

    factors = [iwasawa(SL2CElement.from_matrix(m)) for m in mats]
    b0 = factors[0][1]
    rho_drift = max(abs(b.rho - b0.rho) for _, b in factors)
    n_drift = max(abs(b.n - b0.n) for _, b in factors)

    omega = legendre_velocity(b0, epsilon)
    us = np.array([u.matrix for u, _ in factors])
    udot = central_derivative(traj.times, us)
    omega_dev = 0.0
    for i, du in enumerate(udot, start=1):
        est = np.linalg.solve(us[i], du)
        omega_dev = max(omega_dev, float(np.max(np.abs(est - omega))))

    u0 = factors[0][0]
    end = closed_form_flow(u0, b0, epsilon, float(traj.times[-1]))
    endpoint_dev = float(np.max(np.abs(mats[-1] - end)))

    return {
        "det_residual": det_residual,
        "b_factor_drift": float(max(rho_drift, n_drift)),
        "omega_deviation": float(omega_dev),
        "endpoint_deviation": endpoint_dev,
    }


# ---------------------------------------------------------------------------
# momentum chart


def momentum_bivector(epsilon: float) -> BivectorSpec:
    """Deformed rotation brackets on ``(zeta, w_re, w_im)``.

    ``{zeta, w_re} = w_im``, ``{zeta, w_im} = -w_re``,
    ``{w_re, w_im} = sinh(2 eps zeta) / (2 eps)`` (the last degenerates to
    ``zeta`` at ``eps = 0``, giving the linear structure back).
    """

    def ww(x):
        if epsilon == 0.0:
            return x[0]
        return math.sinh(2.0 * epsilon * x[0]) / (2.0 * epsilon)

    return BivectorSpec(
        dim=3,
        coord_names=MOMENTUM_COORD_NAMES,
        components={
            (0, 1): lambda x: x[2],
            (0, 2): lambda x: -x[1],
            (1, 2): ww,
        },
    )


def linear_momentum_bivector() -> BivectorSpec:
    """Rotation-algebra brackets on ``(x, y, z)``: the undeformed limit."""
    return BivectorSpec(
        dim=3,
        coord_names=LINEAR_COORD_NAMES,
        components={
            (0, 1): lambda p: p[2],
            (0, 2): lambda p: -p[1],
            (1, 2): lambda p: p[0],
        },
    )


def sb2_momentum(b_part: SB2Element, epsilon: float) -> np.ndarray:
    """Chart coordinates ``(zeta, w_re, w_im)`` of a triangular factor."""
    if epsilon == 0.0:
        raise NumericDomainError("momentum chart degenerates at epsilon = 0")
    zeta = math.log(b_part.rho) / epsilon
    w = b_part.n / (2.0 * epsilon)
    return np.array([zeta, w.real, w.imag])


def _phi_derivs(s: float, epsilon: float, m_max: int) -> list[float]:
    """Derivatives of Phi(s) = (cosh(2 eps sqrt(s)) - 1)/2 at s, orders 1..m_max.

    Phi is entire in s, so the series works for any sign of s.
    """
    e2 = epsilon * epsilon
    out = []
    for m in range(1, m_max + 1):
        total = 0.0
        k = max(m, 1)
        # term_k = 2^(2k-1) eps^(2k) k!/(k-m)! s^(k-m) / (2k)!
        while True:
            coeff = 2.0 ** (2 * k - 1) * e2**k / math.factorial(2 * k)
            fall = math.factorial(k) / math.factorial(k - m)
            term = coeff * fall * s ** (k - m)
            total += term
            k += 1
            if abs(term) <= 1e-18 * max(abs(total), 1e-30) or k > m + 60:
                break
        out.append(total)
    return out


def momentum_isomorphism(xyz: np.ndarray, epsilon: float) -> np.ndarray:
    """Map the linear chart ``(x, y, z)`` onto the deformed chart.

    ``zeta = z`` and ``w`` rescales ``x + i y`` so that the squared-radius
    functions correspond: ``|w|^2 + (sinh(eps zeta)/eps)^2 = (sinh(eps r)/eps)^2``
    with ``r = |(x, y, z)|``.  Near the axis ``x = y = 0`` the rescaling factor
    is continued by a 4-term Taylor series of an entire function, so the map
    is smooth there.
    """
    p = np.asarray(xyz, dtype=float)
    if p.shape != (3,):
        raise ContractViolation(f"linear chart points have 3 components, got {p.shape}")
    x, y, z = p
    if epsilon == 0.0:
        return np.array([z, x, y])
    s2 = x * x + y * y
    r2 = s2 + z * z
    z2 = z * z
    # g = (sinh^2(eps r) - sinh^2(eps |z|)) / (r^2 - z^2), continued through
    # the removable singularity at r^2 = z^2.
    if abs(r2 - z2) < 1e-8:
        d = _phi_derivs(z2, epsilon, 4)
        u = r2 - z2
        g = d[0] + u * (d[1] / 2.0 + u * (d[2] / 6.0 + u * d[3] / 24.0))
    else:
        g = (math.sinh(epsilon * math.sqrt(r2)) ** 2 - math.sinh(epsilon * abs(z)) ** 2) / (
            r2 - z2
        )
    factor = math.sqrt(g) / abs(epsilon)
    return np.array([z, factor * x, factor * y])


def momentum_isomorphism_inverse(zw: np.ndarray, epsilon: float) -> np.ndarray:
    """Inverse of :func:`momentum_isomorphism` on the deformed chart."""
    q = np.asarray(zw, dtype=float)
    if q.shape != (3,):
        raise ContractViolation(f"momentum chart points have 3 components, got {q.shape}")
    zeta, wx, wy = q
    if epsilon == 0.0:
        return np.array([wx, wy, zeta])
    sz = math.sinh(epsilon * zeta) / epsilon
    big_r2 = wx * wx + wy * wy + sz * sz
    r = math.asinh(abs(epsilon) * math.sqrt(big_r2)) / abs(epsilon)
    z = zeta
    r2, z2 = r * r, z * z
    if abs(r2 - z2) < 1e-8:
        d = _phi_derivs(z2, epsilon, 4)
        u = r2 - z2
        g = d[0] + u * (d[1] / 2.0 + u * (d[2] / 6.0 + u * d[3] / 24.0))
    else:
        g = (math.sinh(epsilon * r) ** 2 - math.sinh(epsilon * abs(z)) ** 2) / (r2 - z2)
    factor = math.sqrt(g) / abs(epsilon)
    return np.array([wx / factor, wy / factor, z])


def casimir_radius_squared(zw: np.ndarray, epsilon: float) -> float:
    """Central function ``|w|^2 + (sinh(eps zeta)/eps)^2`` of the deformed chart.

    Pulls back to ``(sinh(eps r)/eps)^2`` under the isomorphism; at
    ``eps = 0`` it is the plain squared radius.
    """
    q = np.asarray(zw, dtype=float)
    zeta, wx, wy = q
    if epsilon == 0.0:
        sz = zeta
    else:
        sz = math.sinh(epsilon * zeta) / epsilon
    return float(wx * wx + wy * wy + sz * sz)


# ---------------------------------------------------------------------------
# energy normalizations, as pure functions of scalars


@dataclass(frozen=True)
class EnergyRelations:
    """One free-motion energy expressed in all three normalizations.

    ``trace`` is the flow generator, ``classical`` halves the squared geodesic
    radius, ``normalized`` halves the squared-radius Casimir; ``radius2`` is
    the Casimir itself.
    """

    trace: float
    classical: float
    normalized: float
    radius2: float


def energy_relations(
    epsilon: float,
    *,
    trace: float | None = None,
    classical: float | None = None,
    radius2: float | None = None,
) -> EnergyRelations:
    """Convert between the energy normalizations at deformation ``epsilon``.

    Exactly one of ``trace``, ``classical``, ``radius2`` must be given.  The
    identities used: ``trace = cosh(2 eps r)`` with ``r`` the geodesic radius,
    ``classical = r^2 / 2``, ``radius2 = (sinh(eps r)/eps)^2``, and
    ``normalized = radius2 / 2``.
    """
    given = [name for name, val in
             (("trace", trace), ("classical", classical), ("radius2", radius2))
             if val is not None]
    if len(given) != 1:
        raise ContractViolation(
            f"exactly one energy must be given, got {given or 'none'}"
        )

    if epsilon == 0.0:
        if trace is not None:
            raise NumericDomainError(
                "trace energy is identically 1 at epsilon = 0; start from "
                "classical or radius2 instead"
            )
        if classical is not None:
            if classical < 0.0:
                raise NumericDomainError(f"classical energy must be >= 0, got {classical}")
            return EnergyRelations(1.0, classical, classical, 2.0 * classical)
        assert radius2 is not None
        if radius2 < 0.0:
            raise NumericDomainError(f"squared radius must be >= 0, got {radius2}")
        return EnergyRelations(1.0, radius2 / 2.0, radius2 / 2.0, radius2)

    e2 = epsilon * epsilon
    if trace is not None:
        if trace < 1.0:
            raise NumericDomainError(
                f"trace energy must be >= 1 (minimum on the group), got {trace}"
            )
        radius2 = (trace - 1.0) / (2.0 * e2)
    elif classical is not None:
        if classical < 0.0:
            raise NumericDomainError(f"classical energy must be >= 0, got {classical}")
        r = math.sqrt(2.0 * classical)
        sr = math.sinh(epsilon * r) / epsilon
        radius2 = sr * sr
    else:
        if radius2 is None or radius2 < 0.0:
            raise NumericDomainError(f"squared radius must be >= 0, got {radius2}")

    r = math.asinh(abs(epsilon) * math.sqrt(radius2)) / abs(epsilon)
    return EnergyRelations(
        trace=1.0 + 2.0 * e2 * radius2,
        classical=0.5 * r * r,
        normalized=0.5 * radius2,
        radius2=radius2,
    )


def classical_limit_deviation(epsilon: float, classical: float = 0.5) -> float:
    """Gap between the normalized and classical energies at fixed radius.

    Vanishes quadratically in ``epsilon``: the deformation correction to the
    energy of a trajectory of geodesic radius ``sqrt(2 * classical)``.
    """
    rel = energy_relations(epsilon, classical=classical)
    return abs(rel.normalized - classical)


# ---------------------------------------------------------------------------
# samplers for certificates and tests


def random_su2(rng: np.random.Generator) -> SU2Element:
    v = rng.normal(size=4)
    v /= np.linalg.norm(v)
    return SU2Element(complex(v[0], v[1]), complex(v[2], v[3]))


def random_sb2(rng: np.random.Generator, spread: float = 0.4) -> SB2Element:
    rho = math.exp(spread * rng.normal())
    n = complex(spread * rng.normal(), spread * rng.normal())
    return SB2Element(rho, n)


def random_sl2c(rng: np.random.Generator, spread: float = 0.4) -> SL2CElement:
    u = random_su2(rng)
    b = random_sb2(rng, spread)
    return SL2CElement.from_matrix(u.matrix @ b.matrix)


def sample_unimodular(n: int, seed: int = 0, spread: float = 0.4) -> Iterator[SL2CElement]:
    rng = np.random.default_rng(seed)
    for _ in range(n):
        yield random_sl2c(rng, spread)
