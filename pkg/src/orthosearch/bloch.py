"""Bloch vectors and Fubini-Study geometry of state trajectories."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateOverlap, DimensionMismatch, EmptyTrajectory, NumericalAssertionError
from .hamiltonians import StationaryHamiltonian, TimeDependentHamiltonian, uzdin_field
from .linalg import as_state, hermitian_eigen, overlap

PATH_CROSS_CHECK_TOL = 1e-5
ARCCOS_GUARD = 1e-12


def _acos(c):
    return np.arccos(np.clip(c, -1.0, 1.0))


def state_to_bloch(psi) -> np.ndarray:
    """(2 Re c0* c1, 2 Im c0* c1, |c0|^2 - |c1|^2) for a normalized qubit state."""
    psi = np.asarray(psi, dtype=complex)
    if psi.shape[-1] != 2:
        raise DimensionMismatch("Bloch vectors are defined for qubits only")
    c0, c1 = psi[..., 0], psi[..., 1]
    z = c0.conj() * c1
    return np.stack([2.0 * z.real, 2.0 * z.imag, np.abs(c0) ** 2 - np.abs(c1) ** 2], axis=-1)


def bloch_to_state(a) -> np.ndarray:
    """Qubit state with Bloch vector ``a`` (unit 3-vector) and real first entry."""
    a = np.asarray(a, dtype=float)
    if a.shape != (3,):
        raise DimensionMismatch("expected a 3-vector")
    theta = np.arctan2(np.hypot(a[0], a[1]), a[2])
    phi = np.arctan2(a[1], a[0])
    return np.array([np.cos(theta / 2.0), np.exp(1j * phi) * np.sin(theta / 2.0)])


def geodesic_length(a, b) -> float:
    """Fubini-Study distance 2 arccos|<A|B>| in [0, pi]."""
    return float(2.0 * _acos(abs(overlap(a, b))))


def discrete_fs_length(states) -> float:
    """Sum of chord increments 2 sqrt(1 - |<psi_k|psi_k+1>|^2) along a sampled path.

    The square root is taken as the norm of the component of psi_k+1
    orthogonal to psi_k, after renormalizing, which keeps full relative
    precision for small steps.
    """
    states = np.asarray(states, dtype=complex)
    if len(states) < 2:
        raise EmptyTrajectory("need at least two states")
    states = states / np.linalg.norm(states, axis=1, keepdims=True)
    a, b = states[:-1], states[1:]
    z = np.einsum("ki,ki->k", a.conj(), b)
    perp = b - z[:, None] * a
    return float(np.sum(2.0 * np.linalg.norm(perp, axis=1)))


def fs_path_length(traj, hbar: float = 1.0, check: bool = True) -> float:
    """Path length (2/hbar) int dE dt by the trapezoidal rule.

    With ``check`` the value is compared against
    :func:`discrete_fs_length` and a mismatch beyond 1e-5 raises
    :class:`NumericalAssertionError`.
    """
    if len(traj.times) < 2:
        raise EmptyTrajectory("trajectory needs at least two points")
    s = float(2.0 / hbar * np.trapezoid(traj.dispersions, traj.times))
    if check:
        s_discrete = discrete_fs_length(traj.states)
        if abs(s - s_discrete) > PATH_CROSS_CHECK_TOL:
            raise NumericalAssertionError(
                f"dispersion integral {s:.9f} and discrete length {s_discrete:.9f} disagree"
            )
    return s


def geodesic_time(xi):
    """Time parameter tan(xi/2) / (1 + tan(xi/2)) along the geodesic, mapping [0, pi] onto [0, 1]."""
    xi = np.asarray(xi, dtype=float)
    return np.sin(xi / 2.0) / (np.cos(xi / 2.0) + np.sin(xi / 2.0))


def geodesic_state(a, b, xi: float, phase: float | None = None) -> np.ndarray:
    """Point at parameter ``xi`` on the geodesic from |A> (xi = 0) to |B> (xi = pi).

    ``phase`` sets the relative phase of |B> when A and B are orthogonal,
    where it is otherwise undefined.
    """
    a = as_state(a)
    b = as_state(b)
    z = overlap(b, a)
    c = abs(z)
    if c < ARCCOS_GUARD:
        if phase is None:
            raise DegenerateOverlap("orthogonal endpoints need an explicit phase")
        factor = np.exp(1j * phase)
    else:
        factor = z / c
    return (np.cos(xi / 2.0) * a + np.sin(xi / 2.0) * factor * b) / np.sqrt(1.0 + np.sin(xi) * c)


def geodesic_path(a, b, n_points: int = 20001, phase: float | None = None) -> np.ndarray:
    xis = np.linspace(0.0, np.pi, n_points)
    return np.array([geodesic_state(a, b, xi, phase) for xi in xis])


def spectral_norm(h) -> float:
    """Largest |eigenvalue| of the traceless part of ``h``."""
    h = np.asarray(h, dtype=complex)
    n = h.shape[0]
    shifted = h - np.trace(h) / n * np.eye(n)
    vals = hermitian_eigen(shifted).values
    return float(np.max(np.abs(vals)))


@dataclass(frozen=True)
class PathLengthReport:
    s_dynamical: float
    s_geodesic: float
    geodesic_efficiency: float
    speed_efficiency_profile: np.ndarray


def efficiencies(traj, h, hbar: float = 1.0) -> PathLengthReport:
    """Geodesic efficiency of the whole path and pointwise speed efficiency."""
    if len(traj.times) < 2:
        raise EmptyTrajectory("trajectory needs at least two points")
    s_dyn = fs_path_length(traj, hbar)
    s_geo = geodesic_length(traj.states[0], traj.states[-1])
    if isinstance(h, StationaryHamiltonian):
        norms = np.full(len(traj.times), spectral_norm(h.matrix))
    elif isinstance(h, TimeDependentHamiltonian):
        norms = np.array([spectral_norm(h(t)) for t in traj.times])
    else:
        norms = np.full(len(traj.times), spectral_norm(h))
    speed = np.divide(traj.dispersions, norms, out=np.ones_like(norms), where=norms > 0)
    return PathLengthReport(s_dyn, s_geo, s_geo / s_dyn, speed)


def uzdin_bloch(omega0: float, nu0: float, t) -> np.ndarray:
    """Analytic Bloch vector of the parallel-transport model; shape (..., 3)."""
    t = np.asarray(t, dtype=float)
    s2 = np.sin(2.0 * omega0 * t)
    return np.stack([s2 * np.cos(nu0 * t), s2 * np.sin(nu0 * t), np.cos(2.0 * omega0 * t)], axis=-1)


def uzdin_bloch_derivative(omega0: float, nu0: float, t) -> np.ndarray:
    t = np.asarray(t, dtype=float)
    s2, c2 = np.sin(2.0 * omega0 * t), np.cos(2.0 * omega0 * t)
    sn, cn = np.sin(nu0 * t), np.cos(nu0 * t)
    return np.stack(
        [
            2.0 * omega0 * c2 * cn - nu0 * s2 * sn,
            2.0 * omega0 * c2 * sn + nu0 * s2 * cn,
            -2.0 * omega0 * s2,
        ],
        axis=-1,
    )


def larmor_residual(omega0: float, nu0: float, grid) -> float:
    """max over ``grid`` of |da/dt - 2 h x a| for the parallel-transport model."""
    grid = np.asarray(grid, dtype=float)
    if grid.size < 3:
        raise ValueError("grid needs at least three points")
    a = uzdin_bloch(omega0, nu0, grid)
    h = uzdin_field(omega0, nu0, grid)[:, 1:]
    res = uzdin_bloch_derivative(omega0, nu0, grid) - 2.0 * np.cross(h, a)
    return float(np.max(np.linalg.norm(res, axis=1)))
