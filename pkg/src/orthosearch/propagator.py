"""Time evolution: stationary exponentials, a midpoint integrator for
time-dependent Hamiltonians, and closed-form search probabilities.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._backend import kernels
from .errors import DegenerateOverlap, DimensionMismatch, StepTooLarge
from .hamiltonians import StationaryHamiltonian, TimeDependentHamiltonian
from .linalg import as_state, dispersion, hermitian_eigen, unitary_exp

OVERLAP_GUARD = 1e-12


@dataclass(frozen=True)
class PropagationConfig:
    """Fixed-step settings for :func:`evolve_timedep`.

    ``dt`` is shrunk to divide the domain evenly; ``None`` means
    (t1 - t0) / 1e5.
    """

    dt: float | None = None
    norm_tolerance: float = 1e-9
    hbar: float = 1.0

    def __post_init__(self):
        if self.dt is not None and not self.dt > 0.0:
            raise ValueError("dt must be positive")
        if not self.norm_tolerance > 0.0:
            raise ValueError("norm_tolerance must be positive")
        if not self.hbar > 0.0:
            raise ValueError("hbar must be positive")


@dataclass(frozen=True)
class Trajectory:
    """States sampled on an ascending time grid with their energy dispersions."""

    times: np.ndarray
    states: np.ndarray
    dispersions: np.ndarray

    def __len__(self) -> int:
        return len(self.times)

    @property
    def final(self) -> np.ndarray:
        return self.states[-1]


def _matrix(h) -> np.ndarray:
    return h.matrix if isinstance(h, StationaryHamiltonian) else np.asarray(h, dtype=complex)


def evolve_stationary(h, psi0, t: float, hbar: float = 1.0) -> np.ndarray:
    """exp(-i H t / hbar) psi0."""
    m = _matrix(h)
    psi0 = as_state(psi0)
    if m.shape[0] != psi0.size:
        raise DimensionMismatch(f"dimension mismatch: H is {m.shape}, state has {psi0.size}")
    return unitary_exp(m, t, hbar) @ psi0


def stationary_trajectory(h, psi0, t_end: float, n_points: int = 2001, hbar: float = 1.0) -> Trajectory:
    """Sample exp(-i H t / hbar) psi0 on ``n_points`` evenly spaced times in [0, t_end]."""
    m = _matrix(h)
    psi0 = as_state(psi0)
    if m.shape[0] != psi0.size:
        raise DimensionMismatch(f"dimension mismatch: H is {m.shape}, state has {psi0.size}")
    eig = hermitian_eigen(m)
    times = np.linspace(0.0, t_end, n_points)
    coeffs = eig.vectors.conj().T @ psi0
    phases = np.exp(-1j * np.outer(times, eig.values) / hbar)
    states = (phases * coeffs) @ eig.vectors.T
    disp = np.array([dispersion(m, psi) for psi in states])
    return Trajectory(times, states, disp)


def _batch_dispersion(hs: np.ndarray, states: np.ndarray) -> np.ndarray:
    hpsi = np.einsum("kij,kj->ki", hs, states)
    mean = np.einsum("ki,ki->k", states.conj(), hpsi).real
    return np.linalg.norm(hpsi - mean[:, None] * states, axis=1)


def _fields_to_matrices(f: np.ndarray) -> np.ndarray:
    h0, hx, hy, hz = f.T
    out = np.empty((len(f), 2, 2), dtype=complex)
    out[:, 0, 0] = h0 + hz
    out[:, 1, 1] = h0 - hz
    out[:, 0, 1] = hx - 1j * hy
    out[:, 1, 0] = hx + 1j * hy
    return out


def evolve_timedep(
    h: TimeDependentHamiltonian, psi0, cfg: PropagationConfig | None = None
) -> Trajectory:
    """Exponential-midpoint integration of i hbar d/dt psi = H(t) psi over ``h.domain``.

    Each step applies exp(-i H(t_k + dt/2) dt / hbar), so every step is
    unitary. Qubit Hamiltonians use the compiled kernel on their Pauli
    fields; larger ones exponentiate per step.

    Raises
    ------
    StepTooLarge
        If any state norm drifts from 1 by more than ``cfg.norm_tolerance``.
    """
    cfg = cfg or PropagationConfig()
    psi0 = as_state(psi0)
    t0, t1 = h.domain
    span = t1 - t0
    dt = cfg.dt if cfg.dt is not None else span / 1e5
    n = max(1, math.ceil(span / dt - 1e-9))
    step = span / n
    times = t0 + step * np.arange(n + 1)
    times[-1] = t1
    mids = t0 + step * (np.arange(n) + 0.5)
    dim = h(t0).shape[0]
    if dim != psi0.size:
        raise DimensionMismatch(f"dimension mismatch: H is {dim}x{dim}, state has {psi0.size}")

    if dim == 2:
        states = kernels.midpoint_qubit(h.fields(mids) / cfg.hbar, psi0, step)
        hs = _fields_to_matrices(h.fields(times))
    else:
        states = np.empty((n + 1, dim), dtype=complex)
        states[0] = psi0
        for k, tm in enumerate(mids):
            states[k + 1] = unitary_exp(h(tm), step, cfg.hbar) @ states[k]
        hs = np.array([h(t) for t in times])

    drift = np.max(np.abs(np.linalg.norm(states, axis=1) - 1.0))
    if drift > cfg.norm_tolerance:
        raise StepTooLarge(f"norm drift {drift:.3e} exceeds {cfg.norm_tolerance:.1e}; reduce dt")
    return Trajectory(times, states, _batch_dispersion(hs, states))


def prob_fg(x: float, E: float, t, hbar: float = 1.0):
    """Target probability sin^2(Ext/hbar) + x^2 cos^2(Ext/hbar) under H_FG."""
    if not 0.0 <= x <= 1.0:
        raise ValueError("x must lie in [0, 1]")
    arg = E * x * np.asarray(t, dtype=float) / hbar
    return np.sin(arg) ** 2 + x * x * np.cos(arg) ** 2


def prob_fenner(x: float, E: float, t, hbar: float = 1.0):
    """Target probability under the Fenner Hamiltonian."""
    if not 0.0 <= x <= 1.0:
        raise ValueError("x must lie in [0, 1]")
    y = math.sqrt(1.0 - x * x)
    arg = 2.0 * x * y * E * np.asarray(t, dtype=float) / hbar
    return (x * np.cos(arg) + y * np.sin(arg)) ** 2


def _guard(x: float) -> None:
    if not OVERLAP_GUARD < x < 1.0 - OVERLAP_GUARD:
        raise DegenerateOverlap(f"overlap x={x!r} must lie strictly inside (0, 1)")


@dataclass(frozen=True)
class CharacteristicTimes:
    t_fg: float
    t_fenner: float
    t_opt_for_overlap: float


def characteristic_times(x: float, E: float = 1.0, hbar: float = 1.0, dE: float | None = None) -> CharacteristicTimes:
    """First-maximum search times and the minimal time at dispersion ``dE`` (default ``E``)."""
    _guard(x)
    dE = E if dE is None else dE
    return CharacteristicTimes(
        t_fg=hbar / E * math.pi / (2.0 * x),
        t_fenner=hbar / E * math.acos(x) / (2.0 * x * math.sqrt(1.0 - x * x)),
        t_opt_for_overlap=hbar * math.acos(x) / dE,
    )


def dispersion_fg(x: float, E: float = 1.0) -> float:
    """Energy dispersion of H_FG in the initial state."""
    return E * x * math.sqrt(1.0 - x * x)


def dispersion_fenner(x: float, E: float = 1.0) -> float:
    return 2.0 * E * x * math.sqrt(1.0 - x * x)


def equal_dispersion_ratio(x: float) -> float:
    """t_FG over the Fenner time at matched dispersion.

    Halving the Fenner energy scale equalizes the two dispersions; the
    result is (pi/2) sqrt(1 - x^2) / arccos(x).
    """
    full = characteristic_times(x, 1.0)
    halved = characteristic_times(x, 0.5)
    return full.t_fg / halved.t_fenner
