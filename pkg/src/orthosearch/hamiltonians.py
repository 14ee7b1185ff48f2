"""Constructors for the search and transport Hamiltonians studied here.

Stationary models return :class:`StationaryHamiltonian`; schedules and
the parallel-transport qubit model return
:class:`TimeDependentHamiltonian`, which carries a sampler ``t -> H(t)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Callable

import numpy as np

from .errors import CoincidentStates, DimensionMismatch, OrthogonalSourceTarget
from .linalg import (
    SIGMA_X,
    as_hermitian,
    as_state,
    from_pauli,
    pauli_vector,
    ket,
    projector,
    uniform_state,
)

ORTHOGONAL_TOL = 1e-12
COINCIDENT_TOL = 1e-12


class Label(str, Enum):
    FG = "FG"
    FENNER = "Fenner"
    OPT = "Opt"
    RC_FIXED_XI = "RCFixedXi"
    TWO_LEVEL = "TwoLevel"
    COUPLED = "Coupled"
    UZDIN = "Uzdin"
    RC_SCHEDULE = "RCSchedule"
    COUPLED_SCHEDULE = "CoupledSchedule"


@dataclass(frozen=True)
class StationaryHamiltonian:
    matrix: np.ndarray
    label: Label
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "matrix", as_hermitian(self.matrix))

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


@dataclass(frozen=True)
class TimeDependentHamiltonian:
    """H(t) on a closed time domain.

    ``pauli_field``, when present, maps an array of times to an array of shape
    (K, 4) holding the Pauli decomposition (h0, hx, hy, hz); qubit models
    use it to skip building matrices.
    """

    sampler: Callable[[float], np.ndarray]
    domain: tuple[float, float]
    label: Label
    params: dict = field(default_factory=dict)
    pauli_field: Callable[[np.ndarray], np.ndarray] | None = None

    def __call__(self, t: float) -> np.ndarray:
        return self.sampler(t)

    def fields(self, ts) -> np.ndarray:
        ts = np.asarray(ts, dtype=float)
        if self.pauli_field is not None:
            return self.pauli_field(ts)
        out = np.empty((ts.size, 4))
        for k, t in enumerate(ts):
            h = self.sampler(float(t))
            if h.shape != (2, 2):
                raise DimensionMismatch("Pauli fields exist only for qubit Hamiltonians")
            out[k] = pauli_vector(h)
        return out


@dataclass(frozen=True)
class SearchProblem:
    """Initial state ``s``, target ``w`` and energy scale ``E``.

    The phase of ``s`` is fixed so that <w|s> is real and non-negative.
    """

    s: np.ndarray
    w: np.ndarray
    E: float = 1.0

    def __post_init__(self):
        s = as_state(self.s)
        w = as_state(self.w)
        if s.shape != w.shape:
            raise DimensionMismatch(f"dimension mismatch: {s.shape} vs {w.shape}")
        z = np.vdot(w, s)
        if abs(z) > 0.0:
            s = s * (abs(z) / z)
        if not self.E > 0.0:
            raise ValueError("energy scale E must be positive")
        object.__setattr__(self, "s", s)
        object.__setattr__(self, "w", w)

    @classmethod
    def uniform(cls, n: int, target: int = 0, E: float = 1.0) -> "SearchProblem":
        """Uniform superposition over ``n`` items searching for ``target``."""
        return cls(uniform_state(n), ket(target, n), E)

    @classmethod
    def from_overlap(cls, x: float, E: float = 1.0) -> "SearchProblem":
        """Two-dimensional problem with w = |0>, s = x|0> + sqrt(1-x^2)|1>."""
        if not 0.0 <= x <= 1.0:
            raise ValueError("overlap must lie in [0, 1]")
        return cls(np.array([x, np.sqrt(1.0 - x * x)], dtype=complex), ket(0), E)

    @property
    def x(self) -> float:
        return float(np.vdot(self.w, self.s).real)

    @property
    def dim(self) -> int:
        return self.s.size

    def residual_state(self) -> np.ndarray:
        """Unit vector |r> orthogonal to |w> in span{w, s}; undefined when x = 1."""
        r = self.s - self.x * self.w
        norm = np.linalg.norm(r)
        if norm < COINCIDENT_TOL:
            raise CoincidentStates("s coincides with w, so no residual direction exists")
        return r / norm


def build_fg(p: SearchProblem) -> StationaryHamiltonian:
    """E |w><w| + E |s><s|."""
    return StationaryHamiltonian(p.E * (projector(p.w) + projector(p.s)), Label.FG, {"E": p.E, "x": p.x})


def build_fenner(p: SearchProblem) -> StationaryHamiltonian:
    """2iEx (|w><s| - |s><w|).

    Raises
    ------
    OrthogonalSourceTarget
        If x < 1e-12, where the generator vanishes identically.
    """
    if p.x < ORTHOGONAL_TOL:
        raise OrthogonalSourceTarget(f"overlap x={p.x!r} is zero; the Fenner generator vanishes")
    ws = np.outer(p.w, p.s.conj())
    m = 2j * p.E * p.x * (ws - ws.conj().T)
    return StationaryHamiltonian(m, Label.FENNER, {"E": p.E, "x": p.x})


def optimal_time(a, b, dE: float, hbar: float = 1.0) -> float:
    """Minimal transport time hbar * arccos|<A|B>| / dE."""
    c = min(1.0, abs(np.vdot(np.asarray(a), np.asarray(b))))
    return hbar * float(np.arccos(c)) / dE


def build_opt(a, b, dE: float, phase: float = 0.0) -> StationaryHamiltonian:
    """Time-optimal Hamiltonian transporting |A> to |B> with dispersion ``dE``.

    For orthogonal inputs the limiting form
    i dE (e^{-i phase} |B><A| - e^{i phase} |A><B|) is used.
    """
    a = as_state(a)
    b = as_state(b)
    if a.shape != b.shape:
        raise DimensionMismatch(f"dimension mismatch: {a.shape} vs {b.shape}")
    if not dE > 0.0:
        raise ValueError("dispersion dE must be positive")
    z = complex(np.vdot(a, b))
    c = abs(z)
    if c >= 1.0 - COINCIDENT_TOL:
        raise CoincidentStates("source and target coincide up to phase")
    ba = np.outer(b, a.conj())
    if c < ORTHOGONAL_TOL:
        m = 1j * dE * (np.exp(-1j * phase) * ba - np.exp(1j * phase) * ba.conj().T)
    else:
        m = 1j * dE * c / np.sqrt(1.0 - c * c) * (ba / z - ba.conj().T / z.conjugate())
    return StationaryHamiltonian(m, Label.OPT, {"dE": dE, "overlap": c, "phase": phase})


def build_rc(p: SearchProblem, xi: float) -> StationaryHamiltonian:
    """Interpolation (1 - xi)(I + |s><s|) + xi (I + |w><w|)."""
    if not 0.0 <= xi <= 1.0:
        raise ValueError(f"xi must lie in [0, 1], got {xi}")
    eye = np.eye(p.dim, dtype=complex)
    m = (1.0 - xi) * (eye + projector(p.s)) + xi * (eye + projector(p.w))
    return StationaryHamiltonian(m, Label.RC_FIXED_XI, {"xi": xi, "x": p.x})


def rc_schedule(p: SearchProblem, T: float = 1.0) -> TimeDependentHamiltonian:
    """Linear schedule xi = t / T of :func:`build_rc` on [0, T]."""

    def sampler(t: float) -> np.ndarray:
        return build_rc(p, min(1.0, max(0.0, t / T))).matrix

    return TimeDependentHamiltonian(sampler, (0.0, T), Label.RC_SCHEDULE, {"T": T, "x": p.x})


def build_two_level(lam: float, delta: float) -> StationaryHamiltonian:
    """[[lam, delta], [delta, -lam]]."""
    m = np.array([[lam, delta], [delta, -lam]], dtype=complex)
    return StationaryHamiltonian(m, Label.TWO_LEVEL, {"lambda": lam, "delta": delta})


def build_coupled(s: float, gamma: float) -> StationaryHamiltonian:
    """-(1 - s)|0><0| - s|1><1| - gamma sigma_x."""
    if not 0.0 <= s <= 1.0:
        raise ValueError(f"s must lie in [0, 1], got {s}")
    m = -(1.0 - s) * projector(ket(0)) - s * projector(ket(1)) - gamma * SIGMA_X
    return StationaryHamiltonian(m, Label.COUPLED, {"s": s, "gamma": gamma})


def coupled_schedule(gamma: float, T: float = 1.0) -> TimeDependentHamiltonian:
    """Linear schedule s = t / T of :func:`build_coupled` on [0, T]."""

    def field_fn(ts):
        s = np.clip(np.asarray(ts, dtype=float) / T, 0.0, 1.0)
        z = np.zeros_like(s)
        return np.column_stack([-0.5 + z, -gamma + z, z, s - 0.5])

    def sampler(t: float) -> np.ndarray:
        return build_coupled(min(1.0, max(0.0, t / T)), gamma).matrix

    return TimeDependentHamiltonian(
        sampler, (0.0, T), Label.COUPLED_SCHEDULE, {"gamma": gamma, "T": T}, field_fn
    )


def uzdin_field(omega0: float, nu0: float, t) -> np.ndarray:
    """Pauli fields (h0, hx, hy, hz) of the parallel-transport model; shape (..., 4)."""
    t = np.asarray(t, dtype=float)
    s2 = np.sin(2.0 * omega0 * t)
    c2 = np.cos(2.0 * omega0 * t)
    cn = np.cos(nu0 * t)
    sn = np.sin(nu0 * t)
    hx = -0.5 * nu0 * c2 * s2 * cn - omega0 * sn
    hy = -0.5 * nu0 * c2 * s2 * sn + omega0 * cn
    hz = 0.5 * nu0 * s2 * s2
    return np.stack([np.zeros_like(t), hx, hy, hz], axis=-1)


def uzdin_state(omega0: float, nu0: float, t: float) -> np.ndarray:
    """Parallel-transported state m(t), starting at |0> and reaching |1> at pi/(2 omega0)."""
    phi = nu0 / (4.0 * omega0) * (2.0 * omega0 * t - np.sin(2.0 * omega0 * t))
    return np.exp(-1j * phi) * np.array(
        [np.cos(omega0 * t), np.exp(1j * nu0 * t) * np.sin(omega0 * t)], dtype=complex
    )


def uzdin_state_derivative(omega0: float, nu0: float, t: float) -> np.ndarray:
    """Time derivative of :func:`uzdin_state`."""
    phi = nu0 / (4.0 * omega0) * (2.0 * omega0 * t - np.sin(2.0 * omega0 * t))
    phidot = nu0 * np.sin(omega0 * t) ** 2
    c, s = np.cos(omega0 * t), np.sin(omega0 * t)
    en = np.exp(1j * nu0 * t)
    inner = np.array([c, en * s], dtype=complex)
    dinner = np.array([-omega0 * s, en * (1j * nu0 * s + omega0 * c)], dtype=complex)
    return np.exp(-1j * phi) * (dinner - 1j * phidot * inner)


def build_uzdin(omega0: float, nu0: float, t_end: float | None = None) -> TimeDependentHamiltonian:
    """Parallel-transport qubit Hamiltonian h(t) . sigma on [0, t_end].

    ``t_end`` defaults to pi / (2 omega0), when the state arrives at |1>.
    """
    if not omega0 > 0.0:
        raise ValueError("omega0 must be positive")
    if t_end is None:
        t_end = np.pi / (2.0 * omega0)

    def field_fn(ts):
        return uzdin_field(omega0, nu0, ts)

    def sampler(t: float) -> np.ndarray:
        f = uzdin_field(omega0, nu0, t)
        return from_pauli(f[0], f[1:])

    return TimeDependentHamiltonian(
        sampler, (0.0, float(t_end)), Label.UZDIN, {"omega0": omega0, "nu0": nu0}, field_fn
    )


__all__ = [
    "Label",
    "SearchProblem",
    "StationaryHamiltonian",
    "TimeDependentHamiltonian",
    "build_coupled",
    "build_fenner",
    "build_fg",
    "build_opt",
    "build_rc",
    "build_two_level",
    "build_uzdin",
    "coupled_schedule",
    "optimal_time",
    "rc_schedule",
    "uzdin_field",
    "uzdin_state",
    "uzdin_state_derivative",
]
