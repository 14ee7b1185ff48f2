"""SU(2) rotations behind the discrete simulation of the search Hamiltonian.

Everything lives in the two-dimensional {|w>, |r>} subspace, with the
target |w> at the north pole, so the problem size enters only through
x = 1/sqrt(N).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._backend import kernels
from .errors import DegenerateResult, NonUnitAxis, NoProgress
from .linalg import IDENTITY, PAULI, phase_aligned_distance

AXIS_TOL = 1e-12
DEGENERATE_TOL = 1e-14
MAX_ITERATIONS = 10**6


def _unit(n) -> np.ndarray:
    n = np.asarray(n, dtype=float)
    if n.shape != (3,) or abs(np.linalg.norm(n) - 1.0) > AXIS_TOL:
        raise NonUnitAxis(f"axis must be a unit 3-vector, got {n}")
    return n


def sigma_dot(n) -> np.ndarray:
    """n . sigma."""
    return n[0] * PAULI[0] + n[1] * PAULI[1] + n[2] * PAULI[2]


@dataclass(frozen=True)
class AxisAngle:
    """Rotation exp(-i angle n.sigma / 2)."""

    axis: np.ndarray
    angle: float

    def __post_init__(self):
        object.__setattr__(self, "axis", _unit(self.axis))

    def unitary(self) -> np.ndarray:
        return math.cos(self.angle / 2.0) * IDENTITY - 1j * math.sin(self.angle / 2.0) * sigma_dot(self.axis)

    @classmethod
    def from_unitary(cls, u) -> "AxisAngle":
        """Axis and angle in [0, 2pi] of a 2x2 unitary, ignoring its global phase."""
        u = np.asarray(u, dtype=complex)
        det = np.linalg.det(u)
        v = u / np.sqrt(det)
        c = 0.5 * np.trace(v).real
        vec = np.array([0.5j * np.trace(v @ p) for p in PAULI]).real
        if c < 0.0:
            c, vec = -c, -vec
        s = np.linalg.norm(vec)
        if s < DEGENERATE_TOL:
            return cls(np.array([0.0, 0.0, 1.0]), 0.0)
        return cls(vec / s, 2.0 * math.atan2(s, c))


@dataclass(frozen=True)
class PauliProduct:
    scalar: float
    vector: np.ndarray


def pauli_product(n1, n2) -> PauliProduct:
    """(n1.sigma)(n2.sigma) = (n1.n2) I + i (n1 x n2).sigma."""
    n1, n2 = _unit(n1), _unit(n2)
    return PauliProduct(float(n1 @ n2), np.cross(n1, n2))


def compose_rotations(r1: AxisAngle, r2: AxisAngle, strict: bool = False) -> AxisAngle:
    """Single rotation equal to R1 R2 (R2 acts first).

    When the composite angle vanishes the axis is undefined; the identity
    with axis z is returned, or :class:`DegenerateResult` raised if
    ``strict``.
    """
    c1, s1 = math.cos(r1.angle / 2.0), math.sin(r1.angle / 2.0)
    c2, s2 = math.cos(r2.angle / 2.0), math.sin(r2.angle / 2.0)
    n1, n2 = r1.axis, r2.axis
    c = c1 * c2 - s1 * s2 * float(n1 @ n2)
    vec = s1 * c2 * n1 + c1 * s2 * n2 + s1 * s2 * np.cross(n1, n2)
    s = float(np.linalg.norm(vec))
    if s < DEGENERATE_TOL:
        if strict:
            raise DegenerateResult("composite rotation is the identity up to sign")
        return AxisAngle(np.array([0.0, 0.0, 1.0]), 0.0 if c > 0.0 else 2.0 * math.pi)
    return AxisAngle(vec / s, 2.0 * math.atan2(s, c))


def search_vectors(n: int):
    """Bloch vectors of |s> and |w> in the {|w>, |r>} basis, with x = 1/sqrt(N)."""
    if n < 2:
        raise ValueError("N must be at least 2")
    x = 1.0 / math.sqrt(n)
    s = np.array([2.0 * x * math.sqrt(1.0 - x * x), 0.0, 2.0 * x * x - 1.0])
    w = np.array([0.0, 0.0, 1.0])
    return s, w


def search_states(n: int):
    """|s> and |w> as 2-vectors in the {|w>, |r>} basis."""
    x = 1.0 / math.sqrt(n)
    return np.array([x, math.sqrt(1.0 - x * x)], dtype=complex), np.array([1.0, 0.0], dtype=complex)


@dataclass(frozen=True)
class SimStep:
    """One step exp(-i|s><s| dt) exp(-i|w><w| dt) as a rotation about ``axis``.

    ``angle`` is signed so that the pair reproduces ``unitary`` for every
    ``dt``; ``r`` is the unnormalized axis.
    """

    n: int
    dt: float
    angle: float
    axis: np.ndarray
    r: np.ndarray
    unitary: np.ndarray

    def axis_angle_unitary(self) -> np.ndarray:
        return math.cos(self.angle / 2.0) * IDENTITY - 1j * math.sin(self.angle / 2.0) * sigma_dot(self.axis)


def step_cos_half_angle(n: int, dt: float) -> float:
    return 1.0 - 2.0 / n * math.sin(dt / 2.0) ** 2


def step_sin_half_angle(n: int, dt: float) -> float:
    sh = math.sin(dt / 2.0)
    return 2.0 / math.sqrt(n) * sh * math.sqrt(1.0 - sh * sh / n)


def simulation_step(n: int, dt: float) -> SimStep:
    """Product of the two rotations generated by |s><s| and |w><w| for time ``dt``."""
    s, w = search_vectors(n)
    ch, sh = math.cos(dt / 2.0), math.sin(dt / 2.0)
    r = 0.5 * ch * (s + w) + 0.5 * sh * np.cross(s, w)
    rn = float(np.linalg.norm(r))
    axis = r / rn
    angle = 2.0 * math.atan2(2.0 * sh * rn, step_cos_half_angle(n, dt))
    rs = AxisAngle(s, dt).unitary()
    rw = AxisAngle(w, dt).unitary()
    return SimStep(n, dt, angle, axis, r, rs @ rw)


def grover_iterate(n: int) -> np.ndarray:
    """(I - 2|s><s|)(I - 2|w><w|) in the {|w>, |r>} basis."""
    s, w = search_states(n)
    return (IDENTITY - 2.0 * np.outer(s, s.conj())) @ (IDENTITY - 2.0 * np.outer(w, w.conj()))


def grover_equivalence(n: int) -> float:
    """Distance, minimized over global phase, between the dt = pi step and the Grover iterate."""
    step = simulation_step(n, math.pi)
    return phase_aligned_distance(step.axis_angle_unitary(), grover_iterate(n))


@dataclass(frozen=True)
class SearchRun:
    steps_to_peak: int
    peak_probability: float


def iterate_search(n: int, dt: float, max_steps: int = MAX_ITERATIONS) -> SearchRun:
    """Apply the simulation step to |s> until the target probability first peaks.

    Raises
    ------
    NoProgress
        When no peak above the initial probability appears, e.g. for a
        full-period step.
    """
    if not dt > 0.0:
        raise ValueError("dt must be positive")
    step = simulation_step(n, dt)
    s, _ = search_states(n)
    x2 = 1.0 / n
    if abs(math.sin(step.angle / 2.0)) < DEGENERATE_TOL:
        raise NoProgress(f"step angle {step.angle:.3e} leaves the state unchanged")
    k, p = kernels.iterate_peak(step.unitary, s, max_steps)
    if k < 0 or p <= x2 + 1e-9:
        raise NoProgress(f"no probability peak above {x2:.3e} within {max_steps} steps")
    return SearchRun(int(k), float(p))
