"""Energy constraints on a pair of orthogonal two-level states.

States are written in the eigenbasis {|E1>, |E2>} of H = E(|E2><E2| - |E1><E1|).
Equal mean energy and equal dispersion force the populations of both
states to ((1 - eps)/2, (1 + eps)/2); orthogonality is then reachable
only at eps = 0.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

from ._backend import kernels
from .errors import EpsilonOutOfRange, NumericalAssertionError

FEASIBLE_TOL = 1e-10
ORTHOGONALITY_THRESHOLD = 1e-8
PHASE_GRID = 360
REFINE_ITERATIONS = 30


@dataclass(frozen=True)
class AmplitudeSet:
    """Amplitudes of |A> (alpha) and |B> (beta) on |E1>, |E2>."""

    alpha1: complex
    alpha2: complex
    beta1: complex
    beta2: complex

    @classmethod
    def from_states(cls, a, b) -> "AmplitudeSet":
        return cls(complex(a[0]), complex(a[1]), complex(b[0]), complex(b[1]))


@dataclass(frozen=True)
class ConstraintReport:
    normalization_residual: float
    orthogonality_residual: float
    mean_energy_residual: float
    variance_residual: float

    @property
    def feasible(self) -> bool:
        return max(
            self.normalization_residual,
            self.orthogonality_residual,
            self.mean_energy_residual,
            self.variance_residual,
        ) < FEASIBLE_TOL


def check_system(amps: AmplitudeSet, E: float = 1.0) -> ConstraintReport:
    """Residuals of normalization, orthogonality, equal mean energy and equal dispersion."""
    pa1, pa2 = abs(amps.alpha1) ** 2, abs(amps.alpha2) ** 2
    pb1, pb2 = abs(amps.beta1) ** 2, abs(amps.beta2) ** 2
    norm_res = max(abs(pa1 + pa2 - 1.0), abs(pb1 + pb2 - 1.0))
    orth = abs(amps.alpha1.conjugate() * amps.beta1 + amps.alpha2.conjugate() * amps.beta2)
    u, v = pa2 - pa1, pb2 - pb1
    mean_res = abs(E * (u - v))
    var_res = abs(E * E * (u * u - v * v))
    # equal means imply equal dispersions: |u^2 - v^2| = |u - v| |u + v|
    if var_res > mean_res * abs(E) * (abs(u) + abs(v)) + 1e-12 * max(1.0, var_res):
        raise NumericalAssertionError("dispersion residual exceeds the bound set by the mean residual")
    return ConstraintReport(norm_res, orth, mean_res, var_res)


def _check_eps(epsilon: float) -> None:
    if not -1.0 < epsilon < 1.0:
        raise EpsilonOutOfRange(f"epsilon must lie in (-1, 1), got {epsilon}")


def build_pair(epsilon: float, phases=(0.0, 0.0, 0.0, 0.0)):
    """States with populations ((1 - eps)/2, (1 + eps)/2).

    ``phases`` is (phi_alpha1, phi_alpha2, phi_beta1, phi_beta2).
    """
    _check_eps(epsilon)
    pa1, pa2, pb1, pb2 = phases
    m1, m2 = np.sqrt(0.5 * (1.0 - epsilon)), np.sqrt(0.5 * (1.0 + epsilon))
    a = np.array([m1 * np.exp(1j * pa1), m2 * np.exp(1j * pa2)])
    b = np.array([m1 * np.exp(1j * pb1), m2 * np.exp(1j * pb2)])
    return a, b


def epsilon_residual(epsilon: float) -> float:
    """|((1 + eps)/(1 - eps))^2 - 1|, zero only at eps = 0."""
    _check_eps(epsilon)
    return abs(((1.0 + epsilon) / (1.0 - epsilon)) ** 2 - 1.0)


def _overlap_modulus(epsilon: float, theta) -> float:
    return abs(0.5 * (1.0 - epsilon) * np.exp(1j * theta[0]) + 0.5 * (1.0 + epsilon) * np.exp(1j * theta[1]))


def min_overlap_over_phases(epsilon: float, grid: int = PHASE_GRID, refine: int = REFINE_ITERATIONS):
    """Minimize |<A|B>| over relative phases for fixed ``epsilon``.

    Returns (minimum, (theta1, theta2)) where theta_i = phi_beta_i - phi_alpha_i.
    """
    _check_eps(epsilon)
    mins, ib, jb = kernels.phase_scan(np.array([epsilon]), grid)
    return _refine(epsilon, float(mins[0]), int(ib[0]), int(jb[0]), grid, refine)


def _refine(epsilon, coarse, i, j, grid, refine):
    theta = np.array([2.0 * np.pi * i / grid, 2.0 * np.pi * j / grid])
    if refine <= 0 or coarse == 0.0:
        return coarse, tuple(theta)
    res = minimize(
        lambda th: _overlap_modulus(epsilon, th),
        theta,
        method="Nelder-Mead",
        options={"maxiter": refine, "xatol": 1e-12, "fatol": 1e-14},
    )
    if res.fun < coarse:
        return float(res.fun), tuple(res.x)
    return coarse, tuple(theta)


@dataclass(frozen=True)
class FeasibilityReport:
    epsilons: np.ndarray
    min_overlaps: np.ndarray
    feasible_epsilons: np.ndarray
    unique_at_zero: bool
    zero_solution: tuple | None
    population_deviation: float

    @property
    def passed(self) -> bool:
        return self.unique_at_zero and self.population_deviation < FEASIBLE_TOL


def epsilon_grid(grid_size: int, eps_max: float = 0.9) -> np.ndarray:
    """Symmetric grid on [-eps_max, eps_max] whose middle point is exactly 0 for odd sizes."""
    k = np.arange(grid_size)
    return eps_max * (2.0 * k / (grid_size - 1) - 1.0)


def verify_unique_feasibility(
    grid_size: int = 1801,
    eps_max: float = 0.9,
    phase_grid: int = PHASE_GRID,
    refine: int = REFINE_ITERATIONS,
) -> FeasibilityReport:
    """Scan epsilon and report where orthogonality can be reached.

    Normalization and equal mean energy hold by construction of
    :func:`build_pair`; for every epsilon the overlap is minimized over
    phases and called feasible below 1e-8. The feasible solution at
    eps = 0 is checked for equal populations 1/2.
    """
    if grid_size < 101:
        raise ValueError("grid_size must be at least 101")
    eps = epsilon_grid(grid_size, eps_max)
    mins, ib, jb = kernels.phase_scan(eps, phase_grid)
    refined = np.empty_like(mins)
    thetas = []
    for r, e in enumerate(eps):
        refined[r], th = _refine(float(e), float(mins[r]), int(ib[r]), int(jb[r]), phase_grid, refine)
        thetas.append(th)
    feasible = refined < ORTHOGONALITY_THRESHOLD
    feasible_eps = eps[feasible]
    unique = bool(feasible_eps.size == 1 and feasible_eps[0] == 0.0)

    zero_solution = None
    deviation = np.inf
    if np.any(eps == 0.0):
        r = int(np.flatnonzero(eps == 0.0)[0])
        th1, th2 = thetas[r]
        a, b = build_pair(0.0, (0.0, 0.0, th1, th2))
        report = check_system(AmplitudeSet.from_states(a, b))
        zero_solution = (th1, th2, report)
        pops = np.abs(np.concatenate([a, b])) ** 2
        deviation = float(np.max(np.abs(pops - 0.5)))
    return FeasibilityReport(eps, refined, feasible_eps, unique, zero_solution, deviation)
