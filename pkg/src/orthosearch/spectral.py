"""Instantaneous spectra along schedules, minimum gaps, eigenstate
overlaps of the parallel-transport model, and symmetry diagnostics.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.optimize import linear_sum_assignment

from .bloch import state_to_bloch
from .errors import DimensionMismatch, NotOrthogonal, NumericalAssertionError
from .hamiltonians import StationaryHamiltonian, build_uzdin, uzdin_state, uzdin_state_derivative
from .linalg import commutator, fidelity, hermitian_eigen, ket, projector

CROSSING_TOL = 1e-10
GOLDEN_ITERATIONS = 60
SYMMETRY_TOL = 1e-12
ORTHOGONALITY_TOL = 1e-10
_INVGOLD = (np.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class SpectralTrack:
    """Eigensystems of H on an ascending grid.

    ``levels[k]`` is ascending and ``vectors[k][:, j]`` belongs to
    ``levels[k, j]``. ``branches[k, b]`` is the sorted index that
    continuity branch ``b`` occupies at point ``k``; a swap between
    neighbouring points marks a level crossing.
    """

    grid: np.ndarray
    levels: np.ndarray
    vectors: np.ndarray
    branches: np.ndarray
    sampler: Callable[[float], np.ndarray] | None = None

    def gaps(self, lower: int = 0) -> np.ndarray:
        return self.levels[:, lower + 1] - self.levels[:, lower]


@dataclass(frozen=True)
class GapReport:
    g_min: float
    arg_min: float
    crossing: bool


def track(h, grid) -> SpectralTrack:
    """Eigendecompose ``h(t)`` at every grid point and match eigenvectors by overlap."""
    grid = np.asarray(grid, dtype=float)
    if grid.ndim != 1 or grid.size < 1:
        raise ValueError("grid must be a non-empty 1-D array")
    if np.any(np.diff(grid) <= 0):
        raise ValueError("grid must be strictly ascending")
    domain = getattr(h, "domain", None)
    if domain is not None and (grid[0] < domain[0] - 1e-12 or grid[-1] > domain[1] + 1e-12):
        raise ValueError(f"grid leaves the Hamiltonian domain {domain}")

    eigs = [hermitian_eigen(h(t)) for t in grid]
    levels = np.array([e.values for e in eigs])
    vectors = np.array([e.vectors for e in eigs])
    n = levels.shape[1]
    branches = np.empty((grid.size, n), dtype=int)
    branches[0] = np.arange(n)
    for k in range(1, grid.size):
        prev = vectors[k - 1][:, branches[k - 1]]
        weight = np.abs(prev.conj().T @ vectors[k]) ** 2
        _, cols = linear_sum_assignment(-weight)
        branches[k] = cols
    return SpectralTrack(grid, levels, vectors, branches, h)


def _gap_at(sampler, t: float, lower: int) -> float:
    vals = hermitian_eigen(sampler(t)).values
    return float(vals[lower + 1] - vals[lower])


def min_gap(tr: SpectralTrack, lower: int = 0, crossing_tol: float = CROSSING_TOL) -> GapReport:
    """Smallest gap between levels ``lower`` and ``lower + 1``.

    The grid minimum is refined by golden-section search over its two
    neighbouring grid cells when the track still holds its sampler.
    """
    gaps = tr.gaps(lower)
    i = int(np.argmin(gaps))
    best_t, best_g = float(tr.grid[i]), float(gaps[i])
    if tr.sampler is not None and tr.grid.size > 1:
        lo = float(tr.grid[max(i - 1, 0)])
        hi = float(tr.grid[min(i + 1, tr.grid.size - 1)])
        c = hi - _INVGOLD * (hi - lo)
        d = lo + _INVGOLD * (hi - lo)
        fc, fd = _gap_at(tr.sampler, c, lower), _gap_at(tr.sampler, d, lower)
        for _ in range(GOLDEN_ITERATIONS):
            if fc < fd:
                hi, d, fd = d, c, fc
                c = hi - _INVGOLD * (hi - lo)
                fc = _gap_at(tr.sampler, c, lower)
            else:
                lo, c, fc = c, d, fd
                d = lo + _INVGOLD * (hi - lo)
                fd = _gap_at(tr.sampler, d, lower)
            for t, g in ((c, fc), (d, fd)):
                if g < best_g:
                    best_t, best_g = t, g
    best_g = max(best_g, 0.0)
    return GapReport(best_g, best_t, best_g < crossing_tol)


@dataclass(frozen=True)
class UzdinEigensystem:
    E_plus: float
    E_minus: float
    vec_plus: np.ndarray
    vec_minus: np.ndarray


def uzdin_eigensystem(omega0: float, nu0: float, t: float, check: bool = True) -> UzdinEigensystem:
    """Eigenpairs of the parallel-transport Hamiltonian from |m> and its derivative.

    E = +-sqrt(<mdot|mdot>), vectors (|m> +- i|mdot>/sqrt(<mdot|mdot>)) / sqrt(2).
    With ``check`` they are compared with a direct eigensolve of H(t).
    """
    if not omega0 > 0.0:
        raise ValueError("omega0 must be positive")
    m = uzdin_state(omega0, nu0, t)
    md = uzdin_state_derivative(omega0, nu0, t)
    k = float(np.sqrt(np.vdot(md, md).real))
    vp = (m + 1j * md / k) / np.sqrt(2.0)
    vm = (m - 1j * md / k) / np.sqrt(2.0)
    if check:
        eig = hermitian_eigen(build_uzdin(omega0, nu0)(t))
        ok = (
            abs(eig.values[1] - k) < 1e-10
            and abs(eig.values[0] + k) < 1e-10
            and fidelity(eig.vector(1), vp) > 1.0 - 1e-10
            and fidelity(eig.vector(0), vm) > 1.0 - 1e-10
        )
        if not ok:
            raise NumericalAssertionError(f"analytic eigensystem disagrees with eigensolve at t={t}")
    return UzdinEigensystem(k, -k, vp, vm)


def overlap_probabilities(omega0: float, nu0: float, t, which: str = "A"):
    """Closed-form (|<E+(t)|X>|^2, |<E-(t)|X>|^2) with X = |0> for "A" and |1> for "B"."""
    t = np.asarray(t, dtype=float)
    alpha = omega0 * t
    sa, ca = np.sin(alpha), np.cos(alpha)
    k = np.sqrt(omega0**2 + 0.25 * nu0**2 * np.sin(2.0 * alpha) ** 2)
    phidot = nu0 * sa**2
    if which == "A":
        plus = 0.5 * np.abs(ca + phidot * ca / k + 1j * omega0 * sa / k) ** 2
        minus = 0.5 * np.abs(ca - phidot * ca / k - 1j * omega0 * sa / k) ** 2
    elif which == "B":
        shift = (phidot * sa - nu0 * sa) / k
        plus = 0.5 * np.abs(sa + shift - 1j * omega0 * ca / k) ** 2
        minus = 0.5 * np.abs(sa - shift + 1j * omega0 * ca / k) ** 2
    else:
        raise ValueError(f"which must be 'A' or 'B', got {which!r}")
    return plus, minus


def direct_overlap_probabilities(omega0: float, nu0: float, t, which: str = "A"):
    """Same quantities as :func:`overlap_probabilities` from a numerical eigensolve."""
    target = ket(0) if which == "A" else ket(1)
    if which not in ("A", "B"):
        raise ValueError(f"which must be 'A' or 'B', got {which!r}")
    h = build_uzdin(omega0, nu0)
    ts = np.atleast_1d(np.asarray(t, dtype=float))
    plus, minus = np.empty(ts.size), np.empty(ts.size)
    for i, ti in enumerate(ts):
        eig = hermitian_eigen(h(ti))
        plus[i] = abs(np.vdot(eig.vector(1), target)) ** 2
        minus[i] = abs(np.vdot(eig.vector(0), target)) ** 2
    if np.ndim(t) == 0:
        return float(plus[0]), float(minus[0])
    return plus, minus


def commutator_norm(h1, h2) -> float:
    """Frobenius norm of [H1, H2]."""
    a = h1.matrix if isinstance(h1, StationaryHamiltonian) else np.asarray(h1, dtype=complex)
    b = h2.matrix if isinstance(h2, StationaryHamiltonian) else np.asarray(h2, dtype=complex)
    if a.shape != b.shape:
        raise DimensionMismatch(f"dimension mismatch: {a.shape} vs {b.shape}")
    return float(np.linalg.norm(commutator(a, b)))


@dataclass(frozen=True)
class InvolutionReport:
    is_involution: bool
    swaps: bool
    commutes: bool
    phase: float
    operator: np.ndarray
    commutator_norm: float


def _best_swap_phase(h, a, b, rest) -> float:
    # ||[H, S(chi)]||^2 is a trigonometric polynomial of degree two in chi
    x = commutator(h, np.outer(b, a.conj()))
    y = commutator(h, np.outer(a, b.conj()))
    z = commutator(h, rest)
    c0 = np.vdot(x, x).real + np.vdot(y, y).real + np.vdot(z, z).real
    c1 = np.vdot(z, x) + np.vdot(y, z)
    c2 = np.vdot(y, x)
    if max(abs(c1), abs(c2)) <= 1e-14 * max(1.0, c0):
        return 0.0

    def f(chi):
        return c0 + 2.0 * (c1 * np.exp(1j * chi)).real + 2.0 * (c2 * np.exp(2j * chi)).real

    def df(chi):
        return -2.0 * (c1 * np.exp(1j * chi)).imag - 4.0 * (c2 * np.exp(2j * chi)).imag

    def d2f(chi):
        return -2.0 * (c1 * np.exp(1j * chi)).real - 8.0 * (c2 * np.exp(2j * chi)).real

    # critical points are unit-circle roots of z^2 f'(z); polish with Newton
    poly = [2j * c2, 1j * c1, 0.0, -1j * np.conj(c1), -2j * np.conj(c2)]
    candidates = [0.0]
    for root in np.roots(poly):
        chi = float(np.angle(root))
        for _ in range(4):
            curv = d2f(chi)
            if curv == 0.0:
                break
            chi -= df(chi) / curv
        candidates.append(chi)
    return min(candidates, key=lambda chi: (f(chi), abs(chi)))


def involution_check(h, a, b, tol: float = SYMMETRY_TOL) -> InvolutionReport:
    """Test the swap symmetry between orthogonal states |A> and |B>.

    S = e^{i chi}|B><A| + e^{-i chi}|A><B| + P_perp, with the ray phase
    ``chi`` chosen to minimize ||[H, S]||. Every such S squares to the
    identity and maps the ray of A onto the ray of B.

    Raises
    ------
    NotOrthogonal
        If |<A|B>| exceeds 1e-10.
    """
    m = h.matrix if isinstance(h, StationaryHamiltonian) else np.asarray(h, dtype=complex)
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if not (m.shape[0] == a.size == b.size):
        raise DimensionMismatch("H, A and B must share a dimension")
    if abs(np.vdot(a, b)) > ORTHOGONALITY_TOL:
        raise NotOrthogonal(f"|<A|B>| = {abs(np.vdot(a, b)):.3e}")
    rest = np.eye(a.size) - projector(a) - projector(b)
    chi = _best_swap_phase(m, a, b, rest)
    s = np.exp(1j * chi) * np.outer(b, a.conj()) + np.exp(-1j * chi) * np.outer(a, b.conj()) + rest
    cn = float(np.linalg.norm(commutator(m, s)))
    return InvolutionReport(
        is_involution=bool(np.linalg.norm(s @ s - np.eye(a.size)) < tol),
        swaps=bool(fidelity(s @ a, b) > 1.0 - tol),
        commutes=cn < tol,
        phase=chi,
        operator=s,
        commutator_norm=cn,
    )


@dataclass(frozen=True)
class BlochSymmetryReport:
    """Bloch-vector dot products along a qubit trajectory.

    ``a_dot_e_*`` use the initial state's Bloch vector ``a``; the
    ``state_dot_e_*`` arrays use the evolving state's vector instead.
    """

    times: np.ndarray
    a_dot_e_plus: np.ndarray
    a_dot_e_minus: np.ndarray
    state_dot_e_plus: np.ndarray
    state_dot_e_minus: np.ndarray
    a_dot_b: float
    e_plus_dot_e_minus: np.ndarray


def bloch_symmetry_report(traj, h) -> BlochSymmetryReport:
    """Dot products of state Bloch vectors with the instantaneous eigenvector Bloch vectors."""
    if traj.states.shape[1] != 2:
        raise DimensionMismatch("Bloch symmetry report needs a qubit trajectory")
    if isinstance(h, StationaryHamiltonian):
        eig = hermitian_eigen(h.matrix)
        e_plus = np.tile(state_to_bloch(eig.vector(1)), (len(traj.times), 1))
        e_minus = np.tile(state_to_bloch(eig.vector(0)), (len(traj.times), 1))
    else:
        eigs = [hermitian_eigen(h(t)) for t in traj.times]
        e_plus = state_to_bloch(np.array([e.vector(1) for e in eigs]))
        e_minus = state_to_bloch(np.array([e.vector(0) for e in eigs]))
    a = state_to_bloch(traj.states[0])
    b = state_to_bloch(traj.states[-1])
    evolving = state_to_bloch(traj.states)
    return BlochSymmetryReport(
        times=np.asarray(traj.times),
        a_dot_e_plus=e_plus @ a,
        a_dot_e_minus=e_minus @ a,
        state_dot_e_plus=np.einsum("ki,ki->k", evolving, e_plus),
        state_dot_e_minus=np.einsum("ki,ki->k", evolving, e_minus),
        a_dot_b=float(a @ b),
        e_plus_dot_e_minus=np.einsum("ki,ki->k", e_plus, e_minus),
    )
