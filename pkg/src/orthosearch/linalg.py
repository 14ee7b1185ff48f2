"""Hermitian eigendecomposition, unitary exponentials and state utilities.

States are 1-D complex numpy arrays and operators are square complex
arrays. Validation helpers in this module enforce the shape, finiteness
and normalization preconditions used everywhere else.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._backend import kernels
from .errors import DimensionMismatch, NotHermitian, NotNormalized

HERMITIAN_TOL = 1e-12
DEGENERACY_TOL = 1e-12
NORM_TOL = 1e-9
JACOBI_TOL = 1e-14
JACOBI_MAX_SWEEPS = 100

IDENTITY = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULI = (SIGMA_X, SIGMA_Y, SIGMA_Z)


@dataclass(frozen=True)
class EigenDecomposition:
    """Ascending eigenvalues with orthonormal eigenvectors in columns."""

    values: np.ndarray
    vectors: np.ndarray

    def vector(self, i: int) -> np.ndarray:
        return self.vectors[:, i]

    def reconstruct(self) -> np.ndarray:
        return (self.vectors * self.values) @ self.vectors.conj().T


def as_state(psi, *, normalize: bool = False, tol: float = NORM_TOL) -> np.ndarray:
    """Validate a state vector and return it as a complex array."""
    v = np.asarray(psi, dtype=complex)
    if v.ndim != 1 or v.size < 2:
        raise DimensionMismatch(f"state must be 1-D with dimension >= 2, got shape {v.shape}")
    if not np.all(np.isfinite(v)):
        raise ValueError("state contains NaN or Inf")
    norm = np.linalg.norm(v)
    if normalize:
        if norm == 0.0:
            raise NotNormalized("cannot normalize the zero vector")
        return v / norm
    if abs(norm - 1.0) > tol:
        raise NotNormalized(f"state norm {norm!r} differs from 1")
    return v


def as_hermitian(m, *, tol: float = HERMITIAN_TOL) -> np.ndarray:
    """Validate a Hermitian matrix and return its exactly symmetrized copy."""
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix contains NaN or Inf")
    dev = np.max(np.abs(a - a.conj().T)) if a.size else 0.0
    if dev > tol:
        raise NotHermitian(f"max |M - M^dagger| = {dev:.3e} exceeds {tol:.1e}")
    return 0.5 * (a + a.conj().T)


def ket(i: int, n: int = 2) -> np.ndarray:
    v = np.zeros(n, dtype=complex)
    v[i] = 1.0
    return v


def uniform_state(n: int) -> np.ndarray:
    return np.full(n, 1.0 / np.sqrt(n), dtype=complex)


def projector(psi) -> np.ndarray:
    v = np.asarray(psi, dtype=complex)
    return np.outer(v, v.conj())


def fix_phase(v: np.ndarray, tol: float = 1e-12) -> np.ndarray:
    """Rotate ``v`` so its largest-magnitude entry is real and positive.

    Ties within ``tol`` go to the lowest index.
    """
    mags = np.abs(v)
    idx = int(np.argmax(mags >= mags.max() - tol))
    if mags[idx] == 0.0:
        return v
    out = v * (abs(v[idx]) / v[idx])
    out[idx] = abs(v[idx])
    return out


def _eigh_2x2(a: np.ndarray):
    p, d = a[0, 0].real, a[1, 1].real
    b = a[0, 1]
    mean, half = 0.5 * (p + d), 0.5 * (p - d)
    r = np.hypot(half, abs(b))
    if abs(b) == 0.0:
        vals = np.array([p, d])
        vecs = np.eye(2, dtype=complex)
        return vals, vecs
    # pick the better-conditioned of the two equivalent eigenvector forms
    if half >= 0.0:
        vplus = np.array([r + half, b.conjugate()])
        vminus = np.array([b, -(r + half)])
    else:
        vplus = np.array([b, r - half])
        vminus = np.array([half - r, b.conjugate()])
    vecs = np.column_stack([vminus / np.linalg.norm(vminus), vplus / np.linalg.norm(vplus)])
    return np.array([mean - r, mean + r]), vecs


def _orthonormalize_block(block: np.ndarray) -> np.ndarray:
    q = np.array(block, dtype=complex)
    for j in range(q.shape[1]):
        for i in range(j):
            q[:, j] -= np.vdot(q[:, i], q[:, j]) * q[:, i]
        q[:, j] /= np.linalg.norm(q[:, j])
    return q


def hermitian_eigen(
    m,
    *,
    hermitian_tol: float = HERMITIAN_TOL,
    degeneracy_tol: float = DEGENERACY_TOL,
) -> EigenDecomposition:
    """Eigendecomposition of a Hermitian matrix.

    Uses a closed form for 2x2 input and cyclic complex Jacobi sweeps
    otherwise. Eigenvalues are ascending; each eigenvector has its
    largest-magnitude entry made real and positive.

    Raises
    ------
    NotHermitian
        If ``M`` deviates from its adjoint by more than ``hermitian_tol``.
    """
    a = as_hermitian(m, tol=hermitian_tol)
    n = a.shape[0]
    if n == 1:
        return EigenDecomposition(np.array([a[0, 0].real]), np.ones((1, 1), dtype=complex))
    if n == 2:
        vals, vecs = _eigh_2x2(a)
    else:
        vals, vecs, _ = kernels.jacobi_eigh(a, JACOBI_TOL, JACOBI_MAX_SWEEPS)
    order = np.argsort(vals, kind="stable")
    vals = np.asarray(vals)[order]
    vecs = np.asarray(vecs)[:, order]

    start = 0
    for i in range(1, n + 1):
        if i == n or vals[i] - vals[i - 1] > degeneracy_tol:
            if i - start > 1:
                vecs[:, start:i] = _orthonormalize_block(vecs[:, start:i])
            start = i
    for j in range(n):
        vecs[:, j] = fix_phase(vecs[:, j])
    return EigenDecomposition(vals, vecs)


def unitary_exp(h, t: float, hbar: float = 1.0) -> np.ndarray:
    """Return exp(-i H t / hbar) through the eigendecomposition of ``H``."""
    eig = hermitian_eigen(h)
    phases = np.exp(-1j * eig.values * (t / hbar))
    return (eig.vectors * phases) @ eig.vectors.conj().T


def _check_pair(a: np.ndarray, b: np.ndarray) -> None:
    if a.shape != b.shape:
        raise DimensionMismatch(f"dimension mismatch: {a.shape} vs {b.shape}")


def overlap(a, b) -> complex:
    """Inner product <a|b>."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    _check_pair(a, b)
    return complex(np.vdot(a, b))


def fidelity(a, b) -> float:
    """|<a|b>|^2 for normalized states, clipped into [0, 1]."""
    return min(1.0, abs(overlap(a, b)) ** 2)


def expectation(h, psi) -> float:
    psi = np.asarray(psi, dtype=complex)
    return float(np.vdot(psi, np.asarray(h) @ psi).real)


def dispersion(h, psi) -> float:
    """Energy uncertainty ||(H - <H>) psi||, free of the <H^2> - <H>^2 cancellation."""
    psi = np.asarray(psi, dtype=complex)
    hpsi = np.asarray(h) @ psi
    mean = np.vdot(psi, hpsi).real
    return float(np.linalg.norm(hpsi - mean * psi))


def phase_aligned_distance(a, b) -> float:
    """min over global phase of ||a - e^{i phi} b|| for vectors or matrices."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    _check_pair(a, b)
    z = np.vdot(b.ravel(), a.ravel())
    ph = z / abs(z) if abs(z) > 0.0 else 1.0
    return float(np.linalg.norm(a - ph * b))


def commutator(a, b) -> np.ndarray:
    a = np.asarray(a)
    b = np.asarray(b)
    return a @ b - b @ a


def pauli_vector(h) -> np.ndarray:
    """Decompose a 2x2 Hermitian matrix as h0 I + h . sigma; returns (h0, hx, hy, hz)."""
    h = np.asarray(h)
    return np.array(
        [
            0.5 * (h[0, 0] + h[1, 1]).real,
            h[0, 1].real,
            -h[0, 1].imag,
            0.5 * (h[0, 0] - h[1, 1]).real,
        ]
    )


def from_pauli(h0: float, h) -> np.ndarray:
    return h0 * IDENTITY + h[0] * SIGMA_X + h[1] * SIGMA_Y + h[2] * SIGMA_Z
