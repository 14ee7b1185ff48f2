"""Pure-Python/numpy kernels, used when the compiled module is unavailable."""

from __future__ import annotations

import math

import numpy as np


def jacobi_eigh(a_in, tol: float, max_sweeps: int):
    """Cyclic complex Jacobi eigensolver; see ``_kernels.jacobi_eigh``."""
    a = np.array(a_in, dtype=np.complex128, copy=True)
    n = a.shape[0]
    v = np.eye(n, dtype=np.complex128)
    thresh = tol * max(1.0, float(np.linalg.norm(a)))
    offmask = ~np.eye(n, dtype=bool)
    sweep = 0
    while sweep < max_sweeps:
        if np.sqrt(np.sum(np.abs(a[offmask]) ** 2)) < thresh:
            break
        sweep += 1
        for p in range(n - 1):
            for q in range(p + 1, n):
                mag = abs(a[p, q])
                if mag == 0.0:
                    continue
                ph = a[p, q] / mag
                tau = (a[q, q].real - a[p, p].real) / (2.0 * mag)
                t = math.copysign(1.0, tau) / (abs(tau) + math.sqrt(1.0 + tau * tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                g = np.array([[c, s], [-s * ph.conjugate(), c * ph.conjugate()]])
                idx = [p, q]
                a[:, idx] = a[:, idx] @ g
                a[idx, :] = g.conj().T @ a[idx, :]
                a[p, q] = a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real
                v[:, idx] = v[:, idx] @ g
    return np.real(np.diag(a)).copy(), v, sweep


def midpoint_qubit(fields, psi0, dt: float):
    """Piecewise-constant qubit propagation; see ``_kernels.midpoint_qubit``."""
    f = np.asarray(fields, dtype=np.float64)
    h0, h = f[:, 0], f[:, 1:]
    hn = np.linalg.norm(h, axis=1)
    safe = np.where(hn > 0.0, hn, 1.0)
    nvec = h / safe[:, None]
    c = np.cos(hn * dt)
    s = np.sin(hn * dt)
    glob = np.exp(-1j * h0 * dt)
    u00 = glob * (c - 1j * s * nvec[:, 2])
    u11 = glob * (c + 1j * s * nvec[:, 2])
    u01 = glob * (-1j * s * (nvec[:, 0] - 1j * nvec[:, 1]))
    u10 = glob * (-1j * s * (nvec[:, 0] + 1j * nvec[:, 1]))
    out = np.empty((len(f) + 1, 2), dtype=np.complex128)
    a0, a1 = complex(psi0[0]), complex(psi0[1])
    out[0] = a0, a1
    for k, (x00, x01, x10, x11) in enumerate(zip(u00.tolist(), u01.tolist(), u10.tolist(), u11.tolist())):
        a0, a1 = x00 * a0 + x01 * a1, x10 * a0 + x11 * a1
        out[k + 1, 0] = a0
        out[k + 1, 1] = a1
    return out


def phase_scan(eps, m: int):
    """Phase-grid overlap minimum; see ``_kernels.phase_scan``."""
    eps = np.asarray(eps, dtype=np.float64)
    phases = np.exp(2j * np.pi * np.arange(m) / m)
    mins = np.empty(len(eps))
    ib = np.empty(len(eps), dtype=np.int64)
    jb = np.empty(len(eps), dtype=np.int64)
    for r, e in enumerate(eps):
        grid = np.abs(0.5 * (1.0 - e) * phases[:, None] + 0.5 * (1.0 + e) * phases[None, :]) ** 2
        flat = int(np.argmin(grid))
        ib[r], jb[r] = divmod(flat, m)
        mins[r] = math.sqrt(grid.flat[flat])
    return mins, ib, jb


def iterate_peak(u, psi0, max_steps: int):
    """First local maximum of |psi[0]|^2; see ``_kernels.iterate_peak``."""
    u00, u01, u10, u11 = (complex(z) for z in np.asarray(u).ravel())
    a0, a1 = complex(psi0[0]), complex(psi0[1])
    p_prev = abs(a0) ** 2
    a0, a1 = u00 * a0 + u01 * a1, u10 * a0 + u11 * a1
    p_cur = abs(a0) ** 2
    for k in range(1, max_steps + 1):
        a0, a1 = u00 * a0 + u01 * a1, u10 * a0 + u11 * a1
        p_next = abs(a0) ** 2
        if p_cur > p_prev and p_next < p_cur:
            return k, p_cur
        p_prev, p_cur = p_cur, p_next
    return -1, p_cur
