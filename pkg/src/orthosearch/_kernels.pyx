# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled hot loops. Same signatures and semantics as ``_fallback``."""

import numpy as np

from libc.math cimport atan2, cos, fabs, sin, sqrt


cdef inline double cabs2(double complex z) nogil:
    return z.real * z.real + z.imag * z.imag


def jacobi_eigh(a_in, double tol, int max_sweeps):
    """Cyclic complex Jacobi eigensolver.

    Returns unsorted ``(values, vectors, sweeps)`` with eigenvectors in
    columns. ``tol`` is relative to the Frobenius norm of the input.
    """
    cdef double complex[:, ::1] a = np.array(a_in, dtype=np.complex128, order="C", copy=True)
    cdef Py_ssize_t n = a.shape[0]
    vec = np.eye(n, dtype=np.complex128)
    cdef double complex[:, ::1] v = vec
    cdef Py_ssize_t i, j, k, p, q
    cdef int sweep = 0
    cdef double frob = 0.0, off, mag, tau, t, c, s, app, aqq
    cdef double complex ph, gpp, gpq, gqp, gqq, x, y

    for i in range(n):
        for j in range(n):
            frob += cabs2(a[i, j])
    cdef double thresh = tol * max(1.0, sqrt(frob))

    while sweep < max_sweeps:
        off = 0.0
        for i in range(n):
            for j in range(n):
                if i != j:
                    off += cabs2(a[i, j])
        if sqrt(off) < thresh:
            break
        sweep += 1
        for p in range(n - 1):
            for q in range(p + 1, n):
                mag = sqrt(cabs2(a[p, q]))
                if mag == 0.0:
                    continue
                ph = a[p, q] / mag
                app = a[p, p].real
                aqq = a[q, q].real
                tau = (aqq - app) / (2.0 * mag)
                if tau >= 0.0:
                    t = 1.0 / (tau + sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + sqrt(1.0 + tau * tau))
                c = 1.0 / sqrt(1.0 + t * t)
                s = t * c
                gpp = c
                gpq = s
                gqp = -s * ph.conjugate()
                gqq = c * ph.conjugate()
                for k in range(n):
                    x = a[k, p]
                    y = a[k, q]
                    a[k, p] = x * gpp + y * gqp
                    a[k, q] = x * gpq + y * gqq
                for k in range(n):
                    x = a[p, k]
                    y = a[q, k]
                    a[p, k] = gpp.conjugate() * x + gqp.conjugate() * y
                    a[q, k] = gpq.conjugate() * x + gqq.conjugate() * y
                a[p, q] = 0.0
                a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real
                for k in range(n):
                    x = v[k, p]
                    y = v[k, q]
                    v[k, p] = x * gpp + y * gqp
                    v[k, q] = x * gpq + y * gqq

    values = np.empty(n, dtype=np.float64)
    for i in range(n):
        values[i] = a[i, i].real
    return values, vec, sweep


def midpoint_qubit(fields, psi0, double dt):
    """Propagate a qubit through piecewise-constant fields.

    ``fields`` has shape (K, 4) holding (h0, hx, hy, hz) already divided
    by hbar. Returns the (K + 1, 2) array of states.
    """
    cdef double[:, ::1] f = np.ascontiguousarray(fields, dtype=np.float64)
    cdef Py_ssize_t nsteps = f.shape[0], k
    out = np.empty((nsteps + 1, 2), dtype=np.complex128)
    cdef double complex[:, ::1] o = out
    cdef double complex a0 = psi0[0], a1 = psi0[1], b0, b1, glob, u00, u01, u10, u11
    cdef double hn, c, s, nx, ny, nz, ang
    o[0, 0] = a0
    o[0, 1] = a1
    for k in range(nsteps):
        hn = sqrt(f[k, 1] * f[k, 1] + f[k, 2] * f[k, 2] + f[k, 3] * f[k, 3])
        ang = -f[k, 0] * dt
        glob = cos(ang) + 1j * sin(ang)
        if hn > 0.0:
            c = cos(hn * dt)
            s = sin(hn * dt)
            nx = f[k, 1] / hn
            ny = f[k, 2] / hn
            nz = f[k, 3] / hn
            u00 = c - 1j * s * nz
            u11 = c + 1j * s * nz
            u01 = -1j * s * (nx - 1j * ny)
            u10 = -1j * s * (nx + 1j * ny)
            b0 = u00 * a0 + u01 * a1
            b1 = u10 * a0 + u11 * a1
        else:
            b0 = a0
            b1 = a1
        a0 = glob * b0
        a1 = glob * b1
        o[k + 1, 0] = a0
        o[k + 1, 1] = a1
    return out


def phase_scan(eps, int m):
    """Minimum of |(1-e)/2 e^{i t1} + (1+e)/2 e^{i t2}| over an m x m phase grid.

    Returns ``(minima, i_best, j_best)`` per epsilon.
    """
    cdef double[::1] e = np.ascontiguousarray(eps, dtype=np.float64)
    cdef Py_ssize_t n = e.shape[0], r, i, j
    ct_arr = np.cos(2.0 * np.pi * np.arange(m) / m)
    st_arr = np.sin(2.0 * np.pi * np.arange(m) / m)
    cdef double[::1] ct = ct_arr, st = st_arr
    mins = np.empty(n, dtype=np.float64)
    ib = np.empty(n, dtype=np.int64)
    jb = np.empty(n, dtype=np.int64)
    cdef double[::1] mv = mins
    cdef long long[::1] iv = ib, jv = jb
    cdef double a, b, re, im, val, best
    cdef Py_ssize_t bi, bj
    with nogil:
        for r in range(n):
            a = 0.5 * (1.0 - e[r])
            b = 0.5 * (1.0 + e[r])
            best = 1e300
            bi = 0
            bj = 0
            for i in range(m):
                for j in range(m):
                    re = a * ct[i] + b * ct[j]
                    im = a * st[i] + b * st[j]
                    val = re * re + im * im
                    if val < best:
                        best = val
                        bi = i
                        bj = j
            mv[r] = sqrt(best)
            iv[r] = bi
            jv[r] = bj
    return mins, ib, jb


def iterate_peak(u, psi0, long long max_steps):
    """Apply a 2x2 unitary until |psi[0]|^2 reaches its first local maximum.

    Returns ``(k, p_k)``; ``k`` is -1 when no maximum is found.
    """
    cdef double complex u00 = u[0, 0], u01 = u[0, 1], u10 = u[1, 0], u11 = u[1, 1]
    cdef double complex a0 = psi0[0], a1 = psi0[1], b0
    cdef double p_prev = cabs2(a0), p_cur, p_next
    cdef long long k
    b0 = u00 * a0 + u01 * a1
    a1 = u10 * a0 + u11 * a1
    a0 = b0
    p_cur = cabs2(a0)
    for k in range(1, max_steps + 1):
        b0 = u00 * a0 + u01 * a1
        a1 = u10 * a0 + u11 * a1
        a0 = b0
        p_next = cabs2(a0)
        if p_cur > p_prev and p_next < p_cur:
            return k, p_cur
        p_prev = p_cur
        p_cur = p_next
    return -1, p_cur
