"""Compiled kernels: phi1 evaluation, eigenbasis evolution, weighted trapezoid."""

import numpy as np

from libc.math cimport cos, exp, expm1, sin

cdef double PHI1_SWITCH = 1e-4
# phase factors are advanced by one-step multiplication and recomputed
# exactly every RESEED steps, bounding rounding drift to ~RESEED ulps
cdef Py_ssize_t RESEED = 32


cdef inline double complex _phi1(double complex z, double t) noexcept nogil:
    cdef double complex w = z * t
    cdef double x = w.real
    cdef double y = w.imag
    cdef double em, sh, ch, sh2
    if x * x + y * y < PHI1_SWITCH * PHI1_SWITCH:
        return t * (1.0 + w * (1.0 / 2 + w * (1.0 / 6 + w * (1.0 / 24 + w / 120.0))))
    # half-angle form: cos y = 1 - 2 sin^2(y/2), sin y = 2 sin(y/2) cos(y/2)
    em = expm1(x)
    sh = sin(0.5 * y)
    ch = cos(0.5 * y)
    sh2 = 2.0 * sh * sh
    return ((em * (1.0 - sh2) - sh2) + 1j * ((1.0 + em) * 2.0 * sh * ch)) / z


cdef inline double complex _dot(const double complex* a, const double complex* b, Py_ssize_t n) noexcept nogil:
    # sum a[j] * b[j]; four accumulators to break the add dependency chain
    cdef double complex r0 = 0, r1 = 0, r2 = 0, r3 = 0
    cdef Py_ssize_t j = 0
    while j + 4 <= n:
        r0 = r0 + a[j] * b[j]
        r1 = r1 + a[j + 1] * b[j + 1]
        r2 = r2 + a[j + 2] * b[j + 2]
        r3 = r3 + a[j + 3] * b[j + 3]
        j += 4
    while j < n:
        r0 = r0 + a[j] * b[j]
        j += 1
    return (r0 + r1) + (r2 + r3)


cdef inline void _phases(double complex* p, const double complex* step, const double* lam,
                         Py_ssize_t n, double t, Py_ssize_t k, double hbar) noexcept nogil:
    """exp(-i lam t / hbar) into p, exactly or by one step of the recurrence."""
    cdef Py_ssize_t i
    cdef double phase
    if k % RESEED == 0:
        for i in range(n):
            phase = -lam[i] * t / hbar
            p[i] = cos(phase) + 1j * sin(phase)
    else:
        for i in range(n):
            p[i] = p[i] * step[i]


def phi1_array(const double complex[::1] z, double t):
    cdef Py_ssize_t k, n = z.shape[0]
    out = np.empty(n, dtype=np.complex128)
    cdef double complex[::1] o = out
    with nogil:
        for k in range(n):
            o[k] = _phi1(z[k], t)
    return out


def integral_matrix(const double complex[:, ::1] s, const double complex[:, ::1] z, double t):
    cdef Py_ssize_t i, j, n = s.shape[0]
    out = np.empty((n, n), dtype=np.complex128)
    cdef double complex[:, ::1] o = out
    with nogil:
        for i in range(n):
            for j in range(n):
                o[i, j] = s[i, j] * _phi1(z[i, j], t)
    return out


def integral_expectation(const double complex[:, ::1] weights, const double complex[:, ::1] z, double t):
    cdef Py_ssize_t i, j, n = weights.shape[0]
    cdef double complex acc = 0
    with nogil:
        for i in range(n):
            for j in range(n):
                acc = acc + weights[i, j] * _phi1(z[i, j], t)
    return complex(acc)


def evolve_pure(const double complex[::1] c, const double complex[:, ::1] s,
                const double[::1] lam, const double[::1] times, double hbar):
    """<psi(t)|S|psi(t)> on a uniform grid; c holds eigenbasis components at t = 0."""
    cdef Py_ssize_t i, j, k, n = c.shape[0], m = times.shape[0]
    cdef double phase, dt = times[1] - times[0] if m > 1 else 0.0
    cdef double complex acc
    out = np.empty(m, dtype=np.complex128)
    p_buf = np.empty(n, dtype=np.complex128)
    step_buf = np.empty(n, dtype=np.complex128)
    u_buf = np.empty(n, dtype=np.complex128)
    cdef double complex[::1] o = out
    cdef double complex[::1] p = p_buf
    cdef double complex[::1] step = step_buf
    cdef double complex[::1] u = u_buf
    with nogil:
        for j in range(n):
            phase = -lam[j] * dt / hbar
            step[j] = cos(phase) + 1j * sin(phase)
        for k in range(m):
            _phases(&p[0], &step[0], &lam[0], n, times[k], k, hbar)
            for j in range(n):
                u[j] = c[j] * p[j]
            acc = 0
            for i in range(n):
                acc = acc + u[i].conjugate() * _dot(&s[i, 0], &u[0], n)
            o[k] = acc
    return out


def evolve_density(const double complex[:, ::1] rho, const double complex[:, ::1] s,
                   const double[::1] lam, const double[::1] times, double hbar):
    """trace(rho(t) S) on a uniform grid, rho_ij(t) = rho_ij p_i conj(p_j), p_i = exp(-i l_i t / hbar)."""
    cdef Py_ssize_t i, j, k, n = rho.shape[0], m = times.shape[0]
    cdef double phase, dt = times[1] - times[0] if m > 1 else 0.0
    cdef double complex acc
    out = np.empty(m, dtype=np.complex128)
    p_buf = np.empty(n, dtype=np.complex128)
    q_buf = np.empty(n, dtype=np.complex128)
    step_buf = np.empty(n, dtype=np.complex128)
    b_buf = np.empty((n, n), dtype=np.complex128)
    cdef double complex[::1] o = out
    cdef double complex[::1] p = p_buf
    cdef double complex[::1] q = q_buf
    cdef double complex[::1] step = step_buf
    cdef double complex[:, ::1] b = b_buf
    with nogil:
        for i in range(n):
            phase = -lam[i] * dt / hbar
            step[i] = cos(phase) + 1j * sin(phase)
            for j in range(n):
                b[i, j] = rho[i, j] * s[j, i]
        for k in range(m):
            _phases(&p[0], &step[0], &lam[0], n, times[k], k, hbar)
            for i in range(n):
                q[i] = p[i].conjugate()
            acc = 0
            for i in range(n):
                acc = acc + p[i] * _dot(&b[i, 0], &q[0], n)
            o[k] = acc
    return out


def trapezoid_weighted(const double complex[::1] values, const double[::1] times,
                       double rate, double frequency):
    cdef Py_ssize_t k, m = values.shape[0]
    cdef double complex prev, cur, acc = 0
    cdef double decay, ang
    if m < 2:
        return 0j
    with nogil:
        decay = exp(-rate * times[0])
        ang = -frequency * times[0]
        prev = values[0] * decay * (cos(ang) + 1j * sin(ang))
        for k in range(1, m):
            decay = exp(-rate * times[k])
            ang = -frequency * times[k]
            cur = values[k] * decay * (cos(ang) + 1j * sin(ang))
            acc = acc + 0.5 * (prev + cur) * (times[k] - times[k - 1])
            prev = cur
    return complex(acc)
