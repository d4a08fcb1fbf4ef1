"""Pure-Python (numpy) kernels.

Same signatures and semantics as the compiled ``_ckernels`` module. Inputs
are assumed to be contiguous arrays of the right dtype; ``kernels.py``
takes care of that.
"""

import numpy as np

#: |z t| below which phi1 switches to its Taylor series.
PHI1_SWITCH = 1e-4


def _expm1_complex(w):
    # exp(x + iy) - 1 without cancellation for small |w|
    x, y = w.real, w.imag
    em = np.expm1(x)
    sh, ch = np.sin(0.5 * y), np.cos(0.5 * y)
    sh2 = 2.0 * sh * sh
    return (em * (1.0 - sh2) - sh2) + 1j * ((1.0 + em) * 2.0 * sh * ch)


def phi1_array(z, t):
    z = np.asarray(z, dtype=np.complex128)
    w = z * t
    small = np.abs(w) < PHI1_SWITCH
    out = np.empty_like(w)
    ws = w[small]
    out[small] = t * (1.0 + ws * (1.0 / 2 + ws * (1.0 / 6 + ws * (1.0 / 24 + ws / 120.0))))
    big = ~small
    out[big] = _expm1_complex(w[big]) / z[big]
    return out


def integral_matrix(s, z, t):
    return s * phi1_array(z, t)


def integral_expectation(weights, z, t):
    return complex(np.sum(weights * phi1_array(z, t)))


def evolve_pure(c, s, lam, times, hbar):
    phases = np.exp(-1j * np.outer(times, lam) / hbar)
    u = phases * c
    return np.sum(u.conj() * (u @ s.T), axis=1)


def evolve_density(rho, s, lam, times, hbar):
    # trace(rho(t) S) with rho_ij(t) = rho_ij exp(-i(l_i - l_j)t/hbar)
    phases = np.exp(-1j * np.outer(times, lam) / hbar)
    b = rho * s.T
    return np.sum(phases * (phases.conj() @ b.T), axis=1)


def trapezoid_weighted(values, times, rate, frequency):
    f = values * np.exp(-(rate + 1j * frequency) * times)
    return complex(np.trapezoid(f, times))
