"""Kernel backend selection.

The compiled ``_ckernels`` extension is used when it imports; otherwise the
numpy implementation in ``_pykernels`` is used. Set ``WEIGHTINT_KERNELS`` to
``python`` to force the fallback or to ``cython`` to make a missing
extension an import error.
"""

import os

import numpy as np

from . import _pykernels

_requested = os.environ.get("WEIGHTINT_KERNELS", "").strip().lower()

if _requested == "python":
    _impl = _pykernels
else:
    try:
        from . import _ckernels as _impl
    except ImportError:
        if _requested == "cython":
            raise
        _impl = _pykernels

BACKEND = "python" if _impl is _pykernels else "cython"
PHI1_SWITCH = _pykernels.PHI1_SWITCH


def available_backends() -> dict:
    """Map backend name to kernel module, for side-by-side comparisons."""
    out = {"python": _pykernels}
    try:
        from . import _ckernels
    except ImportError:
        pass
    else:
        out["cython"] = _ckernels
    return out


def _c(a, dtype=np.complex128):
    return np.ascontiguousarray(a, dtype=dtype)


def phi1_array(z, t: float, impl=None):
    impl = impl or _impl
    z = np.asarray(z, dtype=np.complex128)
    return impl.phi1_array(_c(z.ravel()), float(t)).reshape(z.shape)


def integral_matrix(s, z, t: float, impl=None):
    return (impl or _impl).integral_matrix(_c(s), _c(z), float(t))


def integral_expectation(weights, z, t: float, impl=None) -> complex:
    return (impl or _impl).integral_expectation(_c(weights), _c(z), float(t))


def evolve_pure(c, s, lam, times, hbar: float, impl=None):
    """``<psi(t)|S|psi(t)>`` at each of ``times``, which must be a uniform grid."""
    return (impl or _impl).evolve_pure(
        _c(c), _c(s), _c(lam, np.float64), _c(times, np.float64), float(hbar)
    )


def evolve_density(rho, s, lam, times, hbar: float, impl=None):
    """``trace(rho(t) S)`` at each of ``times``, which must be a uniform grid."""
    return (impl or _impl).evolve_density(
        _c(rho), _c(s), _c(lam, np.float64), _c(times, np.float64), float(hbar)
    )


def trapezoid_weighted(values, times, rate: float, frequency: float, impl=None) -> complex:
    return (impl or _impl).trapezoid_weighted(
        _c(values), _c(times, np.float64), float(rate), float(frequency)
    )
