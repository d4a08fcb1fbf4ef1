"""Conventional baseline: evolve the state, then integrate with the trapezoid rule.

Evolution uses exact eigenbasis phase factors, so the only error left in the
baseline is the quadrature error of the trapezoid rule.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import DegenerateGrid, DimensionMismatch
from .intop import QuantumState, WeightExponent
from .matcore import EigenDecomposition, as_matrix, eigendecompose, to_eigenbasis


@dataclass(frozen=True, eq=False)
class TimeSeries:
    """Complex samples on a uniform grid ``0 = t_0 < ... < t_{M-1} = t_max``."""

    times: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        times = np.array(self.times, dtype=np.float64, copy=True)
        values = np.array(self.values, dtype=np.complex128, copy=True)
        if times.ndim != 1 or times.shape != values.shape:
            raise DimensionMismatch(f"times {times.shape} and values {values.shape} must be equal-length 1-D arrays")
        if times.size >= 2:
            dt = np.diff(times)
            if np.any(dt <= 0):
                raise DegenerateGrid("times must be strictly increasing")
            step = (times[-1] - times[0]) / (times.size - 1)
            if np.max(np.abs(dt - step)) > 1e-12 * max(abs(times[-1]), step) + 1e-15:
                raise DegenerateGrid("times must form a uniform grid")
        times.setflags(write=False)
        values.setflags(write=False)
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "values", values)

    def __len__(self) -> int:
        return self.times.size


def time_grid(t_max: float, steps: int) -> np.ndarray:
    if steps < 1:
        raise DegenerateGrid(f"steps must be >= 1, got {steps}")
    if not t_max > 0:
        raise DegenerateGrid(f"t_max must be positive, got {t_max}")
    return np.linspace(0.0, float(t_max), int(steps) + 1)


def evolve_in_eigenbasis(eig: EigenDecomposition, s, state: QuantumState, t_max: float, steps: int) -> TimeSeries:
    """Like :func:`evolve_expectation` for an already diagonalized Hamiltonian."""
    s = as_matrix(s, "observable")
    if s.shape[0] != eig.size:
        raise DimensionMismatch(f"observable of size {s.shape[0]} does not match Hamiltonian of size {eig.size}")
    times = time_grid(t_max, steps)
    s_eig = to_eigenbasis(s, eig)
    x = state.in_eigenbasis(eig)
    if state.kind == "pure":
        values = kernels.evolve_pure(x, s_eig, eig.eigenvalues, times, eig.hbar)
    else:
        values = kernels.evolve_density(x, s_eig, eig.eigenvalues, times, eig.hbar)
    return TimeSeries(times, values)


def evolve_expectation(h, s, state: QuantumState, t_max: float, steps: int, hbar: float = 1.0) -> TimeSeries:
    """Sample ``<psi(t)|S|psi(t)>`` at ``steps + 1`` evenly spaced times in ``[0, t_max]``.

    Eigenbasis components of a pure state pick up ``exp(-i l_j t / hbar)``;
    density-matrix elements pick up ``exp(-i (l_i - l_j) t / hbar)``.
    """
    return evolve_in_eigenbasis(eigendecompose(h, hbar), s, state, t_max, steps)


def trapezoid_weighted_integral(series: TimeSeries, weight: WeightExponent) -> complex:
    """Trapezoid rule for ``int values(t) exp(-a t) dt`` over the series grid."""
    if len(series) < 2:
        raise DegenerateGrid(f"need at least 2 samples, got {len(series)}")
    return kernels.trapezoid_weighted(series.values, series.times, weight.rate, weight.frequency)
