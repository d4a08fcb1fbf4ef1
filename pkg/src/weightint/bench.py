"""Benchmark protocol: integral operator against evolve-then-trapezoid.

Random Hamiltonians have real and imaginary parts drawn from U(-0.5, 0.5)
and are made Hermitian as ``(A + A^dagger) / 2``. The observable is the number
operator ``diag(0, ..., n-1)`` and the initial state is the projector on the
last basis vector. Diagonalization is excluded from every timing because
both methods need it.

Random numbers come from numpy's ``PCG64`` bit generator seeded with
``BenchConfig.seed``; values are reproducible for a fixed seed, numpy version
and kernel backend.
"""

from __future__ import annotations

import csv
import io
import logging
import math
import time
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .apps import weight_normalization
from .errors import WeightIntError
from .evolve import evolve_in_eigenbasis, trapezoid_weighted_integral
from .intop import QuantumState, WeightExponent, build, expectation
from .matcore import eigendecompose

log = logging.getLogger(__name__)

METHODS = ("integral_operator", "trapezoid")
CSV_HEADER = ("size", "steps", "method", "mean_time_s", "value", "abs_error")


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def random_hermitian(n: int, rng: np.random.Generator) -> np.ndarray:
    """``(A + A^dagger) / 2`` with ``Re A_ij, Im A_ij ~ U(-0.5, 0.5)`` independently."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    a = rng.uniform(-0.5, 0.5, (n, n)) + 1j * rng.uniform(-0.5, 0.5, (n, n))
    h = 0.5 * (a + a.conj().T)
    # the diagonal is real by construction; make that exact
    h[np.diag_indices(n)] = h.diagonal().real
    return h


def number_operator(n: int) -> np.ndarray:
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    return np.diag(np.arange(n, dtype=np.float64)).astype(np.complex128)


def highest_state(n: int) -> QuantumState:
    """Density matrix projecting on the last basis vector."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    rho = np.zeros((n, n), dtype=np.complex128)
    rho[-1, -1] = 1.0
    return QuantumState.density(rho)


@dataclass(frozen=True)
class BenchConfig:
    sizes: tuple
    step_counts: tuple
    seed: int
    repeats: int = 200
    tau: float = 10.0
    t_max: float = 50.0

    def __post_init__(self):
        object.__setattr__(self, "sizes", tuple(int(n) for n in self.sizes))
        object.__setattr__(self, "step_counts", tuple(int(n) for n in self.step_counts))
        if not self.sizes or not self.step_counts:
            raise ValueError("sizes and step_counts must be non-empty")
        if min(self.sizes) < 1 or min(self.step_counts) < 1:
            raise ValueError("sizes and step counts must be positive")
        if self.repeats < 1:
            raise ValueError(f"repeats must be >= 1, got {self.repeats}")
        if not (self.tau > 0 and self.t_max > 0):
            raise ValueError("tau and t_max must be positive")
        if not 0 <= int(self.seed) < 2**64:
            raise ValueError("seed must be an unsigned 64-bit integer")


@dataclass(frozen=True)
class BenchRecord:
    size: int
    steps: int
    method: str
    mean_time: float
    value: float
    abs_error: float
    failures: int = 0

    def csv_row(self) -> list:
        return [
            str(self.size),
            str(self.steps),
            self.method,
            format(self.mean_time, ".17g"),
            format(self.value, ".17g"),
            format(self.abs_error, ".17g"),
        ]


def _timed(fn, *args):
    t0 = time.perf_counter()
    out = fn(*args)
    return out, time.perf_counter() - t0


def _operator_numerator(eig, s, state, weight, t):
    op = build(s, eig, weight)
    return expectation(op.evaluate(t), state, eig).real


def _trapezoid_numerator(eig, s, state, weight, t, steps):
    series = evolve_in_eigenbasis(eig, s, state, t, steps)
    return trapezoid_weighted_integral(series, weight).real


def run_benchmark(cfg: BenchConfig) -> list[BenchRecord]:
    """Time both methods on the weighted-average numerator at ``t = t_max``.

    Returns one record per ``(size, steps, method)`` in that nesting order.
    Values, errors and times are means over ``cfg.repeats`` random
    Hamiltonians; errors are measured against the integral-operator value.
    The integral operator takes no step count, so its row is the same for
    every ``steps`` of a given size.
    """
    rng = make_rng(cfg.seed)
    weight = WeightExponent.from_tau(cfg.tau)
    records = []
    for n in cfg.sizes:
        s = number_operator(n)
        state = highest_state(n)
        hams = [random_hermitian(n, rng) for _ in range(cfg.repeats)]
        op_times, op_vals = [], []
        tr_times = {k: [] for k in cfg.step_counts}
        tr_vals = {k: [] for k in cfg.step_counts}
        tr_errs = {k: [] for k in cfg.step_counts}
        failures = 0
        for h in hams:
            try:
                eig = eigendecompose(h)
                ref, dt = _timed(_operator_numerator, eig, s, state, weight, cfg.t_max)
                op_times.append(dt)
                op_vals.append(ref)
                for steps in cfg.step_counts:
                    val, dt = _timed(_trapezoid_numerator, eig, s, state, weight, cfg.t_max, steps)
                    tr_times[steps].append(dt)
                    tr_vals[steps].append(val)
                    tr_errs[steps].append(abs(val - ref))
            except WeightIntError as exc:
                failures += 1
                log.warning("size %d: skipped a Hamiltonian: %s", n, exc)
        op_row = dict(
            mean_time=_mean(op_times), value=_mean(op_vals), abs_error=0.0, failures=failures
        )
        for steps in cfg.step_counts:
            records.append(BenchRecord(n, steps, METHODS[0], **op_row))
            records.append(
                BenchRecord(
                    n,
                    steps,
                    METHODS[1],
                    mean_time=_mean(tr_times[steps]),
                    value=_mean(tr_vals[steps]),
                    abs_error=_mean(tr_errs[steps]),
                    failures=failures,
                )
            )
    return records


def _mean(xs: Sequence[float]) -> float:
    return math.fsum(xs) / len(xs) if xs else math.nan


def write_records_csv(records: Iterable[BenchRecord], fh) -> None:
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in records:
        w.writerow(r.csv_row())


def records_to_csv(records: Iterable[BenchRecord]) -> str:
    buf = io.StringIO()
    write_records_csv(records, buf)
    return buf.getvalue()


def time_profile(h, s, state: QuantumState, tau: float, times, step_counts, hbar: float = 1.0) -> list[tuple]:
    """Weighted time average at each ``t`` in ``times``, by both methods.

    The trapezoid uses the same number of steps at every ``t``, so its
    resolution is finer at short times. Rows are ``(t, method, steps, value)``
    with ``steps = 0`` for the integral operator.
    """
    eig = eigendecompose(h, hbar)
    weight = WeightExponent.from_tau(tau)
    op = build(s, eig, weight)
    times = [float(t) for t in times]
    if any(not t > 0 for t in times):
        raise ValueError("profile times must be positive")
    rows = []
    for t, v in zip(times, op.expectation_at(state, times)):
        rows.append((t, METHODS[0], 0, v.real / weight_normalization(tau, t)))
    for steps in step_counts:
        for t in times:
            v = _trapezoid_numerator(eig, s, state, weight, t, steps)
            rows.append((t, METHODS[1], int(steps), v / weight_normalization(tau, t)))
    return rows
