"""Applications: weighted time averages, damped Fourier probing, parameter sweeps."""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .errors import NonDecayingWeight, WeightIntError
from .intop import (
    QuantumState,
    WeightExponent,
    build,
    expectation,
    integral_from_operator,
    weighted_integral,
)
from .matcore import eigendecompose, to_eigenbasis


def default_workers() -> int:
    """Worker count for sweeps and probes, capped by ``WEIGHTINT_THREADS``."""
    n = os.cpu_count() or 1
    cap = os.environ.get("WEIGHTINT_THREADS")
    if cap:
        try:
            n = min(n, max(1, int(cap)))
        except ValueError:
            pass
    return n


def _ordered_map(fn, items, workers):
    if workers is None:
        workers = default_workers()
    if workers <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def weight_normalization(tau: float, t: float) -> float:
    """``int_0^t exp(-t'/tau) dt'``."""
    if math.isinf(t):
        return tau
    return -tau * math.expm1(-t / tau)


def weighted_average(h, s, state: QuantumState, tau: float, t=math.inf, hbar: float = 1.0) -> float:
    """Exponentially weighted time average of ``<S>`` with damping time ``tau``.

    The weighted integral divided by ``int_0^t exp(-t'/tau) dt'``. At ``t = 0``
    both vanish and the limit, the initial expectation value, is returned.
    """
    weight = WeightExponent.from_tau(tau)
    t = float(t)
    if t == 0:
        eig = eigendecompose(h, hbar)
        return expectation(to_eigenbasis(s, eig), state, eig).real
    value = weighted_integral(h, s, state, weight, t, hbar)
    return value.real / weight_normalization(tau, t)


@dataclass(frozen=True)
class FourierProbe:
    tau: float
    omegas: np.ndarray
    values: np.ndarray


def fourier_probe(h, s, state: QuantumState, tau: float, omegas, hbar: float = 1.0, workers: int | None = 1) -> FourierProbe:
    """Damped Fourier amplitudes ``int_0^inf <S>(t) exp(-t/tau) exp(-i w t) dt``.

    One diagonalization serves every frequency; each extra frequency costs
    O(N^2).
    """
    if not tau > 0:
        raise ValueError(f"tau must be positive, got {tau}")
    omegas = np.asarray(omegas, dtype=np.float64).ravel()
    eig = eigendecompose(h, hbar)
    base = build(s, eig, WeightExponent.from_tau(tau))

    def one(omega):
        op = base.with_weight(WeightExponent.from_tau(tau, float(omega)))
        return integral_from_operator(op, state, math.inf)

    values = np.array(_ordered_map(one, list(omegas), workers), dtype=np.complex128)
    return FourierProbe(float(tau), omegas, values)


@dataclass
class SweepResult:
    """Integrals per label, in input order. Failed points hold NaN and an entry in ``errors``."""

    labels: list
    values: list
    errors: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.errors


def sweep(hamiltonians, s, state: QuantumState, weight: WeightExponent, hbar: float = 1.0, workers: int | None = 1) -> SweepResult:
    """Infinite-horizon weighted integral for each ``(label, H)`` pair.

    A failing point is recorded under its label in ``SweepResult.errors``
    and does not stop the remaining points.
    """
    if not weight.decays:
        raise NonDecayingWeight(f"sweeps integrate to t = inf and need rate > 0, got rate={weight.rate}")
    items = [(float(label), h) for label, h in hamiltonians]

    def one(item):
        label, h = item
        try:
            return weighted_integral(h, s, state, weight, math.inf, hbar), None
        except WeightIntError as exc:
            return complex(math.nan, math.nan), f"label {label!r}: {type(exc).__name__}: {exc}"

    results = _ordered_map(one, items, workers)
    errors = {label: err for (label, _), (_, err) in zip(items, results) if err is not None}
    return SweepResult([label for label, _ in items], [v for v, _ in results], errors)
