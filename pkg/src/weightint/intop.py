"""The integral operator.

For a time-independent Hamiltonian ``H`` with eigenvalues ``l_i`` and an
observable ``S`` (entries ``s_ij`` in the eigenbasis of ``H``), the matrix

    p_ij(t) = s_ij * (exp(z_ij t) - 1) / z_ij,   z_ij = i (l_i - l_j) / hbar - a

satisfies

    <psi(0)| P(t) |psi(0)> = int_0^t <psi(t')| S |psi(t')> exp(-a t') dt'

so the weighted time integral of an expectation value costs one
diagonalization plus O(N^2) work per evaluation time, with no time stepping.
The weight exponent ``a = rate + i*frequency`` may be complex; a purely
imaginary ``a`` gives a (finite-time) Fourier transform.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

import numpy as np

from . import kernels
from .errors import DimensionMismatch, InvalidState, NonDecayingWeight
from .matcore import EigenDecomposition, as_matrix, eigendecompose, is_hermitian, to_eigenbasis

PHI1_SWITCH = kernels.PHI1_SWITCH


def _phi1_series(z: complex, t: float) -> complex:
    w = z * t
    return t * (1.0 + w * (1.0 / 2 + w * (1.0 / 6 + w * (1.0 / 24 + w / 120.0))))


def _phi1_direct(z: complex, t: float) -> complex:
    w = z * t
    s = math.sin(0.5 * w.imag)
    num = complex(
        math.expm1(w.real) * math.cos(w.imag) - 2.0 * s * s,
        math.exp(w.real) * math.sin(w.imag),
    )
    return num / z


def phi1(z: complex, t: float) -> complex:
    """Evaluate ``(exp(z t) - 1) / z`` stably, with limit ``t`` at ``z = 0``.

    Uses a fourth-order Taylor series when ``|z t| < PHI1_SWITCH`` and an
    expm1-based formula otherwise.
    """
    z = complex(z)
    if abs(z * t) < PHI1_SWITCH:
        return _phi1_series(z, t)
    return _phi1_direct(z, t)


@dataclass(frozen=True)
class WeightExponent:
    """Weight ``exp(-a t)`` with ``a = rate + i*frequency`` (units: 1/time)."""

    rate: float
    frequency: float = 0.0

    def __post_init__(self):
        rate, freq = float(self.rate), float(self.frequency)
        if not (math.isfinite(rate) and math.isfinite(freq)):
            raise ValueError(f"weight exponent must be finite, got rate={rate}, frequency={freq}")
        if rate < 0:
            raise ValueError(f"rate must be >= 0, got {rate}")
        object.__setattr__(self, "rate", rate)
        object.__setattr__(self, "frequency", freq)

    @classmethod
    def from_tau(cls, tau: float, frequency: float = 0.0) -> "WeightExponent":
        if not tau > 0:
            raise ValueError(f"tau must be positive, got {tau}")
        return cls(1.0 / tau, frequency)

    @property
    def a(self) -> complex:
        return complex(self.rate, self.frequency)

    @property
    def decays(self) -> bool:
        return self.rate > 0


@dataclass(frozen=True, eq=False)
class QuantumState:
    """A normalized state vector (``kind="pure"``) or a density matrix."""

    kind: Literal["pure", "density"]
    data: np.ndarray

    def __post_init__(self):
        data = np.array(self.data, dtype=np.complex128, copy=True)
        if self.kind == "pure":
            if data.ndim != 1 or data.shape[0] < 1:
                raise InvalidState(f"state vector must be 1-D and non-empty, got shape {data.shape}")
            norm = np.linalg.norm(data)
            if not abs(norm - 1.0) <= 1e-12:
                raise InvalidState(f"state vector norm is {norm!r}, expected 1 within 1e-12")
        elif self.kind == "density":
            try:
                data = as_matrix(data, "density matrix")
            except DimensionMismatch as exc:
                raise InvalidState(str(exc)) from exc
            if not is_hermitian(data, 1e-10):
                raise InvalidState("density matrix is not Hermitian within 1e-10")
            tr = np.trace(data)
            if abs(tr - 1.0) > 1e-10:
                raise InvalidState(f"density matrix trace is {tr}, expected 1 within 1e-10")
            if np.linalg.eigvalsh(data).min() < -1e-10:
                raise InvalidState("density matrix has eigenvalues below -1e-10")
        else:
            raise InvalidState(f"unknown state kind {self.kind!r}")
        data.setflags(write=False)
        object.__setattr__(self, "data", data)

    @classmethod
    def pure(cls, psi) -> "QuantumState":
        return cls("pure", psi)

    @classmethod
    def density(cls, rho) -> "QuantumState":
        return cls("density", rho)

    @property
    def size(self) -> int:
        return self.data.shape[0]

    def density_matrix(self) -> np.ndarray:
        if self.kind == "pure":
            return np.outer(self.data, self.data.conj())
        return np.array(self.data)

    def in_eigenbasis(self, eig: EigenDecomposition) -> np.ndarray:
        """State components ``V^dagger psi`` or matrix ``V^dagger rho V``."""
        if self.size != eig.size:
            raise DimensionMismatch(f"state of size {self.size} does not match basis of size {eig.size}")
        v = eig.vectors
        if self.kind == "pure":
            return v.conj().T @ self.data
        return v.conj().T @ self.data @ v


def exponent_table(eig: EigenDecomposition, weight: WeightExponent) -> np.ndarray:
    """``z_ij = i (l_i - l_j) / hbar - a``."""
    lam = eig.eigenvalues
    return 1j * (lam[:, None] - lam[None, :]) / eig.hbar - weight.a


@dataclass(frozen=True, eq=False)
class IntegralOperator:
    """Eigenbasis data from which ``P(t)`` is evaluated on demand.

    Build with :func:`build`. ``s_eig`` is the observable in the eigenbasis
    of the Hamiltonian and ``z`` the exponent table; both are read-only.
    """

    s_eig: np.ndarray
    eig: EigenDecomposition
    weight: WeightExponent
    z: np.ndarray

    def __post_init__(self):
        for name in ("s_eig", "z"):
            a = np.array(getattr(self, name), dtype=np.complex128, copy=True)
            a.setflags(write=False)
            object.__setattr__(self, name, a)

    @property
    def size(self) -> int:
        return self.eig.size

    def with_weight(self, weight: WeightExponent) -> "IntegralOperator":
        """Same system and observable, different weight exponent."""
        return IntegralOperator(self.s_eig, self.eig, weight, exponent_table(self.eig, weight))

    def evaluate(self, t: float) -> np.ndarray:
        """Return ``P(t)`` in the eigenbasis. ``P(0)`` is exactly zero."""
        t = float(t)
        if not (t >= 0 and math.isfinite(t)):
            raise ValueError(f"t must be finite and >= 0, got {t}")
        return kernels.integral_matrix(self.s_eig, self.z, t)

    def evaluate_infinite(self) -> np.ndarray:
        """Return ``lim_{t->inf} P(t) = -s_ij / z_ij``; needs ``rate > 0``."""
        if not self.weight.decays:
            raise NonDecayingWeight(
                f"infinite-horizon integral needs rate > 0, got rate={self.weight.rate}"
            )
        return -self.s_eig / self.z

    def expectation_weights(self, state: QuantumState) -> np.ndarray:
        """Matrix ``w`` with ``<P(t)> = sum_ij w_ij phi1(z_ij, t)``.

        Lets callers evaluate many times for one state without forming
        ``P(t)`` each time.
        """
        rho = _eigen_density(state, self.eig)
        return rho.T * self.s_eig

    def expectation_at(self, state: QuantumState, times) -> np.ndarray:
        """``<P(t)>`` for every ``t`` in ``times``, a complex array."""
        w = self.expectation_weights(state)
        times = [float(t) for t in times]
        if any(not (t >= 0 and math.isfinite(t)) for t in times):
            raise ValueError("times must be finite and >= 0")
        return np.array([kernels.integral_expectation(w, self.z, t) for t in times], dtype=np.complex128)


def _eigen_density(state: QuantumState, eig: EigenDecomposition) -> np.ndarray:
    x = state.in_eigenbasis(eig)
    if state.kind == "pure":
        return np.outer(x, x.conj())
    return x


def build(s, eig: EigenDecomposition, weight: WeightExponent) -> IntegralOperator:
    """Prepare the integral operator of observable ``s`` (original basis)."""
    s = as_matrix(s, "observable")
    if s.shape[0] != eig.size:
        raise DimensionMismatch(f"observable of size {s.shape[0]} does not match Hamiltonian of size {eig.size}")
    return IntegralOperator(to_eigenbasis(s, eig), eig, weight, exponent_table(eig, weight))


def expectation(op_matrix, state: QuantumState, eig: EigenDecomposition) -> complex:
    """Expectation of an eigenbasis matrix in a state given in the original basis.

    ``<psi|M|psi>`` for pure states, ``trace(rho M)`` for density matrices.
    """
    m = as_matrix(op_matrix, "operator")
    if m.shape[0] != eig.size:
        raise DimensionMismatch(f"operator of size {m.shape[0]} does not match basis of size {eig.size}")
    x = state.in_eigenbasis(eig)
    if state.kind == "pure":
        return complex(np.vdot(x, m @ x))
    return complex(np.sum(x.T * m))


def _resolve_time(t) -> float:
    t = float(t)
    if math.isnan(t) or t < 0:
        raise ValueError(f"t must be >= 0 or inf, got {t}")
    return t


def integral_from_operator(op: IntegralOperator, state: QuantumState, t) -> complex:
    """``<psi|P(t)|psi>`` with the real-part convention of :func:`weighted_integral`."""
    t = _resolve_time(t)
    m = op.evaluate_infinite() if math.isinf(t) else op.evaluate(t)
    value = expectation(m, state, op.eig)
    if op.weight.frequency == 0 and is_hermitian(op.s_eig, 1e-12 * (1.0 + np.abs(op.s_eig).max())):
        # physical value: the imaginary part is rounding noise
        if abs(value.imag) <= 1e-10 * (1.0 + abs(value.real)):
            value = complex(value.real, 0.0)
    return value


def weighted_integral(h, s, state: QuantumState, weight: WeightExponent, t=math.inf, hbar: float = 1.0) -> complex:
    """``int_0^t <psi(t')|S|psi(t')> exp(-a t') dt'`` in closed form.

    ``t`` may be ``math.inf`` when ``weight.rate > 0``. For a real weight and
    Hermitian ``s`` the result is real up to rounding; the imaginary part is
    then dropped and a complex number with zero imaginary part is returned.

    Raises
    ------
    NonHermitianInput, ConvergenceFailure
        From the diagonalization of ``h``.
    DimensionMismatch
        If ``h``, ``s`` and ``state`` sizes differ.
    NonDecayingWeight
        If ``t`` is infinite and ``weight.rate == 0``.
    """
    t = _resolve_time(t)
    if math.isinf(t) and not weight.decays:
        raise NonDecayingWeight(f"infinite-horizon integral needs rate > 0, got rate={weight.rate}")
    eig = eigendecompose(h, hbar)
    op = build(s, eig, weight)
    return integral_from_operator(op, state, t)
