"""Closed-form exponentially weighted time integrals of quantum expectation values.

``int_0^t <psi(t')|S|psi(t')> exp(-a t') dt'`` is computed as the expectation
of an "integral operator" ``P(t)`` built in the eigenbasis of the Hamiltonian,
with an evolve-then-trapezoid baseline for validation and benchmarking.
"""

from .apps import FourierProbe, SweepResult, fourier_probe, sweep, weighted_average
from .bench import BenchConfig, BenchRecord, highest_state, number_operator, random_hermitian, run_benchmark
from .errors import (
    ConvergenceFailure,
    DegenerateGrid,
    DimensionMismatch,
    InvalidState,
    MalformedInputFile,
    NonDecayingWeight,
    NonHermitianInput,
    NumericalError,
    ValidationError,
    WeightIntError,
)
from .evolve import TimeSeries, evolve_expectation, trapezoid_weighted_integral
from .intop import IntegralOperator, QuantumState, WeightExponent, build, expectation, phi1, weighted_integral
from .kernels import BACKEND
from .matcore import EigenDecomposition, eigendecompose, from_eigenbasis, is_hermitian, to_eigenbasis

__version__ = "0.1.0"
