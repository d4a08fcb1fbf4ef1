"""Random states shared by the tests."""

import numpy as np

from weightint import QuantumState

# filled by test_acceptance, printed in the terminal summary
ACCEPTANCE_LINES = []


def random_pure(n, rng):
    v = rng.normal(size=n) + 1j * rng.normal(size=n)
    return QuantumState.pure(v / np.linalg.norm(v))


def random_density(n, rng, rank=None):
    rank = rank or n
    a = rng.normal(size=(n, rank)) + 1j * rng.normal(size=(n, rank))
    rho = a @ a.conj().T
    rho = 0.5 * (rho + rho.conj().T)
    return QuantumState.density(rho / np.trace(rho).real)


def random_state(n, rng, pure=True):
    return random_pure(n, rng) if pure else random_density(n, rng)
