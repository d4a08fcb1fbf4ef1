import numpy as np
import pytest

from weightint import QuantumState, kernels
from weightint.bench import make_rng

from helpers import ACCEPTANCE_LINES


@pytest.fixture
def rng():
    return make_rng(20240601)


@pytest.fixture
def two_level():
    """H = (w0/2) sigma_z, S = sigma_x, psi = |+x>; <S>(t) = cos(t)."""
    h = 0.5 * np.diag([1.0, -1.0]).astype(complex)
    s = np.array([[0, 1], [1, 0]], dtype=complex)
    psi = QuantumState.pure(np.array([1, 1]) / np.sqrt(2))
    return h, s, psi


@pytest.fixture(params=sorted(kernels.available_backends()))
def backend(request):
    return kernels.available_backends()[request.param]


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

