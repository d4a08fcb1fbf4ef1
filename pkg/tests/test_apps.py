import math

import numpy as np
import pytest

from helpers import random_density, random_pure
from weightint import (
    NonDecayingWeight,
    QuantumState,
    WeightExponent,
    fourier_probe,
    sweep,
    weighted_average,
    weighted_integral,
)
from weightint.bench import random_hermitian


def test_average_of_constant(rng):
    h = random_hermitian(4, rng)
    psi = random_pure(4, rng)
    for tau in (0.5, 10.0):
        for t in (0.3, 5.0, math.inf):
            assert abs(weighted_average(h, 2.5 * np.eye(4), psi, tau, t) - 2.5) <= 1e-12


def test_average_two_level(two_level):
    h, s, psi = two_level
    v = weighted_average(h, s, psi, 5.0)
    assert abs(v - (0.2 / 1.04) / 5.0) <= 1e-12
    assert abs(v - 0.0384615385) < 1e-10
    assert weighted_average(h, np.zeros((2, 2)), psi, 5.0, 3.0) == 0


def test_average_at_zero_is_initial_value(two_level):
    h, s, psi = two_level
    assert abs(weighted_average(h, s, psi, 5.0, 0.0) - 1.0) < 1e-15
    assert abs(weighted_average(h, s, psi, 5.0, 1e-9) - 1.0) < 1e-9


def test_average_stationary_state():
    h = np.diag([0.0, 1.0, 3.0])
    s = np.diag([4.0, -2.0, 7.0])
    st = QuantumState.pure([0, 0, 1])
    for t in (1.0, 50.0, math.inf):
        assert abs(weighted_average(h, s, st, 10.0, t) - 7.0) <= 1e-12


def test_fourier_free_system():
    tau = 3.0
    omegas = np.linspace(-2, 2, 9)
    probe = fourier_probe(np.zeros((2, 2)), np.eye(2), QuantumState.pure([1, 0]), tau, omegas)
    np.testing.assert_allclose(probe.values, 1 / (1 / tau + 1j * omegas), rtol=1e-14)
    assert probe.tau == tau


def test_fourier_two_level_lorentzian(two_level):
    h, s, psi = two_level
    tau = 20.0
    c = lambda om: 1 / tau + 1j * om
    closed = lambda om: 0.5 * (1 / (c(om) - 1j) + 1 / (c(om) + 1j))
    omegas = np.linspace(-1.5, 1.5, 3001)
    probe = fourier_probe(h, s, psi, tau, omegas, workers=3)
    np.testing.assert_allclose(probe.values, closed(omegas), rtol=1e-12)
    mag = np.abs(probe.values)
    pos = omegas > 0
    assert abs(omegas[pos][np.argmax(mag[pos])] - 1.0) <= 1e-3
    assert abs(omegas[~pos][np.argmax(mag[~pos])] + 1.0) <= 1e-3
    # half-power points at w0 +- 1/tau for the resonant term
    peak = abs(closed(1.0))
    for om in (1 - 1 / tau, 1 + 1 / tau):
        assert abs(abs(closed(om)) / peak - 1 / math.sqrt(2)) < 0.03


def test_fourier_conjugate_symmetry(rng):
    h = random_hermitian(5, rng).real.astype(complex)
    s = random_hermitian(5, rng).real.astype(complex)
    psi = random_pure(5, rng)
    psi = QuantumState.pure(np.abs(psi.data) / np.linalg.norm(psi.data))
    om = np.array([0.3, 1.1, 2.0])
    a = fourier_probe(h, s, psi, 7.0, om).values
    b = fourier_probe(h, s, psi, 7.0, -om).values
    np.testing.assert_allclose(a, b.conj(), rtol=1e-12)


def test_fourier_rejects_bad_tau(two_level):
    h, s, psi = two_level
    with pytest.raises(ValueError):
        fourier_probe(h, s, psi, 0.0, [1.0])


def test_sweep_lorentzian():
    sx = np.array([[0, 1], [1, 0]], dtype=complex)
    plus = QuantumState.pure(np.array([1, 1]) / np.sqrt(2))
    a = 0.3
    fields = np.linspace(-1, 1, 11)
    res = sweep([(b, np.diag([b, -b])) for b in fields], sx, plus, WeightExponent(a))
    assert res.ok
    assert res.labels == list(fields)
    np.testing.assert_allclose(np.real(res.values), a / (a * a + (2 * fields) ** 2), rtol=1e-12)


def test_sweep_pointwise_identity(rng):
    h = random_hermitian(3, rng)
    s = random_hermitian(3, rng)
    st = random_density(3, rng)
    w = WeightExponent(0.2)
    res = sweep([(1.0, h), (2.0, h), (3.0, h)], s, st, w, workers=2)
    assert res.values[0] == res.values[1] == res.values[2]
    one = sweep([(0.0, h)], s, st, w)
    assert one.values[0] == weighted_integral(h, s, st, w)


def test_sweep_reports_failures_and_continues(rng):
    good = random_hermitian(2, rng)
    bad = np.array([[0, 1], [0, 0]], dtype=complex)
    res = sweep([(0.0, good), (1.0, bad), (2.0, good)], np.eye(2), QuantumState.pure([1, 0]), WeightExponent(1.0))
    assert not res.ok
    assert list(res.errors) == [1.0]
    assert "NonHermitianInput" in res.errors[1.0]
    assert math.isnan(res.values[1].real)
    assert abs(res.values[0] - 1.0) < 1e-14 and abs(res.values[2] - 1.0) < 1e-14


def test_sweep_needs_decay(rng):
    with pytest.raises(NonDecayingWeight):
        sweep([(0.0, np.eye(2))], np.eye(2), QuantumState.pure([1, 0]), WeightExponent(0.0, 1.0))
