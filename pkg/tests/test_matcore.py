import numpy as np
import pytest

from weightint import (
    DimensionMismatch,
    EigenDecomposition,
    NonHermitianInput,
    eigendecompose,
    from_eigenbasis,
    is_hermitian,
    to_eigenbasis,
)
from weightint.bench import make_rng, random_hermitian


def test_identity():
    eig = eigendecompose(np.eye(3))
    np.testing.assert_allclose(eig.eigenvalues, [1, 1, 1], atol=1e-15)
    np.testing.assert_allclose(eig.vectors.conj().T @ eig.vectors, np.eye(3), atol=1e-14)


def test_diagonal_sorted_and_permutation():
    eig = eigendecompose(np.diag([3.0, 1.0, 2.0]))
    np.testing.assert_allclose(eig.eigenvalues, [1, 2, 3], atol=1e-15)
    v = np.abs(eig.vectors)
    np.testing.assert_allclose(np.sort(v, axis=0), [[0, 0, 0], [0, 0, 0], [1, 1, 1]], atol=1e-15)
    np.testing.assert_allclose(v.sum(axis=1), 1, atol=1e-15)


def test_pauli_x():
    # characteristic polynomial l^2 - 1 = 0
    eig = eigendecompose(np.array([[0, 1], [1, 0]]))
    np.testing.assert_allclose(eig.eigenvalues, [-1, 1], atol=1e-15)


def test_invariants_random():
    rng = make_rng(7)
    for k in range(100):
        n = int(rng.integers(2, 33))
        h = random_hermitian(n, rng)
        eig = eigendecompose(h)
        fro = np.linalg.norm(h)
        v = eig.vectors
        assert np.max(np.abs(v.conj().T @ v - np.eye(n))) <= 1e-10
        assert np.max(np.abs(eig.reconstruct() - h)) <= 1e-9 * fro
        d = v.conj().T @ h @ v
        assert np.max(np.abs(d - np.diag(eig.eigenvalues))) <= 1e-10 * fro
        assert np.all(np.diff(eig.eigenvalues) >= 0)
        assert abs(eig.eigenvalues.sum() - np.trace(h).real) <= 1e-9 * max(1.0, abs(np.trace(h)))


def test_basis_round_trip(rng):
    h = random_hermitian(6, rng)
    s = rng.normal(size=(6, 6)) + 1j * rng.normal(size=(6, 6))
    eig = eigendecompose(h)
    np.testing.assert_allclose(to_eigenbasis(h, eig), np.diag(eig.eigenvalues), atol=1e-12)
    np.testing.assert_allclose(to_eigenbasis(np.eye(6), eig), np.eye(6), atol=1e-12)
    np.testing.assert_allclose(from_eigenbasis(to_eigenbasis(s, eig), eig), s, atol=1e-12)
    np.testing.assert_allclose(to_eigenbasis(from_eigenbasis(s, eig), eig), s, atol=1e-12)
    np.testing.assert_allclose(from_eigenbasis(np.diag(eig.eigenvalues), eig), h, atol=1e-12)
    assert not np.any(from_eigenbasis(np.zeros((6, 6)), eig))


def test_non_hermitian_rejected():
    with pytest.raises(NonHermitianInput, match="not Hermitian"):
        eigendecompose(np.array([[0, 1], [0, 0]]))
    # within tolerance is accepted and not silently altered
    h = np.array([[1, 1 + 1e-13], [1, 2]], dtype=complex)
    eigendecompose(h)
    assert h[0, 1] == 1 + 1e-13


def test_dimension_checks(rng):
    eig = eigendecompose(random_hermitian(3, rng))
    with pytest.raises(DimensionMismatch):
        to_eigenbasis(np.eye(4), eig)
    with pytest.raises(DimensionMismatch):
        from_eigenbasis(np.eye(2), eig)
    with pytest.raises(DimensionMismatch):
        eigendecompose(np.ones((2, 3)))


def test_is_hermitian():
    m = np.array([[1, 2 + 1j], [2 - 1j, 0]])
    assert is_hermitian(m, 0.0)
    m[0, 1] += 1e-6
    assert not is_hermitian(m, 1e-7)
    assert is_hermitian(m, 1.01e-6)


def test_decomposition_is_immutable(rng):
    eig = eigendecompose(random_hermitian(3, rng), hbar=2.0)
    assert eig.hbar == 2.0
    with pytest.raises(ValueError):
        eig.eigenvalues[0] = 1.0
    with pytest.raises(ValueError):
        EigenDecomposition(eig.eigenvalues, eig.vectors, hbar=0.0)
