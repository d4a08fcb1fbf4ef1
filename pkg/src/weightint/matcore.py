"""Dense complex matrices and Hermitian eigendecomposition.

Matrices are plain ``numpy.ndarray`` objects of dtype ``complex128`` and
shape ``(N, N)``. Anything stored on an :class:`EigenDecomposition` is
copied and frozen (``writeable=False``), so instances can be shared freely
between threads.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceFailure, DimensionMismatch, NonHermitianInput

#: Hermiticity tolerance, relative to the Frobenius norm of the input.
HERMITIAN_RTOL = 1e-10


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, copy=True)
    a.setflags(write=False)
    return a


def as_matrix(m, name: str = "matrix") -> np.ndarray:
    """Coerce ``m`` to a square complex128 array, raising on bad shapes."""
    a = np.asarray(m, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
        raise DimensionMismatch(f"{name} must be a non-empty square matrix, got shape {a.shape}")
    return a


def hermiticity_defect(m: np.ndarray) -> float:
    """Return ``max |m_ij - conj(m_ji)|``."""
    m = np.asarray(m)
    return float(np.max(np.abs(m - m.conj().T)))


def is_hermitian(m: np.ndarray, tol: float) -> bool:
    return hermiticity_defect(m) <= tol


@dataclass(frozen=True, eq=False)
class EigenDecomposition:
    """Eigenvalues (ascending) and unitary eigenvectors of a Hermitian matrix.

    Attributes
    ----------
    eigenvalues : ndarray of float, shape (N,)
        Sorted non-decreasing.
    vectors : ndarray of complex, shape (N, N)
        Column ``k`` is the eigenvector for ``eigenvalues[k]``.
    hbar : float
        Reduced Planck constant in the caller's units (energy * time).
    """

    eigenvalues: np.ndarray
    vectors: np.ndarray
    hbar: float = 1.0

    def __post_init__(self):
        lam = np.asarray(self.eigenvalues, dtype=np.float64)
        vec = as_matrix(self.vectors, "eigenvector matrix")
        if lam.shape != (vec.shape[0],):
            raise DimensionMismatch(
                f"{lam.shape[0] if lam.ndim else 0} eigenvalues for a {vec.shape[0]}x{vec.shape[0]} basis"
            )
        if not self.hbar > 0:
            raise ValueError(f"hbar must be positive, got {self.hbar}")
        object.__setattr__(self, "eigenvalues", _frozen(lam))
        object.__setattr__(self, "vectors", _frozen(vec))
        object.__setattr__(self, "hbar", float(self.hbar))

    @property
    def size(self) -> int:
        return self.eigenvalues.shape[0]

    def reconstruct(self) -> np.ndarray:
        """Return ``V diag(lambda) V^dagger``."""
        return from_eigenbasis(np.diag(self.eigenvalues).astype(np.complex128), self)


def eigendecompose(h, hbar: float = 1.0) -> EigenDecomposition:
    """Diagonalize a Hermitian matrix.

    The input is checked against ``max|h - h^dagger| <= 1e-10 * ||h||_F`` and
    is never symmetrized here. LAPACK ``zheevd`` (through ``numpy.linalg.eigh``)
    reads the lower triangle and returns eigenvalues in ascending order; within
    a degenerate subspace the eigenvectors are whatever LAPACK produces, which
    is deterministic for a fixed input and library build.

    Raises
    ------
    NonHermitianInput
        If the Hermiticity check fails.
    ConvergenceFailure
        If LAPACK reports that the eigensolver did not converge.
    """
    h = as_matrix(h, "Hamiltonian")
    if not hbar > 0:
        raise ValueError(f"hbar must be positive, got {hbar}")
    defect = hermiticity_defect(h)
    scale = float(np.linalg.norm(h))
    if defect > HERMITIAN_RTOL * scale:
        raise NonHermitianInput(
            f"matrix is not Hermitian: max|h_ij - conj(h_ji)| = {defect:.3e} "
            f"exceeds {HERMITIAN_RTOL:g} * ||h||_F = {HERMITIAN_RTOL * scale:.3e}"
        )
    if not np.all(np.isfinite(h)):
        raise NonHermitianInput("matrix contains non-finite entries")
    try:
        lam, vec = np.linalg.eigh(h)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceFailure(f"eigensolver did not converge: {exc}") from exc
    return EigenDecomposition(lam, vec, hbar)


def _check_size(m: np.ndarray, eig: EigenDecomposition) -> None:
    if m.shape[0] != eig.size:
        raise DimensionMismatch(f"matrix of size {m.shape[0]} does not match basis of size {eig.size}")


def to_eigenbasis(m, eig: EigenDecomposition) -> np.ndarray:
    """Return ``V^dagger m V``."""
    m = as_matrix(m)
    _check_size(m, eig)
    v = eig.vectors
    return v.conj().T @ m @ v


def from_eigenbasis(m, eig: EigenDecomposition) -> np.ndarray:
    """Return ``V m V^dagger``, the inverse of :func:`to_eigenbasis`."""
    m = as_matrix(m)
    _check_size(m, eig)
    v = eig.vectors
    return v @ m @ v.conj().T
