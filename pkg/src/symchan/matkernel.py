"""Dense complex matrix kernel.

Matrices are plain ``numpy.ndarray`` objects with dtype complex128; every
routine here treats its inputs as immutable values. The two expensive
primitives (matrix exponential and Hermitian eigendecomposition) are served by
the selected backend (compiled or pure, see ``symchan.backend``).
"""

from dataclasses import dataclass

import numpy as np

from . import backend
from .errors import ConvergenceError, ShapeError

HERMITIAN_TOL = 1e-12


def as_matrix(a):
    """Coerce to a finite, 2-d complex128 array."""
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim != 2:
        raise ShapeError(f"expected a 2-d matrix, got ndim={m.ndim}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix has non-finite entries")
    return m


def dagger(a):
    """Conjugate transpose."""
    return as_matrix(a).conj().T


def trace(a):
    a = as_matrix(a)
    if a.shape[0] != a.shape[1]:
        raise ShapeError(f"trace requires a square matrix, got {a.shape}")
    return complex(np.trace(a))


def frobenius_distance(a, b):
    a = as_matrix(a)
    b = as_matrix(b)
    if a.shape != b.shape:
        raise ShapeError(f"shape mismatch: {a.shape} vs {b.shape}")
    return float(np.linalg.norm(a - b))


def matmul(a, b):
    a = as_matrix(a)
    b = as_matrix(b)
    if a.shape[1] != b.shape[0]:
        raise ShapeError(f"cannot multiply {a.shape} by {b.shape}")
    return a @ b


def kron(a, b):
    """Kronecker product; (a kron b)[i*p+k, j*q+l] = a[i,j] b[k,l]."""
    return np.kron(as_matrix(a), as_matrix(b))


def commutator(a, b):
    return matmul(a, b) - matmul(b, a)


def anticommutator(a, b):
    return matmul(a, b) + matmul(b, a)


def hermiticity_defect(a):
    """Relative Frobenius distance from a to its conjugate transpose."""
    a = as_matrix(a)
    norm = np.linalg.norm(a)
    if norm == 0.0:
        return 0.0
    return float(np.linalg.norm(a - a.conj().T) / norm)


def is_hermitian(a, tol=HERMITIAN_TOL):
    a = as_matrix(a)
    return a.shape[0] == a.shape[1] and hermiticity_defect(a) <= tol


@dataclass(frozen=True)
class HermitianEigen:
    """Eigendecomposition of a Hermitian matrix.

    eigenvalues are real and ascending; eigenvectors holds the matching
    orthonormal eigenvectors as columns.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self):
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T


def eig_hermitian(a, tol=HERMITIAN_TOL):
    """Diagonalize a Hermitian matrix with the backend Jacobi solver."""
    a = as_matrix(a)
    if a.shape[0] != a.shape[1]:
        raise ShapeError(f"expected a square matrix, got {a.shape}")
    if hermiticity_defect(a) > tol:
        raise ValueError(
            f"matrix is not Hermitian (relative defect {hermiticity_defect(a):.3e})"
        )
    w, v, converged, sweeps = backend.eigh(a)
    if not converged:
        raise ConvergenceError(
            f"Jacobi eigensolver did not converge after {sweeps} sweeps"
        )
    return HermitianEigen(eigenvalues=w, eigenvectors=v)


def expm(a):
    """Matrix exponential (scaling-and-squaring, degree-13 Pade)."""
    a = as_matrix(a)
    if a.shape[0] != a.shape[1]:
        raise ShapeError(f"expected a square matrix, got {a.shape}")
    try:
        return backend.expm(a)
    except ArithmeticError as exc:
        raise ConvergenceError(str(exc)) from exc


def svd_nullspace(a, tol=1e-10):
    """Orthonormal basis of {v : ||a v|| <= tol * ||a||}.

    Realized as the eigendecomposition of a^dag a: singular values are the
    square roots of its eigenvalues, and ||a|| is the largest one. Returns a
    list of 1-d column vectors; empty if the kernel is trivial.
    """
    a = as_matrix(a)
    if tol <= 0:
        raise ValueError("tol must be positive")
    gram = a.conj().T @ a
    n = gram.shape[0]
    if np.linalg.norm(gram) == 0.0:
        return [np.eye(n, dtype=np.complex128)[:, k] for k in range(n)]
    eig = eig_hermitian(gram)
    sigma = np.sqrt(np.clip(eig.eigenvalues, 0.0, None))
    cutoff = tol * sigma[-1]
    # Squaring into the Gram matrix floors the small singular values at about
    # sqrt(eps) * sigma_max, so re-measure borderline candidates as ||a v||,
    # which is computed without that loss.
    loose = max(cutoff, 1e-6 * sigma[-1])
    out = []
    for k in range(n):
        if sigma[k] > loose:
            continue
        v = eig.eigenvectors[:, k].copy()
        if np.linalg.norm(a @ v) <= cutoff:
            out.append(v)
    return out
