import warnings

import numpy as np
import pytest

from symchan import matkernel as mk
from symchan.errors import ConvergenceError, ShapeError
from symchan.liealg import PAULI

from conftest import random_complex, random_hermitian

SX, SY, SZ = PAULI["X"], PAULI["Y"], PAULI["Z"]
I2 = np.eye(2, dtype=complex)


def matmul_oracle(a, b):
    """Naive triple loop."""
    n, k = a.shape
    k2, m = b.shape
    out = np.zeros((n, m), dtype=complex)
    for i in range(n):
        for j in range(m):
            for l in range(k):
                out[i, j] += a[i, l] * b[l, j]
    return out


def kron_oracle(a, b):
    """(a kron b)[i*p+k, j*q+l] = a[i,j] b[k,l]."""
    n, m = a.shape
    p, q = b.shape
    out = np.zeros((n * p, m * q), dtype=complex)
    for i in range(n):
        for j in range(m):
            for k in range(p):
                for l in range(q):
                    out[i * p + k, j * q + l] = a[i, j] * b[k, l]
    return out


def expm_taylor(a, terms=60):
    out = np.eye(a.shape[0], dtype=complex)
    term = np.eye(a.shape[0], dtype=complex)
    for k in range(1, terms + 1):
        term = term @ a / k
        out = out + term
    return out


class TestMatmul:
    def test_identity(self):
        assert np.allclose(mk.matmul(I2, SX), SX)

    def test_pauli_algebra(self):
        assert np.allclose(mk.matmul(SX, SY), 1j * SZ)

    def test_against_triple_loop(self, rng):
        a = random_complex(rng, 3)
        b = random_complex(rng, 3)
        assert np.allclose(mk.matmul(a, b), matmul_oracle(a, b), atol=1e-13)

    def test_shape_error(self):
        with pytest.raises(ShapeError):
            mk.matmul(np.zeros((2, 3)), np.zeros((2, 3)))


class TestKron:
    def test_identity(self):
        assert np.allclose(mk.kron(I2, I2), np.eye(4))

    def test_zz_diagonal(self):
        assert np.allclose(mk.kron(SZ, SZ), np.diag([1, -1, -1, 1]))

    def test_against_index_oracle(self, rng):
        a = random_complex(rng, 2, 2)
        b = random_complex(rng, 3, 3)
        assert np.allclose(mk.kron(a, b), kron_oracle(a, b))

    def test_associativity(self, rng):
        for _ in range(5):
            a, b, c = (random_complex(rng, 2) for _ in range(3))
            left = mk.kron(mk.kron(a, b), c)
            right = mk.kron(a, mk.kron(b, c))
            assert np.max(np.abs(left - right)) < 1e-14 * max(1, np.max(np.abs(left)))


class TestEigHermitian:
    def test_diagonal_input(self):
        eig = mk.eig_hermitian(np.diag([3.0, 1.0, 2.0]))
        assert np.allclose(eig.eigenvalues, [1.0, 2.0, 3.0])

    def test_pauli_spectrum(self):
        eig = mk.eig_hermitian(SX)
        assert np.allclose(eig.eigenvalues, [-1.0, 1.0])

    def test_reconstruction(self, rng):
        h = random_hermitian(rng, 4)
        eig = mk.eig_hermitian(h)
        assert np.linalg.norm(eig.reconstruct() - h) / np.linalg.norm(h) < 1e-10

    def test_unitarity(self, rng):
        h = random_hermitian(rng, 6)
        v = mk.eig_hermitian(h).eigenvectors
        assert np.linalg.norm(v.conj().T @ v - np.eye(6)) < 1e-10

    def test_non_hermitian_rejected(self, rng):
        with pytest.raises(ValueError):
            mk.eig_hermitian(random_complex(rng, 3))


class TestExpm:
    def test_zero(self):
        assert np.allclose(mk.expm(np.zeros((3, 3))), np.eye(3))

    def test_euler_identity(self):
        # exp(i (pi/2) sigma_y) = cos(pi/2) I + i sin(pi/2) sigma_y
        out = mk.expm(1j * (np.pi / 2) * SY)
        assert np.allclose(out, np.array([[0, 1], [-1, 0]]), atol=1e-14)

    def test_against_taylor(self, rng):
        a = random_complex(rng, 4)
        expected = expm_taylor(a)
        assert np.linalg.norm(mk.expm(a) - expected) / np.linalg.norm(expected) < 1e-12

    def test_inverse_property(self, rng):
        for _ in range(5):
            a = random_complex(rng, 4)
            a *= 5.0 / np.linalg.norm(a)
            prod = mk.expm(a) @ mk.expm(-a)
            assert np.linalg.norm(prod - np.eye(4)) < 1e-10

    def test_hermitian_matches_eig(self, rng):
        h = random_hermitian(rng, 5)
        eig = mk.eig_hermitian(h)
        via_eig = (eig.eigenvectors * np.exp(eig.eigenvalues)) @ eig.eigenvectors.conj().T
        assert np.linalg.norm(mk.expm(h) - via_eig) / np.linalg.norm(via_eig) < 1e-10

    def test_large_norm_accuracy(self, rng):
        h = random_hermitian(rng, 4)
        h *= 100.0 / np.linalg.norm(h)
        eig = mk.eig_hermitian(h)
        via_eig = (eig.eigenvectors * np.exp(eig.eigenvalues)) @ eig.eigenvectors.conj().T
        assert np.linalg.norm(mk.expm(h) - via_eig) / np.linalg.norm(via_eig) < 1e-12

    def test_overflow_raises(self):
        with np.errstate(all="ignore"), warnings.catch_warnings():
            warnings.simplefilter("ignore", RuntimeWarning)
            with pytest.raises((ConvergenceError, ValueError)):
                mk.expm(np.full((2, 2), 1e300))


class TestNullspace:
    def test_zero_map(self):
        basis = mk.svd_nullspace(np.zeros((3, 3)))
        assert len(basis) == 3

    def test_diagonal_kernel(self):
        basis = mk.svd_nullspace(np.diag([1.0, 0.0]))
        assert len(basis) == 1
        assert abs(abs(basis[0][1]) - 1.0) < 1e-12

    def test_orthonormal(self, rng):
        a = random_complex(rng, 4, 2) @ random_complex(rng, 2, 4)  # rank 2
        basis = mk.svd_nullspace(a)
        assert len(basis) == 2
        for v in basis:
            assert np.linalg.norm(a @ v) < 1e-10 * np.linalg.norm(a)
        gram = np.array([[u.conj() @ v for v in basis] for u in basis])
        assert np.allclose(gram, np.eye(2), atol=1e-10)


class TestScalars:
    def test_trace_identity(self):
        assert mk.trace(np.eye(3)) == pytest.approx(3.0)

    def test_dagger_involution(self, rng):
        a = random_complex(rng, 3)
        assert np.allclose(mk.dagger(mk.dagger(a)), a)

    def test_frobenius_zero(self):
        assert mk.frobenius_distance(SX, SX) == 0.0

    def test_trace_cyclic(self, rng):
        a = random_complex(rng, 4)
        b = random_complex(rng, 4)
        t1 = mk.trace(mk.matmul(a, b))
        t2 = mk.trace(mk.matmul(b, a))
        assert abs(t1 - t2) < 1e-12 * max(1.0, abs(t1))

    def test_trace_requires_square(self):
        with pytest.raises(ShapeError):
            mk.trace(np.zeros((2, 3)))
