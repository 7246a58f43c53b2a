import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(20260823)


def random_complex(rng, rows, cols=None):
    cols = rows if cols is None else cols
    return rng.normal(size=(rows, cols)) + 1j * rng.normal(size=(rows, cols))


def random_hermitian(rng, n):
    x = random_complex(rng, n)
    return (x + x.conj().T) / 2


def random_state(rng, n):
    """Random full-rank density matrix."""
    x = random_complex(rng, n)
    rho = x @ x.conj().T
    return rho / np.trace(rho)


def random_pure_state(rng, n):
    psi = rng.normal(size=n) + 1j * rng.normal(size=n)
    psi /= np.linalg.norm(psi)
    return np.outer(psi, psi.conj())
