"""Kraus channels, Lindblad generators, superoperator forms and CP/TP checks.

Vectorization is column-stacking throughout: vec(A X B) = (B^T kron A) vec(X).
Trace preservation is checked against sum_r K_r^dag K_r = 1.
"""

import warnings
from dataclasses import dataclass

import numpy as np

from .errors import ShapeError, StateError
from .matkernel import (
    as_matrix,
    commutator,
    dagger,
    eig_hermitian,
    hermiticity_defect,
    kron,
)


def vec(m):
    """Column-stack a matrix into a 1-d vector."""
    return as_matrix(m).T.reshape(-1)


def unvec(v):
    """Inverse of `vec` for square matrices."""
    v = np.asarray(v, dtype=np.complex128).reshape(-1)
    dim = int(round(np.sqrt(v.size)))
    if dim * dim != v.size:
        raise ShapeError(f"vector of length {v.size} is not a square matrix")
    return v.reshape(dim, dim).T


def validate_state(rho, tol=1e-10):
    """Assert rho is a density matrix: Hermitian, PSD, unit trace."""
    rho = as_matrix(rho)
    if rho.shape[0] != rho.shape[1]:
        raise StateError(f"state must be square, got {rho.shape}")
    if hermiticity_defect(rho) > tol:
        raise StateError("state is not Hermitian")
    tr = np.trace(rho)
    if abs(tr - 1.0) > tol:
        raise StateError(f"state trace is {tr:.12g}, expected 1")
    min_eig = eig_hermitian((rho + dagger(rho)) / 2).eigenvalues[0]
    if min_eig < -max(tol, 1e-8):
        raise StateError(f"state has negative eigenvalue {min_eig:.3e}")
    return rho


@dataclass(frozen=True)
class KrausChannel:
    """Operator-sum map rho -> sum_r K_r rho K_r^dag.

    Construction does not enforce completeness; use `verify_channel` (or
    `completeness_residual`) to certify sum_r K_r^dag K_r = 1.
    """

    dim: int
    kraus_ops: tuple

    def __post_init__(self):
        if not self.kraus_ops:
            raise ValueError("a channel needs at least one Kraus operator")
        ops = tuple(as_matrix(k) for k in self.kraus_ops)
        for k in ops:
            if k.shape != (self.dim, self.dim):
                raise ShapeError(
                    f"Kraus operator has shape {k.shape}, expected {(self.dim,) * 2}"
                )
        object.__setattr__(self, "kraus_ops", ops)

    def completeness_residual(self):
        """Spectral norm of sum_r K_r^dag K_r - 1 (zero iff trace preserving)."""
        acc = sum(dagger(k) @ k for k in self.kraus_ops)
        defect = acc - np.eye(self.dim)
        w = eig_hermitian((defect + dagger(defect)) / 2).eigenvalues
        return float(np.max(np.abs(w)))


@dataclass(frozen=True)
class LindbladGenerator:
    """Hamiltonian plus weighted jump operators (rate, operator)."""

    dim: int
    hamiltonian: np.ndarray
    jumps: tuple  # of (rate >= 0, operator)

    def __post_init__(self):
        h = as_matrix(self.hamiltonian)
        if h.shape != (self.dim, self.dim):
            raise ShapeError(f"Hamiltonian shape {h.shape} != {(self.dim,) * 2}")
        if hermiticity_defect(h) > 1e-12:
            raise ValueError("Hamiltonian must be Hermitian")
        jumps = []
        for rate, op in self.jumps:
            rate = float(rate)
            if rate < 0:
                raise ValueError(f"jump rate must be nonnegative, got {rate}")
            op = as_matrix(op)
            if op.shape != (self.dim, self.dim):
                raise ShapeError(f"jump operator shape {op.shape} != {(self.dim,) * 2}")
            jumps.append((rate, op))
        object.__setattr__(self, "hamiltonian", h)
        object.__setattr__(self, "jumps", tuple(jumps))

    def max_rate(self):
        return max((rate for rate, _ in self.jumps), default=0.0)

    def min_nonzero_rate(self):
        rates = [rate for rate, _ in self.jumps if rate > 0]
        return min(rates) if rates else 0.0


@dataclass(frozen=True)
class Superoperator:
    """d^2 x d^2 matrix acting on column-stacked states."""

    dim: int
    matrix: np.ndarray

    def __call__(self, rho):
        return unvec(self.matrix @ vec(rho))

    def trace_preservation_residual(self):
        left = vec(np.eye(self.dim)).conj() @ self.matrix
        return float(np.linalg.norm(left))


def _apply_kraus_raw(ch, x):
    x = as_matrix(x)
    return sum(k @ x @ dagger(k) for k in ch.kraus_ops)


def apply_kraus(ch, rho, state_tol=1e-10):
    """Apply the channel to a density matrix."""
    rho = as_matrix(rho)
    if rho.shape != (ch.dim, ch.dim):
        raise ShapeError(f"state shape {rho.shape} does not match channel dim {ch.dim}")
    validate_state(rho, tol=state_tol)
    return _apply_kraus_raw(ch, rho)


def lindblad_action(g, rho):
    """-i[H, rho] + (1/2) sum_r a_r ([L_r, rho L_r^dag] + [L_r rho, L_r^dag])."""
    rho = as_matrix(rho)
    if rho.shape != (g.dim, g.dim):
        raise ShapeError(f"state shape {rho.shape} does not match generator dim {g.dim}")
    out = -1j * commutator(g.hamiltonian, rho)
    for rate, op in g.jumps:
        opd = dagger(op)
        out += 0.5 * rate * (
            commutator(op, rho @ opd) + commutator(op @ rho, opd)
        )
    return out


def liouvillian_matrix(g):
    """Matrix realization of the generator on column-stacked states."""
    ident = np.eye(g.dim, dtype=np.complex128)
    h = g.hamiltonian
    mat = -1j * (kron(ident, h) - kron(h.T, ident))
    for rate, op in g.jumps:
        opd_op = dagger(op) @ op
        mat += rate * (
            kron(op.conj(), op)
            - 0.5 * kron(ident, opd_op)
            - 0.5 * kron(opd_op.T, ident)
        )
    return Superoperator(dim=g.dim, matrix=mat)


def kraus_superoperator(ch):
    """Column-stacking superoperator matrix of a Kraus channel."""
    mat = sum(kron(k.conj(), k) for k in ch.kraus_ops)
    return Superoperator(dim=ch.dim, matrix=mat)


def first_order_kraus(g, tau):
    """Short-time Kraus set of a Lindblad generator.

    K_0 = 1 - tau (iH + (1/2) sum_r a_r L_r^dag L_r) and
    K_r = sqrt(tau a_r) L_r, so that completeness holds to O(tau^2).
    """
    tau = float(tau)
    if tau <= 0:
        raise ValueError(f"tau must be positive, got {tau}")
    if tau * g.max_rate() > 0.1:
        warnings.warn(
            f"tau * max rate = {tau * g.max_rate():.3g} > 0.1; the first-order "
            "Kraus set may be inaccurate",
            stacklevel=2,
        )
    decay = np.zeros((g.dim, g.dim), dtype=np.complex128)
    ops = []
    for rate, op in g.jumps:
        decay += 0.5 * rate * (dagger(op) @ op)
        ops.append(np.sqrt(tau * rate) * op)
    k0 = np.eye(g.dim, dtype=np.complex128) - tau * (1j * g.hamiltonian + decay)
    return KrausChannel(dim=g.dim, kraus_ops=tuple([k0] + ops))


def choi_matrix(ch):
    """C = sum_ij E_ij kron E(E_ij); PSD iff the map is completely positive."""
    d = ch.dim
    choi = np.zeros((d * d, d * d), dtype=np.complex128)
    for i in range(d):
        for j in range(d):
            unit = np.zeros((d, d), dtype=np.complex128)
            unit[i, j] = 1.0
            choi += kron(unit, _apply_kraus_raw(ch, unit))
    return choi


@dataclass(frozen=True)
class ChannelReport:
    tp_residual: float
    choi_min_eig: float
    passed: bool

    def as_dict(self):
        return {
            "tp_residual": self.tp_residual,
            "choi_min_eig": self.choi_min_eig,
            "pass": self.passed,
        }


def verify_channel(ch, tp_tol=1e-8, cp_tol=1e-8):
    """Certify trace preservation and complete positivity."""
    tp_residual = ch.completeness_residual()
    choi = choi_matrix(ch)
    choi_min = float(eig_hermitian((choi + dagger(choi)) / 2).eigenvalues[0])
    passed = tp_residual <= tp_tol and choi_min >= -cp_tol
    return ChannelReport(tp_residual=tp_residual, choi_min_eig=choi_min, passed=passed)


def compose(ch1, ch2):
    """Channel applying ch1 first, then ch2; Kraus set {K_i(2) K_j(1)}."""
    if ch1.dim != ch2.dim:
        raise ShapeError(f"channel dims differ: {ch1.dim} vs {ch2.dim}")
    ops = tuple(k2 @ k1 for k2 in ch2.kraus_ops for k1 in ch1.kraus_ops)
    return KrausChannel(dim=ch1.dim, kraus_ops=ops)
