"""Concrete representations: su(2) irreps, direct sums, collective spins,
Pauli words, invariant-block decomposition and unpolarized states.

Generator dictionaries are ordered; the r-th raising operator pairs with the
r-th lowering operator. Within each irrep the basis is ordered by descending
weight (m = j, j-1, ..., -j), so the lowest-weight state is the last basis
vector of its block.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import RepresentationError
from .matkernel import (
    as_matrix,
    commutator,
    dagger,
    eig_hermitian,
    hermiticity_defect,
    kron,
)

PAULI = {
    "I": np.eye(2, dtype=np.complex128),
    "X": np.array([[0, 1], [1, 0]], dtype=np.complex128),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=np.complex128),
    "Z": np.array([[1, 0], [0, -1]], dtype=np.complex128),
}


@dataclass(frozen=True)
class InvariantBlock:
    """One invariant subspace: label (spin j or Casimir eigenvalue),
    dimension, and the Hermitian idempotent projecting onto it."""

    label: float
    dim: int
    projector: np.ndarray


@dataclass(frozen=True)
class Representation:
    dim: int
    cartan: dict  # name -> Hermitian matrix
    raising: dict  # name -> matrix
    lowering: dict  # name -> matrix, paired with `raising` by position
    blocks: tuple = field(default_factory=tuple)

    @property
    def generators(self):
        return list(self.cartan.values()) + list(self.raising.values()) + list(
            self.lowering.values()
        )

    def root_pairs(self):
        """(raising, lowering) operator pairs in declaration order."""
        return list(zip(self.raising.values(), self.lowering.values()))


def spin_irrep(two_j):
    """The (2j+1)-dimensional su(2) irrep, basis |j,m> with m descending."""
    if two_j < 0 or int(two_j) != two_j:
        raise ValueError(f"two_j must be a nonnegative integer, got {two_j}")
    two_j = int(two_j)
    j = two_j / 2.0
    dim = two_j + 1
    m = j - np.arange(dim)
    sz = np.diag(m).astype(np.complex128)
    sp = np.zeros((dim, dim), dtype=np.complex128)
    for k in range(1, dim):
        # S+|j,m> = sqrt(j(j+1) - m(m+1)) |j,m+1>
        sp[k - 1, k] = math.sqrt(j * (j + 1) - m[k] * (m[k] + 1))
    sm = sp.conj().T
    block = InvariantBlock(label=j, dim=dim, projector=np.eye(dim, dtype=np.complex128))
    return Representation(
        dim=dim,
        cartan={"S_z": sz},
        raising={"S_+": sp},
        lowering={"S_-": sm},
        blocks=(block,),
    )


def direct_sum(reps):
    """Block-diagonal sum of representations with matching generator counts."""
    reps = list(reps)
    if not reps:
        raise ValueError("direct_sum requires at least one representation")
    first = reps[0]
    for rep in reps[1:]:
        if len(rep.cartan) != len(first.cartan) or len(rep.raising) != len(
            first.raising
        ):
            raise RepresentationError("generator counts differ across summands")
    dim = sum(rep.dim for rep in reps)

    def stack(pick):
        out = np.zeros((dim, dim), dtype=np.complex128)
        offset = 0
        for rep in reps:
            out[offset : offset + rep.dim, offset : offset + rep.dim] = pick(rep)
            offset += rep.dim
        return out

    cartan = {
        name: stack(lambda rep, k=k: list(rep.cartan.values())[k])
        for k, name in enumerate(first.cartan)
    }
    raising = {
        name: stack(lambda rep, k=k: list(rep.raising.values())[k])
        for k, name in enumerate(first.raising)
    }
    lowering = {
        name: stack(lambda rep, k=k: list(rep.lowering.values())[k])
        for k, name in enumerate(first.lowering)
    }
    blocks = []
    offset = 0
    for rep in reps:
        for block in rep.blocks:
            proj = np.zeros((dim, dim), dtype=np.complex128)
            proj[
                offset : offset + rep.dim, offset : offset + rep.dim
            ] = block.projector
            blocks.append(InvariantBlock(block.label, block.dim, proj))
        offset += rep.dim
    return Representation(dim, cartan, raising, lowering, tuple(blocks))


def _site_operator(op, site, n):
    out = np.ones((1, 1), dtype=np.complex128)
    for k in range(n):
        out = kron(out, op if k == site else PAULI["I"])
    return out


def collective_spin(n_qubits):
    """Collective spin S_a = sum_k sigma_a^(k)/2 on n qubits, with blocks
    labeled by the total spin j recovered from the Casimir eigenvalues."""
    if not 1 <= n_qubits <= 8:
        raise ValueError(f"n_qubits must be in [1, 8], got {n_qubits}")
    dim = 2**n_qubits
    sz = sum(_site_operator(PAULI["Z"] / 2, k, n_qubits) for k in range(n_qubits))
    sx = sum(_site_operator(PAULI["X"] / 2, k, n_qubits) for k in range(n_qubits))
    sy = sum(_site_operator(PAULI["Y"] / 2, k, n_qubits) for k in range(n_qubits))
    sp = sx + 1j * sy
    sm = sx - 1j * sy
    blocks = block_decompose([sz], [sp], [sm])
    relabeled = tuple(
        InvariantBlock(_spin_from_casimir(b.label), b.dim, b.projector) for b in blocks
    )
    return Representation(
        dim=dim,
        cartan={"S_z": sz},
        raising={"S_+": sp},
        lowering={"S_-": sm},
        blocks=relabeled,
    )


def _spin_from_casimir(c):
    """Invert c = j(j+1), snapping to the nearest half-integer."""
    j = (math.sqrt(max(0.0, 1.0 + 4.0 * c)) - 1.0) / 2.0
    return round(2.0 * j) / 2.0


def casimir(cartan, raising, lowering):
    """Quadratic Casimir: sum h_i^2 + sum_a (e_a e_-a + e_-a e_a)/2."""
    mats = list(cartan) + list(raising)
    dim = as_matrix(mats[0]).shape[0]
    c2 = np.zeros((dim, dim), dtype=np.complex128)
    for h in cartan:
        c2 += as_matrix(h) @ as_matrix(h)
    for ep, em in zip(raising, lowering):
        c2 += (as_matrix(ep) @ as_matrix(em) + as_matrix(em) @ as_matrix(ep)) / 2.0
    return c2


def block_decompose(cartan, raising, lowering, cluster_tol=1e-8):
    """Invariant blocks from the eigenspaces of the quadratic Casimir.

    Degenerate Casimir eigenvalues give a single merged block (one block per
    clustered eigenvalue, multiplicities not split). Blocks are labeled by the
    raw Casimir eigenvalue and sorted by descending label.
    """
    c2 = casimir(cartan, raising, lowering)
    for g in list(cartan) + list(raising) + list(lowering):
        g = as_matrix(g)
        defect = np.linalg.norm(commutator(c2, g))
        scale = max(1.0, np.linalg.norm(c2) * np.linalg.norm(g))
        if defect > 1e-8 * scale:
            raise RepresentationError(
                "Casimir does not commute with all generators "
                f"(residual {defect:.3e}); generators do not close"
            )
    eig = eig_hermitian(c2)
    blocks = []
    idx = 0
    n = len(eig.eigenvalues)
    while idx < n:
        stop = idx + 1
        while stop < n and eig.eigenvalues[stop] - eig.eigenvalues[stop - 1] <= cluster_tol:
            stop += 1
        vecs = eig.eigenvectors[:, idx:stop]
        proj = vecs @ vecs.conj().T
        label = float(np.mean(eig.eigenvalues[idx:stop]))
        blocks.append(InvariantBlock(label=label, dim=stop - idx, projector=proj))
        idx = stop
    blocks.sort(key=lambda b: -b.label)
    return tuple(blocks)


def pauli_word(labels):
    """Tensor product of single-qubit Paulis named by a string over IXYZ."""
    if not labels:
        raise ValueError("pauli_word requires at least one letter")
    out = np.ones((1, 1), dtype=np.complex128)
    for ch in labels:
        if ch not in PAULI:
            raise ValueError(f"invalid Pauli letter {ch!r}; expected one of I, X, Y, Z")
        out = kron(out, PAULI[ch])
    return out


def unpolarized_state(rep, weights):
    """Block-diagonal state sum_l r_l P_l with unit trace.

    Weights must be nonnegative and satisfy sum_l r_l dim_l = 1.
    """
    weights = [float(w) for w in weights]
    if len(weights) != len(rep.blocks):
        raise ValueError(
            f"expected {len(rep.blocks)} weights, got {len(weights)}"
        )
    if any(w < 0 for w in weights):
        raise ValueError("weights must be nonnegative")
    total = sum(w * b.dim for w, b in zip(weights, rep.blocks))
    if abs(total - 1.0) > 1e-12:
        raise ValueError(f"weights must satisfy sum r_l dim_l = 1, got {total}")
    rho = np.zeros((rep.dim, rep.dim), dtype=np.complex128)
    for w, block in zip(weights, rep.blocks):
        rho += w * block.projector
    return rho


def root_value(h, e):
    """Recover the root value alpha(h) from [h, e] = alpha(h) e."""
    e = as_matrix(e)
    num = np.trace(dagger(e) @ commutator(h, e))
    den = np.trace(dagger(e) @ e)
    return float((num / den).real)


def validate_representation(rep, tol=1e-10):
    """Check every structural invariant; raise RepresentationError on failure."""
    for name, h in rep.cartan.items():
        if hermiticity_defect(h) > 1e-12:
            raise RepresentationError(f"cartan element {name} is not Hermitian")
    for (pname, ep), (mname, em) in zip(rep.raising.items(), rep.lowering.items()):
        if np.linalg.norm(dagger(ep) - em) > 1e-12 * max(1.0, np.linalg.norm(ep)):
            raise RepresentationError(f"{pname}^dag != {mname}")
    cartans = list(rep.cartan.values())
    for i, hi in enumerate(cartans):
        for hj in cartans[i + 1 :]:
            if np.linalg.norm(commutator(hi, hj)) > 1e-12 * max(
                1.0, np.linalg.norm(hi) * np.linalg.norm(hj)
            ):
                raise RepresentationError("cartan elements do not commute")
    for h in cartans:
        for e in list(rep.raising.values()) + list(rep.lowering.values()):
            alpha = root_value(h, e)
            resid = np.linalg.norm(commutator(h, e) - alpha * e)
            if resid > tol * max(1.0, np.linalg.norm(e)):
                raise RepresentationError(
                    f"[h, e] is not proportional to e (residual {resid:.3e})"
                )
    total = sum(b.dim for b in rep.blocks)
    if total != rep.dim:
        raise RepresentationError(f"block dims sum to {total}, expected {rep.dim}")
    ident = np.zeros((rep.dim, rep.dim), dtype=np.complex128)
    for block in rep.blocks:
        p = block.projector
        if np.linalg.norm(p @ p - p) > tol or hermiticity_defect(p) > tol:
            raise RepresentationError("block projector is not a Hermitian idempotent")
        for g in rep.generators:
            if np.linalg.norm(commutator(p, g)) > tol * max(1.0, np.linalg.norm(g)):
                raise RepresentationError("block projector does not commute with a generator")
        ident += p
    if np.linalg.norm(ident - np.eye(rep.dim)) > tol:
        raise RepresentationError("block projectors do not resolve the identity")
    return rep
