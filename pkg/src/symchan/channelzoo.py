"""Named channel constructors.

Qubit flips and depolarizers, tensor-product Pauli noise, and the three
representation-driven generators: dephasing (jumps along Cartan elements),
amplitude damping (jumps along lowering operators) and the symmetric
depolarizer (jumps along both lowering and raising operators with equal
rates, whose fixed points are the unpolarized states).

The depolarizing Kraus coefficients are sqrt(1-p) and sqrt(p/3); anything
else fails trace preservation.
"""

import numpy as np

from .channelcore import KrausChannel, LindbladGenerator
from .errors import StateError
from .liealg import PAULI, pauli_word
from .matkernel import as_matrix


def flip_channel(axis, p):
    """Bit (x), bit-phase (y) or phase (z) flip with error probability p/2."""
    if axis not in ("x", "y", "z"):
        raise ValueError(f"axis must be one of x, y, z, got {axis!r}")
    p = float(p)
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must be in [0, 1], got {p}")
    sigma = PAULI[axis.upper()]
    k0 = np.sqrt(1.0 - p / 2.0) * np.eye(2, dtype=np.complex128)
    k1 = np.sqrt(p / 2.0) * sigma
    return KrausChannel(dim=2, kraus_ops=(k0, k1))


def depolarizing_qubit_cpm(p):
    """E(rho) = (1-p) rho + (p/3) sum_j sigma_j rho sigma_j."""
    p = float(p)
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must be in [0, 1], got {p}")
    ops = [np.sqrt(1.0 - p) * np.eye(2, dtype=np.complex128)]
    ops += [np.sqrt(p / 3.0) * PAULI[ax] for ax in ("X", "Y", "Z")]
    return KrausChannel(dim=2, kraus_ops=tuple(ops))


def depolarizing_qubit_lindblad(gamma):
    """Generator with action -Gamma (rho - 1/2) on unit-trace states.

    Realized with the three Pauli jumps at rate Gamma/4 each; the identity
    (1/4) sum_j (sigma_j rho sigma_j - rho) = -(rho - tr(rho)/2) makes the
    action exact, which the tests assert entrywise.
    """
    gamma = float(gamma)
    if gamma <= 0:
        raise ValueError(f"gamma must be positive, got {gamma}")
    jumps = tuple((gamma / 4.0, PAULI[ax]) for ax in ("X", "Y", "Z"))
    return LindbladGenerator(
        dim=2, hamiltonian=np.zeros((2, 2), dtype=np.complex128), jumps=jumps
    )


def bloch_of(rho):
    """Bloch vector s_j = tr(rho sigma_j) of a qubit state."""
    rho = as_matrix(rho)
    if rho.shape != (2, 2):
        raise StateError(f"expected a 2x2 state, got {rho.shape}")
    return np.array(
        [np.trace(rho @ PAULI[ax]).real for ax in ("X", "Y", "Z")], dtype=float
    )


def state_of(s):
    """Qubit state rho = (1 + s . sigma)/2 from a Bloch vector."""
    s = np.asarray(s, dtype=float)
    if s.shape != (3,):
        raise ValueError(f"Bloch vector must have 3 components, got shape {s.shape}")
    if np.linalg.norm(s) > 1.0 + 1e-12:
        raise ValueError(f"Bloch vector length {np.linalg.norm(s):.12g} exceeds 1")
    rho = np.eye(2, dtype=np.complex128)
    for comp, ax in zip(s, ("X", "Y", "Z")):
        rho = rho + comp * PAULI[ax]
    return rho / 2.0


def pauli_product_channel(n, per_qubit_p):
    """n-fold tensor power of the single-qubit depolarizer.

    The Kraus operator for a Pauli word with k non-identity letters carries
    weight sqrt((1-p)^(n-k) (p/3)^k); there are 4^n of them.
    """
    n = int(n)
    if not 1 <= n <= 6:
        raise ValueError(f"n must be in [1, 6], got {n}")
    p = float(per_qubit_p)
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"per_qubit_p must be in [0, 1], got {p}")
    letters = "IXYZ"
    words = [""]
    for _ in range(n):
        words = [w + ch for w in words for ch in letters]
    ops = []
    for word in words:
        k = sum(1 for ch in word if ch != "I")
        weight = np.sqrt((1.0 - p) ** (n - k) * (p / 3.0) ** k)
        ops.append(weight * pauli_word(word))
    return KrausChannel(dim=2**n, kraus_ops=tuple(ops))


def _rate_list(rates, expected, what):
    rates = [float(r) for r in rates]
    if len(rates) != expected:
        raise ValueError(f"expected {expected} rates (one per {what}), got {len(rates)}")
    if any(r < 0 for r in rates):
        raise ValueError("rates must be nonnegative")
    return rates


def dephasing_channel(rep, rates):
    """Pure dephasing: one jump per Cartan element, H = 0.

    Preserves weight-diagonal states; an off-diagonal element between weights
    m and m' decays at rate a (m - m')^2 / 2 for a single Cartan jump.
    """
    rates = _rate_list(rates, len(rep.cartan), "Cartan element")
    jumps = tuple(zip(rates, rep.cartan.values()))
    return LindbladGenerator(
        dim=rep.dim, hamiltonian=np.zeros((rep.dim, rep.dim)), jumps=jumps
    )


def damping_channel(rep, rates):
    """Amplitude damping: one jump per lowering operator, H = 0.

    Drains every invariant block toward its lowest-weight state, which all
    lowering operators annihilate.
    """
    rates = _rate_list(rates, len(rep.lowering), "lowering operator")
    jumps = tuple(zip(rates, rep.lowering.values()))
    return LindbladGenerator(
        dim=rep.dim, hamiltonian=np.zeros((rep.dim, rep.dim)), jumps=jumps
    )


def symmetric_depolarizer(rep, rates):
    """Depolarizer adapted to the representation: for each root pair, jumps
    along the lowering AND the raising operator with the same rate.

    Every unpolarized state (block-uniform mixture) is a fixed point.
    """
    rates = _rate_list(rates, len(rep.raising), "root pair")
    jumps = []
    for rate, (ep, em) in zip(rates, rep.root_pairs()):
        jumps.append((rate, em))
        jumps.append((rate, ep))
    return LindbladGenerator(
        dim=rep.dim, hamiltonian=np.zeros((rep.dim, rep.dim)), jumps=tuple(jumps)
    )
