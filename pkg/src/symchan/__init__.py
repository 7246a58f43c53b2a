"""Symmetry-adapted quantum channels.

Builds dephasing, amplitude-damping and generalized depolarizing channels
from Lie-algebra representation data (su(2) irreps, direct sums, collective
spins), evolves density matrices under the corresponding Lindblad/Kraus
dynamics, and verifies the structural and asymptotic properties numerically.
"""

from .backend import BACKEND_NAME
from .channelcore import (
    ChannelReport,
    KrausChannel,
    LindbladGenerator,
    Superoperator,
    apply_kraus,
    choi_matrix,
    compose,
    first_order_kraus,
    kraus_superoperator,
    lindblad_action,
    liouvillian_matrix,
    unvec,
    validate_state,
    vec,
    verify_channel,
)
from .channelzoo import (
    bloch_of,
    damping_channel,
    dephasing_channel,
    depolarizing_qubit_cpm,
    depolarizing_qubit_lindblad,
    flip_channel,
    pauli_product_channel,
    state_of,
    symmetric_depolarizer,
)
from .dynamics import (
    Trajectory,
    asymptotic_state,
    block_traces,
    fixed_points,
    propagate,
    propagate_stepped,
    trace_distance,
)
from .liealg import (
    InvariantBlock,
    Representation,
    block_decompose,
    collective_spin,
    direct_sum,
    pauli_word,
    spin_irrep,
    unpolarized_state,
)
from .matkernel import (
    HermitianEigen,
    dagger,
    eig_hermitian,
    expm,
    frobenius_distance,
    kron,
    matmul,
    svd_nullspace,
    trace,
)

__version__ = "0.1.0"
