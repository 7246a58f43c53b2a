"""Time propagation, trajectories, fixed points and asymptotic states.

Exact propagation goes through the dense superoperator exponential,
rho(t) = unvec(expm(S t) vec(rho0)); stepped propagation iterates the
first-order Kraus map. Both record their samples in a Trajectory.
"""

from dataclasses import dataclass, field

import numpy as np

from .channelcore import (
    _apply_kraus_raw,
    first_order_kraus,
    lindblad_action,
    liouvillian_matrix,
    unvec,
    validate_state,
    vec,
)
from .errors import ConvergenceError, PropagationError
from .matkernel import as_matrix, eig_hermitian, expm, hermiticity_defect, svd_nullspace


@dataclass
class Trajectory:
    """Time-ordered state samples plus optional named observable series."""

    times: np.ndarray
    states: list
    observables: dict = field(default_factory=dict)

    def __post_init__(self):
        self.times = np.asarray(self.times, dtype=float)
        if len(self.states) != self.times.size:
            raise ValueError("times and states must have equal length")
        if np.any(np.diff(self.times) <= 0):
            raise ValueError("times must be strictly increasing")

    def final_state(self):
        return self.states[-1]


def check_trajectory(
    traj, herm_tol=1e-10, trace_tol=1e-10, psd_tol=1e-8
):
    """Assert the state invariants at every sample."""
    for t, rho in zip(traj.times, traj.states):
        if hermiticity_defect(rho) > herm_tol:
            raise PropagationError(f"state at t={t} is not Hermitian", time=t)
        tr = np.trace(rho)
        if abs(tr - 1.0) > trace_tol:
            raise PropagationError(
                f"state at t={t} has trace {tr:.12g}", time=t
            )
        min_eig = eig_hermitian((rho + rho.conj().T) / 2).eigenvalues[0]
        if min_eig < -psd_tol:
            raise PropagationError(
                f"state at t={t} has eigenvalue {min_eig:.3e}", time=t
            )
    return traj


def propagate(g, rho0, times, check=True):
    """Exact evolution under the generator at the requested sample times."""
    rho0 = validate_state(as_matrix(rho0))
    times = np.asarray(times, dtype=float)
    if times.size == 0:
        raise ValueError("at least one sample time is required")
    if times[0] < 0 or np.any(np.diff(times) <= 0):
        raise ValueError("times must be nonnegative and strictly increasing")
    superop = liouvillian_matrix(g)
    v0 = vec(rho0)
    states = []
    for t in times:
        if t == 0.0:
            states.append(rho0.copy())
        else:
            states.append(unvec(expm(superop.matrix * t) @ v0))
    traj = Trajectory(times=times, states=states)
    if check:
        check_trajectory(traj)
    return traj


def propagate_stepped(g, rho0, tau, n_steps, check=True):
    """Repeated application of the first-order Kraus map.

    Globally first-order accurate in tau. The per-step map is trace
    preserving only to O(tau^2), so the invariant tolerances are widened by
    the accumulated defect bound before checking.
    """
    rho0 = validate_state(as_matrix(rho0))
    n_steps = int(n_steps)
    if n_steps < 0:
        raise ValueError("n_steps must be nonnegative")
    ch = first_order_kraus(g, tau)
    states = [rho0.copy()]
    rho = rho0
    for _ in range(n_steps):
        rho = _apply_kraus_raw(ch, rho)
        states.append(rho)
    times = tau * np.arange(n_steps + 1)
    traj = Trajectory(times=times, states=states)
    if check:
        # One step inflates the trace by at most ~ (tau * rate scale)^2.
        scale = sum(rate * np.linalg.norm(op) ** 2 for rate, op in g.jumps)
        scale += np.linalg.norm(g.hamiltonian) ** 2
        drift = 10.0 * n_steps * (tau**2) * max(scale, 1.0) ** 2
        check_trajectory(
            traj,
            herm_tol=1e-10,
            trace_tol=max(1e-10, drift),
            psd_tol=max(1e-8, drift),
        )
    return traj


def fixed_points(g, tol=1e-10):
    """Basis of the Liouvillian kernel, unvectorized to matrices."""
    superop = liouvillian_matrix(g)
    return [unvec(v) for v in svd_nullspace(superop.matrix, tol=tol)]


def default_horizon(g):
    """Crude horizon guess: 20 over the smallest nonzero rate."""
    rate = g.min_nonzero_rate()
    if rate == 0.0:
        raise ValueError("generator has no dissipation; no finite horizon exists")
    return 20.0 / rate


def asymptotic_state(g, rho0, horizon=None, check_tol=1e-8):
    """State at a long horizon, certified stationary a posteriori.

    Fails with ConvergenceError unless the generator residual at the horizon
    is below check_tol and doubling the horizon moves the state by less than
    check_tol.
    """
    if horizon is None:
        horizon = default_horizon(g)
    horizon = float(horizon)
    if horizon <= 0:
        raise ValueError("horizon must be positive")
    traj = propagate(g, rho0, [horizon, 2.0 * horizon])
    rho_h, rho_2h = traj.states
    residual = float(np.linalg.norm(lindblad_action(g, rho_h)))
    drift = float(np.linalg.norm(rho_2h - rho_h))
    if residual > check_tol or drift > check_tol:
        raise ConvergenceError(
            f"not stationary at horizon {horizon:g}: generator residual "
            f"{residual:.3e}, doubling drift {drift:.3e} (tol {check_tol:g})"
        )
    return rho_h


def trace_distance(a, b):
    """(1/2) sum of absolute eigenvalues of the Hermitian difference."""
    diff = as_matrix(a) - as_matrix(b)
    diff = (diff + diff.conj().T) / 2
    return 0.5 * float(np.sum(np.abs(eig_hermitian(diff).eigenvalues)))


def block_traces(rep, rho):
    """Occupation of each invariant block: [(label, tr(P_l rho)), ...]."""
    rho = as_matrix(rho)
    return [
        (block.label, float(np.trace(block.projector @ rho).real))
        for block in rep.blocks
    ]
