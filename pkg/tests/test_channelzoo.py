import numpy as np
import pytest

from symchan import channelzoo as zoo
from symchan.channelcore import (
    apply_kraus,
    lindblad_action,
    verify_channel,
)
from symchan.liealg import PAULI, collective_spin, spin_irrep, unpolarized_state

from conftest import random_state

I2 = np.eye(2, dtype=complex)
KET0 = np.diag([1.0, 0.0]).astype(complex)


class TestFlipChannel:
    def test_p_zero_is_identity(self, rng):
        rho = random_state(rng, 2)
        assert np.allclose(apply_kraus(zoo.flip_channel("x", 0.0), rho), rho)

    def test_full_bit_flip_mixes(self):
        out = apply_kraus(zoo.flip_channel("x", 1.0), KET0)
        assert np.allclose(out, I2 / 2)

    def test_phase_flip_fixes_diagonals(self, rng):
        rho = np.diag(rng.dirichlet([1, 1])).astype(complex)
        for p in (0.2, 0.7, 1.0):
            assert np.allclose(apply_kraus(zoo.flip_channel("z", p), rho), rho)

    def test_out_of_range(self):
        with pytest.raises(ValueError):
            zoo.flip_channel("x", 2.0)
        with pytest.raises(ValueError):
            zoo.flip_channel("w", 0.5)


class TestDepolarizingQubitCpm:
    def test_p_zero_identity(self, rng):
        rho = random_state(rng, 2)
        assert np.allclose(apply_kraus(zoo.depolarizing_qubit_cpm(0.0), rho), rho)

    def test_three_quarters_fully_mixes(self):
        out = apply_kraus(zoo.depolarizing_qubit_cpm(0.75), KET0)
        assert np.allclose(out, I2 / 2, atol=1e-12)

    def test_bloch_contraction_factor(self):
        # s -> (1 - 4p/3) s, checked on the six axis states
        for p in (0.1, 0.4, 0.9):
            ch = zoo.depolarizing_qubit_cpm(p)
            for axis in range(3):
                for sign in (1.0, -1.0):
                    s = np.zeros(3)
                    s[axis] = sign
                    out = zoo.bloch_of(apply_kraus(ch, zoo.state_of(s)))
                    assert np.allclose(out, (1 - 4 * p / 3) * s, atol=1e-12)


class TestDepolarizingQubitLindblad:
    def test_fixed_point(self):
        g = zoo.depolarizing_qubit_lindblad(2.0)
        assert np.allclose(lindblad_action(g, I2 / 2), 0)

    def test_formula_on_basis_state(self):
        g = zoo.depolarizing_qubit_lindblad(1.5)
        expected = -1.5 * (KET0 - I2 / 2)
        assert np.allclose(lindblad_action(g, KET0), expected)

    def test_entrywise_identity_on_random_states(self, rng):
        g = zoo.depolarizing_qubit_lindblad(0.8)
        for _ in range(20):
            rho = random_state(rng, 2)
            expected = -0.8 * (rho - I2 / 2)
            assert np.max(np.abs(lindblad_action(g, rho) - expected)) < 1e-12

    def test_bloch_derivative(self):
        g = zoo.depolarizing_qubit_lindblad(1.0)
        s = np.array([0.2, -0.5, 0.6])
        # tr(L(rho) sigma_j) = -Gamma s_j
        sdot = np.array(
            [np.trace(lindblad_action(g, zoo.state_of(s)) @ PAULI[a]).real for a in "XYZ"]
        )
        assert np.allclose(sdot, -s, atol=1e-12)

    def test_rejects_nonpositive_rate(self):
        with pytest.raises(ValueError):
            zoo.depolarizing_qubit_lindblad(0.0)


class TestBloch:
    def test_named_states(self):
        assert np.allclose(zoo.bloch_of(I2 / 2), [0, 0, 0])
        assert np.allclose(zoo.bloch_of(KET0), [0, 0, 1])
        plus = np.full((2, 2), 0.5, dtype=complex)
        assert np.allclose(zoo.bloch_of(plus), [1, 0, 0])

    def test_roundtrip(self, rng):
        for _ in range(10):
            s = rng.normal(size=3)
            s *= rng.uniform(0, 1) / np.linalg.norm(s)
            assert np.allclose(zoo.bloch_of(zoo.state_of(s)), s, atol=1e-14)

    def test_rejects_long_vector(self):
        with pytest.raises(ValueError):
            zoo.state_of([1.0, 1.0, 0.0])


class TestPauliProductChannel:
    def test_single_qubit_matches_cpm(self):
        ch_n = zoo.pauli_product_channel(1, 0.3)
        ch_1 = zoo.depolarizing_qubit_cpm(0.3)
        got = sorted(np.linalg.norm(k) for k in ch_n.kraus_ops)
        want = sorted(np.linalg.norm(k) for k in ch_1.kraus_ops)
        assert np.allclose(got, want)

    def test_two_qubit_full_mix(self, rng):
        ch = zoo.pauli_product_channel(2, 0.75)
        rho = np.kron(random_state(rng, 2), random_state(rng, 2))
        assert np.allclose(apply_kraus(ch, rho), np.eye(4) / 4, atol=1e-12)

    def test_word_weights(self):
        n, p = 2, 0.4
        ch = zoo.pauli_product_channel(n, p)
        weights = sorted(np.linalg.norm(k) ** 2 / 4 for k in ch.kraus_ops)
        expected = sorted(
            (1 - p) ** (n - k) * (p / 3) ** k
            for k in [0, 1, 1, 1, 1, 1, 1, 2, 2, 2, 2, 2, 2, 2, 2, 2]
        )
        assert np.allclose(weights, expected)

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_tp_cp_certified(self, n):
        assert verify_channel(zoo.pauli_product_channel(n, 0.35)).passed

    def test_range_checks(self):
        with pytest.raises(ValueError):
            zoo.pauli_product_channel(0, 0.5)
        with pytest.raises(ValueError):
            zoo.pauli_product_channel(7, 0.5)
        with pytest.raises(ValueError):
            zoo.pauli_product_channel(2, 1.5)


class TestDephasingChannel:
    def test_spin_half_two_commutator_form(self, rng):
        rep = spin_irrep(1)
        g = zoo.dephasing_channel(rep, [1.0])
        sz = rep.cartan["S_z"]
        rho = random_state(rng, 2)
        # general form; for spin-1/2 S_z^2 = 1/4 so it reduces to SzρSz - ρ/4
        expected = sz @ rho @ sz - rho / 4
        assert np.allclose(lindblad_action(g, rho), expected, atol=1e-13)

    def test_diagonal_states_fixed(self, rng):
        rep = spin_irrep(4)
        g = zoo.dephasing_channel(rep, [0.7])
        rho = np.diag(rng.dirichlet(np.ones(5))).astype(complex)
        assert np.allclose(lindblad_action(g, rho), 0, atol=1e-13)

    def test_offdiagonal_decay_rate(self, rng):
        # rho_mm'(t) = exp(-a (m-m')^2 t / 2) rho_mm'(0) for spin-1
        from symchan.dynamics import propagate

        rep = spin_irrep(2)
        a = 0.9
        g = zoo.dephasing_channel(rep, [a])
        rho0 = random_state(rng, 3)
        t = 0.7
        rho_t = propagate(g, rho0, [t]).states[0]
        m = np.array([1.0, 0.0, -1.0])
        decay = np.exp(-a * (m[:, None] - m[None, :]) ** 2 * t / 2)
        assert np.allclose(rho_t, decay * rho0, atol=1e-12)

    def test_rate_count_enforced(self):
        with pytest.raises(ValueError):
            zoo.dephasing_channel(spin_irrep(2), [1.0, 1.0])


class TestDampingChannel:
    def test_spin_half_standard_form(self, rng):
        rep = spin_irrep(1)
        g = zoo.damping_channel(rep, [1.0])
        sp, sm = rep.raising["S_+"], rep.lowering["S_-"]
        rho = random_state(rng, 2)
        expected = sm @ rho @ sp - 0.5 * (sp @ sm @ rho + rho @ sp @ sm)
        assert np.allclose(lindblad_action(g, rho), expected, atol=1e-13)

    def test_lowest_weight_annihilated(self):
        for two_j in (1, 2, 3):
            rep = spin_irrep(two_j)
            g = zoo.damping_channel(rep, [1.0])
            ground = np.zeros((rep.dim, rep.dim), dtype=complex)
            ground[-1, -1] = 1.0
            assert np.allclose(lindblad_action(g, ground), 0, atol=1e-13)

    def test_spin1_population_cascade(self):
        from symchan.dynamics import propagate

        rep = spin_irrep(2)
        a = 1.0
        g = zoo.damping_channel(rep, [a])
        rho0 = np.diag([1.0, 0.0, 0.0]).astype(complex)
        traj = propagate(g, rho0, np.linspace(0.01, 10.0 / a, 30))
        pops = np.array([np.diag(s).real for s in traj.states])
        assert pops[-1, 2] > 0.99  # drained into m = -1
        assert np.all(np.diff(pops[:, 0]) <= 1e-12)  # top level only loses
        assert np.all(np.diff(pops[:, 2]) >= -1e-12)  # bottom level only gains


class TestSymmetricDepolarizer:
    def test_spin_half_su2_form(self, rng):
        rep = spin_irrep(1)
        g = zoo.symmetric_depolarizer(rep, [1.0])
        sp, sm = rep.raising["S_+"], rep.lowering["S_-"]
        rho = random_state(rng, 2)
        anti = sp @ sm + sm @ sp
        expected = sm @ rho @ sp + sp @ rho @ sm - 0.5 * (anti @ rho + rho @ anti)
        assert np.allclose(lindblad_action(g, rho), expected, atol=1e-13)

    @pytest.mark.parametrize("two_j", [1, 2, 3])
    def test_maximally_mixed_fixed(self, two_j):
        rep = spin_irrep(two_j)
        g = zoo.symmetric_depolarizer(rep, [0.6])
        assert np.allclose(lindblad_action(g, np.eye(rep.dim) / rep.dim), 0, atol=1e-13)

    def test_every_unpolarized_state_fixed(self, rng):
        rep = collective_spin(2)
        g = zoo.symmetric_depolarizer(rep, [1.3])
        for _ in range(5):
            w = rng.dirichlet([1, 1])
            weights = [w[0] / 3, w[1]]
            rho = unpolarized_state(rep, weights)
            assert np.linalg.norm(lindblad_action(g, rho)) < 1e-12

    def test_two_qubit_asymptote(self):
        from symchan.dynamics import asymptotic_state

        rep = collective_spin(2)
        g = zoo.symmetric_depolarizer(rep, [1.0])
        rho0 = np.zeros((4, 4), dtype=complex)
        rho0[0, 0] = 1.0  # |up,up>
        rho_inf = asymptotic_state(g, rho0, horizon=40.0)
        assert np.allclose(rho_inf, rep.blocks[0].projector / 3, atol=1e-8)

    def test_commutes_with_block_structure(self, rng):
        rep = collective_spin(2)
        g = zoo.symmetric_depolarizer(rep, [1.0])
        rho = random_state(rng, 4)
        out = lindblad_action(g, rho)
        blockwise = sum(
            b1.projector @ lindblad_action(g, b1.projector @ rho @ b2.projector) @ b2.projector
            for b1 in rep.blocks
            for b2 in rep.blocks
        )
        assert np.allclose(out, blockwise, atol=1e-12)


class TestAllChannelsCertified:
    @pytest.mark.parametrize("p", [0.0, 0.25, 0.5, 0.75, 1.0])
    def test_flip_and_depolarizer(self, p):
        for axis in ("x", "y", "z"):
            assert verify_channel(zoo.flip_channel(axis, p)).passed
        assert verify_channel(zoo.depolarizing_qubit_cpm(p)).passed
