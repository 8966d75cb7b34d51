import math

import numpy as np
import pytest

from spinsonic.quantum import (
    EntropyTrace,
    Model,
    ScenarioConfig,
    SphericalAngles,
    StateVector,
    align_phase,
    apply_oat,
    apply_rotation_y,
    coherent_state,
    entanglement_entropy,
    entropy_trace,
    evolve_trajectory,
    kicked_rotor_step,
    phase_aligned_distance,
    reduced_density,
    wrap_phi,
)
from spinsonic.oracle import collective_operator, dense_evolution


def random_state(num_spins, rng):
    v = rng.normal(size=1 << num_spins) + 1j * rng.normal(size=1 << num_spins)
    return StateVector(v / np.linalg.norm(v), num_spins)


class TestAngles:
    def test_wrap_phi_range(self):
        for phi in (-7.0, -math.pi, 0.0, 1.0, math.pi, 5.0, 12.0):
            w = wrap_phi(phi)
            assert -math.pi < w <= math.pi
            # same direction on the circle
            assert math.isclose(math.cos(w), math.cos(phi), abs_tol=1e-12)
            assert math.isclose(math.sin(w), math.sin(phi), abs_tol=1e-12)

    def test_wrap_phi_keeps_pi(self):
        assert wrap_phi(math.pi) == math.pi
        assert wrap_phi(-math.pi) == math.pi

    def test_theta_out_of_range(self):
        with pytest.raises(ValueError):
            SphericalAngles(-0.1, 0.0)
        with pytest.raises(ValueError):
            SphericalAngles(math.pi + 0.1, 0.0)

    def test_phi_is_wrapped(self):
        assert SphericalAngles(1.0, 3 * math.pi).phi == pytest.approx(math.pi)


class TestStateVector:
    def test_rejects_wrong_length(self):
        with pytest.raises(ValueError):
            StateVector(np.array([1.0, 0.0, 0.0]), 2)

    def test_rejects_unnormalized(self):
        with pytest.raises(ValueError):
            StateVector(np.array([1.0, 1.0]), 1)


class TestCoherentState:
    def test_north_pole_single_spin(self):
        state = coherent_state(1, SphericalAngles(0.0, 0.0))
        assert np.allclose(state.amplitudes, [1.0, 0.0])

    def test_south_pole_single_spin(self):
        state = coherent_state(1, SphericalAngles(math.pi, 0.0))
        assert np.allclose(align_phase(state.amplitudes), [0.0, 1.0], atol=1e-12)

    def test_equatorial_two_spins(self):
        state = coherent_state(2, SphericalAngles(math.pi / 2, 0.0))
        assert np.allclose(np.abs(state.amplitudes), 0.5)

    def test_matches_dense_rotations(self):
        # e^{-i phi Sz} e^{-i theta Sy} |000> built from matrix exponentials
        theta, phi = 0.7, 1.1
        start = np.zeros(8, dtype=complex)
        start[0] = 1.0
        ry = dense_evolution(collective_operator("sy", 3), theta).entries
        rz = dense_evolution(collective_operator("sz", 3), phi).entries
        dense = rz @ ry @ start
        state = coherent_state(3, SphericalAngles(theta, phi))
        assert phase_aligned_distance(state.amplitudes, dense) < 1e-10

    def test_size_guard(self):
        with pytest.raises(ValueError):
            coherent_state(0, SphericalAngles(0.0, 0.0))
        with pytest.raises(ValueError):
            coherent_state(15, SphericalAngles(0.0, 0.0))


class TestApplyOat:
    def test_zero_time_identity(self):
        rng = np.random.default_rng(1)
        state = random_state(3, rng)
        out = apply_oat(state, 0.0)
        assert np.allclose(out.amplitudes, state.amplitudes)

    def test_two_spin_phases(self):
        # |01>, |10> carry m = 0 (no phase); |00>, |11> carry m^2 = 1
        rng = np.random.default_rng(2)
        state = random_state(2, rng)
        t = 0.83
        out = apply_oat(state, t)
        phase = np.exp(-1j * t)
        expected = state.amplitudes * np.array([phase, 1.0, 1.0, phase])
        assert np.allclose(out.amplitudes, expected)

    @pytest.mark.parametrize("num_spins", [2, 4, 8])
    def test_full_period_disentangles(self, num_spins):
        # e^{-i pi m^2} = e^{-i pi m} for integer m: a collective z-rotation
        rng = np.random.default_rng(3)
        for _ in range(5):
            angles = SphericalAngles(rng.uniform(0, math.pi), rng.uniform(-math.pi, math.pi))
            state = apply_oat(coherent_state(num_spins, angles), math.pi)
            assert entanglement_entropy(state) < 1e-8

    def test_norm_preserved(self):
        rng = np.random.default_rng(4)
        state = apply_oat(random_state(4, rng), 2.7)
        assert abs(np.linalg.norm(state.amplitudes) - 1.0) < 1e-12


class TestRotationY:
    def test_zero_angle_identity(self):
        rng = np.random.default_rng(5)
        state = random_state(3, rng)
        assert np.allclose(apply_rotation_y(state, 0.0).amplitudes, state.amplitudes)

    def test_half_turn_single_spin(self):
        state = coherent_state(1, SphericalAngles(0.0, 0.0))
        out = apply_rotation_y(state, math.pi / 2)
        assert np.allclose(out.amplitudes, [1 / math.sqrt(2), 1 / math.sqrt(2)])

    def test_matches_dense_exponential(self):
        beta = 0.9
        dense_u = dense_evolution(collective_operator("sy", 3), beta).entries
        rng = np.random.default_rng(6)
        for _ in range(5):
            state = random_state(3, rng)
            fast = apply_rotation_y(state, beta)
            assert phase_aligned_distance(fast.amplitudes, dense_u @ state.amplitudes) < 1e-10


class TestKickedRotor:
    def test_identity_step(self):
        rng = np.random.default_rng(7)
        state = random_state(2, rng)
        out = kicked_rotor_step(state, 0.0, 0.0)
        assert np.allclose(out.amplitudes, state.amplitudes)

    def test_beta_zero_reduces_to_twisting(self):
        # 50 kicks with beta = 0 equal a single twisting evolution at
        # t = kicks * alpha / L
        state = coherent_state(4, SphericalAngles(math.pi / 2, 0.3))
        kicked = state
        for _ in range(50):
            kicked = kicked_rotor_step(kicked, 0.4, 0.0)
        twisted = apply_oat(state, 50 * 0.4 / 4)
        assert phase_aligned_distance(kicked.amplitudes, twisted.amplitudes) < 1e-8

    def test_single_step_matches_dense(self):
        state = coherent_state(2, SphericalAngles(0.0, 0.0))
        fast = kicked_rotor_step(state, 0.1, math.pi / 2)
        u = dense_evolution(collective_operator("sz2", 2), 0.1 / 2).entries
        v = dense_evolution(collective_operator("sy", 2), math.pi / 2).entries
        dense = u @ (v @ state.amplitudes)
        assert phase_aligned_distance(fast.amplitudes, dense) < 1e-10


class TestTrajectory:
    def test_length_and_time_grid(self):
        config = ScenarioConfig(Model.OAT, 8, math.pi / 2, -math.pi / 2,
                                num_steps=200, dt=math.pi / 200)
        states = evolve_trajectory(config)
        assert len(states) == 201
        # endpoint state equals a single evolution to t = pi
        direct = apply_oat(coherent_state(8, config.initial_angles), math.pi)
        assert phase_aligned_distance(states[-1].amplitudes, direct.amplitudes) < 1e-10

    def test_zero_steps(self):
        config = ScenarioConfig(Model.KICKED_ROTOR, 2, 0.0, 0.0, num_steps=0,
                                alpha=0.1, beta=math.pi / 2)
        states = evolve_trajectory(config)
        assert len(states) == 1

    def test_norms_along_long_trajectory(self):
        config = ScenarioConfig(Model.KICKED_ROTOR, 4, 1.0, 0.5, num_steps=500,
                                alpha=1.3, beta=0.7)
        for state in evolve_trajectory(config):
            assert abs(np.vdot(state.amplitudes, state.amplitudes).real - 1.0) < 1e-10


class TestScenarioConfig:
    def test_odd_spins_rejected(self):
        with pytest.raises(ValueError):
            ScenarioConfig(Model.OAT, 7, 0.0, 0.0, num_steps=1, dt=0.1)

    def test_size_cap(self):
        with pytest.raises(ValueError):
            ScenarioConfig(Model.OAT, 16, 0.0, 0.0, num_steps=1, dt=0.1)

    def test_oat_needs_positive_dt(self):
        with pytest.raises(ValueError):
            ScenarioConfig(Model.OAT, 4, 0.0, 0.0, num_steps=1, dt=0.0)

    def test_negative_alpha_rejected(self):
        with pytest.raises(ValueError):
            ScenarioConfig(Model.KICKED_ROTOR, 4, 0.0, 0.0, num_steps=1, alpha=-1.0)


class TestReducedDensity:
    def test_product_state_rank_one(self):
        state = coherent_state(4, SphericalAngles(1.2, -0.4))
        rho = reduced_density(state)
        eigs = np.sort(rho.eigenvalues)[::-1]
        assert eigs[0] == pytest.approx(1.0, abs=1e-12)
        assert np.all(eigs[1:] < 1e-12)

    def test_bell_pair(self):
        bell = StateVector(np.array([1, 0, 0, 1]) / math.sqrt(2), 2)
        rho = reduced_density(bell)
        assert np.allclose(rho.entries, np.diag([0.5, 0.5]))
        assert np.allclose(np.sort(rho.eigenvalues), [0.5, 0.5])

    def test_ghz_eight_spins_direct_summation(self):
        amps = np.zeros(256, dtype=complex)
        amps[0] = amps[255] = 1 / math.sqrt(2)
        state = StateVector(amps, 8)
        rho = reduced_density(state)
        # direct partial trace: rho_A = sum_b psi[:, b] psi[:, b]^dagger
        psi = amps.reshape(16, 16)
        direct = np.zeros((16, 16), dtype=complex)
        for b in range(16):
            direct += np.outer(psi[:, b], psi[:, b].conj())
        assert np.allclose(rho.entries, direct, atol=1e-12)
        eigs = np.sort(np.linalg.eigvalsh(direct))[::-1]
        assert np.allclose(eigs[:2], [0.5, 0.5], atol=1e-12)
        assert np.allclose(np.sort(rho.eigenvalues)[::-1][:2], [0.5, 0.5], atol=1e-12)

    def test_hermitian_unit_trace_psd(self):
        rng = np.random.default_rng(8)
        state = random_state(6, rng)
        rho = reduced_density(state)
        assert np.abs(rho.entries - rho.entries.conj().T).max() < 1e-12
        assert abs(np.trace(rho.entries).real - 1.0) < 1e-10
        assert rho.eigenvalues.min() > -1e-12

    def test_odd_chain_rejected(self):
        state = coherent_state(3, SphericalAngles(0.3, 0.0))
        with pytest.raises(ValueError):
            reduced_density(state)


class TestEntropy:
    def test_product_state_zero(self):
        state = coherent_state(8, SphericalAngles(0.9, 2.0))
        assert abs(entanglement_entropy(state)) < 1e-10

    def test_bell_pair_one_bit(self):
        bell = StateVector(np.array([1, 0, 0, 1]) / math.sqrt(2), 2)
        assert entanglement_entropy(bell) == pytest.approx(1.0, abs=1e-12)

    def test_twisting_generates_ghz(self):
        # quarter-period twisting of the equatorial state: 1 bit exactly,
        # reduced state has exactly two eigenvalues 1/2
        state = coherent_state(8, SphericalAngles(math.pi / 2, -math.pi / 2))
        ghz = apply_oat(state, math.pi / 2)
        assert entanglement_entropy(ghz) == pytest.approx(1.0, abs=1e-8)
        eigs = np.sort(reduced_density(ghz).eigenvalues)[::-1]
        assert np.allclose(eigs[:2], [0.5, 0.5], atol=1e-8)
        assert np.all(eigs[2:] < 1e-8)

    def test_subsystem_swap_invariance(self):
        rng = np.random.default_rng(9)
        for num_spins in (2, 4, 6):
            state = random_state(num_spins, rng)
            dim = 1 << (num_spins // 2)
            m = state.amplitudes.reshape(dim, dim)
            lam = np.linalg.svd(m.T, compute_uv=False) ** 2
            lam = lam[lam > 0]
            swapped = float(-np.sum(lam * np.log2(lam)))
            assert abs(entanglement_entropy(state) - swapped) < 1e-10

    def test_bounds_on_random_states(self):
        rng = np.random.default_rng(10)
        for num_spins in (2, 4, 8):
            for _ in range(10):
                value = entanglement_entropy(random_state(num_spins, rng))
                assert -1e-10 <= value <= num_spins / 2 + 1e-10

    def test_max_entropy_crossing_bell_pairs(self):
        # Bell pairs on qubits (0,2) and (1,3) both straddle the half cut:
        # amplitude 1/2 on |b0 b1 b0 b1>, entropy saturates at L/2 = 2 bits
        amps = np.zeros(16, dtype=complex)
        for b0 in (0, 1):
            for b1 in (0, 1):
                amps[10 * b0 + 5 * b1] = 0.5
        state = StateVector(amps, 4)
        assert entanglement_entropy(state) == pytest.approx(2.0, abs=1e-10)

    def test_adjacent_bell_pairs_are_uncut(self):
        bell = np.array([1, 0, 0, 1]) / math.sqrt(2)
        state = StateVector(np.kron(bell, bell), 4)
        assert entanglement_entropy(state) < 1e-10


class TestEntropyTrace:
    def test_builds_from_states(self):
        config = ScenarioConfig(Model.OAT, 2, math.pi / 2, 0.0, num_steps=5, dt=0.1)
        states = evolve_trajectory(config)
        trace = entropy_trace(states, [0.1 * k for k in range(6)])
        assert len(trace.values) == 6
        assert trace.values[0] < 1e-10

    def test_length_mismatch_rejected(self):
        state = coherent_state(2, SphericalAngles(0.0, 0.0))
        with pytest.raises(ValueError):
            entropy_trace([state], [0.0, 1.0])

    def test_trace_type_checks_lengths(self):
        with pytest.raises(ValueError):
            EntropyTrace(np.array([0.0, 1.0]), np.array([0.0]))


class TestPhaseHelpers:
    def test_align_phase_makes_pivot_real(self):
        rng = np.random.default_rng(11)
        v = rng.normal(size=8) + 1j * rng.normal(size=8)
        aligned = align_phase(v)
        k = np.argmax(np.abs(aligned))
        assert aligned[k].imag == pytest.approx(0.0, abs=1e-12)
        assert aligned[k].real > 0

    def test_distance_ignores_global_phase(self):
        rng = np.random.default_rng(12)
        v = rng.normal(size=8) + 1j * rng.normal(size=8)
        v /= np.linalg.norm(v)
        assert phase_aligned_distance(v, v * np.exp(0.321j)) < 1e-12

    def test_distance_detects_real_differences(self):
        a = np.array([1.0, 0.0], dtype=complex)
        b = np.array([0.0, 1.0], dtype=complex)
        assert phase_aligned_distance(a, b) == pytest.approx(1.0)

    def test_distance_with_degenerate_magnitudes(self):
        # equal-magnitude amplitudes must still align on a shared pivot
        state = coherent_state(4, SphericalAngles(math.pi / 2, 0.3))
        rotated = StateVector(state.amplitudes * np.exp(1.7j), 4)
        assert phase_aligned_distance(state.amplitudes, rotated.amplitudes) < 1e-12
