import numpy as np
import pytest

from dressing.core import (
    StateVector,
    commutator,
    exchange_coupling,
    frobenius,
    identity,
    op_distance,
    spin_register,
)
from dressing.encoded import (
    CircuitSpec,
    EncodedBlock,
    GateSpec,
    allowed_pairs,
    block_dressing,
    dressed_state,
    entangling_neighbors,
    gate_unitary,
    logical_basis,
    logical_state,
    prepare_logical_zero,
    simulate_circuit,
    singlet_measurement_probability,
    swap_angle,
    swap_relocation_residual,
    total_dressing,
    two_step_relocation_residual,
    verify_gate_equivalence,
)
from dressing.exchange import DMVector, ExchangePair, actual_hkl, axis_spin, w_dressing

REG3 = spin_register(3)
BLOCK1 = EncodedBlock(1)


def rotation_2x2(axis, angle):
    """Closed-form e^{-i angle axis.S} for the test's independent constructions."""
    sx = np.array([[0, 1], [1, 0]], dtype=complex)
    sy = np.array([[0, -1j], [1j, 0]], dtype=complex)
    sz = np.array([[1, 0], [0, -1]], dtype=complex)
    a = np.asarray(axis, dtype=float)
    msig = a[0] * sx + a[1] * sy + a[2] * sz
    return np.cos(angle / 2) * np.eye(2) - 1j * np.sin(angle / 2) * msig


def random_dm(rng, lo=0.01, hi=0.8):
    v = rng.normal(size=3)
    return DMVector(tuple(v / np.linalg.norm(v) * rng.uniform(lo, hi)))


def random_amp_pair(rng):
    ab = rng.normal(size=2) + 1j * rng.normal(size=2)
    ab /= np.linalg.norm(ab)
    return ab[0], ab[1]


class TestGeometry:
    def test_two_block_gate_set(self):
        assert allowed_pairs(2) == frozenset({(1, 2), (2, 3), (4, 5), (5, 6), (1, 5)})

    def test_row_layout_neighbors(self):
        assert entangling_neighbors(3) == ((1, 5), (2, 6), (4, 8), (5, 9))

    def test_block_sites(self):
        assert EncodedBlock(2).sites_1based == (4, 5, 6)
        assert EncodedBlock(2).sites(spin_register(6)) == (3, 4, 5)
        with pytest.raises(ValueError):
            EncodedBlock(3).sites(spin_register(6))


class TestLogicalBasis:
    def test_z_axis_amplitudes(self):
        zero, one = logical_basis(BLOCK1)
        want_zero = np.zeros(8)
        want_zero[2] = 1 / np.sqrt(2)   # up down up
        want_zero[4] = -1 / np.sqrt(2)  # down up up
        np.testing.assert_allclose(zero.amplitudes, want_zero, atol=1e-15)
        want_one = np.zeros(8)
        want_one[1] = np.sqrt(2 / 3)
        want_one[2] = want_one[4] = -1 / np.sqrt(6)
        np.testing.assert_allclose(one.amplitudes, want_one, atol=1e-15)

    def test_orthonormal(self):
        zero, one = logical_basis(EncodedBlock(1, (0.3, -0.2, 0.5)))
        assert abs(zero.norm() - 1) < 1e-14
        assert abs(one.norm() - 1) < 1e-14
        assert abs(zero.inner(one)) < 1e-14

    def test_total_spin_projection_along_axis(self):
        rng = np.random.default_rng(0)
        for _ in range(5):
            axis = rng.normal(size=3)
            axis /= np.linalg.norm(axis)
            zero, one = logical_basis(EncodedBlock(1, tuple(axis)))
            total = axis_spin(REG3, 0, axis) + axis_spin(REG3, 1, axis) + axis_spin(REG3, 2, axis)
            for state in (zero, one):
                projected = total @ state
                np.testing.assert_allclose(
                    projected.amplitudes, 0.5 * state.amplitudes, atol=1e-13
                )


class TestBlockDressing:
    def test_trivial(self):
        v = block_dressing(DMVector((0, 0, 0)), BLOCK1)
        np.testing.assert_array_equal(v.matrix, np.eye(8))

    def test_product_of_single_site_rotations(self):
        dm = DMVector((0.2, -0.3, 0.6))
        got = block_dressing(dm, BLOCK1)
        u0 = rotation_2x2(dm.n, dm.epsilon)
        u2 = rotation_2x2(dm.n, -dm.epsilon)
        want = np.kron(np.kron(u0, np.eye(2)), u2)
        assert np.linalg.norm(got.matrix - want) < 1e-14

    def test_squares_the_pair_dressing(self):
        dm = DMVector((0.1, 0.4, -0.2))
        w, _ = w_dressing(ExchangePair(1.0, dm, 0, 2, REG3))
        assert op_distance(w @ w, block_dressing(dm, BLOCK1)) < 1e-13

    def test_unitary(self):
        v = block_dressing(DMVector((0.3, 0.3, 0.3)), BLOCK1)
        assert v.is_unitary(1e-13)

    def test_commutes_exactly_with_gates_off_its_sites(self):
        # block 1 dresses sites 1 and 3; gates (4,5) and (5,6) never touch them
        dm = DMVector((0.2, 0.1, 0.5))
        reg6 = spin_register(6)
        from dressing.core import embed

        v6 = embed(block_dressing(dm, BLOCK1), [0, 1, 2], reg6)
        for pair in ((3, 4), (4, 5)):
            gen = actual_hkl(ExchangePair(1.0, dm, pair[0], pair[1], reg6))
            assert frobenius(commutator(v6, gen).matrix) == 0.0


class TestDressedState:
    def test_no_anisotropy_returns_ideal(self):
        got = dressed_state(0.6, 0.8, DMVector((0, 0, 0)), BLOCK1)
        want = logical_state(0.6, 0.8, BLOCK1)
        np.testing.assert_allclose(got.amplitudes, want.amplitudes, atol=1e-15)

    def test_norm_preserved(self):
        rng = np.random.default_rng(1)
        for _ in range(10):
            a, b = random_amp_pair(rng)
            s = dressed_state(a, b, random_dm(rng), BLOCK1)
            assert abs(s.norm() - 1) < 1e-14

    def test_rejects_unnormalized(self):
        with pytest.raises(ValueError):
            dressed_state(1.0, 1.0, DMVector((0, 0, 0)), BLOCK1)

    def test_zero_logical_reduces_to_first_site_rotation(self):
        # along the anisotropy axis the third spin only picks up a phase, so
        # the dressed zero is a single-site rotation of the singlet
        dm = DMVector((0.24, -0.53, 0.36))
        block = EncodedBlock(1, tuple(dm.n))
        got = dressed_state(1.0, 0.0, dm, block)
        singlet_up = logical_state(1.0, 0.0, block)
        u1 = rotation_2x2(dm.n, -dm.epsilon)  # e^{+i eps n.S_1}
        want = np.kron(np.kron(u1, np.eye(2)), np.eye(2)) @ singlet_up.amplitudes
        overlap = abs(np.vdot(want, got.amplitudes))
        assert abs(overlap - 1.0) < 1e-13


class TestGateUnitary:
    def test_zero_angle(self):
        u = gate_unitary(GateSpec((1, 2), 0.0), DMVector((0.1, 0, 0)), REG3)
        np.testing.assert_allclose(u.matrix, np.eye(8), atol=1e-14)

    def test_disallowed_pair_rejected(self):
        with pytest.raises(ValueError):
            gate_unitary(GateSpec((1, 3), 1.0), DMVector((0.1, 0, 0)), REG3)

    def test_singlet_triplet_relative_phase(self):
        # bare isotropic gate at theta = pi: relative singlet-triplet phase -1
        reg2 = spin_register(2)
        u = np.zeros((4, 4), dtype=complex)
        from dressing.core import unitary_from_generator

        u = unitary_from_generator(exchange_coupling(reg2, 0, 1), np.pi).matrix
        singlet = np.array([0, 1, -1, 0]) / np.sqrt(2)
        triplet = np.array([0, 1, 1, 0]) / np.sqrt(2)
        phase_s = np.vdot(singlet, u @ singlet)
        phase_t = np.vdot(triplet, u @ triplet)
        assert abs(phase_s - np.exp(3j * np.pi / 4)) < 1e-13
        assert abs(phase_s / phase_t - np.exp(1j * np.pi)) < 1e-13

    def test_unitarity_random_angles(self):
        rng = np.random.default_rng(2)
        for _ in range(5):
            g = GateSpec((2, 3), rng.uniform(-6, 6), "actual")
            u = gate_unitary(g, random_dm(rng), REG3)
            assert u.is_unitary(1e-13)

    def test_bare_option_differs_by_time_rescaling(self):
        dm = DMVector((0.0, 0.0, 0.8))
        theta = 0.7
        scaled = gate_unitary(GateSpec((1, 2), theta, "ideal"), dm, REG3)
        bare = gate_unitary(
            GateSpec((1, 2), theta * np.sqrt(1.64), "ideal"), dm, REG3, scaled=False
        )
        assert op_distance(scaled, bare) < 1e-13


class TestGateEquivalence:
    def test_trivial(self):
        assert verify_gate_equivalence(GateSpec((1, 2), 1.1), DMVector((0, 0, 0))) < 1e-14

    def test_single_block_pair(self):
        rng = np.random.default_rng(3)
        g = GateSpec((1, 2), rng.uniform(-np.pi, np.pi))
        assert verify_gate_equivalence(g, DMVector((0.1, 0.2, 0.3)), seed=7) < 1e-12

    def test_entangling_pair_at_top_anisotropy(self):
        rng = np.random.default_rng(4)
        v = rng.normal(size=3)
        dm = DMVector(tuple(0.8 * v / np.linalg.norm(v)))
        for _ in range(20):
            g = GateSpec((1, 5), rng.uniform(-2 * np.pi, 2 * np.pi))
            assert verify_gate_equivalence(g, dm, seed=int(rng.integers(2**32))) < 1e-12

    def test_all_pairs_seeded(self):
        rng = np.random.default_rng(5)
        for pair in sorted(allowed_pairs(2)):
            g = GateSpec(pair, rng.uniform(-np.pi, np.pi))
            assert verify_gate_equivalence(g, random_dm(rng), seed=11) < 1e-12


class TestSwapRelocation:
    def test_swap_angle_is_pi(self):
        assert abs(swap_angle() - np.pi) < 1e-12

    def test_zero_angle(self):
        assert swap_relocation_residual(0.0, (1, 2, 3), REG3) < 1e-13

    def test_six_spin_relocation(self):
        reg6 = spin_register(6)
        assert swap_relocation_residual(1.3, (3, 4, 5), reg6) < 1e-12

    def test_distinct_sites_required(self):
        with pytest.raises(ValueError):
            swap_relocation_residual(1.0, (1, 1, 2), REG3)

    def test_two_step_relocation_moves_inner_gate_outward(self):
        rng = np.random.default_rng(6)
        for _ in range(5):
            assert two_step_relocation_residual(rng.uniform(-2 * np.pi, 2 * np.pi)) < 1e-12


class TestCircuits:
    def test_empty_circuit(self):
        c = CircuitSpec((), ((1.0, 0.0), (0.0, 1.0)))
        _, _, residual = simulate_circuit(c, DMVector((0.1, 0.2, 0.3)))
        assert residual == 0.0

    def test_mixed_basis_rejected(self):
        with pytest.raises(ValueError):
            CircuitSpec(
                (GateSpec((1, 2), 0.5, "actual"), GateSpec((2, 3), 0.5, "ideal")),
                ((1.0, 0.0),),
            )

    def test_unnormalized_input_rejected(self):
        with pytest.raises(ValueError):
            CircuitSpec((), ((1.0, 1.0),))

    def test_single_entangling_gate_identity(self):
        # one inter-block gate: dressed route equals the dressed image of the
        # ideal route, computed independently here
        dm = DMVector((0.3, -0.1, 0.2))
        theta = 0.9
        c = CircuitSpec((GateSpec((1, 5), theta),), ((0.6, 0.8), (1.0, 0.0)))
        dressed_out, ideal_out, residual = simulate_circuit(c, dm)
        assert residual < 1e-12
        v = total_dressing(dm, 2)
        u_id = gate_unitary(GateSpec((1, 5), theta, "ideal"), dm, spin_register(6))
        reg6 = spin_register(6)
        ideal_in = np.kron(
            logical_state(0.6, 0.8, EncodedBlock(1)).amplitudes,
            logical_state(1.0, 0.0, EncodedBlock(2)).amplitudes,
        )
        want = v.dagger().matrix @ u_id.matrix @ ideal_in
        assert np.linalg.norm(dressed_out.amplitudes - want) < 1e-12

    def test_depth20_seeded_circuit(self):
        rng = np.random.default_rng(7)
        v = rng.normal(size=3)
        dm = DMVector(tuple(0.4 * v / np.linalg.norm(v)))
        pairs = sorted(allowed_pairs(2))
        gates = tuple(
            GateSpec(pairs[rng.integers(len(pairs))], rng.uniform(-np.pi, np.pi))
            for _ in range(20)
        )
        c = CircuitSpec(gates, (random_amp_pair(rng), random_amp_pair(rng)))
        assert simulate_circuit(c, dm)[2] < 1e-10

    def test_depth50_stays_below_1e9(self):
        rng = np.random.default_rng(8)
        pairs = sorted(allowed_pairs(2))
        gates = tuple(
            GateSpec(pairs[rng.integers(len(pairs))], rng.uniform(-np.pi, np.pi))
            for _ in range(50)
        )
        c = CircuitSpec(gates, (random_amp_pair(rng), random_amp_pair(rng)))
        assert simulate_circuit(c, random_dm(rng))[2] < 1e-9


class TestPreparation:
    def test_isotropic_case(self):
        dm = DMVector((0, 0, 0))
        block = EncodedBlock(1)
        state, overlap, degenerate = prepare_logical_zero(dm, 0.5, block)
        assert not degenerate
        assert overlap > 1 - 1e-12
        want = logical_state(1.0, 0.0, block)
        assert abs(abs(state.inner(want)) - 1) < 1e-12

    def test_anisotropic_overlap(self):
        dm = DMVector((0, 0, 0.5))
        block = EncodedBlock(1, (0, 0, 1.0))
        _, overlap, degenerate = prepare_logical_zero(dm, 0.5, block)
        assert not degenerate
        assert overlap > 1 - 1e-10

    def test_zero_field_degenerate(self):
        _, _, degenerate = prepare_logical_zero(DMVector((0, 0, 0.3)), 0.0, BLOCK1)
        assert degenerate

    def test_negative_field_rejected(self):
        with pytest.raises(ValueError):
            prepare_logical_zero(DMVector((0, 0, 0.3)), -0.1, BLOCK1)


class TestMeasurement:
    def test_dressed_logical_states(self):
        rng = np.random.default_rng(9)
        for _ in range(5):
            dm = random_dm(rng)
            block = EncodedBlock(1, tuple(dm.n))
            zero = dressed_state(1.0, 0.0, dm, block)
            one = dressed_state(0.0, 1.0, dm, block)
            assert abs(singlet_measurement_probability(zero, dm, block) - 1.0) < 1e-12
            assert singlet_measurement_probability(one, dm, block) < 1e-12

    def test_equal_superposition(self):
        dm = DMVector((0.1, 0.2, 0.3))
        s = dressed_state(1 / np.sqrt(2), 1 / np.sqrt(2), dm, BLOCK1)
        assert abs(singlet_measurement_probability(s, dm, BLOCK1) - 0.5) < 1e-12

    def test_matches_actual_hamiltonian_eigenspace(self):
        # independent oracle: spectral projector of the actual pair coupling
        # at the dressed-singlet eigenvalue -(3/4) sqrt(1+|D|^2)
        rng = np.random.default_rng(10)
        dm = random_dm(rng)
        h = actual_hkl(ExchangePair(1.0, dm, 0, 1, REG3))
        evals, evecs = np.linalg.eigh(h.matrix)
        target = -0.75 * np.sqrt(1 + dm.d_abs**2)
        cols = evecs[:, np.abs(evals - target) < 1e-8]
        proj = cols @ cols.conj().T
        raw = rng.normal(size=8) + 1j * rng.normal(size=8)
        state = StateVector(REG3, raw / np.linalg.norm(raw))
        want = float(np.real(np.vdot(state.amplitudes, proj @ state.amplitudes)))
        got = singlet_measurement_probability(state, dm, BLOCK1)
        assert abs(got - want) < 1e-12

    def test_round_trip(self):
        rng = np.random.default_rng(11)
        for _ in range(5):
            dm = random_dm(rng)
            block = EncodedBlock(1, tuple(dm.n))
            state, _, _ = prepare_logical_zero(dm, 0.5, block)
            assert singlet_measurement_probability(state, dm, block) > 1 - 1e-9
