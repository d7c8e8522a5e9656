"""Tests for the statevector simulator."""

import math

import numpy as np
import pytest

from apps.statevec.services import (
    CircuitProgram,
    GateKind,
    GateOp,
    StateVector,
    apply,
    apply_xx,
    apply_zz,
    expectation_z,
    run_program,
)
from apps.statevec.tests.conftest import PAULI_X, PAULI_Z, dense_rotation
from common.exceptions import DimensionMismatchError, InvalidParameterError

SQRT_HALF = 1 / math.sqrt(2)


def random_gate(rng: np.random.Generator, qubits: int) -> GateOp:
    a, b, c = (int(q) for q in rng.choice(qubits, size=3, replace=False))
    theta = float(rng.uniform(-np.pi, np.pi))
    return [
        GateOp.h(a),
        GateOp.x(a),
        GateOp.ry(theta, a),
        GateOp.cx(a, b),
        GateOp.xx(theta, a, b),
        GateOp.zz(theta, a, b),
        GateOp.mcry(theta, (a, b), c),
        GateOp.mcx((a, c), b),
    ][int(rng.integers(8))]


class TestStateVector:
    """Tests for StateVector construction."""

    def test_zero_state(self):
        """zero() puts all weight on index 0."""
        state = StateVector.zero(3)
        assert state.amplitudes[0] == 1
        assert state.norm() == pytest.approx(1.0)

    def test_rejects_unnormalised_amplitudes(self):
        """Amplitudes off unit norm are rejected."""
        with pytest.raises(InvalidParameterError):
            StateVector(1, np.array([1.0, 1.0]))

    def test_rejects_wrong_length(self):
        """Amplitude count must be 2^qubits."""
        with pytest.raises(DimensionMismatchError):
            StateVector(2, np.array([1.0, 0.0]))

    def test_from_amplitudes_infers_qubits(self):
        """from_amplitudes derives the register size."""
        state = StateVector.from_amplitudes([0, 0, 0, 1, 0, 0, 0, 0])
        assert state.qubits == 3

    def test_amplitudes_are_read_only(self):
        """States are immutable once built."""
        state = StateVector.zero(1)
        with pytest.raises(ValueError):
            state.amplitudes[0] = 0


class TestApply:
    """Tests for apply."""

    def test_hadamard_on_zero(self):
        """H|0> = (|0> + |1>)/sqrt(2)."""
        state = apply(StateVector.zero(1), GateOp.h(0))
        np.testing.assert_allclose(state.amplitudes, [SQRT_HALF, SQRT_HALF], atol=1e-15)

    def test_cx_flips_target_when_control_set(self):
        """CX(0 -> 1) maps index 1 (qubit 0 set) to index 3."""
        state = apply(StateVector.basis(2, 1), GateOp.cx(0, 1))
        np.testing.assert_allclose(state.amplitudes, [0, 0, 0, 1])

    def test_cx_leaves_state_when_control_clear(self):
        """CX(0 -> 1) does nothing to index 2."""
        state = apply(StateVector.basis(2, 2), GateOp.cx(0, 1))
        np.testing.assert_allclose(state.amplitudes, [0, 0, 1, 0])

    def test_xx_quarter_turn_on_zero(self):
        """XX(pi/2)|00> = (|00> - i|11>)/sqrt(2)."""
        state = apply(StateVector.zero(2), GateOp.xx(math.pi / 2, 0, 1))
        np.testing.assert_allclose(state.amplitudes, [SQRT_HALF, 0, 0, -1j * SQRT_HALF], atol=1e-15)

    def test_ry_prepares_cos_sin(self):
        """RY(2t)|0> = cos t |0> + sin t |1>."""
        state = apply(StateVector.zero(1), GateOp.ry(2 * 0.3, 0))
        np.testing.assert_allclose(state.amplitudes, [math.cos(0.3), math.sin(0.3)], atol=1e-15)

    def test_index_out_of_range(self):
        """Gates beyond the register are rejected."""
        with pytest.raises(InvalidParameterError):
            apply(StateVector.zero(2), GateOp.h(2))

    def test_norm_preserved(self, rng, random_state):
        """Random gates keep the norm within 1e-12."""
        state = random_state(5)
        for _ in range(200):
            state = apply(state, random_gate(rng, 5))
            assert abs(state.norm() - 1.0) <= 1e-12

    def test_inverse_undoes_gate(self, rng, random_state):
        """apply(apply(s, G), G^dagger) == s."""
        for _ in range(100):
            state = random_state(4)
            gate = random_gate(rng, 4)
            back = apply(apply(state, gate), gate.inverse())
            np.testing.assert_allclose(back.amplitudes, state.amplitudes, atol=1e-10)

    def test_cu_inverse_undoes_gate(self, random_state, random_unitary):
        """CU inverse is the conjugate transpose."""
        state = random_state(3)
        gate = GateOp.cu(random_unitary(), 2, 0)
        back = apply(apply(state, gate), gate.inverse())
        np.testing.assert_allclose(back.amplitudes, state.amplitudes, atol=1e-10)


class TestGateOp:
    """Tests for GateOp validation."""

    def test_coincident_qubits(self):
        """Two-qubit rotations need distinct qubits."""
        with pytest.raises(InvalidParameterError):
            GateOp.xx(0.1, 2, 2)

    def test_control_equals_target(self):
        """Controls may not include the target."""
        with pytest.raises(InvalidParameterError):
            GateOp.mcx((0, 1), 1)

    def test_non_finite_angle(self):
        """Angles must be finite."""
        with pytest.raises(InvalidParameterError):
            GateOp.ry(math.inf, 0)

    def test_non_unitary_cu(self):
        """CU rejects non-unitary matrices."""
        with pytest.raises(InvalidParameterError):
            GateOp.cu(np.array([[1, 1], [0, 1]]), 0, 1)

    def test_unknown_kind(self):
        """Unknown kinds are rejected."""
        with pytest.raises(InvalidParameterError):
            GateOp("SWAP", (0, 1))  # type: ignore[arg-type]


class TestRotations:
    """Tests for apply_xx and apply_zz."""

    def test_zero_angle_is_identity(self, random_state):
        """theta = 0 leaves the state unchanged."""
        state = random_state(3)
        np.testing.assert_allclose(apply_xx(state, 0.0, 0, 2).amplitudes, state.amplitudes)
        np.testing.assert_allclose(apply_zz(state, 0.0, 1, 2).amplitudes, state.amplitudes)

    def test_zz_on_zero_is_global_phase(self):
        """ZZ(t)|00> = e^{-it/2}|00>."""
        theta = 0.7
        state = apply_zz(StateVector.zero(2), theta, 0, 1)
        np.testing.assert_allclose(state.amplitudes, [np.exp(-0.5j * theta), 0, 0, 0], atol=1e-15)
        assert expectation_z(state, 0) == pytest.approx(1.0)
        assert expectation_z(state, 1) == pytest.approx(1.0)

    def test_xx_half_turn(self):
        """XX(pi)|00> = -i|11>."""
        state = apply_xx(StateVector.zero(2), math.pi, 0, 1)
        np.testing.assert_allclose(state.amplitudes, [0, 0, 0, -1j], atol=1e-15)

    @pytest.mark.parametrize("pauli,apply_fn", [(PAULI_X, apply_xx), (PAULI_Z, apply_zz)])
    def test_matches_dense_matrix(self, pauli, apply_fn, random_state):
        """Kernels agree with exp(-i t/2 P x P) built from Kronecker products."""
        state = random_state(4)
        expected = dense_rotation(pauli, 1.1, 4, 1, 3) @ state.amplitudes
        np.testing.assert_allclose(apply_fn(state, 1.1, 1, 3).amplitudes, expected, atol=1e-12)

    def test_additivity(self, random_state):
        """XX(a) XX(b) == XX(a + b) on the same pair."""
        state = random_state(3)
        stepwise = apply_xx(apply_xx(state, 0.4, 0, 2), 1.3, 0, 2)
        direct = apply_xx(state, 1.7, 0, 2)
        np.testing.assert_allclose(stepwise.amplitudes, direct.amplitudes, atol=1e-12)

    def test_disjoint_pairs_commute(self, random_state):
        """XX on (0,1) commutes with ZZ on (2,3)."""
        state = random_state(4)
        first = apply_zz(apply_xx(state, 0.9, 0, 1), -0.4, 2, 3)
        second = apply_xx(apply_zz(state, -0.4, 2, 3), 0.9, 0, 1)
        np.testing.assert_allclose(first.amplitudes, second.amplitudes, atol=1e-12)


class TestExpectationZ:
    """Tests for expectation_z."""

    def test_zero(self):
        """<Z> on |0> is +1."""
        assert expectation_z(StateVector.zero(1), 0) == 1.0

    def test_one(self):
        """<Z> on |1> is -1."""
        assert expectation_z(StateVector.basis(1, 1), 0) == -1.0

    def test_plus(self):
        """<Z> on |+> is 0."""
        state = apply(StateVector.zero(1), GateOp.h(0))
        assert expectation_z(state, 0) == pytest.approx(0.0, abs=1e-15)

    def test_out_of_range(self):
        """Qubit index must exist."""
        with pytest.raises(InvalidParameterError):
            expectation_z(StateVector.zero(2), 2)


class TestRunProgram:
    """Tests for CircuitProgram and run_program."""

    def test_bell_pair(self):
        """H then CX prepares (|00> + |11>)/sqrt(2)."""
        program = CircuitProgram(2, (GateOp.h(0), GateOp.cx(0, 1)))
        state = run_program(program)
        np.testing.assert_allclose(state.amplitudes, [SQRT_HALF, 0, 0, SQRT_HALF], atol=1e-15)

    def test_program_inverse(self, rng, random_state):
        """A program followed by its inverse is the identity."""
        ops = tuple(random_gate(rng, 4) for _ in range(30))
        program = CircuitProgram(4, ops)
        state = random_state(4)
        back = run_program(program.inverse(), run_program(program, state))
        np.testing.assert_allclose(back.amplitudes, state.amplitudes, atol=1e-10)

    def test_program_rejects_out_of_range_gate(self):
        """Program construction checks every index."""
        with pytest.raises(InvalidParameterError):
            CircuitProgram(2, (GateOp.xx(0.1, 0, 5),))

    def test_initial_state_size_must_match(self):
        """The initial state must have the program's register size."""
        with pytest.raises(DimensionMismatchError):
            run_program(CircuitProgram(3), StateVector.zero(2))

    def test_count_by_kind(self):
        """count() tallies gates of one kind."""
        program = CircuitProgram(2, (GateOp.h(0), GateOp.h(1), GateOp.cx(0, 1)))
        assert program.count(GateKind.H) == 2
        assert len(program) == 3
