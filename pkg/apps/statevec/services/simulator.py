"""Dense statevector simulator: gate operations, programs and observables."""

import logging
import math
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from enum import StrEnum

import numpy as np

from common.exceptions import DimensionMismatchError, InvalidParameterError

from . import kernels

logger = logging.getLogger(__name__)

NORM_TOLERANCE = 1e-10


class GateKind(StrEnum):
    H = "H"
    X = "X"
    RY = "RY"
    CX = "CX"
    XX = "XX"
    ZZ = "ZZ"
    CU = "CU"
    MCX = "MCX"
    MCRY = "MCRY"


_PARAMETRIZED = {GateKind.RY, GateKind.XX, GateKind.ZZ, GateKind.MCRY}
_TWO_TARGET = {GateKind.XX, GateKind.ZZ}
_CONTROL_COUNT = {GateKind.CX: 1, GateKind.CU: 1}
_MULTI_CONTROLLED = {GateKind.MCX, GateKind.MCRY}


@dataclass(frozen=True)
class GateOp:
    """
    One gate. Controls come first in dumps, e.g. `CX 0 1` is control 0, target 1.

    CU carries its 2x2 unitary as a row-major tuple of four complex entries.
    """

    kind: GateKind
    targets: tuple[int, ...]
    controls: tuple[int, ...] = ()
    theta: float | None = None
    matrix: tuple[complex, ...] | None = None

    def __post_init__(self) -> None:
        try:
            object.__setattr__(self, "kind", GateKind(self.kind))
        except ValueError as e:
            raise InvalidParameterError(f"Unknown gate kind {self.kind!r}") from e
        object.__setattr__(self, "targets", tuple(int(q) for q in self.targets))
        object.__setattr__(self, "controls", tuple(int(q) for q in self.controls))

        expected_targets = 2 if self.kind in _TWO_TARGET else 1
        if len(self.targets) != expected_targets:
            raise InvalidParameterError(f"{self.kind} takes {expected_targets} target(s), got {self.targets}")
        if self.kind in _CONTROL_COUNT and len(self.controls) != _CONTROL_COUNT[self.kind]:
            raise InvalidParameterError(f"{self.kind} takes exactly one control")
        if self.kind in _MULTI_CONTROLLED and not self.controls:
            raise InvalidParameterError(f"{self.kind} needs at least one control")
        if self.kind not in _CONTROL_COUNT and self.kind not in _MULTI_CONTROLLED and self.controls:
            raise InvalidParameterError(f"{self.kind} takes no controls")

        qubits = self.qubits
        if len(set(qubits)) != len(qubits):
            raise InvalidParameterError(f"{self.kind} acts on coincident qubits {qubits}")
        if any(q < 0 for q in qubits):
            raise InvalidParameterError(f"Negative qubit index in {qubits}")

        if self.kind in _PARAMETRIZED:
            if self.theta is None or not math.isfinite(self.theta):
                raise InvalidParameterError(f"{self.kind} needs a finite angle, got {self.theta}")
            object.__setattr__(self, "theta", float(self.theta))
        elif self.theta is not None:
            raise InvalidParameterError(f"{self.kind} takes no angle")

        if self.kind == GateKind.CU:
            if self.matrix is None or len(self.matrix) != 4:
                raise InvalidParameterError("CU needs a 2x2 matrix")
            m = np.array(self.matrix, dtype=np.complex128).reshape(2, 2)
            if not np.allclose(m.conj().T @ m, np.eye(2), atol=NORM_TOLERANCE):
                raise InvalidParameterError("CU matrix is not unitary")
            object.__setattr__(self, "matrix", tuple(complex(v) for v in m.ravel()))
        elif self.matrix is not None:
            raise InvalidParameterError(f"{self.kind} takes no matrix")

    @classmethod
    def h(cls, qubit: int) -> "GateOp":
        return cls(GateKind.H, (qubit,))

    @classmethod
    def x(cls, qubit: int) -> "GateOp":
        return cls(GateKind.X, (qubit,))

    @classmethod
    def ry(cls, theta: float, qubit: int) -> "GateOp":
        return cls(GateKind.RY, (qubit,), theta=theta)

    @classmethod
    def cx(cls, control: int, target: int) -> "GateOp":
        return cls(GateKind.CX, (target,), controls=(control,))

    @classmethod
    def xx(cls, theta: float, qa: int, qb: int) -> "GateOp":
        return cls(GateKind.XX, (qa, qb), theta=theta)

    @classmethod
    def zz(cls, theta: float, qa: int, qb: int) -> "GateOp":
        return cls(GateKind.ZZ, (qa, qb), theta=theta)

    @classmethod
    def cu(cls, matrix: np.ndarray, control: int, target: int) -> "GateOp":
        entries = tuple(complex(v) for v in np.asarray(matrix, dtype=np.complex128).ravel())
        return cls(GateKind.CU, (target,), controls=(control,), matrix=entries)

    @classmethod
    def mcx(cls, controls: Sequence[int], target: int) -> "GateOp":
        return cls(GateKind.MCX, (target,), controls=tuple(controls))

    @classmethod
    def mcry(cls, theta: float, controls: Sequence[int], target: int) -> "GateOp":
        return cls(GateKind.MCRY, (target,), controls=tuple(controls), theta=theta)

    @property
    def qubits(self) -> tuple[int, ...]:
        return (*self.controls, *self.targets)

    def unitary(self) -> np.ndarray:
        """The 2x2 matrix applied to the target (single-target kinds only)."""
        if self.kind == GateKind.H:
            return kernels.HADAMARD
        if self.kind in (GateKind.X, GateKind.CX, GateKind.MCX):
            return kernels.PAULI_X
        if self.kind in (GateKind.RY, GateKind.MCRY):
            assert self.theta is not None
            return kernels.ry_matrix(self.theta)
        if self.kind == GateKind.CU:
            assert self.matrix is not None
            return np.array(self.matrix, dtype=np.complex128).reshape(2, 2)
        raise InvalidParameterError(f"{self.kind} is not a single-target gate")

    def inverse(self) -> "GateOp":
        if self.kind in _PARAMETRIZED:
            assert self.theta is not None
            return GateOp(self.kind, self.targets, self.controls, theta=-self.theta)
        if self.kind == GateKind.CU:
            return GateOp.cu(self.unitary().conj().T, self.controls[0], self.targets[0])
        return self

    def with_theta(self, theta: float) -> "GateOp":
        return GateOp(self.kind, self.targets, self.controls, theta=theta)


@dataclass(frozen=True, eq=False)
class StateVector:
    """2^qubits unit-norm amplitudes; qubit q is bit q of the basis index."""

    qubits: int
    amplitudes: np.ndarray

    def __post_init__(self) -> None:
        amps = np.array(self.amplitudes, dtype=np.complex128)
        if amps.shape != (1 << self.qubits,):
            raise DimensionMismatchError(
                f"{self.qubits} qubit(s) need {1 << self.qubits} amplitudes, got shape {amps.shape}"
            )
        norm = float(np.linalg.norm(amps))
        if abs(norm - 1.0) > NORM_TOLERANCE:
            raise InvalidParameterError(f"State norm is {norm}, expected 1")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    @classmethod
    def zero(cls, qubits: int) -> "StateVector":
        return cls.basis(qubits, 0)

    @classmethod
    def basis(cls, qubits: int, index: int) -> "StateVector":
        if not 0 <= index < 1 << qubits:
            raise InvalidParameterError(f"Basis index {index} out of range for {qubits} qubit(s)")
        amps = np.zeros(1 << qubits, dtype=np.complex128)
        amps[index] = 1.0
        return cls(qubits, amps)

    @classmethod
    def from_amplitudes(cls, amplitudes: Sequence[complex] | np.ndarray) -> "StateVector":
        amps = np.asarray(amplitudes, dtype=np.complex128)
        qubits = int(amps.size).bit_length() - 1
        if amps.ndim != 1 or amps.size != 1 << qubits:
            raise DimensionMismatchError(f"Amplitude count {amps.size} is not a power of two")
        return cls(qubits, amps)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))


@dataclass(frozen=True)
class CircuitProgram:
    qubits: int
    ops: tuple[GateOp, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "ops", tuple(self.ops))
        for op in self.ops:
            _check_bounds(op, self.qubits)

    def __len__(self) -> int:
        return len(self.ops)

    def then(self, ops: Iterable[GateOp]) -> "CircuitProgram":
        return CircuitProgram(self.qubits, (*self.ops, *ops))

    def inverse(self) -> "CircuitProgram":
        return CircuitProgram(self.qubits, tuple(op.inverse() for op in reversed(self.ops)))

    def count(self, kind: GateKind) -> int:
        return sum(1 for op in self.ops if op.kind == kind)


def _check_bounds(op: GateOp, qubits: int) -> None:
    if any(q >= qubits for q in op.qubits):
        raise InvalidParameterError(f"{op.kind} on {op.qubits} exceeds a {qubits}-qubit register")


def apply_array(amps: np.ndarray, op: GateOp) -> np.ndarray:
    """Apply one gate to raw amplitudes of shape (..., 2^m)."""
    if op.kind == GateKind.XX:
        assert op.theta is not None
        return kernels.apply_xx(amps, op.theta, *op.targets)
    if op.kind == GateKind.ZZ:
        assert op.theta is not None
        return kernels.apply_zz(amps, op.theta, *op.targets)
    return kernels.apply_matrix(amps, op.unitary(), op.targets[0], op.controls)


def evolve(amps: np.ndarray, ops: Iterable[GateOp]) -> np.ndarray:
    for op in ops:
        amps = apply_array(amps, op)
    return amps


def apply(state: StateVector, op: GateOp) -> StateVector:
    """
    Apply one gate to a state.

    Raises:
        InvalidParameterError: If the gate touches a qubit outside the register
    """
    _check_bounds(op, state.qubits)
    return StateVector(state.qubits, apply_array(state.amplitudes, op))


def apply_xx(state: StateVector, theta: float, qa: int, qb: int) -> StateVector:
    return apply(state, GateOp.xx(theta, qa, qb))


def apply_zz(state: StateVector, theta: float, qa: int, qb: int) -> StateVector:
    return apply(state, GateOp.zz(theta, qa, qb))


def run_program(program: CircuitProgram, initial: StateVector | None = None) -> StateVector:
    """Simulate a program from |0...0> (or from initial)."""
    state = StateVector.zero(program.qubits) if initial is None else initial
    if state.qubits != program.qubits:
        raise DimensionMismatchError(
            f"Program has {program.qubits} qubit(s), initial state has {state.qubits}"
        )
    amps = evolve(state.amplitudes, program.ops)
    logger.debug(f"Simulated {len(program)} gate(s) on {program.qubits} qubit(s)")
    return StateVector(program.qubits, amps)


def expectation_z(state: StateVector, qubit: int) -> float:
    if not 0 <= qubit < state.qubits:
        raise InvalidParameterError(f"Qubit {qubit} out of range for {state.qubits} qubit(s)")
    return float(kernels.expectation_z(state.amplitudes, qubit))
