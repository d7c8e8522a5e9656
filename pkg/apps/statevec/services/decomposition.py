"""Recursive decomposition of multi-controlled single-qubit gates."""

import logging
from collections.abc import Sequence

import numpy as np
from scipy.linalg import sqrtm

from common.exceptions import InvalidParameterError

from . import kernels
from .simulator import CircuitProgram, GateKind, GateOp, StateVector, evolve

logger = logging.getLogger(__name__)


def decompose_multi_controlled(
    matrix: np.ndarray,
    controls: Sequence[int],
    target: int,
) -> list[GateOp]:
    """
    Express C^n(U) with singly-controlled gates only.

    With V @ V == U and c_n the last control:
        C^n(U) = C^{n-1}(V)[c_1..c_{n-1} -> t] . C^{n-1}(X)[-> c_n]
                 . C(V^dagger)[c_n -> t] . C^{n-1}(X)[-> c_n] . C(V)[c_n -> t]
    (rightmost first). The emitted count follows T(n) = 3 T(n-1) + 2, T(1) = 1.

    Args:
        matrix: 2x2 unitary applied to target when every control is 1
        controls: Control qubits (at least one)
        target: Target qubit

    Returns:
        CU gates in application order

    Raises:
        InvalidParameterError: If there are no controls or indices clash
    """
    controls = tuple(int(c) for c in controls)
    if not controls:
        raise InvalidParameterError("Decomposition needs at least one control")
    if target in controls or len(set(controls)) != len(controls):
        raise InvalidParameterError(f"Control/target clash: controls={controls}, target={target}")
    return _emit(np.asarray(matrix, dtype=np.complex128), controls, target)


def _emit(matrix: np.ndarray, controls: tuple[int, ...], target: int) -> list[GateOp]:
    if len(controls) == 1:
        return [GateOp.cu(matrix, controls[0], target)]

    root = np.asarray(sqrtm(matrix), dtype=np.complex128)
    *rest, last = controls
    flip = _emit(kernels.PAULI_X, tuple(rest), last)
    return [
        GateOp.cu(root, last, target),
        *flip,
        GateOp.cu(root.conj().T, last, target),
        *flip,
        *_emit(root, tuple(rest), target),
    ]


def decomposition_gate_count(num_controls: int) -> int:
    """Number of elementary controlled gates emitted for num_controls controls."""
    if num_controls < 1:
        raise InvalidParameterError(f"num_controls must be >= 1, got {num_controls}")
    controls = tuple(range(num_controls))
    return len(decompose_multi_controlled(kernels.PAULI_X, controls, num_controls))


def recursion_closed_form(num_controls: int) -> int:
    """Closed form of T(n) = 3 T(n-1) + 2, T(1) = 1."""
    return 2 * 3 ** (num_controls - 1) - 1


def gate_count_bound(num_controls: int) -> int:
    """2 * 3^n - 1; equals the emitted count for n + 1 controls."""
    return 2 * 3**num_controls - 1


def multi_controlled(
    state: StateVector,
    inner: np.ndarray,
    controls: Sequence[int],
    target: int,
    *,
    decomposed: bool = False,
) -> StateVector:
    """
    Apply inner to target iff every control qubit is 1.

    The direct path acts on the controlled subspace in one step; the
    decomposed path runs the singly-controlled sequence. Both agree to 1e-10.
    """
    controls = tuple(int(c) for c in controls)
    if not controls or target in controls or len(set(controls)) != len(controls):
        raise InvalidParameterError(f"Control/target clash: controls={controls}, target={target}")
    if any(q >= state.qubits for q in (*controls, target)):
        raise InvalidParameterError(f"Qubits {(*controls, target)} exceed a {state.qubits}-qubit register")

    if decomposed:
        amps = evolve(state.amplitudes, decompose_multi_controlled(inner, controls, target))
    else:
        amps = kernels.apply_matrix(state.amplitudes, np.asarray(inner, dtype=np.complex128), target, controls)
    return StateVector(state.qubits, amps)


def decompose_program(program: CircuitProgram) -> CircuitProgram:
    """Replace every MCX/MCRY gate by its singly-controlled sequence."""
    ops: list[GateOp] = []
    for op in program.ops:
        if op.kind in (GateKind.MCX, GateKind.MCRY):
            ops.extend(decompose_multi_controlled(op.unitary(), op.controls, op.targets[0]))
        else:
            ops.append(op)
    logger.debug(f"Decomposed {len(program)} gate(s) into {len(ops)}")
    return CircuitProgram(program.qubits, tuple(ops))
