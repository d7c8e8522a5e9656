"""Circuit dump format: one gate per line, angles before qubits, controls before targets.

    qubits 7
    H 3
    CX 0 1
    XX 0.7853981633974483 2 5
    MCRY 3.141592653589793 0 1 2 3 6
    CU <re00> <im00> <re01> <im01> <re10> <im10> <re11> <im11> 0 1
"""

import logging
from pathlib import Path

from common.exceptions import DatasetNotFoundError, InvalidParameterError, MalformedDatasetError

from .simulator import CircuitProgram, GateKind, GateOp

logger = logging.getLogger(__name__)

_ANGLE_KINDS = {GateKind.RY, GateKind.XX, GateKind.ZZ, GateKind.MCRY}


def format_op(op: GateOp) -> str:
    fields: list[str] = [op.kind.value]
    if op.theta is not None:
        fields.append(repr(op.theta))
    if op.matrix is not None:
        for entry in op.matrix:
            fields.extend((repr(entry.real), repr(entry.imag)))
    fields.extend(str(q) for q in op.qubits)
    return " ".join(fields)


def format_program(program: CircuitProgram) -> str:
    lines = [f"qubits {program.qubits}", *(format_op(op) for op in program.ops)]
    return "\n".join(lines) + "\n"


def parse_program(text: str) -> CircuitProgram:
    qubits: int | None = None
    ops: list[GateOp] = []

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tag, *rest = line.split()
        try:
            if tag == "qubits" and len(rest) == 1:
                qubits = int(rest[0])
            else:
                ops.append(_parse_op(tag, rest))
        except (ValueError, IndexError, InvalidParameterError) as e:
            raise MalformedDatasetError(f"line {lineno}: cannot parse {line!r}: {e}") from e

    if qubits is None:
        qubits = 1 + max((q for op in ops for q in op.qubits), default=-1)
    try:
        return CircuitProgram(qubits, tuple(ops))
    except InvalidParameterError as e:
        raise MalformedDatasetError(f"Circuit does not fit its declared register: {e}") from e


def read_program_file(path: Path) -> CircuitProgram:
    if not path.is_file():
        raise DatasetNotFoundError(f"Circuit file {path} does not exist")
    program = parse_program(path.read_text(encoding="utf-8"))
    logger.debug(f"Read circuit with {program.qubits} qubit(s), {len(program)} gate(s) from {path}")
    return program


def _parse_op(tag: str, fields: list[str]) -> GateOp:
    kind = GateKind(tag)
    theta = float(fields.pop(0)) if kind in _ANGLE_KINDS else None
    matrix = None
    if kind == GateKind.CU:
        parts = [float(fields.pop(0)) for _ in range(8)]
        matrix = tuple(complex(parts[i], parts[i + 1]) for i in range(0, 8, 2))
    qubits = [int(q) for q in fields]

    if kind in (GateKind.XX, GateKind.ZZ):
        return GateOp(kind, tuple(qubits), theta=theta)
    if kind in (GateKind.H, GateKind.X, GateKind.RY):
        return GateOp(kind, tuple(qubits), theta=theta)
    *controls, target = qubits
    return GateOp(kind, (target,), controls=tuple(controls), theta=theta, matrix=matrix)
