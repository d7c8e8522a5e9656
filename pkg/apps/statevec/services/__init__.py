"""Statevector simulation services."""

from .decomposition import (
    decompose_multi_controlled,
    decompose_program,
    decomposition_gate_count,
    multi_controlled,
    gate_count_bound,
    recursion_closed_form,
)
from .dump import format_program, parse_program, read_program_file
from .simulator import (
    CircuitProgram,
    GateKind,
    GateOp,
    StateVector,
    apply,
    apply_array,
    apply_xx,
    apply_zz,
    evolve,
    expectation_z,
    run_program,
)

__all__ = [
    "GateKind",
    "GateOp",
    "StateVector",
    "CircuitProgram",
    "apply",
    "apply_array",
    "apply_xx",
    "apply_zz",
    "evolve",
    "expectation_z",
    "run_program",
    "multi_controlled",
    "decompose_multi_controlled",
    "decompose_program",
    "decomposition_gate_count",
    "recursion_closed_form",
    "gate_count_bound",
    "format_program",
    "parse_program",
    "read_program_file",
]
