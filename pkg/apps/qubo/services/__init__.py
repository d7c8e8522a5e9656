"""QUBO services package."""

from .extraction import ExtractionKind, ExtractionStrategy, extract_subset, influence_values
from .hybrid import InnerKind, InnerSolver, hybrid_solve
from .io import format_qubo, parse_qubo, read_qubo_file, write_qubo_file
from .model import (
    Assignment,
    IsingModel,
    QuboModel,
    SubQubo,
    bits_from_spins,
    evaluate,
    evaluate_many,
    fix_variables,
    from_matrix,
    ising_energy,
    spins_from_bits,
    to_ising,
)
from .solvers import AnnealSchedule, Solution, brute_force_solve, simulated_anneal

__all__ = [
    "Assignment",
    "QuboModel",
    "IsingModel",
    "SubQubo",
    "evaluate",
    "evaluate_many",
    "to_ising",
    "ising_energy",
    "spins_from_bits",
    "bits_from_spins",
    "fix_variables",
    "from_matrix",
    "parse_qubo",
    "format_qubo",
    "read_qubo_file",
    "write_qubo_file",
    "AnnealSchedule",
    "Solution",
    "brute_force_solve",
    "simulated_anneal",
    "ExtractionKind",
    "ExtractionStrategy",
    "influence_values",
    "extract_subset",
    "InnerKind",
    "InnerSolver",
    "hybrid_solve",
]
