"""Pytest fixtures and dense oracles for statevec tests."""

from collections.abc import Callable, Sequence
from functools import reduce

import numpy as np
import pytest

from apps.statevec.services import StateVector

IDENTITY = np.eye(2, dtype=np.complex128)
PAULI_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)


def dense_pauli_pair(pauli: np.ndarray, qubits: int, qa: int, qb: int) -> np.ndarray:
    """Kronecker product with qubit 0 as the rightmost factor."""
    factors = [pauli if q in (qa, qb) else IDENTITY for q in reversed(range(qubits))]
    return reduce(np.kron, factors)


def dense_rotation(pauli: np.ndarray, theta: float, qubits: int, qa: int, qb: int) -> np.ndarray:
    generator = dense_pauli_pair(pauli, qubits, qa, qb)
    dim = 1 << qubits
    return np.cos(theta / 2) * np.eye(dim) - 1j * np.sin(theta / 2) * generator


def dense_controlled(matrix: np.ndarray, qubits: int, controls: Sequence[int], target: int) -> np.ndarray:
    dim = 1 << qubits
    dense = np.zeros((dim, dim), dtype=np.complex128)
    for index in range(dim):
        if all((index >> c) & 1 for c in controls):
            bit = (index >> target) & 1
            for out_bit in (0, 1):
                out = (index & ~(1 << target)) | (out_bit << target)
                dense[out, index] = matrix[out_bit, bit]
        else:
            dense[index, index] = 1.0
    return dense


@pytest.fixture
def rng() -> np.random.Generator:
    """Seeded generator shared by randomized checks."""
    return np.random.default_rng(20240611)


@pytest.fixture
def random_state(rng: np.random.Generator) -> Callable[[int], StateVector]:
    """Factory for Haar-ish random states of a given qubit count."""

    def make(qubits: int) -> StateVector:
        amps = rng.normal(size=1 << qubits) + 1j * rng.normal(size=1 << qubits)
        return StateVector(qubits, amps / np.linalg.norm(amps))

    return make


@pytest.fixture
def random_unitary(rng: np.random.Generator) -> Callable[[], np.ndarray]:
    """Factory for random 2x2 unitaries (QR of a complex Gaussian)."""

    def make() -> np.ndarray:
        z = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        q, r = np.linalg.qr(z)
        return q * (np.diag(r) / np.abs(np.diag(r)))

    return make
