"""
Bitmask kernels over amplitude arrays.

Amplitudes live on the last axis of an array of shape (..., 2^m); leading axes
are independent states evolved together. Qubit q is bit q of the basis index
(little-endian). Every kernel returns a new array.
"""

from functools import lru_cache

import numpy as np

PAULI_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
HADAMARD = np.array([[1, 1], [1, -1]], dtype=np.complex128) / np.sqrt(2.0)


def ry_matrix(theta: float) -> np.ndarray:
    c, s = np.cos(theta / 2.0), np.sin(theta / 2.0)
    return np.array([[c, -s], [s, c]], dtype=np.complex128)


@lru_cache(maxsize=1024)
def _pair_indices(dim: int, target: int, controls: tuple[int, ...]) -> tuple[np.ndarray, np.ndarray]:
    index = np.arange(dim, dtype=np.int64)
    keep = ((index >> target) & 1) == 0
    for control in controls:
        keep &= ((index >> control) & 1) == 1
    zero = index[keep]
    return zero, zero | (1 << target)


@lru_cache(maxsize=1024)
def _flip_permutation(dim: int, mask: int) -> np.ndarray:
    return np.arange(dim, dtype=np.int64) ^ mask


@lru_cache(maxsize=1024)
def _parity(dim: int, qa: int, qb: int) -> np.ndarray:
    index = np.arange(dim, dtype=np.int64)
    return (((index >> qa) ^ (index >> qb)) & 1).astype(bool)


@lru_cache(maxsize=256)
def _z_signs(dim: int, qubit: int) -> np.ndarray:
    index = np.arange(dim, dtype=np.int64)
    return 1.0 - 2.0 * ((index >> qubit) & 1)


def apply_matrix(
    amps: np.ndarray,
    matrix: np.ndarray,
    target: int,
    controls: tuple[int, ...] = (),
) -> np.ndarray:
    """Apply a 2x2 matrix to target on the subspace where every control is 1."""
    zero, one = _pair_indices(amps.shape[-1], target, tuple(controls))
    a0 = amps[..., zero]
    a1 = amps[..., one]
    out = amps.copy()
    out[..., zero] = matrix[0, 0] * a0 + matrix[0, 1] * a1
    out[..., one] = matrix[1, 0] * a0 + matrix[1, 1] * a1
    return out


def apply_xx(amps: np.ndarray, theta: float, qa: int, qb: int) -> np.ndarray:
    """exp(-i theta/2 X(qa) X(qb))."""
    flipped = amps[..., _flip_permutation(amps.shape[-1], (1 << qa) | (1 << qb))]
    return np.cos(theta / 2.0) * amps - 1j * np.sin(theta / 2.0) * flipped


def apply_zz(amps: np.ndarray, theta: float, qa: int, qb: int) -> np.ndarray:
    """exp(-i theta/2 Z(qa) Z(qb)): phase e^{-i theta/2} on even parity, e^{+i theta/2} on odd."""
    odd = _parity(amps.shape[-1], qa, qb)
    phase = np.where(odd, np.exp(0.5j * theta), np.exp(-0.5j * theta))
    return amps * phase


def expectation_z(amps: np.ndarray, qubit: int) -> np.ndarray:
    """<Z_qubit> for every state on the leading axes."""
    probabilities = np.abs(amps) ** 2
    return probabilities @ _z_signs(amps.shape[-1], qubit)
