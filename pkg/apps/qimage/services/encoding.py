"""
FRQI and compressed-FRQI encodings and their preparation circuits.

Register layout for a 2^n x 2^n image: position qubits 0..2n-1 hold the
row-major position p (qubit k is bit k of p), the color qubit follows at 2n.
Basis index = p + color * 2^(2n). The compressed form drops the two least
significant position bits (q_a = bit 1, q_b = bit 0) into the color angle,
leaving 2n-2 position qubits and the color qubit at 2n-2.
"""

import logging
import math

import numpy as np

from apps.statevec.services import CircuitProgram, GateOp, StateVector
from common.exceptions import DimensionMismatchError

from .preprocessing import BinaryImage, GrayImage

logger = logging.getLogger(__name__)

Image = BinaryImage | GrayImage


def angle_field(image: Image) -> np.ndarray:
    """theta_q = (pi/2) * intensity per row-major position; {0, pi/2} for binary images."""
    if isinstance(image, BinaryImage):
        values = image.flat().astype(np.float64)
    else:
        side = image.height
        if image.width != side or side & (side - 1):
            raise DimensionMismatchError(f"FRQI needs a square power-of-two image, got {image.pixels.shape}")
        values = image.pixels.reshape(-1)
    return (math.pi / 2.0) * values


def _order(image: Image) -> int:
    side = image.side if isinstance(image, BinaryImage) else image.height
    return side.bit_length() - 1


def frqi_state(image: Image) -> StateVector:
    """
    (1/2^n) sum_p |p> (cos theta_p |0> + sin theta_p |1>) over 2n + 1 qubits.
    """
    n = _order(image)
    theta = angle_field(image)
    positions = theta.size
    amps = np.zeros(2 * positions, dtype=np.complex128)
    amps[:positions] = np.cos(theta) / 2**n
    amps[positions:] = np.sin(theta) / 2**n
    return StateVector(2 * n + 1, amps)


def compressed_angle(q_c: int, q_a: int, q_b: int) -> float:
    """(pi/2) * (q_c + q_a/2 + q_b/4)."""
    return (math.pi / 2.0) * (q_c + q_a / 2.0 + q_b / 4.0)


def compressed_color_angles(image: BinaryImage) -> np.ndarray:
    """
    Color angle per retained position prefix.

    Each prefix folds four positions; their (cos, sin) vectors are summed and
    the color qubit takes the direction of the sum, atan2(sum sin, sum cos).

    Raises:
        DimensionMismatchError: If the image is smaller than 4x4
    """
    n = image.order
    if n < 2:
        raise DimensionMismatchError(f"Compression needs at least a 4x4 image, got {image.side}x{image.side}")
    positions = np.arange(image.side**2)
    theta = (math.pi / 2.0) * (image.flat() + ((positions >> 1) & 1) / 2.0 + (positions & 1) / 4.0)
    folded_cos = np.cos(theta).reshape(-1, 4).sum(axis=1)
    folded_sin = np.sin(theta).reshape(-1, 4).sum(axis=1)
    return np.arctan2(folded_sin, folded_cos)


def compressed_state(image: BinaryImage) -> StateVector:
    """
    (1/2^(n-1)) sum_r |r> (cos phi_r |0> + sin phi_r |1>) over 2n - 1 qubits.

    phi_r is the angle of the prefix's folded color vector, so every prefix
    carries a unit color vector and the state has unit norm.
    """
    n = image.order
    phi = compressed_color_angles(image)
    prefixes = phi.size
    amps = np.zeros(2 * prefixes, dtype=np.complex128)
    amps[:prefixes] = np.cos(phi) / 2 ** (n - 1)
    amps[prefixes:] = np.sin(phi) / 2 ** (n - 1)
    return StateVector(2 * n - 1, amps)


def encode_circuit(image: Image, compressed: bool = False) -> CircuitProgram:
    """
    Hadamards on every position qubit, then one block per position with a
    nonzero angle: X on the position qubits whose bit is 0, a multi-controlled
    RY(2 theta) on the color qubit, and the same X gates again.
    """
    if compressed:
        if not isinstance(image, BinaryImage):
            raise DimensionMismatchError("Compressed encoding takes a binary image")
        angles = compressed_color_angles(image)
    else:
        angles = angle_field(image)

    position_qubits = int(angles.size).bit_length() - 1
    color = position_qubits
    controls = tuple(range(position_qubits))
    ops: list[GateOp] = [GateOp.h(q) for q in controls]

    for position, theta in enumerate(angles):
        if theta == 0.0:
            continue
        if not controls:
            ops.append(GateOp.ry(2.0 * float(theta), color))
            continue
        flips = [GateOp.x(q) for q in controls if not (position >> q) & 1]
        ops.extend(flips)
        ops.append(GateOp.mcry(2.0 * float(theta), controls, color))
        ops.extend(flips)

    program = CircuitProgram(position_qubits + 1, tuple(ops))
    logger.debug(f"Encoding circuit: {position_qubits + 1} qubits, {len(program)} gate(s)")
    return program
