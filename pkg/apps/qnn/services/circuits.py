"""CRADL / CRAML layer construction."""

from collections.abc import Sequence

import numpy as np

from apps.statevec.services import CircuitProgram, GateOp
from common.exceptions import DimensionMismatchError

from .config import Architecture, QnnConfig

# Flat parameter index of each gate, aligned with network_ops()
ParamIndex = tuple[int, ...]


def build_layer(
    arch: Architecture,
    layer_index: int,
    params_for_layer: Sequence[float],
    *,
    pixel_qubits: int | None = None,
) -> list[GateOp]:
    """
    Gates of one layer; pixel qubit p shares angle theta_p between its two gates.

    CRADL: even layers emit XX(theta_p, p, readout), XX(theta_p, p, color) per
    pixel; odd layers the same with ZZ. CRAML: every layer emits
    XX(theta_p, p, readout) then ZZ(theta_p, p, color) per pixel.

    The color qubit follows the pixel qubits and the readout qubit follows it.

    Raises:
        DimensionMismatchError: If pixel_qubits is given and differs from the angle count
    """
    pixels = len(params_for_layer)
    if pixel_qubits is not None and pixels != pixel_qubits:
        raise DimensionMismatchError(f"Layer needs {pixel_qubits} angle(s), got {pixels}")
    color, readout = pixels, pixels + 1

    ops: list[GateOp] = []
    for p, theta in enumerate(params_for_layer):
        theta = float(theta)
        if arch == Architecture.CRAML:
            ops.append(GateOp.xx(theta, p, readout))
            ops.append(GateOp.zz(theta, p, color))
        elif layer_index % 2 == 0:
            ops.append(GateOp.xx(theta, p, readout))
            ops.append(GateOp.xx(theta, p, color))
        else:
            ops.append(GateOp.zz(theta, p, readout))
            ops.append(GateOp.zz(theta, p, color))
    return ops


def check_params(config: QnnConfig, params: np.ndarray) -> np.ndarray:
    params = np.asarray(params, dtype=np.float64)
    if params.shape != config.param_shape:
        raise DimensionMismatchError(f"Expected parameters of shape {config.param_shape}, got {params.shape}")
    return params


def network_ops(config: QnnConfig, params: np.ndarray) -> tuple[list[GateOp], ParamIndex]:
    """All layer gates in order plus the flat parameter index driving each gate."""
    params = check_params(config, params)
    ops: list[GateOp] = []
    index: list[int] = []
    for layer in range(config.layers):
        layer_ops = build_layer(config.arch, layer, params[layer], pixel_qubits=config.pixel_qubits)
        ops.extend(layer_ops)
        # two gates per pixel qubit, in pixel order
        index.extend(layer * config.pixel_qubits + k // 2 for k in range(len(layer_ops)))
    return ops, tuple(index)


def network_program(config: QnnConfig, params: np.ndarray) -> CircuitProgram:
    ops, _ = network_ops(config, params)
    return CircuitProgram(config.total_qubits, tuple(ops))
