"""Forward pass and parameter-shift gradients of the quantum network."""

import logging
import math
from dataclasses import dataclass

import numpy as np

from apps.qimage.services import BinaryImage, compressed_state, frqi_state
from apps.statevec.services import StateVector, apply_array, evolve
from apps.statevec.services.kernels import expectation_z
from common.exceptions import DimensionMismatchError, InvalidParameterError

from .circuits import check_params, network_ops
from .config import LossKind, QnnConfig
from .losses import loss_derivative, loss_values

logger = logging.getLogger(__name__)

SHIFT = math.pi / 2.0


def with_readout(amplitudes: np.ndarray) -> np.ndarray:
    """Append a readout qubit in |0> as the new most significant qubit."""
    return np.concatenate([amplitudes, np.zeros_like(amplitudes)], axis=-1)


def encode_images(config: QnnConfig, images: np.ndarray) -> np.ndarray:
    """(N, side, side) bits -> (N, 2^total_qubits) encoded states with the readout appended."""
    images = np.asarray(images)
    if images.ndim != 3 or images.shape[1:] != (config.image_side, config.image_side):
        raise DimensionMismatchError(
            f"Expected images of shape (N, {config.image_side}, {config.image_side}), got {images.shape}"
        )
    encode = compressed_state if config.compressed else frqi_state
    states = np.empty((images.shape[0], 1 << config.total_qubits), dtype=np.complex128)
    for k, bits in enumerate(images):
        states[k] = with_readout(encode(BinaryImage(bits)).amplitudes)
    return states


def predict_states(config: QnnConfig, params: np.ndarray, states: np.ndarray) -> np.ndarray:
    """<Z_readout> after all layers for each row of states."""
    ops, _ = network_ops(config, params)
    return np.asarray(expectation_z(evolve(states, ops), config.readout_qubit))


def forward(config: QnnConfig, params: np.ndarray, encoded: StateVector) -> float:
    """
    Prediction in [-1, 1] for one encoded image.

    Raises:
        DimensionMismatchError: If encoded does not have pixel + color qubits
    """
    if encoded.qubits != config.total_qubits - 1:
        raise DimensionMismatchError(
            f"Encoded state has {encoded.qubits} qubit(s), config expects {config.total_qubits - 1}"
        )
    return float(predict_states(config, params, with_readout(encoded.amplitudes)[None, :])[0])


def expectation_gradient(
    config: QnnConfig,
    params: np.ndarray,
    states: np.ndarray,
) -> tuple[np.ndarray, np.ndarray]:
    """
    Predictions and their exact parameter gradients by the shift rule.

    For each gate g driven by parameter k,
        d<Z>/d theta_k += (<Z>(theta_g + pi/2) - <Z>(theta_g - pi/2)) / 2.
    The state before each gate is carried forward once; both shifted copies
    are evolved through the remaining gates stacked on the batch axis.

    Returns:
        (preds of shape (N,), grads of shape (N, layers, pixel_qubits))
    """
    params = check_params(config, params)
    ops, index = network_ops(config, params)
    states = np.asarray(states, dtype=np.complex128)
    if states.ndim != 2 or states.shape[1] != 1 << config.total_qubits:
        raise DimensionMismatchError(f"Expected (N, {1 << config.total_qubits}) states, got {states.shape}")

    batch = states.shape[0]
    readout = config.readout_qubit
    grads = np.zeros((batch, params.size))
    prefix = states
    for g, op in enumerate(ops):
        assert op.theta is not None
        shifted = np.concatenate(
            [apply_array(prefix, op.with_theta(op.theta + SHIFT)), apply_array(prefix, op.with_theta(op.theta - SHIFT))]
        )
        values = expectation_z(evolve(shifted, ops[g + 1 :]), readout)
        grads[:, index[g]] += 0.5 * (values[:batch] - values[batch:])
        prefix = apply_array(prefix, op)

    preds = np.asarray(expectation_z(prefix, readout))
    return preds, grads.reshape(batch, *config.param_shape)


def gradient(
    config: QnnConfig,
    params: np.ndarray,
    states: np.ndarray,
    labels: np.ndarray,
    loss: LossKind | None = None,
) -> tuple[float, np.ndarray]:
    """
    Mean batch loss and its gradient with respect to every angle.

    Args:
        config: Network configuration
        params: Angles of shape (layers, pixel_qubits)
        states: Encoded states with the readout appended, shape (N, 2^total_qubits)
        labels: Targets in {-1, +1}
        loss: Loss to differentiate (defaults to config.loss)

    Returns:
        (mean loss, gradient of shape (layers, pixel_qubits))

    Raises:
        InvalidParameterError: On an empty batch or invalid labels
    """
    labels = np.asarray(labels, dtype=np.float64)
    if labels.size == 0:
        raise InvalidParameterError("Gradient needs a non-empty batch")
    kind = config.loss if loss is None else loss
    preds, grads = expectation_gradient(config, params, states)
    weights = loss_derivative(kind, preds, labels)
    mean_grad = np.tensordot(weights, grads, axes=1) / labels.size
    return float(np.mean(loss_values(kind, preds, labels))), mean_grad


@dataclass(frozen=True)
class QnnModel:
    """Training adapter: encoded states in, predictions and gradients out."""

    config: QnnConfig

    @property
    def size(self) -> int:
        return self.config.layers * self.config.pixel_qubits

    def prepare(self, images: np.ndarray) -> np.ndarray:
        return encode_images(self.config, images)

    def init_params(self, rng: np.random.Generator) -> np.ndarray:
        return rng.uniform(-math.pi, math.pi, size=self.config.param_shape)

    def predict(self, params: np.ndarray, inputs: np.ndarray) -> np.ndarray:
        return predict_states(self.config, params, inputs)

    def loss_and_gradient(
        self,
        params: np.ndarray,
        inputs: np.ndarray,
        labels: np.ndarray,
        loss: LossKind | None = None,
    ) -> tuple[float, np.ndarray]:
        return gradient(self.config, params, inputs, labels, loss)
