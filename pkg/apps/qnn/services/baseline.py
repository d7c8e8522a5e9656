"""Classical d -> h -> 1 tanh baseline."""

from dataclasses import dataclass

import numpy as np

from common.exceptions import DimensionMismatchError

from .config import LossKind, MlpConfig, count_params
from .losses import loss_derivative, loss_values


def flatten_images(images: np.ndarray) -> np.ndarray:
    """(N, side, side) bits -> (N, side^2) inputs in {-1, +1}."""
    images = np.asarray(images, dtype=np.float64)
    return 2.0 * images.reshape(images.shape[0], -1) - 1.0


@dataclass(frozen=True)
class MlpBaseline:
    """
    Parameters are one flat vector: W1 (h x d, row-major), b1 (h), w2 (h), b2.
    """

    config: MlpConfig

    @property
    def size(self) -> int:
        return count_params(self.config)

    def unpack(self, params: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray, float]:
        params = np.asarray(params, dtype=np.float64)
        if params.shape != (self.size,):
            raise DimensionMismatchError(f"Expected {self.size} parameters, got shape {params.shape}")
        d, h = self.config.input_dim, self.config.hidden
        w1 = params[: d * h].reshape(h, d)
        b1 = params[d * h : d * h + h]
        w2 = params[d * h + h : d * h + 2 * h]
        return w1, b1, w2, float(params[-1])

    def prepare(self, images: np.ndarray) -> np.ndarray:
        return flatten_images(images)

    def init_params(self, rng: np.random.Generator) -> np.ndarray:
        d, h = self.config.input_dim, self.config.hidden
        limit = 1.0 / np.sqrt(d)
        return np.concatenate(
            [
                rng.uniform(-limit, limit, size=d * h),
                np.zeros(h),
                rng.uniform(-1.0, 1.0, size=h),
                np.zeros(1),
            ]
        )

    def _check_inputs(self, inputs: np.ndarray) -> np.ndarray:
        inputs = np.asarray(inputs, dtype=np.float64)
        if inputs.ndim != 2 or inputs.shape[1] != self.config.input_dim:
            raise DimensionMismatchError(
                f"Expected inputs of shape (N, {self.config.input_dim}), got {inputs.shape}"
            )
        return inputs

    def predict(self, params: np.ndarray, inputs: np.ndarray) -> np.ndarray:
        w1, b1, w2, b2 = self.unpack(params)
        hidden = np.tanh(self._check_inputs(inputs) @ w1.T + b1)
        return np.tanh(hidden @ w2 + b2)

    def loss_and_gradient(
        self,
        params: np.ndarray,
        inputs: np.ndarray,
        labels: np.ndarray,
        loss: LossKind | None = None,
    ) -> tuple[float, np.ndarray]:
        """Mean batch loss and its analytic gradient (same layout as params)."""
        loss = self.config.loss if loss is None else loss
        w1, b1, w2, b2 = self.unpack(params)
        x = self._check_inputs(inputs)
        hidden = np.tanh(x @ w1.T + b1)
        preds = np.tanh(hidden @ w2 + b2)

        batch = x.shape[0]
        d_out = loss_derivative(loss, preds, labels) * (1.0 - preds**2) / batch
        d_hidden = np.outer(d_out, w2) * (1.0 - hidden**2)
        grad = np.concatenate(
            [
                (d_hidden.T @ x).ravel(),
                d_hidden.sum(axis=0),
                hidden.T @ d_out,
                np.array([d_out.sum()]),
            ]
        )
        return float(np.mean(loss_values(loss, preds, labels))), grad


def mlp_forward(baseline: MlpBaseline, params: np.ndarray, images: np.ndarray) -> np.ndarray:
    """Predictions in (-1, 1) for a stack of binary images."""
    return baseline.predict(params, flatten_images(images))
