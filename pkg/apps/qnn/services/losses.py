"""Hinge and squared losses over labels in {-1, +1}."""

import numpy as np

from common.exceptions import InvalidParameterError

from .config import LossKind


def _check_labels(labels: np.ndarray) -> np.ndarray:
    labels = np.asarray(labels, dtype=np.float64)
    if not np.all(np.isin(labels, (-1.0, 1.0))):
        raise InvalidParameterError("Labels must be -1 or +1")
    return labels


def hinge_loss(pred: float | np.ndarray, label: float | np.ndarray) -> float | np.ndarray:
    """max(0, 1 - label * pred)."""
    y = _check_labels(label)
    return np.maximum(0.0, 1.0 - y * np.asarray(pred, dtype=np.float64))


def mse_loss(pred: float | np.ndarray, label: float | np.ndarray) -> float | np.ndarray:
    """(pred - label)^2."""
    y = _check_labels(label)
    return (np.asarray(pred, dtype=np.float64) - y) ** 2


def loss_values(kind: LossKind, preds: np.ndarray, labels: np.ndarray) -> np.ndarray:
    if kind == LossKind.HINGE:
        return np.asarray(hinge_loss(preds, labels))
    return np.asarray(mse_loss(preds, labels))


def loss_derivative(kind: LossKind, preds: np.ndarray, labels: np.ndarray) -> np.ndarray:
    """d loss / d pred per sample (hinge uses 0 at the kink)."""
    y = _check_labels(labels)
    preds = np.asarray(preds, dtype=np.float64)
    if kind == LossKind.HINGE:
        return np.where(y * preds < 1.0, -y, 0.0)
    return 2.0 * (preds - y)


def predicted_labels(preds: np.ndarray) -> np.ndarray:
    """sign(pred) with 0 mapped to +1."""
    return np.where(np.asarray(preds) >= 0.0, 1, -1)


def accuracy(preds: np.ndarray, labels: np.ndarray) -> float:
    labels = np.asarray(labels)
    if labels.size == 0:
        return 0.0
    return float(np.mean(predicted_labels(preds) == labels))
