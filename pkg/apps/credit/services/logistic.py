"""Stratified split, logistic regression and the classification report."""

import logging
from dataclasses import asdict, dataclass
from typing import Any

import numpy as np
from scipy.special import expit
from sklearn.metrics import accuracy_score, confusion_matrix, precision_recall_fscore_support
from sklearn.model_selection import train_test_split

from common.exceptions import DimensionMismatchError, InsufficientDataError, InvalidParameterError

from .data import FeatureMatrix

logger = logging.getLogger(__name__)

CLASSES = (0, 1)


@dataclass(frozen=True)
class SplitConfig:
    test_fraction: float = 0.3
    seed: int = 0

    def __post_init__(self) -> None:
        if not 0.0 < self.test_fraction < 1.0:
            raise InvalidParameterError(f"test_fraction must be in (0, 1), got {self.test_fraction}")


@dataclass(frozen=True)
class LogisticConfig:
    learning_rate: float = 0.1
    epochs: int = 500
    l2: float = 1e-3

    def __post_init__(self) -> None:
        if not self.learning_rate > 0:
            raise InvalidParameterError(f"learning_rate must be > 0, got {self.learning_rate}")
        if self.epochs < 0:
            raise InvalidParameterError(f"epochs must be >= 0, got {self.epochs}")
        if self.l2 < 0:
            raise InvalidParameterError(f"l2 must be >= 0, got {self.l2}")


@dataclass(frozen=True, eq=False)
class LogisticModel:
    names: tuple[str, ...]
    weights: np.ndarray
    bias: float

    def probabilities(self, values: np.ndarray) -> np.ndarray:
        """P(label = 1) per row."""
        return expit(np.asarray(values, dtype=np.float64) @ self.weights + self.bias)

    def predict(self, values: np.ndarray) -> np.ndarray:
        return (self.probabilities(values) >= 0.5).astype(np.int64)

    def as_dict(self) -> dict[str, Any]:
        return {"weights": dict(zip(self.names, self.weights.tolist(), strict=True)), "bias": self.bias}


@dataclass(frozen=True)
class ClassMetrics:
    precision: float
    recall: float
    f1: float
    support: int


@dataclass(frozen=True)
class ClassReport:
    """Per-class metrics, accuracy, averages and the confusion matrix (rows = truth)."""

    classes: dict[int, ClassMetrics]
    accuracy: float
    macro_avg: ClassMetrics
    weighted_avg: ClassMetrics
    confusion: tuple[tuple[int, ...], ...]

    def as_dict(self) -> dict[str, Any]:
        return {
            "classes": {str(label): asdict(metrics) for label, metrics in self.classes.items()},
            "accuracy": self.accuracy,
            "macro_avg": asdict(self.macro_avg),
            "weighted_avg": asdict(self.weighted_avg),
            "confusion": [list(row) for row in self.confusion],
        }


def stratified_split(labels: np.ndarray, cfg: SplitConfig) -> tuple[np.ndarray, np.ndarray]:
    """
    Seeded train/test row indices preserving the class ratio.

    Raises:
        InsufficientDataError: If a class is too small to appear in both parts
    """
    labels = np.asarray(labels)
    try:
        train, test = train_test_split(
            np.arange(labels.size),
            test_size=cfg.test_fraction,
            stratify=labels,
            random_state=cfg.seed,
        )
    except ValueError as e:
        raise InsufficientDataError(f"Cannot stratify {labels.size} label(s): {e}") from e
    return np.sort(train), np.sort(test)


def fit_logistic(matrix: FeatureMatrix, cfg: LogisticConfig) -> LogisticModel:
    """
    Full-batch gradient descent on the L2-regularized mean log loss,
    starting from zero weights.

    Raises:
        InsufficientDataError: If the rows do not contain both classes
        DimensionMismatchError: If there are no features
    """
    if not matrix.names:
        raise DimensionMismatchError("Logistic regression needs at least one feature")
    if np.unique(matrix.labels).size < 2:
        raise InsufficientDataError("Logistic regression needs both classes in the training rows")

    x = matrix.values
    y = matrix.labels.astype(np.float64)
    weights = np.zeros(x.shape[1])
    bias = 0.0
    for _ in range(cfg.epochs):
        error = expit(x @ weights + bias) - y
        weights -= cfg.learning_rate * (x.T @ error / y.size + cfg.l2 * weights)
        bias -= cfg.learning_rate * float(error.mean())
    return LogisticModel(matrix.names, weights, bias)


def classification_report(y_true: np.ndarray, y_pred: np.ndarray) -> ClassReport:
    """Precision, recall, F1 (0 where undefined) and support for classes 0 and 1."""
    y_true = np.asarray(y_true)
    y_pred = np.asarray(y_pred)
    if y_true.shape != y_pred.shape or y_true.size == 0:
        raise DimensionMismatchError(f"Label shapes {y_true.shape} and {y_pred.shape} do not match")

    precision, recall, f1, support = precision_recall_fscore_support(
        y_true, y_pred, labels=list(CLASSES), zero_division=0
    )
    classes = {
        label: ClassMetrics(float(precision[k]), float(recall[k]), float(f1[k]), int(support[k]))
        for k, label in enumerate(CLASSES)
    }
    weights = support / support.sum()
    return ClassReport(
        classes=classes,
        accuracy=float(accuracy_score(y_true, y_pred)),
        macro_avg=ClassMetrics(
            float(precision.mean()), float(recall.mean()), float(f1.mean()), int(support.sum())
        ),
        weighted_avg=ClassMetrics(
            float(precision @ weights), float(recall @ weights), float(f1 @ weights), int(support.sum())
        ),
        confusion=tuple(tuple(int(v) for v in row) for row in confusion_matrix(y_true, y_pred, labels=list(CLASSES))),
    )


def train_logistic(
    matrix: FeatureMatrix,
    split: SplitConfig,
    train: LogisticConfig,
) -> tuple[LogisticModel, ClassReport]:
    """
    Fit on the stratified training rows and report on the held-out rows.

    Args:
        matrix: Rows restricted to the selected features
        split: Test fraction and split seed
        train: Gradient-descent settings

    Returns:
        (fitted model, ClassReport on the test rows)
    """
    train_rows, test_rows = stratified_split(matrix.labels, split)
    model = fit_logistic(matrix.take(train_rows), train)
    test = matrix.take(test_rows)
    report = classification_report(test.labels, model.predict(test.values))
    logger.info(f"Logistic regression on {list(matrix.names)}: test accuracy {report.accuracy:.4f}")
    return model, report
