"""Seeded mini-batch training with k-fold and holdout evaluation."""

import logging
from dataclasses import asdict, dataclass, field
from typing import Any, Protocol

import numpy as np

from apps.qimage.services import DigitDataset
from common.exceptions import InsufficientDataError, InvalidParameterError

from .baseline import MlpBaseline
from .config import LossKind, MlpConfig, ModelConfig, QnnConfig
from .losses import accuracy
from .network import QnnModel

logger = logging.getLogger(__name__)


class Trainable(Protocol):
    def prepare(self, images: np.ndarray) -> np.ndarray: ...

    def init_params(self, rng: np.random.Generator) -> np.ndarray: ...

    def predict(self, params: np.ndarray, inputs: np.ndarray) -> np.ndarray: ...

    def loss_and_gradient(
        self,
        params: np.ndarray,
        inputs: np.ndarray,
        labels: np.ndarray,
        loss: LossKind | None = None,
    ) -> tuple[float, np.ndarray]: ...


@dataclass(frozen=True)
class OptimizerConfig:
    """Plain mini-batch gradient descent settings."""

    learning_rate: float = 0.05
    epochs: int = 30
    batch_size: int = 32
    folds: int = 10

    def __post_init__(self) -> None:
        if not self.learning_rate > 0:
            raise InvalidParameterError(f"learning_rate must be > 0, got {self.learning_rate}")
        if self.epochs < 0:
            raise InvalidParameterError(f"epochs must be >= 0, got {self.epochs}")
        if self.batch_size < 1:
            raise InvalidParameterError(f"batch_size must be >= 1, got {self.batch_size}")
        if self.folds < 2:
            raise InvalidParameterError(f"folds must be >= 2, got {self.folds}")


@dataclass
class TrainHistory:
    """Per-epoch curves of one fold; both lists have one entry per epoch."""

    fold: int
    train_loss: list[float] = field(default_factory=list)
    val_accuracy: list[float] = field(default_factory=list)
    initial_val_accuracy: float = 0.0
    config: dict[str, Any] = field(default_factory=dict)

    @property
    def epochs(self) -> int:
        return len(self.train_loss)

    @property
    def final_val_accuracy(self) -> float:
        return self.val_accuracy[-1] if self.val_accuracy else self.initial_val_accuracy

    def rows(self) -> list[dict[str, Any]]:
        """CSV rows: fold, epoch (1-based), train_loss, val_accuracy."""
        return [
            {"fold": self.fold, "epoch": epoch, "train_loss": loss, "val_accuracy": acc}
            for epoch, (loss, acc) in enumerate(zip(self.train_loss, self.val_accuracy, strict=True), start=1)
        ]

    def as_dict(self) -> dict[str, Any]:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "TrainHistory":
        return cls(
            fold=int(data["fold"]),
            train_loss=[float(v) for v in data["train_loss"]],
            val_accuracy=[float(v) for v in data["val_accuracy"]],
            initial_val_accuracy=float(data["initial_val_accuracy"]),
            config=dict(data.get("config", {})),
        )


def subsample(dataset: DigitDataset, size: int | None, seed: int) -> DigitDataset:
    """Seeded random subset of `size` samples in their original order (all when size is None)."""
    if size is None or size >= len(dataset):
        return dataset
    if size < 1:
        raise InvalidParameterError(f"Subset size must be >= 1, got {size}")
    keep = np.sort(np.random.default_rng(seed).choice(len(dataset), size=size, replace=False))
    return dataset.subset(keep)


def model_for(config: ModelConfig) -> Trainable:
    if isinstance(config, QnnConfig):
        return QnnModel(config)
    if isinstance(config, MlpConfig):
        return MlpBaseline(config)
    raise InvalidParameterError(f"Unsupported model configuration {type(config).__name__}")


def kfold_indices(n: int, folds: int, seed: int) -> list[np.ndarray]:
    """Seeded partition of range(n) into disjoint folds whose sizes differ by at most one."""
    if folds < 2:
        raise InvalidParameterError(f"folds must be >= 2, got {folds}")
    if n < folds:
        raise InsufficientDataError(f"Cannot split {n} sample(s) into {folds} folds")
    order = np.random.default_rng(seed).permutation(n)
    return list(np.array_split(order, folds))


def targets_from_digits(labels: np.ndarray, digits: tuple[int, ...]) -> np.ndarray:
    """The first digit maps to +1, every other label to -1."""
    return np.where(np.asarray(labels) == digits[0], 1, -1).astype(np.float64)


def _check_image_side(config: ModelConfig, dataset: DigitDataset) -> None:
    if dataset.side != config.image_side:
        raise InvalidParameterError(
            f"Model expects {config.image_side}x{config.image_side} images, dataset has {dataset.side}x{dataset.side}"
        )


def fit(
    config: ModelConfig,
    train_set: DigitDataset,
    val_set: DigitDataset,
    opt: OptimizerConfig,
    *,
    fold: int = 0,
) -> tuple[np.ndarray, TrainHistory]:
    """
    Train one model from its seed and record the per-epoch curves.

    Initial parameters and batch order come from independent streams spawned
    from (config.seed, fold), so every fold is reproducible on its own.

    Args:
        config: Model configuration (QNN or MLP)
        train_set: Training samples
        val_set: Validation samples, scored after every epoch
        opt: Optimizer settings
        fold: Fold index recorded in the history and mixed into the seed

    Returns:
        (final parameters, TrainHistory)

    Raises:
        InsufficientDataError: If either split is empty
        InvalidParameterError: If the image size does not match the model
    """
    if len(train_set) == 0 or len(val_set) == 0:
        raise InsufficientDataError("Training needs non-empty train and validation splits")
    _check_image_side(config, train_set)
    _check_image_side(config, val_set)

    model = model_for(config)
    init_seq, shuffle_seq = np.random.SeedSequence([config.seed, fold]).spawn(2)
    params = model.init_params(np.random.default_rng(init_seq))
    shuffle_rng = np.random.default_rng(shuffle_seq)

    train_x = model.prepare(train_set.images)
    train_y = targets_from_digits(train_set.labels, train_set.digits)
    val_x = model.prepare(val_set.images)
    val_y = targets_from_digits(val_set.labels, val_set.digits)

    history = TrainHistory(
        fold=fold,
        initial_val_accuracy=accuracy(model.predict(params, val_x), val_y),
        config={"model": config.as_dict(), "optimizer": asdict(opt)},
    )
    logger.info(
        f"Fold {fold}: {len(train_set)} train / {len(val_set)} validation sample(s), "
        f"initial accuracy {history.initial_val_accuracy:.4f}"
    )

    n = len(train_set)
    for epoch in range(1, opt.epochs + 1):
        order = shuffle_rng.permutation(n)
        total = 0.0
        for start in range(0, n, opt.batch_size):
            batch = order[start : start + opt.batch_size]
            loss, grad = model.loss_and_gradient(params, train_x[batch], train_y[batch])
            params = params - opt.learning_rate * grad
            total += loss * batch.size
        history.train_loss.append(total / n)
        history.val_accuracy.append(accuracy(model.predict(params, val_x), val_y))
        logger.info(
            f"Fold {fold} epoch {epoch}/{opt.epochs}: "
            f"loss {history.train_loss[-1]:.4f}, val accuracy {history.val_accuracy[-1]:.4f}"
        )

    return params, history


def train_fold(config: ModelConfig, dataset: DigitDataset, opt: OptimizerConfig, fold: int) -> TrainHistory:
    """Train on every fold but `fold` and validate on `fold`."""
    if not 0 <= fold < opt.folds:
        raise InvalidParameterError(f"fold must be in [0, {opt.folds}), got {fold}")
    parts = kfold_indices(len(dataset), opt.folds, config.seed)
    train_idx = np.concatenate([part for k, part in enumerate(parts) if k != fold])
    _, history = fit(config, dataset.subset(train_idx), dataset.subset(parts[fold]), opt, fold=fold)
    return history


def train(config: ModelConfig, dataset: DigitDataset, opt: OptimizerConfig) -> list[TrainHistory]:
    """k-fold cross-validation in this process; one TrainHistory per fold."""
    return [train_fold(config, dataset, opt, fold) for fold in range(opt.folds)]


def train_holdout(
    config: ModelConfig,
    train_set: DigitDataset,
    val_set: DigitDataset,
    opt: OptimizerConfig,
) -> TrainHistory:
    """Train on a fixed split (reported as fold 0)."""
    _, history = fit(config, train_set, val_set, opt)
    return history


def mlp_train(baseline: MlpBaseline, dataset: DigitDataset, opt: OptimizerConfig) -> list[TrainHistory]:
    return train(baseline.config, dataset, opt)
