"""Celery tasks for the qnn app."""

import logging
from pathlib import Path
from typing import Any

from celery import shared_task

from apps.qimage.services import load_dataset
from apps.qnn.services import OptimizerConfig, config_from_dict, subsample
from apps.qnn.services import train_fold as run_fold

logger = logging.getLogger(__name__)


@shared_task(  # type: ignore[untyped-decorator]
    bind=True,
    acks_late=True,
    reject_on_worker_lost=True,
    track_started=True,
)
def train_fold(
    self: Any,
    dataset_path: str,
    model: dict[str, Any],
    optimizer: dict[str, Any],
    fold: int,
    subset: int | None = None,
) -> dict[str, Any]:
    """
    Train and validate one cross-validation fold.

    Every argument is JSON so folds can run on any worker that sees the
    dataset file. The subset is drawn from the model seed, so every fold
    works on the same samples.

    Args:
        dataset_path: Preprocessed dataset (.npz)
        model: Model configuration as produced by as_dict()
        optimizer: OptimizerConfig fields
        fold: Index of the validation fold
        subset: Optional number of samples drawn before splitting

    Returns:
        TrainHistory.as_dict() of the fold
    """
    config = config_from_dict(model)
    logger.info(f"Training fold {fold} of {model.get('kind')} model (task_id: {self.request.id})")

    dataset = subsample(load_dataset(Path(dataset_path)), subset, config.seed)
    history = run_fold(config, dataset, OptimizerConfig(**optimizer), fold)

    logger.info(f"Fold {fold} finished with validation accuracy {history.final_val_accuracy:.4f}")
    return history.as_dict()
