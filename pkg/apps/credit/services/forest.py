"""Random-forest Gini importance of the expanded credit features."""

import logging
from dataclasses import dataclass
from typing import Any

import numpy as np
from sklearn.ensemble import RandomForestClassifier

from common.exceptions import DimensionMismatchError, InsufficientDataError, InvalidParameterError

from .data import FeatureMatrix

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ForestConfig:
    trees: int = 100
    max_depth: int = 8
    seed: int = 0
    threads: int = 1

    def __post_init__(self) -> None:
        if self.trees < 1:
            raise InvalidParameterError(f"trees must be >= 1, got {self.trees}")
        if self.max_depth < 1:
            raise InvalidParameterError(f"max_depth must be >= 1, got {self.max_depth}")
        if self.threads < 1:
            raise InvalidParameterError(f"threads must be >= 1, got {self.threads}")


@dataclass(frozen=True, eq=False)
class ImportanceReport:
    """Non-negative importances over named features, summing to 1."""

    names: tuple[str, ...]
    importances: np.ndarray

    def __post_init__(self) -> None:
        importances = np.asarray(self.importances, dtype=np.float64)
        if importances.shape != (len(self.names),):
            raise DimensionMismatchError(f"{len(self.names)} name(s) for importances of shape {importances.shape}")
        object.__setattr__(self, "names", tuple(self.names))
        object.__setattr__(self, "importances", importances)

    def __len__(self) -> int:
        return len(self.names)

    def filtered(self, threshold: float) -> "ImportanceReport":
        """
        Keep features with importance strictly above threshold and renormalize.

        Raises:
            InsufficientDataError: If no feature passes the threshold
        """
        keep = self.importances > threshold
        if not keep.any():
            raise InsufficientDataError(f"No feature has importance above {threshold}")
        kept = self.importances[keep]
        return ImportanceReport(
            tuple(name for name, k in zip(self.names, keep, strict=True) if k),
            kept / kept.sum(),
        )

    def ranked(self) -> list[tuple[str, float]]:
        order = np.argsort(-self.importances, kind="stable")
        return [(self.names[k], float(self.importances[k])) for k in order]

    def as_dict(self) -> dict[str, Any]:
        return dict(self.ranked())


def feature_importance(matrix: FeatureMatrix, cfg: ForestConfig) -> ImportanceReport:
    """
    Mean decrease in Gini impurity per feature over a seeded forest.

    Args:
        matrix: Training rows with their labels
        cfg: Forest size, depth, seed and worker threads

    Returns:
        ImportanceReport over every column of matrix

    Raises:
        InsufficientDataError: If fewer than two classes are present or no split is possible
    """
    if np.unique(matrix.labels).size < 2:
        raise InsufficientDataError("Feature importance needs at least two classes")

    forest = RandomForestClassifier(
        n_estimators=cfg.trees,
        max_depth=cfg.max_depth,
        criterion="gini",
        bootstrap=True,
        random_state=cfg.seed,
        n_jobs=cfg.threads,
    )
    forest.fit(matrix.values, matrix.labels)

    importances = np.asarray(forest.feature_importances_, dtype=np.float64)
    total = importances.sum()
    if total <= 0.0:
        raise InsufficientDataError("No feature separates the classes")
    report = ImportanceReport(matrix.names, importances / total)
    logger.info(f"Forest of {cfg.trees} tree(s): top feature {report.ranked()[0]}")
    return report
