"""QUBO feature selection over the threshold-filtered importance report."""

import logging
from dataclasses import dataclass, field
from enum import StrEnum
from typing import Any

import numpy as np
from django.conf import settings

from apps.qubo.services import (
    AnnealSchedule,
    QuboModel,
    Solution,
    brute_force_solve,
    evaluate,
    simulated_anneal,
)
from common.exceptions import DimensionMismatchError, InvalidParameterError

from .data import FeatureMatrix, feature_label
from .forest import ForestConfig, ImportanceReport, feature_importance

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SelectionConfig:
    """
    alpha penalizes every selected feature and every correlated pair, beta
    rewards importance, big_m only prices an empty selection in reports.
    """

    alpha: float = 0.5
    beta: float = 2.0
    big_m: float = 10.0
    importance_threshold: float = 0.01

    def __post_init__(self) -> None:
        for name in ("alpha", "beta", "big_m", "importance_threshold"):
            value = getattr(self, name)
            if not np.isfinite(value) or value < 0:
                raise InvalidParameterError(f"{name} must be a finite value >= 0, got {value}")


class SelectionSolver(StrEnum):
    AUTO = "auto"
    BRUTE = "brute"
    ANNEAL = "sa"


@dataclass(frozen=True)
class SolverConfig:
    kind: SelectionSolver = SelectionSolver.AUTO
    schedule: AnnealSchedule = field(default_factory=AnnealSchedule)


@dataclass(frozen=True)
class SelectionResult:
    candidates: ImportanceReport
    model: QuboModel
    solution: Solution
    selected: tuple[str, ...]
    penalty: float

    def as_dict(self) -> dict[str, Any]:
        return {
            "candidates": len(self.candidates),
            "importances": self.candidates.as_dict(),
            "selected": list(self.selected),
            "selected_labels": [feature_label(name) for name in self.selected],
            "qubo_value": self.solution.value,
            "evaluations": self.solution.evaluations,
            "empty_selection_penalty": self.penalty,
        }


def feature_correlation(values: np.ndarray) -> np.ndarray:
    """Pearson correlation between columns; constant columns correlate with nothing."""
    values = np.asarray(values, dtype=np.float64)
    if values.shape[1] == 1:
        return np.ones((1, 1))
    with np.errstate(invalid="ignore", divide="ignore"):
        corr = np.corrcoef(values, rowvar=False)
    corr = np.nan_to_num(corr, nan=0.0)
    np.fill_diagonal(corr, 1.0)
    return corr


def build_feature_qubo(report: ImportanceReport, corr: np.ndarray, cfg: SelectionConfig) -> QuboModel:
    """
    a_i = alpha - beta * importance_i,  b_ij = alpha * |corr_ij|  (i < j).

    Raises:
        DimensionMismatchError: If corr is not square over the report's features
    """
    n = len(report)
    corr = np.asarray(corr, dtype=np.float64)
    if corr.shape != (n, n):
        raise DimensionMismatchError(f"Correlation matrix of shape {corr.shape} for {n} feature(s)")

    linear = {i: cfg.alpha - cfg.beta * float(report.importances[i]) for i in range(n)}
    rows, cols = np.triu_indices(n, k=1)
    quadratic = {
        (int(i), int(j)): cfg.alpha * abs(float(corr[i, j]))
        for i, j in zip(rows, cols, strict=True)
        if corr[i, j] != 0.0
    }
    return QuboModel(n, linear, quadratic)


def empty_selection_penalty(cfg: SelectionConfig, assignment: tuple[int, ...]) -> float:
    """M * max(0, 1 - sum x); zero for any non-empty selection."""
    return cfg.big_m * max(0, 1 - sum(assignment))


def solve_selection(model: QuboModel, solver: SolverConfig) -> Solution:
    """
    Minimize over non-empty assignments.

    Exhaustive search skips the all-zero vector directly. When annealing ends
    on the all-zero vector, the cheapest single feature takes its place; with
    non-negative couplings that is the best non-empty assignment.
    """
    kind = solver.kind
    if kind == SelectionSolver.AUTO:
        kind = SelectionSolver.BRUTE if model.n <= settings.BRUTE_FORCE_MAX_VARIABLES else SelectionSolver.ANNEAL

    if kind == SelectionSolver.BRUTE:
        return brute_force_solve(model, exclude_zero=True)

    solution = simulated_anneal(model, solver.schedule)
    if any(solution.assignment):
        return solution
    cheapest = int(np.argmin(model.linear_vector))
    assignment = tuple(int(i == cheapest) for i in range(model.n))
    logger.debug(f"Annealing returned the empty selection; using feature {cheapest}")
    return Solution(
        assignment=assignment,
        value=evaluate(model, assignment),
        evaluations=solution.evaluations + 1,
        history=solution.history,
    )


def run_selection(
    matrix: FeatureMatrix,
    cfg: SelectionConfig,
    forest: ForestConfig,
    solver: SolverConfig,
) -> SelectionResult:
    """
    Importance -> threshold filter -> QUBO -> solve -> selected names.

    Args:
        matrix: Rows the importances and correlations are computed on
        cfg: QUBO coefficients and importance threshold
        forest: Random forest settings
        solver: Solver choice and annealing schedule

    Returns:
        SelectionResult with at least one selected feature

    Raises:
        InsufficientDataError: If no feature passes the threshold
    """
    candidates = feature_importance(matrix, forest).filtered(cfg.importance_threshold)
    corr = feature_correlation(matrix.restrict(candidates.names).values)
    model = build_feature_qubo(candidates, corr, cfg)
    solution = solve_selection(model, solver)

    selected = tuple(name for name, bit in zip(candidates.names, solution.assignment, strict=True) if bit)
    logger.info(f"Selected {len(selected)} of {len(candidates)} candidate feature(s): {list(selected)}")
    return SelectionResult(
        candidates=candidates,
        model=model,
        solution=solution,
        selected=selected,
        penalty=empty_selection_penalty(cfg, solution.assignment),
    )


def select_features(
    matrix: FeatureMatrix,
    cfg: SelectionConfig,
    solver: SolverConfig,
    forest: ForestConfig | None = None,
) -> tuple[str, ...]:
    """Names of the selected features (never empty)."""
    return run_selection(matrix, cfg, forest or ForestConfig(), solver).selected
