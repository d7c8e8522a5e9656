"""German Credit feature-selection services."""

from .data import (
    ATTRIBUTES,
    CODE_LABELS,
    Attribute,
    AttributeKind,
    FeatureMatrix,
    RawCreditRecord,
    feature_label,
    one_hot_standardize,
    parse_german_data,
    read_german_data,
)
from .forest import ForestConfig, ImportanceReport, feature_importance
from .logistic import (
    ClassMetrics,
    ClassReport,
    LogisticConfig,
    LogisticModel,
    SplitConfig,
    classification_report,
    fit_logistic,
    stratified_split,
    train_logistic,
)
from .pipeline import CreditReport, run_credit_pipeline
from .selection import (
    SelectionConfig,
    SelectionResult,
    SelectionSolver,
    SolverConfig,
    build_feature_qubo,
    empty_selection_penalty,
    feature_correlation,
    run_selection,
    select_features,
    solve_selection,
)

__all__ = [
    "ATTRIBUTES",
    "CODE_LABELS",
    "Attribute",
    "AttributeKind",
    "RawCreditRecord",
    "FeatureMatrix",
    "feature_label",
    "parse_german_data",
    "read_german_data",
    "one_hot_standardize",
    "ForestConfig",
    "ImportanceReport",
    "feature_importance",
    "SelectionConfig",
    "SelectionSolver",
    "SolverConfig",
    "SelectionResult",
    "feature_correlation",
    "build_feature_qubo",
    "empty_selection_penalty",
    "solve_selection",
    "run_selection",
    "select_features",
    "SplitConfig",
    "LogisticConfig",
    "LogisticModel",
    "ClassMetrics",
    "ClassReport",
    "stratified_split",
    "fit_logistic",
    "classification_report",
    "train_logistic",
    "CreditReport",
    "run_credit_pipeline",
]
