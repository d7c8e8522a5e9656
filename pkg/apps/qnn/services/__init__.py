"""Quantum network and classical baseline services."""

from .baseline import MlpBaseline, flatten_images, mlp_forward
from .circuits import build_layer, check_params, network_ops, network_program
from .config import (
    PRESETS,
    Architecture,
    LossKind,
    MlpConfig,
    ModelConfig,
    QnnConfig,
    config_from_dict,
    count_params,
    preset,
)
from .losses import accuracy, hinge_loss, loss_derivative, loss_values, mse_loss, predicted_labels
from .network import QnnModel, encode_images, expectation_gradient, forward, gradient, predict_states
from .training import (
    OptimizerConfig,
    TrainHistory,
    fit,
    kfold_indices,
    mlp_train,
    model_for,
    subsample,
    targets_from_digits,
    train,
    train_fold,
    train_holdout,
)

__all__ = [
    "Architecture",
    "LossKind",
    "QnnConfig",
    "MlpConfig",
    "ModelConfig",
    "PRESETS",
    "preset",
    "count_params",
    "config_from_dict",
    "build_layer",
    "check_params",
    "network_ops",
    "network_program",
    "hinge_loss",
    "mse_loss",
    "loss_values",
    "loss_derivative",
    "predicted_labels",
    "accuracy",
    "encode_images",
    "predict_states",
    "forward",
    "expectation_gradient",
    "gradient",
    "QnnModel",
    "MlpBaseline",
    "flatten_images",
    "mlp_forward",
    "OptimizerConfig",
    "TrainHistory",
    "model_for",
    "subsample",
    "kfold_indices",
    "targets_from_digits",
    "fit",
    "train_fold",
    "train",
    "train_holdout",
    "mlp_train",
]
