"""Model configurations and the named presets."""

from dataclasses import asdict, dataclass
from enum import StrEnum
from typing import Any

from common.exceptions import InvalidParameterError


class Architecture(StrEnum):
    CRADL = "cradl"
    CRAML = "craml"


class LossKind(StrEnum):
    HINGE = "hinge"
    MSE = "mse"


def _check_side(side: int) -> None:
    if side < 2 or side & (side - 1):
        raise InvalidParameterError(f"image_side must be a power of two >= 2, got {side}")


@dataclass(frozen=True)
class QnnConfig:
    """
    Quantum network over an FRQI-encoded image.

    Qubit layout: pixel qubits 0..P-1, color qubit P, readout qubit P+1, where
    P = 2n (uncompressed) or 2n-2 (compressed) for a 2^n x 2^n image.
    """

    image_side: int
    compressed: bool
    layers: int
    arch: Architecture = Architecture.CRADL
    loss: LossKind = LossKind.HINGE
    seed: int = 0

    def __post_init__(self) -> None:
        _check_side(self.image_side)
        if self.compressed and self.image_side < 4:
            raise InvalidParameterError("Compressed encoding needs image_side >= 4")
        if self.layers < 1:
            raise InvalidParameterError(f"layers must be >= 1, got {self.layers}")
        object.__setattr__(self, "arch", Architecture(self.arch))
        object.__setattr__(self, "loss", LossKind(self.loss))

    @property
    def order(self) -> int:
        return self.image_side.bit_length() - 1

    @property
    def pixel_qubits(self) -> int:
        return 2 * self.order - (2 if self.compressed else 0)

    @property
    def color_qubit(self) -> int:
        return self.pixel_qubits

    @property
    def readout_qubit(self) -> int:
        return self.pixel_qubits + 1

    @property
    def total_qubits(self) -> int:
        return self.pixel_qubits + 2

    @property
    def param_shape(self) -> tuple[int, int]:
        return (self.layers, self.pixel_qubits)

    def as_dict(self) -> dict[str, Any]:
        return {"kind": "qnn", **asdict(self)}


@dataclass(frozen=True)
class MlpConfig:
    """Classical d -> hidden -> 1 tanh network over the flattened image."""

    image_side: int
    hidden: int = 1
    loss: LossKind = LossKind.HINGE
    seed: int = 0

    def __post_init__(self) -> None:
        _check_side(self.image_side)
        if self.hidden < 1:
            raise InvalidParameterError(f"hidden must be >= 1, got {self.hidden}")
        object.__setattr__(self, "loss", LossKind(self.loss))

    @property
    def input_dim(self) -> int:
        return self.image_side**2

    def as_dict(self) -> dict[str, Any]:
        return {"kind": "mlp", **asdict(self)}


ModelConfig = QnnConfig | MlpConfig

PRESETS: dict[str, ModelConfig] = {
    "qnn1": QnnConfig(image_side=8, compressed=False, layers=12),
    "qnn2": QnnConfig(image_side=8, compressed=True, layers=16),
    "qnn3": QnnConfig(image_side=16, compressed=True, layers=42),
    "nn1": MlpConfig(image_side=8),
    "nn2": MlpConfig(image_side=16),
}


def preset(name: str, *, loss: LossKind | str | None = None, seed: int | None = None) -> ModelConfig:
    """Named configuration, optionally with another loss or seed."""
    try:
        config = PRESETS[name]
    except KeyError as e:
        raise InvalidParameterError(f"Unknown preset {name!r}; choose from {sorted(PRESETS)}") from e
    changes: dict[str, Any] = {}
    if loss is not None:
        changes["loss"] = LossKind(loss)
    if seed is not None:
        changes["seed"] = seed
    return type(config)(**{**asdict(config), **changes})


def count_params(config: ModelConfig) -> int:
    """layers x pixel qubits for a QNN; d*h + h + h + 1 for the MLP (d + 3 at h = 1)."""
    if isinstance(config, QnnConfig):
        return config.layers * config.pixel_qubits
    d, h = config.input_dim, config.hidden
    return d * h + h + h + 1


def config_from_dict(data: dict[str, Any]) -> ModelConfig:
    """Inverse of as_dict(); used to pass configurations to fold tasks."""
    fields = {key: value for key, value in data.items() if key != "kind"}
    kind = data.get("kind")
    try:
        if kind == "qnn":
            return QnnConfig(**fields)
        if kind == "mlp":
            return MlpConfig(**fields)
    except TypeError as e:
        raise InvalidParameterError(f"Bad {kind} configuration: {e}") from e
    raise InvalidParameterError(f"Unknown model kind {kind!r}")
