"""Binarized digit datasets: filtering, compact storage and manifests."""

import io
import logging
from collections.abc import Sequence
from dataclasses import dataclass
from pathlib import Path
from typing import Any

import numpy as np

from common.exceptions import (
    DatasetNotFoundError,
    DimensionMismatchError,
    InsufficientDataError,
    MalformedDatasetError,
)

from .preprocessing import BinaryImage, preprocess

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class DigitDataset:
    """Binary images of shape (N, side, side) with their digit labels."""

    images: np.ndarray
    labels: np.ndarray
    digits: tuple[int, ...]
    threshold: float = 0.5

    def __post_init__(self) -> None:
        images = np.asarray(self.images, dtype=np.uint8)
        labels = np.asarray(self.labels, dtype=np.int64)
        if images.ndim != 3 or images.shape[1] != images.shape[2]:
            raise DimensionMismatchError(f"Expected (N, side, side) images, got {images.shape}")
        if labels.shape != (images.shape[0],):
            raise DimensionMismatchError(f"{images.shape[0]} image(s) but labels of shape {labels.shape}")
        object.__setattr__(self, "images", images)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "digits", tuple(int(d) for d in self.digits))

    def __len__(self) -> int:
        return int(self.labels.size)

    @property
    def side(self) -> int:
        return int(self.images.shape[1])

    def image(self, index: int) -> BinaryImage:
        return BinaryImage(self.images[index])

    def counts(self) -> dict[str, int]:
        return {str(d): int(np.sum(self.labels == d)) for d in self.digits}

    def subset(self, indices: np.ndarray) -> "DigitDataset":
        return DigitDataset(self.images[indices], self.labels[indices], self.digits, self.threshold)


def preprocess_digits(
    images: np.ndarray,
    labels: np.ndarray,
    *,
    digits: Sequence[int] = (3, 6),
    side: int = 8,
    threshold: float = 0.5,
) -> DigitDataset:
    """
    Keep the requested digits, scale to [0, 1], downsample and binarize.

    Args:
        images: (N, H, W) uint8 intensities
        labels: (N,) digit labels
        digits: Digits to keep
        side: Output side length (power of two)
        threshold: Binarization threshold (bit = 1 iff value >= threshold)

    Returns:
        DigitDataset in the original sample order

    Raises:
        DimensionMismatchError: If images and labels disagree in length
        InsufficientDataError: If no sample matches the requested digits
    """
    if images.shape[0] != labels.shape[0]:
        raise DimensionMismatchError(f"{images.shape[0]} image(s) but {labels.shape[0]} label(s)")
    if side < 1 or side & (side - 1):
        raise DimensionMismatchError(f"Side must be a power of two, got {side}")

    keep = np.isin(labels, np.asarray(digits))
    if not keep.any():
        raise InsufficientDataError(f"No samples with digits {tuple(digits)}")
    binary = preprocess(images[keep], side, threshold)
    dataset = DigitDataset(binary, labels[keep], tuple(digits), threshold)
    logger.info(f"Preprocessed {len(dataset)} sample(s) to {side}x{side}: {dataset.counts()}")
    return dataset


def dataset_to_bytes(dataset: DigitDataset) -> bytes:
    buffer = io.BytesIO()
    np.savez_compressed(
        buffer,
        bits=np.packbits(dataset.images.reshape(len(dataset), -1), axis=1),
        labels=dataset.labels,
        side=np.array(dataset.side),
        digits=np.array(dataset.digits),
        threshold=np.array(dataset.threshold),
    )
    return buffer.getvalue()


def load_dataset(path: Path) -> DigitDataset:
    if not path.is_file():
        raise DatasetNotFoundError(f"Dataset file {path} does not exist")
    try:
        with np.load(path) as data:
            side = int(data["side"])
            pixels = side * side
            bits = np.unpackbits(data["bits"], axis=1, count=pixels)
            return DigitDataset(
                bits.reshape(-1, side, side),
                data["labels"],
                tuple(int(d) for d in data["digits"]),
                float(data["threshold"]),
            )
    except (KeyError, ValueError, OSError) as e:
        raise MalformedDatasetError(f"{path} is not a preprocessed dataset: {e}") from e


def dataset_manifest(dataset: DigitDataset, **extra: Any) -> dict[str, Any]:
    return {
        "samples": len(dataset),
        "counts": dataset.counts(),
        "side": dataset.side,
        "digits": list(dataset.digits),
        "threshold": dataset.threshold,
        **extra,
    }
