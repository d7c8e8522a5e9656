"""Pytest fixtures for qnn tests."""

import numpy as np
import pytest
from django.conf import settings

from apps.qimage.services import DigitDataset, dataset_to_bytes
from common.downloads import MNIST_FILES


def solid_digits(side: int, count: int) -> DigitDataset:
    """Alternating all-white 3s and all-black 6s."""
    labels = np.array([3, 6] * (count // 2), dtype=np.int64)
    images = np.zeros((labels.size, side, side), dtype=np.uint8)
    images[labels == 3] = 1
    return DigitDataset(images, labels, (3, 6))


@pytest.fixture
def rng() -> np.random.Generator:
    """Seeded generator for parameters and images."""
    return np.random.default_rng(1106)


@pytest.fixture
def random_digits(rng) -> DigitDataset:
    """Twenty random 4x4 binary images labelled 3 or 6."""
    images = rng.integers(0, 2, size=(20, 4, 4)).astype(np.uint8)
    labels = np.array([3, 6] * 10, dtype=np.int64)
    return DigitDataset(images, labels, (3, 6))


@pytest.fixture
def solid_dataset_file(tmp_path):
    """Path to a stored 8x8 dataset of solid 3s and 6s."""
    path = tmp_path / "dataset.npz"
    path.write_bytes(dataset_to_bytes(solid_digits(8, 40)))
    return path


@pytest.fixture(scope="session")
def mnist_dir():
    """Directory of the downloaded MNIST IDX files, skipping when any is missing."""
    directory = settings.WORKBENCH_DATA_DIR / "mnist"
    missing = [name for name in MNIST_FILES if not (directory / name).is_file()]
    if missing:
        pytest.skip(f"{directory} lacks {', '.join(missing)}")
    return directory
