"""Pytest fixtures for qimage tests."""

import numpy as np
import pytest


@pytest.fixture
def rng() -> np.random.Generator:
    """Seeded generator for random images."""
    return np.random.default_rng(36)


@pytest.fixture
def digit_arrays(rng) -> tuple[np.ndarray, np.ndarray]:
    """Forty 28x28 images: digits 3 and 6 drawn as bright blocks, plus other digits."""
    labels = np.array([3, 6, 1, 3, 6, 0, 3, 6] * 5, dtype=np.uint8)
    images = rng.integers(0, 40, size=(labels.size, 28, 28)).astype(np.uint8)
    images[labels == 3, :, 14:] = 255
    images[labels == 6, 14:, :] = 255
    return images, labels
