"""Tests for downsampling and binarization."""

import numpy as np
import pytest

from apps.qimage.services import BinaryImage, GrayImage, bilinear_downsample, binarize, preprocess
from common.exceptions import DimensionMismatchError, InvalidParameterError


class TestBilinearDownsample:
    """Tests for bilinear_downsample."""

    @pytest.mark.parametrize("target", [1, 2, 5, 8, 16])
    def test_constant_image(self, target):
        """A constant image stays constant at any size."""
        img = GrayImage(np.full((28, 28), 0.3))
        out = bilinear_downsample(img, target)
        assert out.pixels.shape == (target, target)
        np.testing.assert_allclose(out.pixels, 0.3, atol=1e-15)

    def test_same_size_is_identity(self, rng):
        """Resampling to the same size returns the same pixels."""
        img = GrayImage(rng.random((8, 8)))
        np.testing.assert_array_equal(bilinear_downsample(img, 8).pixels, img.pixels)

    def test_checkerboard_averages_to_half(self):
        """A 4x4 {0,1} checkerboard becomes 2x2 of 0.5 under centre alignment."""
        board = np.indices((4, 4)).sum(axis=0) % 2
        out = bilinear_downsample(GrayImage(board), 2)
        np.testing.assert_allclose(out.pixels, 0.5)

    def test_output_in_unit_range(self, rng):
        """Outputs stay in [0, 1]."""
        out = bilinear_downsample(GrayImage(rng.random((28, 28))), 8)
        assert out.pixels.min() >= 0.0
        assert out.pixels.max() <= 1.0

    def test_zero_target(self):
        """target_side must be positive."""
        with pytest.raises(InvalidParameterError):
            bilinear_downsample(GrayImage(np.zeros((4, 4))), 0)

    def test_values_are_clamped_on_construction(self):
        """GrayImage clamps into [0, 1]."""
        img = GrayImage(np.array([[-0.5, 1.5]]))
        np.testing.assert_array_equal(img.pixels, [[0.0, 1.0]])


class TestBinarize:
    """Tests for binarize."""

    def test_threshold_sides(self):
        """0.49 -> 0, 0.51 -> 1, 0.5 -> 1."""
        img = GrayImage(np.array([[0.49, 0.51], [0.5, 0.0]]))
        np.testing.assert_array_equal(binarize(img).bits, [[0, 1], [1, 0]])

    def test_all_white(self):
        """An all-white image binarizes to all ones."""
        assert binarize(GrayImage(np.ones((4, 4)))).bits.all()

    def test_non_square(self):
        """Non-square input is rejected."""
        with pytest.raises(DimensionMismatchError):
            binarize(GrayImage(np.zeros((2, 4))))

    def test_non_power_of_two(self):
        """The side must be a power of two."""
        with pytest.raises(DimensionMismatchError):
            binarize(GrayImage(np.zeros((3, 3))))

    def test_binary_image_rejects_other_values(self):
        """BinaryImage holds 0/1 only."""
        with pytest.raises(InvalidParameterError):
            BinaryImage(np.full((2, 2), 2))


class TestPreprocess:
    """Tests for the batched preprocessing pipeline."""

    def test_idempotent_at_fixed_size(self, rng):
        """Re-running on an already preprocessed image changes nothing."""
        raw = rng.integers(0, 256, size=(5, 28, 28)).astype(np.uint8)
        once = preprocess(raw, 8)
        twice = preprocess(once.astype(np.float64) * 255, 8)
        np.testing.assert_array_equal(once, twice)

    def test_matches_single_image_path(self, rng):
        """Batch preprocessing equals the per-image functions."""
        raw = rng.integers(0, 256, size=(3, 28, 28)).astype(np.uint8)
        batch = preprocess(raw, 8)
        for k in range(3):
            single = binarize(bilinear_downsample(GrayImage.from_bytes(raw[k]), 8))
            np.testing.assert_array_equal(batch[k], single.bits)

    def test_deterministic(self, rng):
        """Same input gives the same bits."""
        raw = rng.integers(0, 256, size=(4, 28, 28)).astype(np.uint8)
        np.testing.assert_array_equal(preprocess(raw, 16), preprocess(raw, 16))
