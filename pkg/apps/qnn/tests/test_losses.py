"""Tests for losses and accuracy."""

import numpy as np
import pytest

from apps.qnn.services import (
    LossKind,
    accuracy,
    hinge_loss,
    loss_derivative,
    mse_loss,
    predicted_labels,
)
from common.exceptions import InvalidParameterError


class TestLosses:
    """Tests for the hinge and squared losses."""

    @pytest.mark.parametrize(
        ("pred", "label", "expected"),
        [(1.0, 1, 0.0), (-1.0, 1, 2.0), (0.25, -1, 1.25), (0.0, 1, 1.0)],
    )
    def test_hinge(self, pred, label, expected):
        """max(0, 1 - y * pred)."""
        assert hinge_loss(pred, label) == pytest.approx(expected)

    @pytest.mark.parametrize(("pred", "label", "expected"), [(1.0, 1, 0.0), (-1.0, 1, 4.0), (0.5, -1, 2.25)])
    def test_mse(self, pred, label, expected):
        """(pred - y)^2."""
        assert mse_loss(pred, label) == pytest.approx(expected)

    def test_bad_label(self):
        """Labels outside {-1, +1} are rejected."""
        with pytest.raises(InvalidParameterError):
            hinge_loss(0.5, 0)

    def test_derivatives(self):
        """Hinge is flat beyond the margin; MSE is linear."""
        preds = np.array([0.5, 1.0, -0.2])
        labels = np.array([1, 1, 1])
        np.testing.assert_allclose(loss_derivative(LossKind.HINGE, preds, labels), [-1.0, 0.0, -1.0])
        np.testing.assert_allclose(loss_derivative(LossKind.MSE, preds, labels), [-1.0, 0.0, -2.4])


class TestAccuracy:
    """Tests for sign classification."""

    def test_zero_breaks_positive(self):
        """A zero prediction counts as +1."""
        np.testing.assert_array_equal(predicted_labels(np.array([0.0, -0.1, 0.3])), [1, -1, 1])

    def test_accuracy(self):
        """Fraction of matching signs."""
        assert accuracy(np.array([0.2, -0.4, 0.0, 0.9]), np.array([1, -1, -1, -1])) == 0.5
