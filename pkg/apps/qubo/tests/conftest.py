"""Pytest fixtures for qubo tests."""

import itertools

import numpy as np
import pytest

from apps.qubo.services import QuboModel, write_qubo_file


def random_model(n: int, seed: int, scale: float = 1.0) -> QuboModel:
    """Dense model with coefficients drawn uniformly from [-scale, scale)."""
    rng = np.random.default_rng(seed)
    linear = {i: float(rng.uniform(-scale, scale)) for i in range(n)}
    quadratic = {pair: float(rng.uniform(-scale, scale)) for pair in itertools.combinations(range(n), 2)}
    return QuboModel(n, linear, quadratic)


@pytest.fixture
def small_model() -> QuboModel:
    """a = (1, -2), b_01 = 3."""
    return QuboModel(2, {0: 1.0, 1: -2.0}, {(0, 1): 3.0})


@pytest.fixture
def pair_model() -> QuboModel:
    """a = (2, 0), b_01 = 4."""
    return QuboModel(2, {0: 2.0, 1: 0.0}, {(0, 1): 4.0})


@pytest.fixture
def model_file(tmp_path, small_model):
    """small_model written in the text format."""
    return write_qubo_file(small_model, tmp_path / "small.qubo")
