"""Tests for QuboModel, evaluation, the Ising form and variable fixing."""

import itertools

import numpy as np
import pytest

from apps.qubo.services import (
    QuboModel,
    bits_from_spins,
    brute_force_solve,
    evaluate,
    evaluate_many,
    fix_variables,
    from_matrix,
    ising_energy,
    spins_from_bits,
    to_ising,
)
from apps.qubo.tests.conftest import random_model
from common.exceptions import DimensionMismatchError, InvalidModelError, InvalidParameterError


def all_bits(n: int) -> np.ndarray:
    """Every assignment of n bits as rows, x_0 first."""
    return np.array(list(itertools.product((0, 1), repeat=n)), dtype=np.int64).reshape(2**n, n)


class TestQuboModel:
    """Tests for model construction."""

    def test_reversed_pairs_fold(self):
        model = QuboModel(3, {}, {(2, 0): 1.5, (0, 2): 0.5})
        assert dict(model.quadratic) == {(0, 2): 2.0}

    def test_missing_linear_terms_are_zero(self):
        assert dict(QuboModel(2, {1: 3.0}).linear) == {0: 0.0, 1: 3.0}

    @pytest.mark.parametrize(
        ("linear", "quadratic"),
        [({2: 1.0}, {}), ({}, {(0, 0): 1.0}), ({0: float("nan")}, {}), ({}, {(0, 1): float("inf")})],
    )
    def test_invalid(self, linear, quadratic):
        with pytest.raises(InvalidModelError):
            QuboModel(2, linear, quadratic)

    def test_from_matrix(self):
        model = from_matrix(np.array([[1.0, 2.0], [1.0, -2.0]]))
        assert dict(model.linear) == {0: 1.0, 1: -2.0}
        assert dict(model.quadratic) == {(0, 1): 3.0}

    def test_from_matrix_not_square(self):
        with pytest.raises(InvalidModelError):
            from_matrix(np.zeros((2, 3)))


class TestEvaluate:
    """Tests for evaluate and evaluate_many."""

    @pytest.mark.parametrize(("x", "value"), [((0, 0), 0.0), ((1, 0), 1.0), ((0, 1), -2.0), ((1, 1), 2.0)])
    def test_small_model(self, small_model, x, value):
        assert evaluate(small_model, x) == value

    def test_pair_model(self, pair_model):
        assert evaluate(pair_model, (1, 1)) == 6.0

    def test_offset(self):
        assert evaluate(QuboModel(1, {0: 1.0}, offset=2.5), (1,)) == 3.5

    def test_many_matches_single(self):
        model = random_model(6, seed=2)
        bits = np.array(list(itertools.product((0, 1), repeat=6)))
        expected = [evaluate(model, row) for row in bits]
        np.testing.assert_allclose(evaluate_many(model, bits), expected)

    def test_wrong_length(self, small_model):
        with pytest.raises(DimensionMismatchError):
            evaluate(small_model, (1,))

    def test_non_binary(self, small_model):
        with pytest.raises(InvalidParameterError):
            evaluate(small_model, (0, 2))


class TestIsing:
    """Tests for to_ising and ising_energy."""

    def test_pair_model(self, pair_model):
        ising = to_ising(pair_model)
        assert ising.offset == 2.0
        assert dict(ising.field) == {0: 2.0, 1: 1.0}
        assert dict(ising.coupling) == {(0, 1): 1.0}

    def test_single_variable(self):
        ising = to_ising(QuboModel(1, {0: 1.0}))
        assert ising.field[0] == 0.5
        assert ising.offset == 0.5

    def test_empty(self):
        ising = to_ising(QuboModel(0))
        assert (ising.n, ising.offset, dict(ising.field), dict(ising.coupling)) == (0, 0.0, {}, {})

    @pytest.mark.parametrize("seed", range(40))
    def test_energy_matches_objective(self, seed):
        """E(2x - 1) == f(x) on every assignment of a random model with n <= 10."""
        n = seed % 10 + 1
        model = random_model(n, seed=seed, scale=5.0)
        ising = to_ising(model)
        bits = all_bits(n)
        energies = [ising_energy(ising, spins_from_bits(row)) for row in bits]
        np.testing.assert_allclose(energies, evaluate_many(model, bits), rtol=0, atol=1e-12)

    def test_spin_conversion(self):
        assert spins_from_bits((0, 1, 1)) == (-1, 1, 1)
        assert bits_from_spins((-1, 1, 1)) == (0, 1, 1)

    def test_bad_spins(self, small_model):
        with pytest.raises(InvalidParameterError):
            ising_energy(to_ising(small_model), (0, 1))


class TestFixVariables:
    """Tests for fix_variables."""

    def test_fix_nothing(self, small_model):
        sub = fix_variables(small_model, {})
        assert sub.model == small_model
        assert sub.constant == 0.0
        assert sub.free == (0, 1)

    def test_fix_one(self, pair_model):
        sub = fix_variables(pair_model, {1: 1})
        assert sub.free == (0,)
        assert sub.model.linear[0] == 6.0
        assert sub.constant == 0.0
        assert evaluate(sub.model, (1,)) + sub.constant == evaluate(pair_model, (1, 1))

    def test_fix_all(self, small_model):
        sub = fix_variables(small_model, {0: 1, 1: 1})
        assert sub.model.n == 0
        assert sub.constant == evaluate(small_model, (1, 1))

    def test_merge_matches_parent(self):
        model = random_model(6, seed=4)
        fixed = {1: 1, 3: 0, 4: 1}
        sub = fix_variables(model, fixed)
        for free_bits in itertools.product((0, 1), repeat=3):
            merged = sub.merge(free_bits, fixed, 6)
            assert evaluate(sub.model, free_bits) + sub.constant == pytest.approx(evaluate(model, merged), abs=1e-12)

    @pytest.mark.parametrize("batch", range(10))
    def test_sub_objective_identity(self, batch):
        """f_sub(y) + constant == f(y with the fixings) exhaustively, for 100 random models per batch."""
        rng = np.random.default_rng(batch)
        for seed in rng.integers(0, 2**32, size=100):
            n = int(rng.integers(1, 13))
            model = random_model(n, seed=int(seed), scale=5.0)
            fixed_indices = rng.choice(n, size=int(rng.integers(0, n + 1)), replace=False)
            fixed = {int(i): int(rng.integers(0, 2)) for i in fixed_indices}
            sub = fix_variables(model, fixed)

            free_bits = all_bits(len(sub.free))
            parent_bits = np.zeros((free_bits.shape[0], n), dtype=np.int64)
            for index, value in fixed.items():
                parent_bits[:, index] = value
            parent_bits[:, list(sub.free)] = free_bits

            np.testing.assert_allclose(
                evaluate_many(sub.model, free_bits) + sub.constant,
                evaluate_many(model, parent_bits),
                rtol=0,
                atol=1e-12,
            )

    @pytest.mark.parametrize("fixed", [{5: 1}, {0: 2}])
    def test_invalid(self, small_model, fixed):
        with pytest.raises(InvalidParameterError):
            fix_variables(small_model, fixed)


class TestArgminInvariance:
    """The minimiser does not depend on the offset."""

    @pytest.mark.parametrize("seed", range(20))
    def test_offset_keeps_minimiser(self, seed):
        model = random_model(seed % 8 + 3, seed=seed, scale=5.0)
        shifted = QuboModel(model.n, model.linear, model.quadratic, offset=float(seed) * 7.5 - 60.0)
        base, moved = brute_force_solve(model), brute_force_solve(shifted)
        assert moved.assignment == base.assignment
        assert moved.value == pytest.approx(base.value + shifted.offset, abs=1e-12)
