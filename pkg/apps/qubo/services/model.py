"""QUBO and Ising model types and their exact algebra."""

import math
from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field
from functools import cached_property
from types import MappingProxyType

import numpy as np

from common.exceptions import DimensionMismatchError, InvalidModelError, InvalidParameterError

Assignment = tuple[int, ...]
Pair = tuple[int, int]


@dataclass(frozen=True, eq=True)
class QuboModel:
    """
    Objective  f(x) = offset + sum_i a_i x_i + sum_{i<j} b_ij x_i x_j  over x in {0,1}^n.

    Each unordered pair is stored once under the key (i, j) with i < j and
    contributes exactly once. Keys given as (j, i) are folded onto (i, j).
    """

    n: int
    linear: Mapping[int, float] = field(default_factory=dict)
    quadratic: Mapping[Pair, float] = field(default_factory=dict)
    offset: float = 0.0

    def __post_init__(self) -> None:
        if self.n < 0:
            raise InvalidModelError(f"Dimension must be non-negative, got {self.n}")

        linear = dict.fromkeys(range(self.n), 0.0)
        for index, coef in self.linear.items():
            self._check_index(index)
            linear[index] = self._check_finite(coef)

        quadratic: dict[Pair, float] = {}
        for (i, j), coef in self.quadratic.items():
            self._check_index(i)
            self._check_index(j)
            if i == j:
                raise InvalidModelError(f"Diagonal pair ({i}, {i}) belongs in the linear terms")
            key = (i, j) if i < j else (j, i)
            quadratic[key] = quadratic.get(key, 0.0) + self._check_finite(coef)

        object.__setattr__(self, "linear", MappingProxyType(linear))
        object.__setattr__(self, "quadratic", MappingProxyType(dict(sorted(quadratic.items()))))
        object.__setattr__(self, "offset", self._check_finite(self.offset))

    def _check_index(self, index: int) -> None:
        if not 0 <= index < self.n:
            raise InvalidModelError(f"Variable index {index} out of range for n={self.n}")

    @staticmethod
    def _check_finite(value: float) -> float:
        value = float(value)
        if not math.isfinite(value):
            raise InvalidModelError(f"Coefficient {value} is not finite")
        return value

    @cached_property
    def linear_vector(self) -> np.ndarray:
        return np.array([self.linear[i] for i in range(self.n)], dtype=np.float64)

    @cached_property
    def upper_matrix(self) -> np.ndarray:
        """Strictly upper-triangular coefficient matrix (b_ij at [i, j], i < j)."""
        upper = np.zeros((self.n, self.n), dtype=np.float64)
        for (i, j), coef in self.quadratic.items():
            upper[i, j] = coef
        return upper

    @cached_property
    def coupling_matrix(self) -> np.ndarray:
        """Symmetric coupling matrix with zero diagonal (b_ij at [i, j] and [j, i])."""
        return self.upper_matrix + self.upper_matrix.T


@dataclass(frozen=True)
class IsingModel:
    """Energy  E(s) = offset + sum_i h_i s_i + sum_{i<j} J_ij s_i s_j  over s in {-1,+1}^n."""

    n: int
    field: Mapping[int, float]
    coupling: Mapping[Pair, float]
    offset: float = 0.0


@dataclass(frozen=True)
class SubQubo:
    """A model over the free variables with the fixed remainder folded into constant."""

    free: tuple[int, ...]
    model: QuboModel
    constant: float

    def merge(self, free_bits: Sequence[int], fixed: Mapping[int, int], n: int) -> Assignment:
        """Combine a sub-assignment with the fixed values into a parent assignment."""
        if len(free_bits) != len(self.free):
            raise DimensionMismatchError(
                f"Sub-assignment has {len(free_bits)} bits, expected {len(self.free)}"
            )
        bits = [0] * n
        for index, value in fixed.items():
            bits[index] = int(value)
        for index, value in zip(self.free, free_bits, strict=True):
            bits[index] = int(value)
        return tuple(bits)


def from_matrix(q: np.ndarray, offset: float = 0.0) -> QuboModel:
    """
    Build a model from a square matrix in x^T Q x form.

    Diagonal entries become linear terms; Q[i, j] + Q[j, i] becomes b_ij.
    """
    q = np.asarray(q, dtype=np.float64)
    if q.ndim != 2 or q.shape[0] != q.shape[1]:
        raise InvalidModelError(f"Expected a square matrix, got shape {q.shape}")
    n = q.shape[0]
    linear = {i: float(q[i, i]) for i in range(n)}
    quadratic = {
        (i, j): float(q[i, j] + q[j, i])
        for i in range(n)
        for j in range(i + 1, n)
        if q[i, j] + q[j, i] != 0.0
    }
    return QuboModel(n=n, linear=linear, quadratic=quadratic, offset=offset)


def as_assignment(bits: Sequence[int] | np.ndarray, n: int) -> Assignment:
    """Validate a 0/1 vector against the model dimension."""
    values = tuple(int(b) for b in bits)
    if len(values) != n:
        raise DimensionMismatchError(f"Assignment has {len(values)} bits, model has {n}")
    if any(b not in (0, 1) for b in values):
        raise InvalidParameterError("Assignment values must be 0 or 1")
    return values


def evaluate_many(model: QuboModel, bits: np.ndarray) -> np.ndarray:
    """Objective values for each row of a (k, n) 0/1 matrix."""
    x = np.asarray(bits, dtype=np.float64)
    if x.ndim != 2 or x.shape[1] != model.n:
        raise DimensionMismatchError(f"Expected rows of {model.n} bits, got shape {x.shape}")
    if model.n == 0:
        return np.full(x.shape[0], model.offset)
    return x @ model.linear_vector + np.einsum("ki,ki->k", x @ model.upper_matrix, x) + model.offset


def evaluate(model: QuboModel, x: Sequence[int] | np.ndarray) -> float:
    """Objective value of one assignment."""
    assignment = as_assignment(x, model.n)
    return float(evaluate_many(model, np.array([assignment], dtype=np.float64).reshape(1, model.n))[0])


def to_ising(model: QuboModel) -> IsingModel:
    """
    Substitute x_i = (1 + s_i) / 2.

    h_i = a_i / 2 + sum_{j} b_ij / 4,  J_ij = b_ij / 4,
    offset = offset_qubo + sum_i a_i / 2 + sum_{i<j} b_ij / 4.
    """
    field_terms = {i: model.linear[i] / 2.0 for i in range(model.n)}
    coupling: dict[Pair, float] = {}
    offset = model.offset + sum(model.linear.values()) / 2.0
    for (i, j), coef in model.quadratic.items():
        field_terms[i] += coef / 4.0
        field_terms[j] += coef / 4.0
        coupling[(i, j)] = coef / 4.0
        offset += coef / 4.0
    return IsingModel(
        n=model.n,
        field=MappingProxyType(field_terms),
        coupling=MappingProxyType(coupling),
        offset=offset,
    )


def spins_from_bits(bits: Sequence[int]) -> tuple[int, ...]:
    return tuple(2 * int(b) - 1 for b in bits)


def bits_from_spins(spins: Sequence[int]) -> Assignment:
    return tuple((int(s) + 1) // 2 for s in spins)


def ising_energy(ising: IsingModel, spins: Sequence[int]) -> float:
    if len(spins) != ising.n:
        raise DimensionMismatchError(f"Spin vector has {len(spins)} entries, model has {ising.n}")
    if any(s not in (-1, 1) for s in spins):
        raise InvalidParameterError("Spins must be -1 or +1")
    energy = ising.offset + sum(ising.field[i] * spins[i] for i in range(ising.n))
    energy += sum(coef * spins[i] * spins[j] for (i, j), coef in ising.coupling.items())
    return float(energy)


def fix_variables(model: QuboModel, fixed: Mapping[int, int]) -> SubQubo:
    """
    Fix a subset of variables at provisional values.

    For the free set S (ascending order) the sub-model has
    c_i = a_i + sum_{j fixed} b_ij x_j  and keeps b_ij for pairs inside S;
    constant = offset + sum_{j fixed} a_j x_j + sum_{j<k both fixed} b_jk x_j x_k.

    Raises:
        InvalidParameterError: If an index is out of range or a value is not binary
    """
    for index, value in fixed.items():
        if not 0 <= index < model.n:
            raise InvalidParameterError(f"Fixed index {index} out of range for n={model.n}")
        if value not in (0, 1):
            raise InvalidParameterError(f"Fixed value for x_{index} must be 0 or 1, got {value}")

    free = tuple(i for i in range(model.n) if i not in fixed)
    local = {index: position for position, index in enumerate(free)}

    linear = {local[i]: model.linear[i] for i in free}
    quadratic: dict[Pair, float] = {}
    constant = model.offset + sum(model.linear[j] * fixed[j] for j in sorted(fixed))

    for (i, j), coef in model.quadratic.items():
        i_free, j_free = i in local, j in local
        if i_free and j_free:
            quadratic[(local[i], local[j])] = coef
        elif i_free:
            linear[local[i]] += coef * fixed[j]
        elif j_free:
            linear[local[j]] += coef * fixed[i]
        else:
            constant += coef * fixed[i] * fixed[j]

    return SubQubo(
        free=free,
        model=QuboModel(n=len(free), linear=linear, quadratic=quadratic),
        constant=float(constant),
    )
