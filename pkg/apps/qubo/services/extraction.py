"""Sub-QUBO extraction strategies: random, influence, k-opt."""

import itertools
import logging
from collections.abc import Collection
from dataclasses import dataclass
from enum import StrEnum

import numpy as np

from common.exceptions import InvalidParameterError

from .model import Assignment, QuboModel, as_assignment

logger = logging.getLogger(__name__)


class ExtractionKind(StrEnum):
    RANDOM = "random"
    INFLUENCE = "influence"
    KOPT = "kopt"


@dataclass(frozen=True)
class ExtractionStrategy:
    kind: ExtractionKind
    subset_size: int
    k: int = 2

    def __post_init__(self) -> None:
        if self.subset_size < 1:
            raise InvalidParameterError(f"subset_size must be >= 1, got {self.subset_size}")
        if self.k < 1:
            raise InvalidParameterError(f"k must be >= 1, got {self.k}")


def influence_values(model: QuboModel, current: Assignment) -> np.ndarray:
    """Signed single-flip deltas: entry i is f(flip_i(x)) - f(x)."""
    x = np.array(as_assignment(current, model.n), dtype=np.float64)
    local_field = model.linear_vector + model.coupling_matrix @ x
    return (1.0 - 2.0 * x) * local_field


def extract_subset(
    model: QuboModel,
    current: Assignment,
    strategy: ExtractionStrategy,
    seed: int,
    *,
    exclude: Collection[int] = (),
) -> tuple[int, ...]:
    """
    Choose the variables to free for the next sub-QUBO.

    Args:
        model: Model the subset is drawn from
        current: Incumbent assignment
        strategy: Extraction kind, subset size and k
        seed: Seed for every random choice
        exclude: Variables already re-optimised at this incumbent without
            effect. Influence ranks them after all others and fills any
            remaining slots from them in seeded random order.

    Returns:
        Sorted tuple of subset_size distinct variable indices

    Raises:
        InvalidParameterError: If subset_size exceeds the model dimension or an
            excluded index is out of range
    """
    n = model.n
    size = strategy.subset_size
    if size > n:
        raise InvalidParameterError(f"subset_size {size} exceeds model dimension {n}")
    excluded = {int(i) for i in exclude}
    if any(not 0 <= i < n for i in excluded):
        raise InvalidParameterError(f"Excluded variables must lie in [0, {n})")
    rng = np.random.default_rng(seed)

    if strategy.kind == ExtractionKind.RANDOM:
        chosen = rng.choice(n, size=size, replace=False)
    elif strategy.kind == ExtractionKind.INFLUENCE:
        chosen = _influence_ranked(model, current, size, excluded, rng)
    else:
        chosen = np.array(_kopt_touched(model, current, strategy, rng), dtype=np.int64)

    return tuple(sorted(int(i) for i in chosen))


def _kopt_touched(
    model: QuboModel,
    current: Assignment,
    strategy: ExtractionStrategy,
    rng: np.random.Generator,
) -> list[int]:
    # First-improvement pass: at each variable take the first improving flip set
    # of size 1..k that contains it, apply it to a working copy, record its members.
    n, size = model.n, strategy.subset_size
    x = np.array(as_assignment(current, n), dtype=np.float64)
    coupling = model.coupling_matrix
    linear = model.linear_vector
    order = [int(i) for i in rng.permutation(n)]
    touched: list[int] = []
    seen: set[int] = set()

    for i in order:
        if len(touched) >= size:
            break
        if i in seen:
            continue
        deltas = (1.0 - 2.0 * x) * (linear + coupling @ x)
        partners = [j for j in order if j != i and j not in seen]
        move = _first_improving_move(i, partners, deltas, coupling, x, strategy.k)
        if move is None or len(touched) + len(move) > size:
            continue
        for j in move:
            x[j] = 1.0 - x[j]
            touched.append(j)
            seen.add(j)

    if len(touched) < size:
        rest = np.array([j for j in range(n) if j not in seen], dtype=np.int64)
        padding = rng.choice(rest, size=size - len(touched), replace=False)
        touched.extend(int(j) for j in padding)

    logger.debug(f"k-opt pass touched {len(seen)} variable(s), padded to {size}")
    return touched


def _first_improving_move(
    i: int,
    partners: list[int],
    deltas: np.ndarray,
    coupling: np.ndarray,
    x: np.ndarray,
    k: int,
) -> tuple[int, ...] | None:
    sign = 1.0 - 2.0 * x
    for extra in range(k):
        for others in itertools.combinations(partners, extra):
            move = (i, *others)
            delta = sum(float(deltas[j]) for j in move)
            for a, b in itertools.combinations(move, 2):
                delta += float(coupling[a, b] * sign[a] * sign[b])
            if delta < 0.0:
                return move
    return None


def _influence_ranked(
    model: QuboModel,
    current: Assignment,
    size: int,
    excluded: set[int],
    rng: np.random.Generator,
) -> np.ndarray:
    magnitude = np.abs(influence_values(model, current))
    fresh = [int(i) for i in np.argsort(-magnitude, kind="stable") if int(i) not in excluded]
    if len(fresh) >= size:
        return np.array(fresh[:size], dtype=np.int64)
    fill = rng.choice(np.array(sorted(excluded), dtype=np.int64), size=size - len(fresh), replace=False)
    return np.concatenate([np.array(fresh, dtype=np.int64), fill])
