"""Ground-state search: exhaustive oracle and Metropolis simulated annealing."""

import logging
import math
from dataclasses import dataclass, field

import numpy as np
from django.conf import settings

from common.exceptions import InvalidParameterError, ProblemTooLargeError

from .model import Assignment, QuboModel, as_assignment, evaluate, evaluate_many

logger = logging.getLogger(__name__)

# Rows enumerated per vectorised block in brute_force_solve
_ENUMERATION_BLOCK = 1 << 16


@dataclass(frozen=True)
class AnnealSchedule:
    """Geometric temperature decay from initial_temp to final_temp over sweeps."""

    initial_temp: float = 10.0
    final_temp: float = 0.01
    sweeps: int = 1000
    seed: int = 0

    def __post_init__(self) -> None:
        if not (math.isfinite(self.initial_temp) and math.isfinite(self.final_temp)):
            raise InvalidParameterError("Temperatures must be finite")
        if self.final_temp <= 0:
            raise InvalidParameterError(f"final_temp must be > 0, got {self.final_temp}")
        if self.initial_temp < self.final_temp:
            raise InvalidParameterError(
                f"initial_temp ({self.initial_temp}) must be >= final_temp ({self.final_temp})"
            )
        if self.sweeps < 1:
            raise InvalidParameterError(f"sweeps must be >= 1, got {self.sweeps}")
        if not 0 <= self.seed < 2**64:
            raise InvalidParameterError("seed must fit in 64 unsigned bits")

    def temperatures(self) -> np.ndarray:
        return np.geomspace(self.initial_temp, self.final_temp, self.sweeps)


@dataclass(frozen=True)
class Solution:
    """Best assignment found; value always equals evaluate(model, assignment)."""

    assignment: Assignment
    value: float
    evaluations: int
    history: tuple[float, ...] = field(default=(), compare=False)

    def as_dict(self) -> dict[str, object]:
        return {
            "assignment": list(self.assignment),
            "value": self.value,
            "evaluations": self.evaluations,
        }


def brute_force_solve(
    model: QuboModel,
    *,
    exclude_zero: bool = False,
    max_variables: int | None = None,
) -> Solution:
    """
    Exact global minimiser by enumeration of all 2^n assignments.

    Assignment codes are little-endian (x_0 is bit 0); ties go to the lowest code.

    Args:
        model: Model to minimise
        exclude_zero: Skip the all-zero assignment
        max_variables: Enumeration cap (defaults to settings.BRUTE_FORCE_MAX_VARIABLES)

    Returns:
        Solution with evaluations == number of assignments scanned

    Raises:
        ProblemTooLargeError: If model.n exceeds the cap
    """
    cap = settings.BRUTE_FORCE_MAX_VARIABLES if max_variables is None else max_variables
    n = model.n
    if n > cap:
        raise ProblemTooLargeError(f"Exhaustive search supports n <= {cap}, got n={n}")

    start = 1 if exclude_zero else 0
    total = 1 << n
    if start >= total:
        raise InvalidParameterError("No assignment left after excluding the all-zero vector")

    shifts = np.arange(n, dtype=np.int64)
    best_code = -1
    best_value = math.inf
    for block_start in range(start, total, _ENUMERATION_BLOCK):
        codes = np.arange(block_start, min(block_start + _ENUMERATION_BLOCK, total), dtype=np.int64)
        bits = (codes[:, None] >> shifts) & 1
        values = evaluate_many(model, bits)
        position = int(np.argmin(values))
        if values[position] < best_value:
            best_value = float(values[position])
            best_code = int(codes[position])

    assignment = tuple((best_code >> i) & 1 for i in range(n))
    return Solution(
        assignment=assignment,
        value=evaluate(model, assignment),
        evaluations=total - start,
    )


def simulated_anneal(
    model: QuboModel,
    schedule: AnnealSchedule,
    *,
    initial: Assignment | None = None,
) -> Solution:
    """
    Metropolis single-flip annealing; returns the best assignment visited.

    Each sweep proposes every variable once in a seeded random order. The flip
    delta comes from the local field h_i = a_i + sum_j b_ij x_j, updated
    incrementally after accepted flips.
    """
    n = model.n
    rng = np.random.default_rng(schedule.seed)
    if initial is None:
        x = rng.integers(0, 2, size=n).astype(np.int64)
    else:
        x = np.array(as_assignment(initial, n), dtype=np.int64)

    if n == 0:
        value = evaluate(model, ())
        return Solution(assignment=(), value=value, evaluations=1, history=(value,))

    coupling = model.coupling_matrix
    local_field = model.linear_vector + coupling @ x
    current = evaluate(model, x)
    best = current
    best_x = x.copy()
    evaluations = 1
    history: list[float] = []

    for temperature in schedule.temperatures():
        order = rng.permutation(n)
        draws = rng.random(n)
        for k in range(n):
            i = int(order[k])
            sign = 1 - 2 * int(x[i])
            delta = sign * float(local_field[i])
            evaluations += 1
            if delta <= 0.0 or draws[k] < math.exp(-delta / temperature):
                x[i] ^= 1
                local_field += sign * coupling[i]
                current += delta
                if current < best:
                    best = current
                    best_x = x.copy()
        # running value re-evaluated once per sweep
        current = evaluate(model, x)
        history.append(best)

    assignment = tuple(int(b) for b in best_x)
    value = evaluate(model, assignment)
    logger.debug(f"Annealing finished: value={value:.6g} after {evaluations} evaluations")
    return Solution(
        assignment=assignment,
        value=value,
        evaluations=evaluations,
        history=tuple(history),
    )
