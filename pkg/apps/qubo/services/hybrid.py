"""Hybrid annealing: repeated sub-QUBO extraction, solve and merge-back."""

import logging
import math
from dataclasses import dataclass
from enum import StrEnum

import numpy as np

from common.exceptions import InvalidParameterError, WorkbenchError

from .extraction import ExtractionStrategy, extract_subset
from .model import Assignment, QuboModel, as_assignment, evaluate, fix_variables
from .solvers import AnnealSchedule, Solution, brute_force_solve, simulated_anneal

logger = logging.getLogger(__name__)

# Merged values may differ from sub-value + constant by summation order only
_CONSISTENCY_TOLERANCE = 1e-9


class InnerKind(StrEnum):
    EXACT = "exact"
    ANNEAL = "anneal"


@dataclass(frozen=True)
class InnerSolver:
    kind: InnerKind = InnerKind.EXACT
    schedule: AnnealSchedule | None = None

    def __post_init__(self) -> None:
        if self.kind == InnerKind.ANNEAL and self.schedule is None:
            raise InvalidParameterError("Annealing inner solver needs a schedule")

    def solve(self, model: QuboModel, seed: int) -> Solution:
        if self.kind == InnerKind.EXACT:
            return brute_force_solve(model)
        assert self.schedule is not None
        schedule = AnnealSchedule(
            initial_temp=self.schedule.initial_temp,
            final_temp=self.schedule.final_temp,
            sweeps=self.schedule.sweeps,
            seed=seed,
        )
        return simulated_anneal(model, schedule)


def hybrid_solve(
    model: QuboModel,
    strategy: ExtractionStrategy,
    iterations: int,
    inner: InnerSolver,
    seed: int,
    initial: Assignment | None = None,
) -> Solution:
    """
    Improve an incumbent by solving sub-QUBOs over extracted variable subsets.

    Each iteration frees the extracted subset, fixes the complement at the
    incumbent values, solves the sub-QUBO with the inner solver and accepts
    the merged assignment when its value is not worse (<=, so plateaus are
    traversed).

    Variables freed since the incumbent last changed are passed to the
    extractor as excluded, so influence extraction moves on to other
    variables instead of re-solving the same subset.

    Args:
        model: Model to minimise
        strategy: Sub-QUBO extraction strategy
        iterations: Number of extract/solve/merge rounds
        inner: Exact or annealing solver for the sub-QUBOs
        seed: Seed for the initial assignment and all per-iteration randomness
        initial: Optional starting assignment (otherwise seeded random)

    Returns:
        Solution with the final incumbent; history holds the incumbent value
        after every iteration
    """
    if iterations < 0:
        raise InvalidParameterError(f"iterations must be >= 0, got {iterations}")
    n = model.n
    rng = np.random.default_rng(seed)
    if initial is None:
        current = tuple(int(b) for b in rng.integers(0, 2, size=n))
    else:
        current = as_assignment(initial, n)
    current_value = evaluate(model, current)
    evaluations = 1
    history: list[float] = []
    stale: set[int] = set()

    logger.info(
        f"Hybrid solve: n={n}, strategy={strategy.kind}, subset={strategy.subset_size}, "
        f"iterations={iterations}, inner={inner.kind}"
    )

    for iteration in range(iterations):
        extract_seed, inner_seed = (int(s) for s in rng.integers(0, 2**63, size=2))
        subset = set(extract_subset(model, current, strategy, seed=extract_seed, exclude=stale))
        fixed = {i: current[i] for i in range(n) if i not in subset}
        sub = fix_variables(model, fixed)
        sub_solution = inner.solve(sub.model, inner_seed)
        evaluations += sub_solution.evaluations

        candidate = sub.merge(sub_solution.assignment, fixed, n)
        candidate_value = evaluate(model, candidate)
        evaluations += 1
        expected = sub_solution.value + sub.constant
        if not math.isclose(candidate_value, expected, rel_tol=0.0, abs_tol=_CONSISTENCY_TOLERANCE * max(1.0, abs(expected))):
            raise WorkbenchError(
                f"Sub-solve inconsistency: merged value {candidate_value} != {expected}"
            )

        if candidate_value <= current_value and candidate != current:
            current, current_value = candidate, candidate_value
            stale.clear()
        else:
            stale |= subset
        history.append(current_value)
        logger.debug(f"Iteration {iteration + 1}/{iterations}: incumbent {current_value:.6g}")

    return Solution(
        assignment=current,
        value=current_value,
        evaluations=evaluations,
        history=tuple(history),
    )
