"""Utilities for fanning work out to Celery with an in-process fallback."""

import logging
from dataclasses import dataclass, field
from typing import Any

from celery import Task, group
from kombu.exceptions import OperationalError

logger = logging.getLogger(__name__)


@dataclass
class GroupDispatchResult:
    """Result of running a batch of task invocations."""

    results: list[Any]
    distributed: bool
    errors: list[str] = field(default_factory=list)


def run_group(
    task: Task,
    calls: list[dict[str, Any]],
    timeout: float | None = None,
) -> GroupDispatchResult:
    """
    Run one task invocation per kwargs dict and collect results in order.

    Sends a Celery group to the broker. When the broker is unreachable
    (kombu.exceptions.OperationalError) the calls are executed in this
    process instead, one after the other, so a run never depends on
    worker availability.

    Args:
        task: Celery task to invoke
        calls: Keyword arguments for each invocation
        timeout: Seconds to wait for the group result

    Returns:
        GroupDispatchResult with results in the order of calls
    """
    if not calls:
        return GroupDispatchResult(results=[], distributed=False)

    try:
        async_result = group(task.s(**kwargs) for kwargs in calls).apply_async()
        logger.debug(f"Group of {len(calls)} {task.name} call(s) dispatched")
        results = async_result.get(timeout=timeout)
        return GroupDispatchResult(results=list(results), distributed=True)

    except OperationalError as e:
        logger.warning(
            f"Broker unavailable when dispatching {task.name}, running in-process: {e}",
        )
        local = [task.apply(kwargs=kwargs).get() for kwargs in calls]
        return GroupDispatchResult(
            results=local,
            distributed=False,
            errors=["broker_unavailable"],
        )
