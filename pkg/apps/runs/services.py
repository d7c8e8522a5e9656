from typing import Any

from .models import RunRecord, RunStatus


def run_record_build(
    *,
    command: str,
    argv: list[str],
    config: dict[str, Any],
    seeds: dict[str, int],
    dataset_digests: dict[str, str],
    metrics: dict[str, Any],
    artifacts: list[str],
    duration_seconds: float,
) -> RunRecord:
    record = RunRecord(
        command=command,
        argv=argv,
        config=config,
        seeds=seeds,
        dataset_digests=dataset_digests,
        metrics=metrics,
        artifacts=artifacts,
        status=RunStatus.COMPLETED,
        duration_seconds=duration_seconds,
    )
    record.full_clean()
    return record


def run_record_complete(*, record: RunRecord) -> RunRecord:
    record.status = RunStatus.COMPLETED
    record.save()
    return record


def run_record_fail(*, record: RunRecord, error: str, exit_code: int) -> RunRecord:
    record.status = RunStatus.FAILED
    record.error = error
    record.exit_code = exit_code
    record.metrics = {}
    record.artifacts = []
    record.save()
    return record
