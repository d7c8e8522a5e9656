from django.db.models import QuerySet

from .models import RunRecord, RunStatus


def run_list(*, command: str | None = None) -> QuerySet[RunRecord]:
    runs = RunRecord.objects.order_by("-created_at")
    if command is not None:
        runs = runs.filter(command=command)
    return runs


def run_get_latest(*, command: str) -> RunRecord | None:
    return run_list(command=command).first()


def run_list_failed() -> QuerySet[RunRecord]:
    return RunRecord.objects.filter(status=RunStatus.FAILED).order_by("-created_at")
