import uuid

from django.db import models

from common.models import TimestampMixin


class RunStatus(models.TextChoices):
    COMPLETED = "completed", "Completed"
    FAILED = "failed", "Failed"


class RunRecord(TimestampMixin):
    id = models.UUIDField(primary_key=True, default=uuid.uuid4, editable=False)
    command = models.CharField(max_length=64, help_text="Subcommand, e.g. 'qubo solve'")
    argv = models.JSONField(default=list, blank=True)
    config = models.JSONField(default=dict, blank=True)
    seeds = models.JSONField(default=dict, blank=True)
    dataset_digests = models.JSONField(default=dict, blank=True, help_text="Input path -> sha256")
    metrics = models.JSONField(default=dict, blank=True)
    artifacts = models.JSONField(default=list, blank=True)
    status = models.CharField(max_length=20, choices=RunStatus.choices)
    error = models.TextField(blank=True)
    exit_code = models.PositiveSmallIntegerField(default=0)
    duration_seconds = models.FloatField(default=0.0)

    class Meta:
        ordering = ["-created_at"]

    def __str__(self) -> str:
        return f"{self.command} ({self.status}) {self.id}"

    @property
    def succeeded(self) -> bool:
        return self.status == RunStatus.COMPLETED
