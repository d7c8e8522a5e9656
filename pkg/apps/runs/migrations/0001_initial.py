import uuid

from django.db import migrations, models


class Migration(migrations.Migration):

    initial = True

    dependencies: list[tuple[str, str]] = []

    operations = [
        migrations.CreateModel(
            name="RunRecord",
            fields=[
                ("created_at", models.DateTimeField(auto_now_add=True)),
                ("updated_at", models.DateTimeField(auto_now=True)),
                ("id", models.UUIDField(default=uuid.uuid4, editable=False, primary_key=True, serialize=False)),
                ("command", models.CharField(help_text="Subcommand, e.g. 'qubo solve'", max_length=64)),
                ("argv", models.JSONField(blank=True, default=list)),
                ("config", models.JSONField(blank=True, default=dict)),
                ("seeds", models.JSONField(blank=True, default=dict)),
                ("dataset_digests", models.JSONField(blank=True, default=dict, help_text="Input path -> sha256")),
                ("metrics", models.JSONField(blank=True, default=dict)),
                ("artifacts", models.JSONField(blank=True, default=list)),
                ("status", models.CharField(choices=[("completed", "Completed"), ("failed", "Failed")], max_length=20)),
                ("error", models.TextField(blank=True)),
                ("exit_code", models.PositiveSmallIntegerField(default=0)),
                ("duration_seconds", models.FloatField(default=0.0)),
            ],
            options={
                "ordering": ["-created_at"],
            },
        ),
    ]
