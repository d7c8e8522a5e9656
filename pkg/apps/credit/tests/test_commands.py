"""Tests for the credit management command."""

import json
from io import StringIO

import pytest
from django.core.management import call_command
from django.core.management.base import CommandError

from apps.runs.models import RunRecord, RunStatus

pytestmark = pytest.mark.django_db


def run_credit(*args: str) -> dict:
    out = StringIO()
    call_command("credit", "run", "--trees", "20", "--max-depth", "5", "--lr", "1.0", *args, stdout=out)
    return json.loads(out.getvalue())


class TestCreditRun:
    """Tests for credit run."""

    def test_writes_report_and_record(self, german_file, tmp_path):
        out_dir = tmp_path / "runs"
        metrics = run_credit("--data", str(german_file), "--out-dir", str(out_dir), "--seed", "4")
        assert metrics["accuracy"] == 1.0
        assert metrics["selected"]

        report = json.loads((out_dir / "report.json").read_text())
        assert report["selected"] == metrics["selected"]
        assert report["config"]["forest"]["seed"] == 4

        record = RunRecord.objects.get()
        assert record.command == "credit run"
        assert record.status == RunStatus.COMPLETED
        assert list(record.dataset_digests) == [str(german_file)]
        assert record.seeds == {"seed": 4}

    def test_missing_data(self, tmp_path):
        with pytest.raises(CommandError) as excinfo:
            run_credit("--data", str(tmp_path / "german.data"), "--out-dir", str(tmp_path))
        assert excinfo.value.returncode == 5
        assert str(excinfo.value).startswith("file_not_found:")
        assert RunRecord.objects.get().status == RunStatus.FAILED

    def test_unknown_solver(self, german_file, tmp_path):
        with pytest.raises(CommandError) as excinfo:
            run_credit("--data", str(german_file), "--solver", "qpu", "--out-dir", str(tmp_path))
        assert excinfo.value.returncode == 2

    def test_threshold_one(self, german_file, tmp_path):
        """No feature can exceed an importance of 1."""
        out_dir = tmp_path / "runs"
        with pytest.raises(CommandError) as excinfo:
            run_credit("--data", str(german_file), "--threshold", "1.0", "--out-dir", str(out_dir))
        assert excinfo.value.returncode == 6
        assert not (out_dir / "report.json").exists()
