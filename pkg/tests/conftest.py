"""Pytest configuration and global fixtures."""

import pytest

from config.celery import app as celery_app


@pytest.fixture(autouse=True)
def workbench_out_dir(settings, tmp_path):
    """Runs without --out-dir write below the test's temporary directory."""
    settings.WORKBENCH_OUT_DIR = tmp_path / "runs"
    return settings.WORKBENCH_OUT_DIR


@pytest.fixture(autouse=True)
def eager_celery():
    """Fold fan-out runs in-process during tests."""
    previous = {key: celery_app.conf[key] for key in ("task_always_eager", "task_eager_propagates")}
    celery_app.conf.update(task_always_eager=True, task_eager_propagates=True)
    yield celery_app
    celery_app.conf.update(previous)
