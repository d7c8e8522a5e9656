"""Root conftest: make the global fixtures in tests/conftest.py apply to every test path."""

from tests.conftest import eager_celery, workbench_out_dir  # noqa: F401
