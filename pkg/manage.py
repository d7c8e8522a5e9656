#!/usr/bin/env python
"""Django entry point for the workbench: migrations, the celery worker and every run command."""

import os
import sys


def main() -> None:
    """Run a management command, e.g. ``manage.py qubo solve --model problem.qubo``."""
    os.environ.setdefault("DJANGO_SETTINGS_MODULE", "config.settings.development")
    try:
        from django.core.management import execute_from_command_line
    except ImportError as exc:
        raise ImportError(
            "Couldn't import Django. Install the workbench with `pip install -e .` "
            "inside the active virtual environment."
        ) from exc
    execute_from_command_line(sys.argv)


if __name__ == "__main__":
    main()
