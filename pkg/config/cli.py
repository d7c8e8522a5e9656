"""`workbench` console script: run one management command and return its exit code."""

import logging
import os
import sys
from pathlib import Path

logger = logging.getLogger(__name__)

USAGE = """usage: workbench <command> <action> [options]

commands:
  qubo solve          solve a QUBO file (brute | sa | hybrid)
  credit run          German Credit feature selection + logistic evaluation
  mnist preprocess    filter, downsample and binarize MNIST digits
  mnist encode        dump the encoding circuit of one preprocessed image
  mnist train         train a QNN or MLP baseline with k-fold evaluation
  runs                list stored run records (--command, --failed, --latest)

global options: --seed S --out-dir DIR --threads N
run 'workbench <command> --help' for command options
"""

COMMANDS = ("qubo", "credit", "mnist", "runs")


def dispatch(argv: list[str]) -> int:
    """
    Run `workbench <command> ...` in this process.

    Args:
        argv: Arguments without the program name

    Returns:
        0 on success, otherwise the exit code of the failure class
    """
    if not argv or argv[0] in ("-h", "--help"):
        sys.stdout.write(USAGE)
        return 0
    if argv[0] not in COMMANDS:
        sys.stderr.write(f"unknown command {argv[0]!r}\n{USAGE}")
        return 2

    os.environ.setdefault("DJANGO_SETTINGS_MODULE", "config.settings.development")

    import django
    from django.conf import settings
    from django.core.management import call_command, load_command_class

    django.setup()
    _migrate_run_store(settings.DATABASES["default"], call_command)

    command = load_command_class(_app_for(argv[0]), argv[0])
    try:
        command.run_from_argv(["workbench", *argv])
    except SystemExit as exit_:
        return _exit_code(exit_.code)
    return 0


def main() -> None:
    sys.exit(dispatch(sys.argv[1:]))


def _migrate_run_store(database: dict[str, object], call_command: object) -> None:
    # The run-record store is created on first use
    if database["ENGINE"] == "django.db.backends.sqlite3":
        Path(str(database["NAME"])).parent.mkdir(parents=True, exist_ok=True)
    call_command("migrate", interactive=False, verbosity=0)  # type: ignore[operator]


def _app_for(command: str) -> str:
    return {"qubo": "apps.qubo", "credit": "apps.credit", "mnist": "apps.qnn", "runs": "apps.runs"}[command]


def _exit_code(code: object) -> int:
    if code is None:
        return 0
    if isinstance(code, int):
        return code
    logger.error(code)
    return 1
