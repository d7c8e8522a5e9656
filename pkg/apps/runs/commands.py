"""Base class for workbench management commands that produce a RunRecord."""

import logging
import time
from argparse import ArgumentParser
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from django.conf import settings
from django.core.management.base import BaseCommand, CommandError, CommandParser

from common.artifacts import ArtifactStage
from common.exceptions import command_exception_handler

from .serializers import GlobalOptionsSerializer, RunRecordSerializer
from .services import run_record_build, run_record_complete, run_record_fail

logger = logging.getLogger(__name__)

RUN_RECORD_FILE = "run_record.json"


@dataclass
class RunOutcome:
    """What a subcommand hands back for the RunRecord."""

    config: dict[str, Any]
    seeds: dict[str, int]
    dataset_digests: dict[str, str] = field(default_factory=dict)
    metrics: dict[str, Any] = field(default_factory=dict)
    summary: str = ""


class RunCommand(BaseCommand):
    """
    Management command with subcommands sharing --seed/--out-dir/--threads.

    Subclasses declare `actions` and implement add_action_arguments() and
    run_action(). Artifacts are staged and committed only when the action
    succeeds; exactly one RunRecord is stored per invocation.
    """

    actions: dict[str, str] = {}
    _argv: list[str] | None = None

    def run_from_argv(self, argv: list[str]) -> None:
        self._argv = [str(a) for a in argv[1:]]
        super().run_from_argv(argv)

    def add_arguments(self, parser: CommandParser) -> None:
        subparsers = parser.add_subparsers(dest="action", required=True)
        for action, help_text in self.actions.items():
            subparser = subparsers.add_parser(action, help=help_text)
            subparser.add_argument("--seed", type=int, default=settings.WORKBENCH_DEFAULT_SEED)
            subparser.add_argument("--out-dir", default=str(settings.WORKBENCH_OUT_DIR))
            subparser.add_argument("--threads", type=int, default=settings.WORKBENCH_THREADS)
            self.add_action_arguments(action, subparser)

    def add_action_arguments(self, action: str, parser: ArgumentParser) -> None:
        raise NotImplementedError

    def run_action(self, action: str, options: dict[str, Any], stage: ArtifactStage) -> RunOutcome:
        raise NotImplementedError

    def handle(self, *args: Any, **options: Any) -> None:
        action = options["action"]
        command = f"{self._command_name()} {action}"
        argv = self._argv if self._argv is not None else [self._command_name(), action]
        started = time.perf_counter()
        out_dir = Path(options["out_dir"])
        stage = ArtifactStage(out_dir)
        record = run_record_build(
            command=command,
            argv=argv,
            config={},
            seeds={"seed": options["seed"]},
            dataset_digests={},
            metrics={},
            artifacts=[],
            duration_seconds=0.0,
        )

        logger.info(f"Starting {command} (run {record.id})")
        try:
            GlobalOptionsSerializer(data=options).is_valid(raise_exception=True)
            outcome = self.run_action(action, options, stage)

            record.config = outcome.config
            record.seeds = outcome.seeds
            record.dataset_digests = outcome.dataset_digests
            record.metrics = outcome.metrics
            record.duration_seconds = time.perf_counter() - started
            record.artifacts = [str(p) for p in [*stage.paths, out_dir / RUN_RECORD_FILE]]
            run_record_complete(record=record)
            stage.add_json(RUN_RECORD_FILE, RunRecordSerializer(record).data)
            stage.commit()
        except Exception as exc:
            stage.discard()
            code, diagnostic = command_exception_handler(exc)
            record.duration_seconds = time.perf_counter() - started
            run_record_fail(record=record, error=diagnostic, exit_code=code)
            logger.warning(f"{command} failed with exit code {code}: {diagnostic}")
            raise CommandError(diagnostic, returncode=code) from exc

        logger.info(f"Finished {command} in {record.duration_seconds:.2f}s")
        if outcome.summary:
            self.stdout.write(outcome.summary)

    def _command_name(self) -> str:
        return self.__class__.__module__.rsplit(".", 1)[-1]
