import json
from typing import Any

from django.core.management.base import BaseCommand, CommandParser

from apps.runs.selectors import run_get_latest, run_list, run_list_failed
from apps.runs.serializers import RunRecordSerializer


class Command(BaseCommand):
    help = "List stored run records, newest first, one JSON object per line"

    def add_arguments(self, parser: CommandParser) -> None:
        parser.add_argument("--command", dest="run_command", default=None, help="Filter, e.g. 'qubo solve'")
        parser.add_argument("--failed", action="store_true", help="Only failed runs")
        parser.add_argument("--latest", action="store_true", help="Only the newest run of --command")
        parser.add_argument("--limit", type=int, default=20)

    def handle(self, *args: Any, **options: Any) -> None:
        command = options["run_command"]
        if options["latest"] and command is not None:
            latest = run_get_latest(command=command)
            records = [latest] if latest is not None else []
        elif options["failed"]:
            runs = run_list_failed()
            records = list((runs.filter(command=command) if command else runs)[: options["limit"]])
        else:
            records = list(run_list(command=command)[: options["limit"]])

        for record in records:
            self.stdout.write(json.dumps(RunRecordSerializer(record).data, sort_keys=True, default=str))
