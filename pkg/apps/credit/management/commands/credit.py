import json
from argparse import ArgumentParser
from pathlib import Path
from typing import Any

from apps.credit.serializers import CreditRunOptionsSerializer
from apps.credit.services import (
    ForestConfig,
    LogisticConfig,
    SelectionConfig,
    SelectionSolver,
    SolverConfig,
    SplitConfig,
    read_german_data,
    run_credit_pipeline,
)
from apps.qubo.services import AnnealSchedule
from apps.runs.commands import RunCommand, RunOutcome
from common.artifacts import ArtifactStage, file_digest


class Command(RunCommand):
    help = "German Credit feature selection with a QUBO and logistic-regression evaluation"
    actions = {"run": "Select features from german.data and report test metrics"}

    def add_action_arguments(self, action: str, parser: ArgumentParser) -> None:
        parser.add_argument("--data", required=True, help="german.data file")
        parser.add_argument("--alpha", type=float, default=0.5, help="Cost per selected feature / correlated pair")
        parser.add_argument("--beta", type=float, default=2.0, help="Reward per unit of importance")
        parser.add_argument("--big-m", type=float, default=10.0, help="Reported price of an empty selection")
        parser.add_argument("--threshold", type=float, default=0.01, help="Importance filter (strictly greater)")
        parser.add_argument("--trees", type=int, default=100)
        parser.add_argument("--max-depth", type=int, default=8)
        parser.add_argument("--test-fraction", type=float, default=0.3)
        parser.add_argument("--solver", default="auto", help="auto | brute | sa")
        parser.add_argument("--sweeps", type=int, default=1000)
        parser.add_argument("--lr", type=float, default=0.1)
        parser.add_argument("--epochs", type=int, default=500)
        parser.add_argument("--l2", type=float, default=1e-3)
        parser.add_argument("--out", default="report.json")

    def run_action(self, action: str, options: dict[str, Any], stage: ArtifactStage) -> RunOutcome:
        serializer = CreditRunOptionsSerializer(data=options)
        serializer.is_valid(raise_exception=True)
        opts = serializer.validated_data
        seed = options["seed"]

        path = Path(opts["data"])
        records = read_german_data(path)
        credit = run_credit_pipeline(
            records,
            selection=SelectionConfig(
                alpha=opts["alpha"],
                beta=opts["beta"],
                big_m=opts["big_m"],
                importance_threshold=opts["threshold"],
            ),
            forest=ForestConfig(trees=opts["trees"], max_depth=opts["max_depth"], seed=seed, threads=options["threads"]),
            solver=SolverConfig(
                kind=SelectionSolver(opts["solver"]),
                schedule=AnnealSchedule(sweeps=opts["sweeps"], seed=seed),
            ),
            split=SplitConfig(test_fraction=opts["test_fraction"], seed=seed),
            logistic=LogisticConfig(learning_rate=opts["lr"], epochs=opts["epochs"], l2=opts["l2"]),
        )

        payload = credit.as_dict()
        stage.add_json(opts["out"], payload)
        metrics = {
            "selected": list(credit.selection.selected),
            "accuracy": credit.report.accuracy,
            "class_0_recall": credit.report.classes[0].recall,
            "class_1_recall": credit.report.classes[1].recall,
            "qubo_value": credit.selection.solution.value,
            "expanded_columns": credit.columns,
        }
        return RunOutcome(
            config={key: value for key, value in opts.items() if key != "out"},
            seeds={"seed": seed},
            dataset_digests={str(path): file_digest(path)},
            metrics=metrics,
            summary=json.dumps(metrics, sort_keys=True),
        )
