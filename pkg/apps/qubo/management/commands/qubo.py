import json
from argparse import ArgumentParser
from pathlib import Path
from typing import Any

from apps.qubo.serializers import SolutionSerializer, SolveOptionsSerializer
from apps.qubo.services import (
    AnnealSchedule,
    ExtractionKind,
    ExtractionStrategy,
    InnerKind,
    InnerSolver,
    QuboModel,
    Solution,
    brute_force_solve,
    hybrid_solve,
    read_qubo_file,
    simulated_anneal,
)
from apps.runs.commands import RunCommand, RunOutcome
from common.artifacts import ArtifactStage, file_digest


class Command(RunCommand):
    help = "Solve a QUBO file with the exhaustive, annealing or hybrid solver"
    actions = {"solve": "Minimise the objective of a QUBO text file"}

    def add_action_arguments(self, action: str, parser: ArgumentParser) -> None:
        parser.add_argument("--model", required=True, help="QUBO text file")
        parser.add_argument("--solver", default="sa", help="brute | sa | hybrid")
        parser.add_argument("--strategy", default="random", help="random | influence | kopt")
        parser.add_argument("--subset-size", type=int, default=None)
        parser.add_argument("--k", type=int, default=2, help="Largest k-opt move")
        parser.add_argument("--iterations", type=int, default=50)
        parser.add_argument("--inner", default="exact", help="exact | anneal")
        parser.add_argument("--sweeps", type=int, default=1000)
        parser.add_argument("--initial-temp", type=float, default=10.0)
        parser.add_argument("--final-temp", type=float, default=0.01)
        parser.add_argument("--out", default="solution.json", help="Result file (relative to --out-dir)")

    def run_action(self, action: str, options: dict[str, Any], stage: ArtifactStage) -> RunOutcome:
        serializer = SolveOptionsSerializer(data=options)
        serializer.is_valid(raise_exception=True)
        opts = serializer.validated_data
        seed = options["seed"]

        path = Path(opts["model"])
        model = read_qubo_file(path)
        schedule = AnnealSchedule(
            initial_temp=opts["initial_temp"],
            final_temp=opts["final_temp"],
            sweeps=opts["sweeps"],
            seed=seed,
        )
        solution = self._solve(model, opts, schedule, seed)

        payload = SolutionSerializer(solution).data
        stage.add_json(opts["out"], payload)
        config = {key: value for key, value in opts.items() if key != "out"}
        config["n"] = model.n
        return RunOutcome(
            config=config,
            seeds={"seed": seed},
            dataset_digests={str(path): file_digest(path)},
            metrics={"value": solution.value, "evaluations": solution.evaluations},
            summary=json.dumps(payload, sort_keys=True),
        )

    def _solve(self, model: QuboModel, opts: dict[str, Any], schedule: AnnealSchedule, seed: int) -> Solution:
        if opts["solver"] == "brute":
            return brute_force_solve(model)
        if opts["solver"] == "sa":
            return simulated_anneal(model, schedule)
        strategy = ExtractionStrategy(
            kind=ExtractionKind(opts["strategy"]),
            subset_size=opts["subset_size"],
            k=opts["k"],
        )
        inner = InnerSolver(kind=InnerKind(opts["inner"]), schedule=schedule)
        return hybrid_solve(model, strategy, opts["iterations"], inner, seed)
