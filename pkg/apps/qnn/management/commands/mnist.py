import csv
import io
import json
from argparse import ArgumentParser
from dataclasses import asdict
from pathlib import Path
from typing import Any

import numpy as np

from apps.qimage.services import (
    compressed_state,
    dataset_manifest,
    dataset_to_bytes,
    encode_circuit,
    frqi_state,
    load_dataset,
    preprocess_digits,
    read_mnist_images,
    read_mnist_labels,
)
from apps.qnn.serializers import (
    EncodeOptionsSerializer,
    PreprocessOptionsSerializer,
    TrainHistorySerializer,
    TrainOptionsSerializer,
    VerifyOptionsSerializer,
)
from apps.qnn.services import (
    OptimizerConfig,
    TrainHistory,
    count_params,
    preset,
    subsample,
    train_holdout,
)
from apps.qnn.tasks import train_fold
from apps.runs.commands import RunCommand, RunOutcome
from apps.statevec.services import (
    GateKind,
    decompose_program,
    decomposition_gate_count,
    format_program,
    gate_count_bound,
    read_program_file,
    run_program,
)
from common.artifacts import ArtifactStage, file_digest
from common.celery_utils import run_group
from common.exceptions import DimensionMismatchError, InvalidParameterError

HISTORY_COLUMNS = ["fold", "epoch", "train_loss", "val_accuracy"]


class Command(RunCommand):
    help = "Preprocess MNIST digits, dump encoding circuits and train the classifiers"
    actions = {
        "preprocess": "Filter, downsample and binarize IDX images into a dataset file",
        "encode": "Synthesize and check the encoding circuit of one image",
        "verify": "Run a dumped circuit and compare it with the encoded state of one image",
        "train": "Cross-validate a quantum or classical model on a dataset",
    }

    def add_action_arguments(self, action: str, parser: ArgumentParser) -> None:
        if action == "preprocess":
            parser.add_argument("--images", required=True, help="IDX image file (optionally gzipped)")
            parser.add_argument("--labels", required=True, help="IDX label file (optionally gzipped)")
            parser.add_argument("--digits", default="3,6")
            parser.add_argument("--size", type=int, default=8)
            parser.add_argument("--threshold", type=float, default=0.5)
            parser.add_argument("--out", default="dataset", help="Output directory (relative to --out-dir)")
        elif action == "encode":
            parser.add_argument("--dataset", required=True, help="Preprocessed dataset.npz")
            parser.add_argument("--index", type=int, default=0)
            parser.add_argument("--compressed", action="store_true")
            parser.add_argument("--decompose", action="store_true", help="Expand multi-controlled gates")
            parser.add_argument("--dump", default="circuit.txt")
        elif action == "verify":
            parser.add_argument("--circuit", required=True, help="Circuit dump, e.g. from mnist encode")
            parser.add_argument("--dataset", required=True, help="Preprocessed dataset.npz")
            parser.add_argument("--index", type=int, default=0)
            parser.add_argument("--compressed", action="store_true")
            parser.add_argument("--tolerance", type=float, default=1e-10)
        else:
            parser.add_argument("--dataset", required=True, help="Preprocessed dataset.npz")
            parser.add_argument("--config", required=True, help="qnn1 | qnn2 | qnn3 | nn1 | nn2")
            parser.add_argument("--loss", default="hinge", help="hinge | mse")
            parser.add_argument("--epochs", type=int, default=30)
            parser.add_argument("--folds", type=int, default=10)
            parser.add_argument("--lr", type=float, default=0.05)
            parser.add_argument("--batch-size", type=int, default=32)
            parser.add_argument("--subset", type=int, default=None, help="Seeded sample count drawn first")
            parser.add_argument("--val-data", default=None, help="Fixed validation dataset (skips k-fold)")
            parser.add_argument("--val-subset", type=int, default=None)
            parser.add_argument("--out", default="history.csv")

    def run_action(self, action: str, options: dict[str, Any], stage: ArtifactStage) -> RunOutcome:
        if action == "preprocess":
            return self._preprocess(options, stage)
        if action == "encode":
            return self._encode(options, stage)
        if action == "verify":
            return self._verify(options)
        return self._train(options, stage)

    def _preprocess(self, options: dict[str, Any], stage: ArtifactStage) -> RunOutcome:
        serializer = PreprocessOptionsSerializer(data=options)
        serializer.is_valid(raise_exception=True)
        opts = serializer.validated_data
        seed = options["seed"]

        images_path, labels_path = Path(opts["images"]), Path(opts["labels"])
        dataset = preprocess_digits(
            read_mnist_images(images_path),
            read_mnist_labels(labels_path),
            digits=opts["digits"],
            side=opts["size"],
            threshold=opts["threshold"],
        )
        digests = {str(images_path): file_digest(images_path), str(labels_path): file_digest(labels_path)}
        config = {**opts, "digits": list(opts["digits"])}

        out = Path(opts["out"])
        stage.add_bytes(str(out / "dataset.npz"), dataset_to_bytes(dataset))
        manifest = dataset_manifest(dataset, seed=seed, digests=digests, config=config)
        stage.add_json(str(out / "manifest.json"), manifest)

        metrics = {"samples": len(dataset), "counts": dataset.counts()}
        return RunOutcome(
            config=config,
            seeds={"seed": seed},
            dataset_digests=digests,
            metrics=metrics,
            summary=json.dumps(metrics, sort_keys=True),
        )

    def _encode(self, options: dict[str, Any], stage: ArtifactStage) -> RunOutcome:
        serializer = EncodeOptionsSerializer(data=options)
        serializer.is_valid(raise_exception=True)
        opts = serializer.validated_data

        path = Path(opts["dataset"])
        dataset = load_dataset(path)
        if opts["index"] >= len(dataset):
            raise InvalidParameterError(f"Index {opts['index']} out of range for {len(dataset)} sample(s)")
        image = dataset.image(opts["index"])

        program = encode_circuit(image, compressed=opts["compressed"])
        multi_controlled = program.count(GateKind.MCRY)
        widest = max((len(op.controls) for op in program.ops if op.kind == GateKind.MCRY), default=0)
        if opts["decompose"]:
            program = decompose_program(program)
        expected = compressed_state(image) if opts["compressed"] else frqi_state(image)
        synthesized = run_program(program)
        deviation = float(np.max(np.abs(synthesized.amplitudes - expected.amplitudes)))

        stage.add_text(opts["dump"], format_program(program))
        metrics = {
            "label": int(dataset.labels[opts["index"]]),
            "qubits": program.qubits,
            "gates": len(program),
            "multi_controlled": multi_controlled,
            "max_deviation": deviation,
            "norm": synthesized.norm(),
        }
        if widest:
            metrics["max_controls"] = widest
            metrics["elementary_per_gate"] = decomposition_gate_count(widest)
            metrics["gate_count_bound"] = gate_count_bound(widest)
        return RunOutcome(
            config=dict(opts),
            seeds={"seed": options["seed"]},
            dataset_digests={str(path): file_digest(path)},
            metrics=metrics,
            summary=json.dumps(metrics, sort_keys=True),
        )

    def _verify(self, options: dict[str, Any]) -> RunOutcome:
        serializer = VerifyOptionsSerializer(data=options)
        serializer.is_valid(raise_exception=True)
        opts = serializer.validated_data

        circuit_path, dataset_path = Path(opts["circuit"]), Path(opts["dataset"])
        program = read_program_file(circuit_path)
        dataset = load_dataset(dataset_path)
        if opts["index"] >= len(dataset):
            raise InvalidParameterError(f"Index {opts['index']} out of range for {len(dataset)} sample(s)")
        image = dataset.image(opts["index"])
        expected = compressed_state(image) if opts["compressed"] else frqi_state(image)
        if program.qubits != expected.qubits:
            raise DimensionMismatchError(
                f"{circuit_path} acts on {program.qubits} qubit(s), the encoded image needs {expected.qubits}"
            )

        synthesized = run_program(program)
        deviation = float(np.max(np.abs(synthesized.amplitudes - expected.amplitudes)))
        metrics = {
            "label": int(dataset.labels[opts["index"]]),
            "qubits": program.qubits,
            "gates": len(program),
            "max_deviation": deviation,
            "matches": deviation <= opts["tolerance"],
        }
        return RunOutcome(
            config=dict(opts),
            seeds={"seed": options["seed"]},
            dataset_digests={str(circuit_path): file_digest(circuit_path), str(dataset_path): file_digest(dataset_path)},
            metrics=metrics,
            summary=json.dumps(metrics, sort_keys=True),
        )

    def _train(self, options: dict[str, Any], stage: ArtifactStage) -> RunOutcome:
        serializer = TrainOptionsSerializer(data=options)
        serializer.is_valid(raise_exception=True)
        opts = serializer.validated_data
        seed = options["seed"]

        config = preset(opts["config"], loss=opts["loss"], seed=seed)
        opt = OptimizerConfig(
            learning_rate=opts["lr"],
            epochs=opts["epochs"],
            batch_size=opts["batch_size"],
            folds=opts["folds"],
        )
        path = Path(opts["dataset"])
        dataset = load_dataset(path)
        if dataset.side != config.image_side:
            raise InvalidParameterError(
                f"{opts['config']} expects {config.image_side}x{config.image_side} images, "
                f"{path} holds {dataset.side}x{dataset.side}"
            )
        digests = {str(path): file_digest(path)}

        if opts.get("val_data"):
            val_path = Path(opts["val_data"])
            val_set = subsample(load_dataset(val_path), opts.get("val_subset"), seed)
            digests[str(val_path)] = file_digest(val_path)
            histories = [train_holdout(config, subsample(dataset, opts.get("subset"), seed), val_set, opt)]
            distributed = False
        else:
            calls = [
                {
                    "dataset_path": str(path),
                    "model": config.as_dict(),
                    "optimizer": asdict(opt),
                    "fold": fold,
                    "subset": opts.get("subset"),
                }
                for fold in range(opt.folds)
            ]
            dispatched = run_group(train_fold, calls)
            histories = [TrainHistory.from_dict(result) for result in dispatched.results]
            distributed = dispatched.distributed

        stage.add_text(opts["out"], _history_csv(histories))
        stage.add_json(
            str(Path(opts["out"]).with_suffix(".json")),
            TrainHistorySerializer([h.as_dict() for h in histories], many=True).data,
        )

        finals = [h.final_val_accuracy for h in histories]
        metrics = {
            "params": count_params(config),
            "folds": len(histories),
            "final_val_accuracy": finals,
            "mean_val_accuracy": float(np.mean(finals)),
            "distributed": distributed,
        }
        return RunOutcome(
            config={**opts, "model": config.as_dict(), "optimizer": asdict(opt)},
            seeds={"seed": seed},
            dataset_digests=digests,
            metrics=metrics,
            summary=json.dumps(metrics, sort_keys=True),
        )


def _history_csv(histories: list[TrainHistory]) -> str:
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=HISTORY_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for history in histories:
        writer.writerows(history.rows())
    return buffer.getvalue()
