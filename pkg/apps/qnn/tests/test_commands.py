"""Tests for the mnist management command."""

import csv
import json
from io import StringIO

import numpy as np
import pytest
from django.core.management import call_command
from django.core.management.base import CommandError

from apps.qimage.services import format_idx, load_dataset
from apps.runs.models import RunRecord, RunStatus

pytestmark = pytest.mark.django_db


def run_mnist(*args: str) -> dict:
    out = StringIO()
    call_command("mnist", *args, stdout=out)
    return json.loads(out.getvalue())


@pytest.fixture
def idx_files(tmp_path):
    """IDX image and label files with blocky 3s and 6s among other digits."""
    labels = np.array([3, 6, 1, 3, 6, 0] * 4, dtype=np.uint8)
    images = np.zeros((labels.size, 28, 28), dtype=np.uint8)
    images[labels == 3, :, 14:] = 255
    images[labels == 6, 14:, :] = 255
    images_path = tmp_path / "train-images-idx3-ubyte"
    labels_path = tmp_path / "train-labels-idx1-ubyte"
    images_path.write_bytes(format_idx(images))
    labels_path.write_bytes(format_idx(labels))
    return images_path, labels_path


class TestPreprocess:
    """Tests for mnist preprocess."""

    def test_writes_dataset_and_manifest(self, idx_files, tmp_path):
        """The dataset, manifest and run record land in the output directory."""
        images, labels = idx_files
        out_dir = tmp_path / "runs"
        metrics = run_mnist(
            "preprocess", "--images", str(images), "--labels", str(labels), "--size", "4", "--out-dir", str(out_dir)
        )
        assert metrics == {"samples": 16, "counts": {"3": 8, "6": 8}}

        dataset = load_dataset(out_dir / "dataset" / "dataset.npz")
        assert dataset.images.shape == (16, 4, 4)
        manifest = json.loads((out_dir / "dataset" / "manifest.json").read_text())
        assert manifest["counts"] == {"3": 8, "6": 8}
        assert set(manifest["digests"]) == {str(images), str(labels)}
        assert (out_dir / "run_record.json").exists()

        record = RunRecord.objects.get()
        assert record.command == "mnist preprocess"
        assert record.status == RunStatus.COMPLETED

    def test_bad_size(self, idx_files, tmp_path):
        """Non power-of-two sizes are usage errors."""
        images, labels = idx_files
        with pytest.raises(CommandError) as excinfo:
            run_mnist(
                "preprocess", "--images", str(images), "--labels", str(labels), "--size", "6", "--out-dir", str(tmp_path)
            )
        assert excinfo.value.returncode == 2
        assert RunRecord.objects.get().status == RunStatus.FAILED

    def test_missing_file(self, tmp_path):
        """A missing IDX file fails with the not-found code and writes nothing."""
        out_dir = tmp_path / "runs"
        with pytest.raises(CommandError) as excinfo:
            run_mnist(
                "preprocess",
                "--images",
                str(tmp_path / "missing"),
                "--labels",
                str(tmp_path / "missing"),
                "--out-dir",
                str(out_dir),
            )
        assert excinfo.value.returncode == 5
        assert not out_dir.exists()
        record = RunRecord.objects.get()
        assert record.error.startswith("file_not_found")
        assert record.artifacts == []


class TestEncode:
    """Tests for mnist encode."""

    @pytest.mark.parametrize(("compressed", "qubits"), [(False, 7), (True, 5)])
    def test_circuit_matches_state(self, solid_dataset_file, tmp_path, compressed, qubits):
        """The dumped circuit prepares the directly built state."""
        args = ["encode", "--dataset", str(solid_dataset_file), "--out-dir", str(tmp_path)]
        if compressed:
            args.append("--compressed")
        metrics = run_mnist(*args)
        assert metrics["qubits"] == qubits
        assert metrics["max_deviation"] < 1e-10
        assert metrics["norm"] == pytest.approx(1.0, abs=1e-10)
        assert (tmp_path / "circuit.txt").read_text().startswith(f"qubits {qubits}")

    def test_decomposed(self, solid_dataset_file, tmp_path):
        """Decomposition replaces multi-controlled gates and keeps the state."""
        args = ["encode", "--dataset", str(solid_dataset_file), "--decompose", "--out-dir", str(tmp_path)]
        metrics = run_mnist(*args)
        assert metrics["max_deviation"] < 1e-10
        assert "MCRY" not in (tmp_path / "circuit.txt").read_text()
        assert metrics["max_controls"] == 6
        assert metrics["elementary_per_gate"] == 485
        assert metrics["gate_count_bound"] == 1457

    def test_index_out_of_range(self, solid_dataset_file, tmp_path):
        """The sample index must exist."""
        with pytest.raises(CommandError) as excinfo:
            run_mnist("encode", "--dataset", str(solid_dataset_file), "--index", "40", "--out-dir", str(tmp_path))
        assert excinfo.value.returncode == 2


class TestVerify:
    """Tests for mnist verify."""

    def encoded_circuit(self, dataset_file, out_dir, *extra: str):
        run_mnist("encode", "--dataset", str(dataset_file), "--out-dir", str(out_dir), *extra)
        return out_dir / "circuit.txt"

    @pytest.mark.parametrize("extra", [(), ("--decompose",), ("--compressed",)])
    def test_dump_reproduces_state(self, solid_dataset_file, tmp_path, extra):
        """A dumped encoding circuit read back from disk prepares the encoded state."""
        circuit = self.encoded_circuit(solid_dataset_file, tmp_path / "encode", *extra)
        args = ["verify", "--circuit", str(circuit), "--dataset", str(solid_dataset_file), "--out-dir", str(tmp_path / "verify")]
        if "--compressed" in extra:
            args.append("--compressed")
        metrics = run_mnist(*args)
        assert metrics["matches"] is True
        assert metrics["max_deviation"] < 1e-10

    def test_other_image_does_not_match(self, solid_dataset_file, tmp_path):
        """Image 1 is blank, so the circuit for the white image 0 does not prepare it."""
        circuit = self.encoded_circuit(solid_dataset_file, tmp_path / "encode")
        metrics = run_mnist(
            "verify", "--circuit", str(circuit), "--dataset", str(solid_dataset_file), "--index", "1",
            "--out-dir", str(tmp_path / "verify"),
        )
        assert metrics["matches"] is False

    def test_register_mismatch(self, solid_dataset_file, tmp_path):
        """A plain FRQI circuit cannot be checked against the compressed state."""
        circuit = self.encoded_circuit(solid_dataset_file, tmp_path / "encode")
        with pytest.raises(CommandError) as excinfo:
            run_mnist("verify", "--circuit", str(circuit), "--dataset", str(solid_dataset_file), "--compressed",
                      "--out-dir", str(tmp_path / "verify"))
        assert excinfo.value.returncode == 3

    def test_malformed_circuit(self, solid_dataset_file, tmp_path):
        circuit = tmp_path / "circuit.txt"
        circuit.write_text("qubits 2\nCX 0 4\n")
        with pytest.raises(CommandError) as excinfo:
            run_mnist("verify", "--circuit", str(circuit), "--dataset", str(solid_dataset_file),
                      "--out-dir", str(tmp_path / "verify"))
        assert excinfo.value.returncode == 4


class TestTrain:
    """Tests for mnist train."""

    def test_kfold_history(self, solid_dataset_file, tmp_path):
        """Folds run through the task and the CSV has one row per fold and epoch."""
        metrics = run_mnist(
            "train",
            "--dataset",
            str(solid_dataset_file),
            "--config",
            "nn1",
            "--epochs",
            "2",
            "--folds",
            "2",
            "--out-dir",
            str(tmp_path),
        )
        assert metrics["params"] == 67
        assert metrics["folds"] == 2

        with (tmp_path / "history.csv").open() as handle:
            rows = list(csv.DictReader(handle))
        assert list(rows[0]) == ["fold", "epoch", "train_loss", "val_accuracy"]
        assert [(r["fold"], r["epoch"]) for r in rows] == [("0", "1"), ("0", "2"), ("1", "1"), ("1", "2")]
        assert len(json.loads((tmp_path / "history.json").read_text())) == 2

        record = RunRecord.objects.get()
        assert record.seeds == {"seed": 0}
        assert record.config["model"]["kind"] == "mlp"

    def test_same_seed_same_metrics(self, solid_dataset_file, tmp_path):
        """Repeated runs with one seed give identical metrics."""
        args = [
            "train",
            "--dataset",
            str(solid_dataset_file),
            "--config",
            "qnn2",
            "--epochs",
            "1",
            "--folds",
            "2",
            "--subset",
            "8",
            "--seed",
            "3",
        ]
        first = run_mnist(*args, "--out-dir", str(tmp_path / "a"))
        second = run_mnist(*args, "--out-dir", str(tmp_path / "b"))
        assert first == second
        assert (tmp_path / "a" / "history.csv").read_bytes() == (tmp_path / "b" / "history.csv").read_bytes()

    def test_holdout(self, solid_dataset_file, tmp_path):
        """--val-data trains once on a fixed split."""
        metrics = run_mnist(
            "train",
            "--dataset",
            str(solid_dataset_file),
            "--val-data",
            str(solid_dataset_file),
            "--val-subset",
            "10",
            "--config",
            "nn1",
            "--epochs",
            "1",
            "--out-dir",
            str(tmp_path),
        )
        assert metrics["folds"] == 1
        assert metrics["distributed"] is False

    def test_wrong_image_size(self, solid_dataset_file, tmp_path):
        """A 16x16 preset refuses an 8x8 dataset."""
        with pytest.raises(CommandError) as excinfo:
            run_mnist("train", "--dataset", str(solid_dataset_file), "--config", "nn2", "--out-dir", str(tmp_path))
        assert excinfo.value.returncode == 2

    def test_unknown_preset(self, solid_dataset_file, tmp_path):
        """Only the named presets are accepted."""
        with pytest.raises(CommandError) as excinfo:
            run_mnist("train", "--dataset", str(solid_dataset_file), "--config", "qnn7", "--out-dir", str(tmp_path))
        assert excinfo.value.returncode == 2
