import json
import os
from pathlib import Path
import struct

import numpy as np
import pandas as pd
import pytest

from photonic_rc.config.loader import with_overrides
from photonic_rc.config.models import ExperimentConfig, SyntheticConfig
from photonic_rc.experiment.engine import (
    evaluate_saved_fold,
    load_data,
    readout_path,
    run_experiment,
    transmission_path,
)
from photonic_rc.models.errors import FormatError, ProtocolError
from photonic_rc.orchestrator.grid_scanner import GridScanner
from photonic_rc.orchestrator.sweep import depth_trend_diagnostic, run_sweep
from photonic_rc.providers.mnist_provider import load_mnist, read_idx_images, read_idx_labels
from photonic_rc.providers.synthetic_provider import synthetic_task, write_synthetic_task
from photonic_rc.readout.metrics import score
from photonic_rc.readout.persistence import load_model
from photonic_rc.readout.ridge import DesignMatrix, train_ridge
from photonic_rc.tracking.run_journal import RunJournal

IMAGE_MAGIC = 2051
LABEL_MAGIC = 2049
DESK_GATE = 0.90

TINY = {
    "dataset": {
        "kind": "synthetic",
        "synthetic": {"n_classes": 3, "n_per_class": 20, "length": 6, "n_features": 4, "delay": 1},
    },
    "reservoir": {"depth": 2, "total_neurons": 50, "allocation": "uniform", "bias_width": 20},
    "optics": {"warmup_patterns": 32},
    "readout": {"lambda_grid": [1e-2, 1.0, 100.0]},
    "protocol": {"name": "holdout"},
}


def tiny_config(**sections) -> ExperimentConfig:
    config = with_overrides(ExperimentConfig(), TINY)
    return with_overrides(config, sections) if sections else config


def write_idx_images(path: Path, images: np.ndarray) -> Path:
    n, rows, cols = images.shape
    path.write_bytes(struct.pack(">4i", IMAGE_MAGIC, n, rows, cols) + images.tobytes())
    return path


def write_idx_labels(path: Path, labels: np.ndarray) -> Path:
    path.write_bytes(struct.pack(">2i", LABEL_MAGIC, labels.size) + labels.tobytes())
    return path


def fake_mnist(directory: Path, n_train: int = 40, n_test: int = 12) -> Path:
    rng = np.random.default_rng(0)
    directory.mkdir(parents=True, exist_ok=True)
    for prefix, n in (("train", n_train), ("t10k", n_test)):
        images = rng.integers(0, 256, size=(n, 28, 28), dtype=np.uint8)
        labels = np.arange(n, dtype=np.uint8) % 10
        write_idx_images(directory / f"{prefix}-images-idx3-ubyte", images)
        write_idx_labels(directory / f"{prefix}-labels-idx1-ubyte", labels)
    return directory


# ==== TESTS TÂCHES SYNTHÉTIQUES ==== #


def test_synthetic_task_is_balanced() -> None:
    params = SyntheticConfig(n_classes=4, n_per_class=7, length=5, n_features=3, delay=2)
    samples = synthetic_task("delayed-recall", params, seed=1)
    labels = [s.label for s in samples]
    assert len(samples) == 28
    assert all(labels.count(k) == 7 for k in range(4))
    assert all(s.frames.shape == (5, 3) for s in samples)


@pytest.mark.parametrize("kind", ["delayed-recall", "noisy-channel-classification"])
def test_synthetic_files_are_reproducible(tmp_path: Path, kind: str) -> None:
    params = SyntheticConfig(kind=kind, n_classes=2, n_per_class=3, length=4, n_features=2, delay=1)
    first = write_synthetic_task(tmp_path / "a", kind, params, seed=5).parent
    second = write_synthetic_task(tmp_path / "b", kind, params, seed=5).parent
    names = sorted(p.relative_to(first).as_posix() for p in first.rglob("*.csv"))
    assert names == sorted(p.relative_to(second).as_posix() for p in second.rglob("*.csv"))
    for name in names:
        assert (first / name).read_bytes() == (second / name).read_bytes()


def test_delayed_recall_without_delay_is_solvable() -> None:
    params = SyntheticConfig(n_classes=4, n_per_class=50, length=6, n_features=8, delay=0)
    samples = synthetic_task("delayed-recall", params, seed=2)
    # Délai nul : la dernière trame porte l'indice de classe
    states = np.array([np.append(s.frames[-1], 1.0) for s in samples])
    labels = [s.label for s in samples]
    design = DesignMatrix.from_labels(states, labels, [0, 1, 2, 3])
    half = np.arange(100)
    model = train_ridge(design.subset(half), 1e-3)
    accuracy, _ = score(model, design.subset(np.arange(100, 200)))
    assert accuracy >= 0.95


# ==== TESTS LECTEUR IDX ==== #


def test_idx_round_trip(tmp_path: Path) -> None:
    directory = fake_mnist(tmp_path / "mnist")
    data = load_mnist(directory)
    assert data.train.images.shape == (40, 28, 28)
    assert data.test.labels.tolist() == [k % 10 for k in range(12)]
    assert float(data.train.images.max()) <= 1.0
    assert len(data.pooled()) == 52


def test_idx_truncated_payload(tmp_path: Path) -> None:
    path = write_idx_images(tmp_path / "x.idx3", np.zeros((2, 28, 28), dtype=np.uint8))
    path.write_bytes(path.read_bytes()[:-10])
    with pytest.raises(FormatError, match="attendus"):
        read_idx_images(path)


def test_idx_truncated_header(tmp_path: Path) -> None:
    path = tmp_path / "x.idx1"
    path.write_bytes(struct.pack(">i", LABEL_MAGIC))
    with pytest.raises(FormatError, match="tronqué"):
        read_idx_labels(path)


def test_idx_wrong_magic(tmp_path: Path) -> None:
    path = write_idx_labels(tmp_path / "x.idx1", np.zeros(20, dtype=np.uint8))
    with pytest.raises(FormatError, match="magic"):
        read_idx_images(path)


def test_idx_label_out_of_range(tmp_path: Path) -> None:
    path = write_idx_labels(tmp_path / "x.idx1", np.array([1, 12, 3], dtype=np.uint8))
    with pytest.raises(FormatError, match="hors de"):
        read_idx_labels(path)


# ==== TESTS RUN ==== #


def test_run_is_deterministic(tmp_path: Path) -> None:
    config = tiny_config()
    run_experiment(config, tmp_path / "a")
    run_experiment(config, tmp_path / "b")
    for name in ("summary.json", "results.csv", "confusion.csv"):
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()
    assert "wall_clock" not in (tmp_path / "a" / "summary.json").read_text()
    assert (tmp_path / "a" / "timing.json").is_file()


def test_repetitions_aggregate(tmp_path: Path) -> None:
    report = run_experiment(tiny_config(run={"repetitions": 3}), tmp_path)
    assert [f.optics_seed for f in report.folds] == [1, 2, 3]
    accuracies = [f.accuracy for f in report.folds]
    assert report.mean_accuracy == pytest.approx(float(np.mean(accuracies)), abs=1e-12)
    assert report.std_accuracy == pytest.approx(float(np.std(accuracies)), abs=1e-12)
    summary = json.loads((tmp_path / "summary.json").read_text())
    assert summary["mean_accuracy"] == pytest.approx(report.mean_accuracy)
    assert sorted(summary["repetition_means"]) == ["0", "1", "2"]


def test_report_is_self_consistent(tmp_path: Path) -> None:
    report = run_experiment(tiny_config(), tmp_path)
    (fold,) = report.folds
    counts = np.array(json.loads((tmp_path / "summary.json").read_text())["confusion"])
    assert counts.sum() == fold.n_test
    assert np.trace(counts) / counts.sum() == pytest.approx(fold.accuracy, abs=1e-12)
    table = pd.read_csv(tmp_path / "results.csv")
    assert table["status"].tolist() == ["ok"]
    assert table["lambda"].iloc[0] in (1e-2, 1.0, 100.0)
    assert report.layer_sizes == (25, 25)
    assert (tmp_path / f"confusion_0_{fold.fold}.csv").is_file()


def test_train_equals_test_upper_bound() -> None:
    readout = {"fixed_lambda": 1e-3}
    shared = run_experiment(tiny_config(protocol={"train_equals_test": True}, readout=readout))
    split = run_experiment(tiny_config(readout=readout))
    assert shared.folds[0].n_train == shared.folds[0].n_test == 60
    assert shared.mean_accuracy >= split.mean_accuracy


def test_failed_fold_is_recorded(tmp_path: Path) -> None:
    report = run_experiment(tiny_config(optics={"max_matrix_elements": 10}), tmp_path)
    assert len(report.failed) == 1
    assert report.mean_accuracy is None
    table = pd.read_csv(tmp_path / "results.csv")
    assert table["status"].tolist() == ["failed"]
    assert table["error"].iloc[0].startswith("ResourceError")
    assert not list(tmp_path.glob("readout_*.txt"))


def test_saved_readouts_reproduce_fold_scores(tmp_path: Path) -> None:
    config = tiny_config(run={"repetitions": 2})
    report = run_experiment(config, tmp_path)
    data = load_data(config)
    for fold in report.folds:
        model = load_model(readout_path(tmp_path, fold.repetition, fold.fold))
        assert model.lam == fold.lam
        meta = json.loads(transmission_path(tmp_path, fold.repetition, fold.fold).read_text())
        assert meta["seed"] == fold.optics_seed
        accuracy, confusion = evaluate_saved_fold(
            config, tmp_path, fold.repetition, fold.fold, data=data
        )
        assert accuracy == fold.accuracy
        assert confusion.labels == fold.confusion.labels
        assert np.array_equal(confusion.counts, fold.confusion.counts)


def test_evaluate_saved_fold_without_artifacts(tmp_path: Path) -> None:
    config = tiny_config()
    with pytest.raises(FormatError):
        evaluate_saved_fold(config, tmp_path, 0, "holdout")
    with pytest.raises(ProtocolError):
        evaluate_saved_fold(config, tmp_path, 0, "mnist-1")


def test_journal_records_folds(tmp_path: Path) -> None:
    journal = RunJournal(tmp_path / "journal.jsonl")
    run_experiment(tiny_config(run={"repetitions": 2}), journal=journal)
    events = journal.read()
    assert [e["kind"] for e in events] == ["fold", "fold"]
    assert all(e["status"] == "ok" for e in events)


# ==== TESTS CONTRÔLE DE FUITE ==== #


def test_leakage_check_holdout() -> None:
    report = run_experiment(tiny_config(protocol={"leakage_check": True}))
    assert not report.failed


def test_leakage_check_grouped_folds() -> None:
    config = tiny_config(
        dataset={"synthetic": {"n_per_class": 10}},
        protocol={"name": "ti46-grouped-10fold", "leakage_check": True},
        readout={"lambda_grid": [1e-2, 1.0]},
    )
    report = run_experiment(config)
    assert len(report.folds) == 10
    assert not report.failed
    assert all(f.n_test == 3 for f in report.folds)


def test_leakage_check_kth_segments(tmp_path: Path) -> None:
    params = SyntheticConfig(n_classes=3, n_per_class=6, length=8, n_features=4, delay=1)
    write_synthetic_task(tmp_path / "videos", "delayed-recall", params, seed=4)
    config = tiny_config(
        dataset={"kind": "sequence-dir", "path": str(tmp_path / "videos"), "mode": "kth"},
        reservoir={"aggregation": "mean"},
        protocol={"name": "kth-central-2fold", "leakage_check": True},
    )
    assert len(load_data(config)) == 72
    report = run_experiment(config)
    assert len(report.folds) == 2
    assert not report.failed
    assert all(f.n_train == 3 * f.n_test for f in report.folds)


def test_leakage_check_mnist_images(tmp_path: Path) -> None:
    directory = fake_mnist(tmp_path / "mnist")
    config = tiny_config(
        dataset={"kind": "mnist", "path": str(directory)},
        reservoir={"aggregation": "concat"},
        protocol={"leakage_check": True},
    )
    report = run_experiment(config)
    (fold,) = report.folds
    assert fold.ok, fold.error
    assert (fold.n_train, fold.n_test) == (40, 12)
    assert fold.readout_dim == 4 * 50


# ==== TESTS BALAYAGES ==== #


@pytest.mark.parametrize(
    ("axis", "expected"),
    [("allocation-strategy", 12), ("leakage-config", 16), ("bias-profile", 8)],
)
def test_grid_cell_counts(axis: str, expected: int) -> None:
    cells = GridScanner(axis).get_cells()
    assert len(cells) == expected
    assert len({c.name for c in cells}) == expected


def test_per_layer_budget_rule() -> None:
    base = tiny_config()
    for cell in GridScanner("allocation-strategy").get_cells():
        config = with_overrides(base, {"reservoir": cell.overrides})
        assert config.reservoir.budget == 100 * cell.x


def test_run_sweep_writes_tables(tmp_path: Path) -> None:
    grid = {"depths": [2], "series": ["decreasing", "uniform"]}
    result = run_sweep(tiny_config(), "allocation-strategy", grid, tmp_path)
    assert [o.cell.series for o in result.outcomes] == ["decreasing", "uniform"]
    plot = pd.read_csv(tmp_path / "plot_allocation-strategy.csv")
    assert plot["x"].tolist() == [2, 2]
    assert plot["y"].between(0.0, 1.0).all()
    table = pd.read_csv(tmp_path / "results.csv")
    assert set(table["series"]) == {"decreasing", "uniform"}
    sweep = json.loads((tmp_path / "sweep.json").read_text())
    assert len(sweep["cells"]) == 2


def test_sweep_keeps_going_after_failed_cell() -> None:
    grid = {"depths": [1, 3], "budgets": [50]}
    result = run_sweep(tiny_config(), "depth-vs-shallow", grid)
    shallow, deep = result.outcomes
    assert shallow.report is not None and shallow.report.mean_accuracy is not None
    # Budget trop faible pour trois couches de 25 neurones
    assert deep.report is None or deep.report.mean_accuracy is None
    plot = result.plot_data()
    assert np.isnan(plot["y"].iloc[1]) or plot["y"].iloc[1] is None


def test_depth_trend_diagnostic_verdict() -> None:
    verdict = depth_trend_diagnostic(tiny_config(), budget=50, deep_depth=2, n_seeds=2)
    assert verdict["optics_seeds"] == [1, 2]
    assert isinstance(verdict["passed"], bool)
    assert verdict["gap"] == pytest.approx(verdict["deep_mean"] - verdict["shallow_mean"])


# ==== TEST MNIST BUREAU ==== #


def mnist_root() -> Path | None:
    root = os.environ.get("PHOTONIC_RC_DATA_ROOT")
    if root and (Path(root) / "mnist").is_dir():
        return Path(root) / "mnist"
    return None


@pytest.mark.slow
@pytest.mark.skipif(mnist_root() is None, reason="MNIST absent de PHOTONIC_RC_DATA_ROOT")
def test_mnist_desk_accuracy(tmp_path: Path) -> None:
    config = with_overrides(
        ExperimentConfig(),
        {
            "dataset": {
                "kind": "mnist",
                "path": str(mnist_root()),
                "train_subsample": 10_000,
                "test_subsample": 2_000,
            },
            "reservoir": {"depth": 3, "total_neurons": 1500, "aggregation": "concat"},
            "run": {"n_jobs": -1},
        },
    )
    report = run_experiment(config, tmp_path)
    assert report.mean_accuracy >= DESK_GATE
    assert any("bureau" in note for note in report.notes)
