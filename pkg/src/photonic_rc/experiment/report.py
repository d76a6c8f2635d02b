# Copyright (c) 2026 Équipe photonic-rc
# Usage interne au projet photonic-rc

"""
Nom du module : experiment/report.py

Description :
Résultats d'un run : FoldResult (un par fold et par répétition, succès ou échec)
et RunReport (précisions par fold, moyenne ± écart-type, matrice de confusion
sommée, lambda retenus, empreinte de configuration).

Artefacts écrits par write_report (déterministes, comparables octet à octet) :
    results.csv     table longue, une ligne par fold
    summary.json    résumé structuré
    confusion.csv   matrice de confusion sommée, étiquetée
Hors artefacts déterministes :
    timing.json     durées murales

Utilisé par :
    experiment/engine.py
    orchestrator/sweep.py
    reporting/report_renderer.py

Auteur : Équipe photonic-rc
"""

from dataclasses import dataclass, field
import json
from pathlib import Path
from typing import Any, Literal

import numpy as np
import pandas as pd

from photonic_rc.readout.metrics import ConfusionMatrix
from photonic_rc.readout.ridge import Label

FoldStatus = Literal["ok", "failed"]

RESULT_COLUMNS = (
    "cell",
    "repetition",
    "fold",
    "optics_seed",
    "status",
    "accuracy",
    "lambda",
    "n_train",
    "n_test",
    "readout_dim",
    "explained_variance",
    "error",
)


@dataclass(frozen=True)
class FoldResult:
    repetition: int
    fold: str
    optics_seed: int
    status: FoldStatus
    accuracy: float | None = None
    lam: float | None = None
    confusion: ConfusionMatrix | None = None
    n_train: int = 0
    n_test: int = 0
    readout_dim: int = 0
    explained_variance: float | None = None
    error: str | None = None
    elapsed: float = field(default=0.0, compare=False)

    @property
    def ok(self) -> bool:
        return self.status == "ok"

    def row(self, cell: str) -> dict[str, Any]:
        return {
            "cell": cell,
            "repetition": self.repetition,
            "fold": self.fold,
            "optics_seed": self.optics_seed,
            "status": self.status,
            "accuracy": self.accuracy,
            "lambda": self.lam,
            "n_train": self.n_train,
            "n_test": self.n_test,
            "readout_dim": self.readout_dim,
            "explained_variance": self.explained_variance,
            "error": self.error or "",
        }


@dataclass(frozen=True)
class RunReport:
    name: str
    config_digest: str
    folds: tuple[FoldResult, ...]
    class_labels: tuple[Label, ...]
    layer_sizes: tuple[int, ...] = ()
    alphas: tuple[float, ...] = ()
    bias_fractions: tuple[float, ...] = ()
    notes: tuple[str, ...] = ()

    @property
    def succeeded(self) -> list[FoldResult]:
        return [f for f in self.folds if f.ok]

    @property
    def failed(self) -> list[FoldResult]:
        return [f for f in self.folds if not f.ok]

    @property
    def accuracies(self) -> list[float]:
        return [float(f.accuracy) for f in self.succeeded if f.accuracy is not None]

    @property
    def mean_accuracy(self) -> float | None:
        """Moyenne arithmétique des précisions par fold (folds réussis)."""
        acc = self.accuracies
        return float(np.mean(acc)) if acc else None

    @property
    def std_accuracy(self) -> float | None:
        """Écart-type (population, ddof=0) des précisions par fold."""
        acc = self.accuracies
        return float(np.std(acc)) if acc else None

    @property
    def lambdas(self) -> list[float | None]:
        return [f.lam for f in self.folds]

    @property
    def confusion(self) -> ConfusionMatrix:
        total = ConfusionMatrix.empty(self.class_labels)
        for f in self.succeeded:
            if f.confusion is not None:
                total = total + f.confusion
        return total

    @property
    def pooled_accuracy(self) -> float:
        """trace / total de la matrice sommée."""
        return self.confusion.accuracy

    def repetition_means(self) -> dict[int, float]:
        out: dict[int, list[float]] = {}
        for f in self.succeeded:
            if f.accuracy is not None:
                out.setdefault(f.repetition, []).append(f.accuracy)
        return {r: float(np.mean(v)) for r, v in sorted(out.items())}

    def wall_clock(self) -> float:
        return float(sum(f.elapsed for f in self.folds))

    def to_frame(self, cell: str | None = None) -> pd.DataFrame:
        rows = [f.row(cell or self.name) for f in self.folds]
        return pd.DataFrame(rows, columns=list(RESULT_COLUMNS))

    def to_dict(self) -> dict[str, Any]:
        """Résumé structuré, sans durée murale."""
        return {
            "name": self.name,
            "config_digest": self.config_digest,
            "class_labels": list(self.class_labels),
            "layer_sizes": list(self.layer_sizes),
            "alphas": list(self.alphas),
            "bias_fractions": list(self.bias_fractions),
            "fold_accuracies": [f.accuracy for f in self.folds],
            "fold_status": [f.status for f in self.folds],
            "lambdas": self.lambdas,
            "mean_accuracy": self.mean_accuracy,
            "std_accuracy": self.std_accuracy,
            "pooled_accuracy": self.pooled_accuracy,
            "repetition_means": {str(k): v for k, v in self.repetition_means().items()},
            "confusion": self.confusion.counts.tolist(),
            "n_failed": len(self.failed),
            "notes": list(self.notes),
        }


def write_report(report: RunReport, directory: str | Path) -> Path:
    """Écrit results.csv, summary.json, confusion.csv et timing.json ; renvoie le dossier."""
    out = Path(directory)
    out.mkdir(parents=True, exist_ok=True)
    report.to_frame().to_csv(out / "results.csv", index=False, lineterminator="\n")
    (out / "summary.json").write_text(
        json.dumps(report.to_dict(), indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )
    report.confusion.write_csv(out / "confusion.csv")
    timing = {
        "wall_clock_seconds": report.wall_clock(),
        "folds": {f"{f.repetition}/{f.fold}": f.elapsed for f in report.folds},
    }
    (out / "timing.json").write_text(json.dumps(timing, indent=2) + "\n", encoding="utf-8")
    return out
