# Copyright (c) 2026 Équipe photonic-rc
# Usage interne au projet photonic-rc

"""
Nom du module : orchestrator/sweep.py

Description :
Balayages paramétriques d'ablation : chaque cellule de la grille est un run complet
(toutes répétitions, tous folds) sur le même jeu chargé une seule fois ; les autres
réglages restent fixes. Une cellule en échec est consignée et le balayage continue.

Sorties (dossier du balayage) :
    results.csv        table longue, une ligne par fold et par cellule
    plot_<axe>.csv     données de tracé x,y,y_std,series
    sweep.json         moyenne ± écart-type par cellule

Le diagnostic de tendance profondeur compare un réservoir peu profond (L = 1,
alpha = 0.95) et un réservoir profond (L = 5) au même budget, sur plusieurs graines
optiques.

Utilisé par :
    controller/execution.py
    scripts/runner_depth_trend.py

Auteur : Équipe photonic-rc
"""

from dataclasses import dataclass
import json
import logging
from pathlib import Path
from typing import Any, Final

from joblib import Parallel, delayed
import pandas as pd

from photonic_rc.config.loader import with_overrides
from photonic_rc.config.models import ExperimentConfig
from photonic_rc.experiment.engine import LoadedData, load_data, run_experiment
from photonic_rc.experiment.report import RESULT_COLUMNS, RunReport
from photonic_rc.models.errors import PhotonicRcError
from photonic_rc.orchestrator.grid_scanner import GridScanner, SweepCell
from photonic_rc.orchestrator.resource_manager import ResourceManager
from photonic_rc.tracking.run_journal import RunEvent, RunJournal

logger = logging.getLogger(__name__)

PLOT_COLUMNS: Final[tuple[str, ...]] = ("x", "y", "y_std", "series")
TREND_TOLERANCE: Final[float] = 0.01


@dataclass(frozen=True)
class CellOutcome:
    cell: SweepCell
    report: RunReport | None
    error: str | None = None

    def rows(self) -> list[dict[str, Any]]:
        meta = {"axis": self.cell.axis, "series": self.cell.series, "x": self.cell.x}
        if self.report is None:
            failed = {c: None for c in RESULT_COLUMNS}
            failed.update(cell=self.cell.name, status="failed", error=self.error or "")
            return [{**failed, **meta}]
        return [{**f.row(self.cell.name), **meta} for f in self.report.folds]


@dataclass(frozen=True)
class SweepResult:
    axis: str
    outcomes: tuple[CellOutcome, ...]

    def table(self) -> pd.DataFrame:
        rows = [row for outcome in self.outcomes for row in outcome.rows()]
        return pd.DataFrame(rows, columns=[*RESULT_COLUMNS, "axis", "series", "x"])

    def plot_data(self) -> pd.DataFrame:
        """Une ligne par cellule : x, y = moyenne, y_std = écart-type (ddof=0), series."""
        rows = []
        for outcome in self.outcomes:
            report = outcome.report
            mean = None if report is None else report.mean_accuracy
            std = None if report is None else report.std_accuracy
            rows.append(
                {"x": outcome.cell.x, "y": mean, "y_std": std, "series": outcome.cell.series}
            )
        return pd.DataFrame(rows, columns=list(PLOT_COLUMNS))

    def write(self, directory: str | Path) -> Path:
        out = Path(directory)
        out.mkdir(parents=True, exist_ok=True)
        self.table().to_csv(out / "results.csv", index=False, lineterminator="\n")
        self.plot_data().to_csv(out / f"plot_{self.axis}.csv", index=False, lineterminator="\n")
        summary = {
            o.cell.name: {
                "series": o.cell.series,
                "x": o.cell.x,
                "mean_accuracy": None if o.report is None else o.report.mean_accuracy,
                "std_accuracy": None if o.report is None else o.report.std_accuracy,
                "config_digest": None if o.report is None else o.report.config_digest,
                "error": o.error,
            }
            for o in self.outcomes
        }
        (out / "sweep.json").write_text(
            json.dumps({"axis": self.axis, "cells": summary}, indent=2, sort_keys=True) + "\n",
            encoding="utf-8",
        )
        return out


def _run_cell(base: ExperimentConfig, cell: SweepCell, data: LoadedData) -> CellOutcome:
    try:
        config = with_overrides(
            base, {"reservoir": cell.overrides, "run": {"n_jobs": 1}, "output": {"name": cell.name}}
        )
        report = run_experiment(config, data=data, cell=cell.name)
    except PhotonicRcError as exc:
        logger.error("Cellule %s en échec : %s", cell.name, exc)
        return CellOutcome(cell=cell, report=None, error=f"{type(exc).__name__}: {exc}")
    return CellOutcome(cell=cell, report=report)


def run_sweep(
    base: ExperimentConfig,
    axis: str,
    grid: dict[str, list[Any]] | None = None,
    output_dir: str | Path | None = None,
    journal: RunJournal | None = None,
    data: LoadedData | None = None,
) -> SweepResult:
    """
    Exécute toutes les cellules d'un axe d'ablation.

    Args:
      base: ExperimentConfig: configuration de base (réglages tenus fixes)
      axis: str: allocation-strategy | leakage-config | bias-profile | depth-vs-shallow
      grid: dict | None: surcharges ("depths", "budgets", "series")
      output_dir: dossier de sortie (None : rien n'est écrit)
      journal: RunJournal: journal optionnel (une entrée par cellule)
      data: LoadedData: jeu déjà chargé

    Returns:
      SweepResult (cellules dans l'ordre de la grille)
    """
    cells = GridScanner(axis, grid).get_cells()
    loaded = data if data is not None else load_data(base)
    manager = ResourceManager(max_matrix_elements=base.optics.max_matrix_elements)
    workers = manager.workers(base.run.n_jobs, len(cells))
    logger.info("Balayage %s : %s cellules, %s travailleur(s)", axis, len(cells), workers)
    outcomes: list[CellOutcome] = Parallel(n_jobs=workers, prefer="threads")(
        delayed(_run_cell)(base, cell, loaded) for cell in cells
    )
    result = SweepResult(axis=axis, outcomes=tuple(outcomes))
    if journal is not None:
        for o in outcomes:
            journal.log_event(
                RunEvent(
                    kind="cell",
                    name=o.cell.name,
                    status="ok" if o.report is not None and not o.report.failed else "failed",
                    meta={"mean_accuracy": None if o.report is None else o.report.mean_accuracy},
                )
            )
    if output_dir is not None:
        result.write(output_dir)
    return result


def depth_trend_diagnostic(
    base: ExperimentConfig,
    budget: int = 500,
    deep_depth: int = 5,
    n_seeds: int = 3,
    data: LoadedData | None = None,
) -> dict[str, Any]:
    """
    Compare shallow (L = 1, alpha 0.95) et profond au même budget.

    Args:
      base: ExperimentConfig: en pratique la tâche synthétique delayed-recall
      budget: int: budget total N
      deep_depth: int: profondeur du réservoir profond
      n_seeds: int: nombre de graines optiques (répétitions)

    Returns:
      dict : moyennes, écarts, graines, verdict et drapeau d'écart
    """
    grid = {"depths": [1, deep_depth], "budgets": [budget]}
    seeded = with_overrides(base, {"run": {"repetitions": n_seeds}})
    result = run_sweep(seeded, "depth-vs-shallow", grid, data=data)
    shallow, deep = result.outcomes
    shallow_mean = shallow.report.mean_accuracy if shallow.report else None
    deep_mean = deep.report.mean_accuracy if deep.report else None
    passed = (
        shallow_mean is not None
        and deep_mean is not None
        and deep_mean >= shallow_mean - TREND_TOLERANCE
    )
    verdict = {
        "budget": budget,
        "deep_depth": deep_depth,
        "optics_seeds": [base.seeds.optics + r for r in range(n_seeds)],
        "shallow_mean": shallow_mean,
        "shallow_std": shallow.report.std_accuracy if shallow.report else None,
        "deep_mean": deep_mean,
        "deep_std": deep.report.std_accuracy if deep.report else None,
        "gap": None if deep_mean is None or shallow_mean is None else deep_mean - shallow_mean,
        "passed": passed,
    }
    if passed:
        logger.info("Tendance profondeur respectée : %s", verdict)
    else:
        logger.warning("Tendance profondeur NON respectée (écart signalé) : %s", verdict)
    return verdict
