# Copyright (c) 2026 Équipe photonic-rc
# Usage interne au projet photonic-rc

"""
Nom du module : tracking/results_table.py

Description :
Analyse a posteriori des tables de résultats longues (une ligne par fold et par
cellule) : moyenne ± écart-type par cellule, nombre de folds échoués.

Utilisé par :
    reporting/report_renderer.py
    orchestrator/sweep.py

Auteur : Équipe photonic-rc
"""

from pathlib import Path
from typing import Any

import pandas as pd

from photonic_rc.models.errors import FormatError

REQUIRED_COLUMNS = ("cell", "repetition", "fold", "status", "accuracy")


class ResultsTable:
    """Table longue de résultats chargée depuis results.csv."""

    def __init__(self, frame: pd.DataFrame) -> None:
        missing = [c for c in REQUIRED_COLUMNS if c not in frame.columns]
        if missing:
            raise FormatError(f"Colonnes manquantes dans la table de résultats : {missing}")
        self.frame = frame

    @classmethod
    def load(cls, path: str | Path) -> "ResultsTable":
        return cls(pd.read_csv(path))

    def ok(self) -> pd.DataFrame:
        return self.frame[self.frame["status"] == "ok"]

    def by_cell(self, keys: list[str] | None = None) -> pd.DataFrame:
        """
        Agrège par cellule.

        Args:
          keys: list[str]: colonnes de regroupement (défaut : ["cell"])

        Returns:
          pd.DataFrame: mean, std (ddof=0), n_ok, n_failed par groupe
        """
        group = keys or ["cell"]
        stats = (
            self.ok()
            .groupby(group, sort=False)["accuracy"]
            .agg(mean="mean", std=lambda s: float(s.std(ddof=0)), n_ok="count")
        )
        failed = (
            self.frame[self.frame["status"] != "ok"]
            .groupby(group, sort=False)
            .size()
            .rename("n_failed")
        )
        out = stats.join(failed, how="outer").fillna({"n_failed": 0, "n_ok": 0})
        out["n_failed"] = out["n_failed"].astype(int)
        out["n_ok"] = out["n_ok"].astype(int)
        return out.reset_index()

    def summary(self) -> dict[str, Any]:
        if self.frame.empty:
            return {"status": "no data"}
        ok = self.ok()
        return {
            "rows": len(self.frame),
            "failed": int((self.frame["status"] != "ok").sum()),
            "mean_accuracy": round(float(ok["accuracy"].mean()), 6) if len(ok) else None,
            "best_cell": str(ok.groupby("cell")["accuracy"].mean().idxmax()) if len(ok) else None,
        }
