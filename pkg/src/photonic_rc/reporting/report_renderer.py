# Copyright (c) 2026 Équipe photonic-rc
# Usage interne au projet photonic-rc

"""
Nom du module : reporting/report_renderer.py

Description :
Re-rendu d'un dossier de résultats (run ou balayage) : relit la table longue,
recalcule moyenne ± écart-type par cellule, réécrit les données de tracé par
panneau (x, y, y_std, series), trace les figures PNG (matplotlib, backend Agg)
et produit un résumé Markdown à partir d'un gabarit Jinja2.

Utilisé par :
    controller/execution.py (sous-commande report)

Auteur : Équipe photonic-rc
"""

import json
import logging
from pathlib import Path
from typing import Any

from jinja2 import Environment, FileSystemLoader
import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import pandas as pd  # noqa: E402

from photonic_rc.models.errors import FormatError  # noqa: E402
from photonic_rc.tracking.results_table import ResultsTable  # noqa: E402

logger = logging.getLogger(__name__)

TEMPLATE_DIR = Path(__file__).parent / "templates"
SUMMARY_TEMPLATE = "run_summary.md.j2"


def plot_panel(frame: pd.DataFrame, axis: str, path: Path) -> Path:
    """Trace y ± y_std en fonction de x, une courbe par série."""
    fig, ax = plt.subplots(figsize=(5.0, 3.5))
    for series, group in frame.groupby("series", sort=False):
        ordered = group.sort_values("x")
        ax.errorbar(
            ordered["x"],
            ordered["y"],
            yerr=ordered["y_std"],
            marker="o",
            capsize=3,
            label=str(series),
        )
    ax.set_xlabel("budget N" if axis == "depth-vs-shallow" else "profondeur L")
    ax.set_ylabel("précision")
    ax.set_title(axis)
    ax.grid(alpha=0.3)
    ax.legend(fontsize="small")
    fig.tight_layout()
    fig.savefig(path, dpi=120, metadata={"Software": None})
    plt.close(fig)
    return path


class ReportRenderer:
    """Régénère tableaux, données de tracé, figures et résumé d'un dossier de résultats."""

    def __init__(self, results_dir: str | Path, template_dir: str | Path = TEMPLATE_DIR) -> None:
        """
        Args:
          results_dir: str | Path: dossier contenant results.csv
          template_dir: str | Path: dossier des gabarits Jinja2
        """
        self.results_dir = Path(results_dir)
        self.env = Environment(loader=FileSystemLoader(str(template_dir)), autoescape=False)

    def load(self) -> ResultsTable:
        path = self.results_dir / "results.csv"
        if not path.is_file():
            raise FormatError(f"Table de résultats absente : {path}")
        return ResultsTable.load(path)

    def panels(self, table: ResultsTable) -> dict[str, pd.DataFrame]:
        """Données de tracé par axe (vide pour un run simple)."""
        frame = table.frame
        if not {"axis", "series", "x"} <= set(frame.columns):
            return {}
        out = {}
        for axis in frame["axis"].dropna().unique():
            sub = ResultsTable(frame[frame["axis"] == axis]).by_cell(["series", "x"])
            renamed = sub.rename(columns={"mean": "y", "std": "y_std"})
            out[str(axis)] = renamed[["x", "y", "y_std", "series"]]
        return out

    def render(self) -> Path:
        """Écrit plot_*.csv, plot_*.png et summary.md ; renvoie le chemin du résumé."""
        table = self.load()
        cells = table.by_cell()
        panels = self.panels(table)
        figures = []
        for axis, data in panels.items():
            data.to_csv(self.results_dir / f"plot_{axis}.csv", index=False, lineterminator="\n")
            figures.append(plot_panel(data, axis, self.results_dir / f"plot_{axis}.png").name)

        summary_json = self.results_dir / "summary.json"
        run_summary: dict[str, Any] = (
            json.loads(summary_json.read_text(encoding="utf-8")) if summary_json.is_file() else {}
        )
        rendered = self.env.get_template(SUMMARY_TEMPLATE).render(
            overview=table.summary(),
            cells=cells.to_dict(orient="records"),
            run=run_summary,
            figures=figures,
        )
        output = self.results_dir / "summary.md"
        output.write_text(rendered, encoding="utf-8")
        logger.info("Résumé écrit : %s", output)
        return output
