# Copyright (c) 2026 Équipe photonic-rc
# Usage interne au projet photonic-rc

"""
Nom du module : orchestrator/grid_scanner.py

Description :
Construit les cellules d'un balayage d'ablation. Chaque cellule est un jeu de
surcharges de la section 'reservoir' appliqué à la configuration de base, avec
ses coordonnées de tracé (série, x).

Axes :
  allocation-strategy : decreasing / uniform / increasing        x = profondeur 2..5
  leakage-config      : décroissant 0.95→0.65, croissant 0.65→0.95,
                        fixe 0.65, fixe 0.95                     x = profondeur 2..5
  bias-profile        : uniform / mild-increasing                x = profondeur 2..5
  depth-vs-shallow    : L = 1 (alpha 0.95), 3, 5                 x = budget N
Pour les trois premiers axes, le budget suit la règle N = 100 x L.

Utilisé par :
    orchestrator/sweep.py

Auteur : Équipe photonic-rc
"""

from dataclasses import dataclass
from typing import Any, Final, Literal

from photonic_rc.models.errors import InvalidParameterError

SweepAxis = Literal["allocation-strategy", "leakage-config", "bias-profile", "depth-vs-shallow"]

AXES: Final[tuple[str, ...]] = (
    "allocation-strategy",
    "leakage-config",
    "bias-profile",
    "depth-vs-shallow",
)
DEFAULT_DEPTHS: Final[tuple[int, ...]] = (2, 3, 4, 5)
DEFAULT_BUDGETS: Final[tuple[int, ...]] = (200, 300, 400, 500)
DEFAULT_SHALLOW_DEPTHS: Final[tuple[int, ...]] = (1, 3, 5)
NEURONS_PER_LAYER: Final[int] = 100
SHALLOW_ALPHA: Final[float] = 0.95

LEAKAGE_CONFIGS: Final[dict[str, tuple[float, float]]] = {
    "decreasing": (0.95, 0.65),
    "increasing": (0.65, 0.95),
    "fixed-0.65": (0.65, 0.65),
    "fixed-0.95": (0.95, 0.95),
}
ALLOCATIONS: Final[tuple[str, ...]] = ("decreasing", "uniform", "increasing")
BIAS_PROFILES: Final[tuple[str, ...]] = ("uniform", "mild-increasing")


@dataclass(frozen=True)
class SweepCell:
    axis: str
    series: str
    x: int
    overrides: dict[str, Any]

    @property
    def name(self) -> str:
        label = "N" if self.axis == "depth-vs-shallow" else "L"
        return f"{self.axis}:{self.series}:{label}={self.x}"


class GridScanner:
    """Énumère les cellules d'un axe, dans un ordre déterministe (série puis x)."""

    def __init__(self, axis: str, grid: dict[str, list[Any]] | None = None) -> None:
        """
        Args:
          axis: str:
            Axe du balayage
          grid: dict | None:
            Surcharges de grille : "depths", "budgets", "series"
        """
        if axis not in AXES:
            raise InvalidParameterError(f"Axe de balayage inconnu : {axis} (choix : {list(AXES)})")
        self.axis = axis
        self.grid = grid or {}

    def _depths(self, default: tuple[int, ...]) -> list[int]:
        return [int(d) for d in self.grid.get("depths", default)]

    def _series(self, default: tuple[str, ...]) -> list[str]:
        series = [str(s) for s in self.grid.get("series", default)]
        unknown = [s for s in series if s not in default]
        if unknown:
            raise InvalidParameterError(f"Séries inconnues pour {self.axis} : {unknown}")
        return series

    def get_cells(self) -> list[SweepCell]:
        if self.axis == "depth-vs-shallow":
            return self._depth_vs_shallow()
        cells = []
        if self.axis == "allocation-strategy":
            series = self._series(ALLOCATIONS)
        elif self.axis == "leakage-config":
            series = self._series(tuple(LEAKAGE_CONFIGS))
        else:
            series = self._series(BIAS_PROFILES)
        for name in series:
            for depth in self._depths(DEFAULT_DEPTHS):
                overrides: dict[str, Any] = {
                    "depth": depth,
                    "budget_rule": "per-layer",
                    "neurons_per_layer": NEURONS_PER_LAYER,
                }
                if self.axis == "allocation-strategy":
                    overrides["allocation"] = name
                elif self.axis == "leakage-config":
                    first, last = LEAKAGE_CONFIGS[name]
                    overrides["alpha_first"] = first
                    overrides["alpha_last"] = last
                else:
                    overrides["bias_profile"] = name
                cells.append(SweepCell(self.axis, name, depth, overrides))
        return cells

    def _depth_vs_shallow(self) -> list[SweepCell]:
        cells = []
        budgets = [int(b) for b in self.grid.get("budgets", DEFAULT_BUDGETS)]
        for depth in self._depths(DEFAULT_SHALLOW_DEPTHS):
            for budget in budgets:
                overrides: dict[str, Any] = {
                    "depth": depth,
                    "budget_rule": "fixed",
                    "total_neurons": budget,
                }
                if depth == 1:
                    overrides["alpha_first"] = SHALLOW_ALPHA
                    overrides["alpha_last"] = SHALLOW_ALPHA
                cells.append(SweepCell(self.axis, f"L={depth}", budget, overrides))
        return cells
