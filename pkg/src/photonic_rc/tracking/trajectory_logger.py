# Copyright (c) 2026 Équipe photonic-rc
# Usage interne au projet photonic-rc

"""
Nom du module : tracking/trajectory_logger.py

Description :
Vidage de la trajectoire d'état du réservoir (niveaux 8 bits par pas, par couche
et par neurone) en CSV long : step,layer,neuron,level. Se branche comme rappel
'on_step' de DeepReservoir.run_batch.

Utilisé par :
    experiment/engine.py

Auteur : Équipe photonic-rc
"""

from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
import pandas as pd

from photonic_rc.reservoir.deep_reservoir import ReservoirState


@dataclass
class TrajectoryRecorder:
    """Mémorise les niveaux de la ligne 'row' d'un lot à chaque pas."""

    row: int = 0
    steps: list[list[np.ndarray]] = field(default_factory=list)

    def __call__(self, step: int, state: ReservoirState) -> None:
        levels = [np.array(r[self.row] if r.ndim > 1 else r, copy=True) for r in state.levels]
        self.steps.append(levels)

    def to_frame(self) -> pd.DataFrame:
        records = [
            (t, layer + 1, neuron, int(level))
            for t, layers in enumerate(self.steps)
            for layer, levels in enumerate(layers)
            for neuron, level in enumerate(levels)
        ]
        return pd.DataFrame(records, columns=["step", "layer", "neuron", "level"])

    def write_csv(self, path: str | Path) -> Path:
        target = Path(path)
        target.parent.mkdir(parents=True, exist_ok=True)
        self.to_frame().to_csv(target, index=False, lineterminator="\n")
        return target
