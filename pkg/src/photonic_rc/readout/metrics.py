# Copyright (c) 2026 Équipe photonic-rc
# Usage interne au projet photonic-rc

"""
Nom du module : readout/metrics.py

Description :
Prédiction par argmax des sorties linéaires (égalité → plus petit indice de classe),
précision et matrice de confusion (lignes = vraie classe, colonnes = prédite).

Utilisé par :
    experiment/engine.py
    experiment/report.py

Auteur : Équipe photonic-rc
"""

from collections.abc import Sequence
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from numpy.typing import ArrayLike, NDArray
import pandas as pd

from photonic_rc.models.errors import ShapeError
from photonic_rc.readout.ridge import DesignMatrix, Label, ReadoutModel


@dataclass(frozen=True)
class ConfusionMatrix:
    labels: tuple[Label, ...]
    counts: NDArray[np.int64]

    def __post_init__(self) -> None:
        n = len(self.labels)
        if self.counts.shape != (n, n):
            raise ShapeError(f"Matrice de confusion {self.counts.shape} pour {n} classes")

    @classmethod
    def empty(cls, labels: Sequence[Label]) -> "ConfusionMatrix":
        n = len(labels)
        return cls(tuple(labels), np.zeros((n, n), dtype=np.int64))

    @classmethod
    def from_pairs(
        cls, labels: Sequence[Label], truth: Sequence[Label], predicted: Sequence[Label]
    ) -> "ConfusionMatrix":
        index = {label: k for k, label in enumerate(labels)}
        counts = np.zeros((len(labels), len(labels)), dtype=np.int64)
        for t, p in zip(truth, predicted, strict=True):
            counts[index[t], index[p]] += 1
        return cls(tuple(labels), counts)

    @property
    def total(self) -> int:
        return int(self.counts.sum())

    @property
    def correct(self) -> int:
        return int(np.trace(self.counts))

    @property
    def accuracy(self) -> float:
        """trace / total (0.0 pour une matrice vide)."""
        return self.correct / self.total if self.total else 0.0

    def __add__(self, other: "ConfusionMatrix") -> "ConfusionMatrix":
        if self.labels != other.labels:
            raise ShapeError("Matrices de confusion sur des classes différentes")
        return ConfusionMatrix(self.labels, self.counts + other.counts)

    def to_frame(self) -> pd.DataFrame:
        names = [str(label) for label in self.labels]
        frame = pd.DataFrame(self.counts, index=names, columns=names)
        frame.index.name = "true\\predicted"
        return frame

    def write_csv(self, path: str | Path) -> None:
        self.to_frame().to_csv(path, lineterminator="\n")


def predict_batch(model: ReadoutModel, states: ArrayLike) -> list[Label]:
    """Classe de sortie maximale pour chaque ligne de 'states'."""
    x = np.asarray(states, dtype=np.float64)
    if x.ndim != 2:  # noqa: PLR2004
        raise ShapeError(f"Lot d'états attendu en 2D, reçu {x.shape}")
    winners = np.argmax(model.outputs(x), axis=1)
    return [model.class_labels[k] for k in winners]


def predict(model: ReadoutModel, state_vector: ArrayLike) -> Label:
    """Étiquette prédite pour un seul vecteur de lecture."""
    x = np.asarray(state_vector, dtype=np.float64)
    if x.ndim != 1:
        raise ShapeError(f"Vecteur d'état attendu en 1D, reçu {x.shape}")
    return predict_batch(model, x[None, :])[0]


def score(model: ReadoutModel, design: DesignMatrix) -> tuple[float, ConfusionMatrix]:
    """Précision et matrice de confusion de 'model' sur 'design'."""
    if design.class_labels != model.class_labels:
        raise ShapeError(
            f"Classes du jeu {design.class_labels} et du modèle {model.class_labels} différentes"
        )
    confusion = ConfusionMatrix.from_pairs(
        model.class_labels, design.labels, predict_batch(model, design.states)
    )
    return confusion.accuracy, confusion
