# Copyright (c) 2026 Équipe photonic-rc
# Usage interne au projet photonic-rc

"""
Nom du module : readout/selection.py

Description :
Sélection de lambda par validation croisée k-fold sur les échantillons
d'entraînement (scikit-learn KFold mélangé, graine fixée). Pour chaque fold, le
système est diagonalisé une seule fois (numpy.linalg.eigh) puis résolu pour toute
la grille : W(λ)ᵀ = V diag(1 / (e + λ)) Vᵀ Rᵀ Y, ou la forme duale si N_X > T.

Règle de départage : à précision moyenne égale, le plus GRAND lambda l'emporte.

Utilisé par :
    experiment/engine.py

Auteur : Équipe photonic-rc
"""

from collections.abc import Sequence
import logging

import numpy as np
from numpy.typing import NDArray
from sklearn.model_selection import KFold

from photonic_rc.models.errors import InvalidParameterError, ProtocolError
from photonic_rc.readout.ridge import DesignMatrix, gram

logger = logging.getLogger(__name__)


def _check_grid(grid: Sequence[float], folds: int) -> None:
    if not grid:
        raise InvalidParameterError("Grille de lambda vide")
    if any(v <= 0.0 for v in grid):
        raise InvalidParameterError(f"Grille de lambda non strictement positive : {list(grid)}")
    if any(b <= a for a, b in zip(grid, grid[1:], strict=False)):
        raise InvalidParameterError(f"Grille de lambda non triée : {list(grid)}")
    if folds < 2:  # noqa: PLR2004
        raise InvalidParameterError(f"Au moins 2 folds requis (reçu {folds})")


def fold_accuracies(
    train: DesignMatrix, valid: DesignMatrix, grid: Sequence[float]
) -> NDArray[np.float64]:
    """Précision de validation pour chaque lambda de la grille (une décomposition)."""
    x = np.asarray(train.states, dtype=np.float64)
    y = train.targets
    xv = np.asarray(valid.states, dtype=np.float64)
    truth = np.argmax(valid.targets, axis=1)
    dual = x.shape[1] > x.shape[0]
    if dual:
        evals, vecs = np.linalg.eigh(x @ x.T)
        proj_y = vecs.T @ y
        proj_v = xv @ x.T @ vecs
    else:
        evals, vecs = np.linalg.eigh(gram(x))
        proj_y = vecs.T @ (x.T @ y)
        proj_v = xv @ vecs
    evals = np.clip(evals, 0.0, None)
    scores = np.empty(len(grid), dtype=np.float64)
    for k, lam in enumerate(grid):
        out = proj_v @ (proj_y / (evals + lam)[:, None])
        scores[k] = float(np.mean(np.argmax(out, axis=1) == truth))
    return scores


def select_lambda(
    design: DesignMatrix, grid: Sequence[float], folds: int = 3, seed: int = 0
) -> float:
    """
    Choisit lambda maximisant la précision moyenne de validation.

    Args:
      design: DesignMatrix: échantillons d'entraînement (déjà standardisés le cas échéant)
      grid: Sequence[float]: grille strictement positive et croissante
      folds: int: nombre de folds (>= 2)
      seed: int: graine du mélange KFold

    Returns:
      float : lambda retenu
    """
    _check_grid(grid, folds)
    if design.n_samples < folds:
        raise ProtocolError(
            f"{design.n_samples} échantillons pour {folds} folds de sélection de lambda"
        )
    if len(grid) == 1:
        return float(grid[0])

    splitter = KFold(n_splits=folds, shuffle=True, random_state=seed)
    total = np.zeros(len(grid), dtype=np.float64)
    for train_idx, valid_idx in splitter.split(np.arange(design.n_samples)):
        total += fold_accuracies(design.subset(train_idx), design.subset(valid_idx), grid)
    mean_acc = total / folds

    best = 0
    for k in range(1, len(grid)):
        if mean_acc[k] >= mean_acc[best]:
            best = k
    logger.info(
        "Sélection de lambda : %.3g (précision de validation %.4f)", grid[best], mean_acc[best]
    )
    return float(grid[best])
