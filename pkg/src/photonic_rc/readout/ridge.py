# Copyright (c) 2026 Équipe photonic-rc
# Usage interne au projet photonic-rc

"""
Nom du module : readout/ridge.py

Description :
Couche de sortie linéaire : régression ridge en forme close,

    W = Y Rᵀ (R Rᵀ + λ I)^-1

résolue par factorisation de Cholesky (scipy) de la matrice symétrique, jamais par
inversion explicite. Les états sont rangés « un échantillon par ligne » (T x N_X) :
la matrice R des équations est donc la transposée de 'states'.

Quand N_X > T (KTH : 10000 neurones pour ~450 séquences d'entraînement), la forme
duale équivalente W = Y (Rᵀ R + λ I)^-1 Rᵀ est résolue à la place (système T x T).

La standardisation (moyenne / écart-type par neurone, estimés sur l'entraînement
seulement) est stockée dans le modèle et réappliquée à la prédiction.

Utilisé par :
    readout/selection.py
    readout/metrics.py
    experiment/engine.py

Auteur : Équipe photonic-rc
"""

from collections.abc import Sequence
from dataclasses import dataclass, field
import logging
from typing import Final

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy.linalg import LinAlgError, cho_factor, cho_solve

from photonic_rc.models.errors import IllConditionedError, InvalidParameterError, ShapeError

logger = logging.getLogger(__name__)

Label = int | str

GRAM_CHUNK: Final[int] = 2048
# cond(R Rᵀ) ~ (max/min des pivots de Cholesky)² ; au-delà de 1e14 on refuse lambda = 0
MIN_PIVOT_RATIO: Final[float] = 1e-7
# Écart-type relatif sous lequel un neurone est considéré constant
STD_FLOOR: Final[float] = 1e-12


def one_hot(labels: Sequence[Label], class_labels: Sequence[Label]) -> NDArray[np.float64]:
    """Cibles one-hot (T x N_Y) dans l'ordre de class_labels."""
    index = {label: k for k, label in enumerate(class_labels)}
    targets = np.zeros((len(labels), len(class_labels)), dtype=np.float64)
    for t, label in enumerate(labels):
        if label not in index:
            raise ShapeError(f"Étiquette {label!r} absente des classes {list(class_labels)}")
        targets[t, index[label]] = 1.0
    return targets


@dataclass(frozen=True)
class DesignMatrix:
    """États de lecture (T x N_X) et cibles one-hot (T x N_Y)."""

    states: NDArray[np.floating]
    targets: NDArray[np.float64]
    class_labels: tuple[Label, ...]

    def __post_init__(self) -> None:
        if self.states.ndim != 2 or self.targets.ndim != 2:  # noqa: PLR2004
            raise ShapeError("states et targets doivent être des matrices")
        if self.states.shape[0] < 1:
            raise ShapeError("Au moins un échantillon est requis (T >= 1)")
        if self.states.shape[0] != self.targets.shape[0]:
            raise ShapeError(
                f"{self.states.shape[0]} états pour {self.targets.shape[0]} cibles"
            )
        if self.targets.shape[1] != len(self.class_labels):
            raise ShapeError(
                f"{self.targets.shape[1]} sorties pour {len(self.class_labels)} classes"
            )
        if not np.all(self.targets.sum(axis=1) == 1.0) or not np.all(
            (self.targets == 0.0) | (self.targets == 1.0)
        ):
            raise ShapeError("Chaque cible doit contenir exactement un 1")

    @classmethod
    def from_labels(
        cls,
        states: ArrayLike,
        labels: Sequence[Label],
        class_labels: Sequence[Label] | None = None,
    ) -> "DesignMatrix":
        classes = tuple(class_labels) if class_labels is not None else tuple(sorted(set(labels)))
        return cls(
            states=np.asarray(states),
            targets=one_hot(labels, classes),
            class_labels=classes,
        )

    @property
    def n_samples(self) -> int:
        return int(self.states.shape[0])

    @property
    def n_features(self) -> int:
        return int(self.states.shape[1])

    @property
    def labels(self) -> list[Label]:
        return [self.class_labels[k] for k in np.argmax(self.targets, axis=1)]

    def subset(self, rows: ArrayLike) -> "DesignMatrix":
        idx = np.asarray(rows, dtype=np.int64)
        return DesignMatrix(self.states[idx], self.targets[idx], self.class_labels)

    def with_states(self, states: ArrayLike) -> "DesignMatrix":
        """Mêmes cibles, états remplacés (ex. standardisés)."""
        return DesignMatrix(np.asarray(states, dtype=np.float64), self.targets, self.class_labels)


@dataclass(frozen=True)
class Standardizer:
    """Transformée affine par neurone : (x - mean) / scale ; écart nul → scale 1."""

    mean: NDArray[np.float64]
    scale: NDArray[np.float64]

    @classmethod
    def fit(cls, states: ArrayLike) -> "Standardizer":
        x = np.asarray(states, dtype=np.float64)
        mean = x.mean(axis=0)
        std = x.std(axis=0)
        scale = np.where(std > STD_FLOOR * np.maximum(1.0, np.abs(mean)), std, 1.0)
        return cls(mean=mean, scale=scale)

    @classmethod
    def identity(cls, n_features: int) -> "Standardizer":
        return cls(mean=np.zeros(n_features), scale=np.ones(n_features))

    def transform(self, states: ArrayLike) -> NDArray[np.float64]:
        x = np.asarray(states, dtype=np.float64)
        if x.shape[-1] != self.mean.shape[0]:
            raise ShapeError(
                f"Vecteur d'état de dimension {x.shape[-1]}, attendu {self.mean.shape[0]}"
            )
        return (x - self.mean) / self.scale


@dataclass(frozen=True)
class ReadoutModel:
    """W_out (N_Y x N_X), lambda, classes ordonnées, standardisation éventuelle."""

    weights: NDArray[np.float64]
    lam: float
    class_labels: tuple[Label, ...]
    standardizer: Standardizer | None = field(default=None)

    def __post_init__(self) -> None:
        if self.weights.shape[0] != len(self.class_labels):
            raise ShapeError(
                f"W_out a {self.weights.shape[0]} lignes pour {len(self.class_labels)} classes"
            )
        if self.standardizer is not None and self.standardizer.mean.shape[0] != self.n_features:
            raise ShapeError("Standardisation et W_out de dimensions différentes")

    @property
    def n_features(self) -> int:
        return int(self.weights.shape[1])

    def outputs(self, states: ArrayLike) -> NDArray[np.float64]:
        """Sorties linéaires y = W_out R (une ligne par échantillon)."""
        x = np.asarray(states, dtype=np.float64)
        if x.shape[-1] != self.n_features:
            raise ShapeError(
                f"Vecteur d'état de dimension {x.shape[-1]}, attendu {self.n_features}"
            )
        if self.standardizer is not None:
            x = self.standardizer.transform(x)
        return x @ self.weights.T


def gram(states: ArrayLike, chunk: int = GRAM_CHUNK) -> NDArray[np.float64]:
    """R Rᵀ = Σ_t r_t r_tᵀ en double précision, par blocs d'échantillons."""
    x = np.asarray(states)
    out = np.zeros((x.shape[1], x.shape[1]), dtype=np.float64)
    for start in range(0, x.shape[0], chunk):
        block = np.asarray(x[start : start + chunk], dtype=np.float64)
        out += block.T @ block
    return out


def _cholesky(a: NDArray[np.float64], lam: float) -> tuple[NDArray[np.float64], bool]:
    try:
        factor = cho_factor(a, lower=False, check_finite=True)
    except LinAlgError as exc:
        raise IllConditionedError(lam, "matrice non définie positive") from exc
    pivots = np.abs(np.diag(factor[0]))
    if lam == 0.0 and pivots.min() < MIN_PIVOT_RATIO * pivots.max():
        raise IllConditionedError(
            lam, f"rapport des pivots {pivots.min() / pivots.max():.3g} < {MIN_PIVOT_RATIO}"
        )
    return factor


def train_ridge(design: DesignMatrix, lam: float) -> ReadoutModel:
    """
    Entraîne W_out par ridge en forme close (sans standardisation).

    Args:
      design: DesignMatrix
      lam: float: régularisation >= 0

    Returns:
      ReadoutModel
    """
    if not lam >= 0.0:
        raise InvalidParameterError(f"lambda doit être >= 0 (reçu {lam})")
    x = np.asarray(design.states, dtype=np.float64)
    y = design.targets
    n_samples, n_features = x.shape
    if n_features > n_samples and lam > 0.0:
        kernel = x @ x.T
        kernel[np.diag_indices_from(kernel)] += lam
        alpha = cho_solve(_cholesky(kernel, lam), y)
        weights_t = x.T @ alpha
    else:
        a = gram(x)
        a[np.diag_indices_from(a)] += lam
        weights_t = cho_solve(_cholesky(a, lam), x.T @ y)
    logger.debug("Ridge : lambda=%.3g, N_X=%s, T=%s", lam, n_features, n_samples)
    return ReadoutModel(
        weights=np.ascontiguousarray(weights_t.T), lam=float(lam), class_labels=design.class_labels
    )


def fit_readout(design: DesignMatrix, lam: float, standardize: bool = True) -> ReadoutModel:
    """Standardise (statistiques de 'design' uniquement) puis entraîne la ridge."""
    if not standardize:
        return train_ridge(design, lam)
    standardizer = Standardizer.fit(design.states)
    scaled = design.with_states(standardizer.transform(design.states))
    raw = train_ridge(scaled, lam)
    return ReadoutModel(
        weights=raw.weights, lam=raw.lam, class_labels=raw.class_labels, standardizer=standardizer
    )


def stationarity_residual(model: ReadoutModel, design: DesignMatrix) -> tuple[float, float]:
    """
    Résidu des équations normales ‖W(RRᵀ + λI) - YRᵀ‖_max et l'échelle ‖YRᵀ‖_max.

    Calculé dans l'espace standardisé si le modèle l'est.
    """
    x = np.asarray(design.states, dtype=np.float64)
    if model.standardizer is not None:
        x = model.standardizer.transform(x)
    a = gram(x)
    a[np.diag_indices_from(a)] += model.lam
    yr = design.targets.T @ x
    return float(np.max(np.abs(model.weights @ a - yr))), float(np.max(np.abs(yr)))
