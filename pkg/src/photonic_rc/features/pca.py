# Copyright (c) 2026 Équipe photonic-rc
# Usage interne au projet photonic-rc

"""
Nom du module : features/pca.py

Description :
Analyse en composantes principales par SVD des données centrées (numpy).
Convention de signe déterministe : la composante de plus grande valeur absolue de
chaque axe est positive. L'ajustement ne consomme que les lignes d'entraînement.

Utilisé par :
    features/sequences.py

Auteur : Équipe photonic-rc
"""

from dataclasses import dataclass
import logging

import numpy as np
from numpy.typing import ArrayLike, NDArray

from photonic_rc.models.errors import InvalidParameterError, ShapeError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PcaModel:
    """Moyenne (d), composantes orthonormées (k x d), variances expliquées (k)."""

    mean: NDArray[np.float64]
    components: NDArray[np.float64]
    explained_variance: NDArray[np.float64]
    total_variance: float

    @property
    def k(self) -> int:
        return int(self.components.shape[0])

    @property
    def n_features(self) -> int:
        return int(self.components.shape[1])

    @property
    def explained_variance_ratio(self) -> NDArray[np.float64]:
        if self.total_variance <= 0.0:
            return np.zeros_like(self.explained_variance)
        return self.explained_variance / self.total_variance


def pca_fit(samples: ArrayLike, k: int) -> PcaModel:
    """
    Ajuste une PCA à k composantes.

    Args:
      samples: ArrayLike: matrice (échantillons x d)
      k: int: 1 <= k <= min(échantillons, d)

    Returns:
      PcaModel
    """
    x = np.asarray(samples, dtype=np.float64)
    if x.ndim != 2:  # noqa: PLR2004
        raise ShapeError(f"Matrice (échantillons x d) attendue, reçu {x.shape}")
    n, d = x.shape
    if not 1 <= k <= min(n, d):
        raise InvalidParameterError(f"k={k} hors de [1, min({n}, {d})]")
    mean = x.mean(axis=0)
    _, singular, vt = np.linalg.svd(x - mean, full_matrices=False)
    components = vt[:k].copy()
    pivots = np.argmax(np.abs(components), axis=1)
    signs = np.sign(components[np.arange(k), pivots])
    components *= np.where(signs < 0.0, -1.0, 1.0)[:, None]
    dof = max(n - 1, 1)
    variances = singular**2 / dof
    model = PcaModel(
        mean=mean,
        components=components,
        explained_variance=variances[:k].copy(),
        total_variance=float(variances.sum()),
    )
    logger.debug(
        "PCA : k=%s sur %s x %s, variance expliquée %.3f",
        k,
        n,
        d,
        float(model.explained_variance_ratio.sum()),
    )
    return model


def pca_transform(model: PcaModel, x: ArrayLike) -> NDArray[np.float64]:
    """Projection sur les k composantes ; accepte un vecteur ou une matrice."""
    v = np.asarray(x, dtype=np.float64)
    if v.shape[-1] != model.n_features:
        raise ShapeError(f"Dimension {v.shape[-1]}, la PCA attend {model.n_features}")
    return (v - model.mean) @ model.components.T


def pca_inverse(model: PcaModel, z: ArrayLike) -> NDArray[np.float64]:
    """Reconstruction dans l'espace d'origine."""
    c = np.asarray(z, dtype=np.float64)
    if c.shape[-1] != model.k:
        raise ShapeError(f"Dimension {c.shape[-1]}, la PCA a {model.k} composantes")
    return c @ model.components + model.mean
