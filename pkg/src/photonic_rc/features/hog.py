# Copyright (c) 2026 Équipe photonic-rc
# Usage interne au projet photonic-rc

"""
Nom du module : features/hog.py

Description :
Descripteur HOG (histogrammes de gradients orientés) écrit directement en numpy,
vectorisé sur un lot d'images :

* gradients centrés par filtres [-1, 0, 1], bords complétés par des zéros ;
* orientations non signées sur [0°, 180°) (ou signées sur [0°, 360°)), n bins
  centrés sur k * largeur, vote bilinéaire en angle entre les deux bins voisins
  (avec repli circulaire) pondéré par la norme du gradient ;
* histogrammes par cellule, blocs de block_size x block_size cellules au pas d'une
  cellule, normalisation L2 v / sqrt(‖v‖² + ε²), ε = 1e-6 ;
* blocs concaténés en ordre ligne-major (cellules ligne-major, orientation en dernier).

Utilisé par :
    features/sequences.py

Auteur : Équipe photonic-rc
"""

from dataclasses import dataclass
from typing import Final, Literal

import numpy as np
from numpy.typing import ArrayLike, NDArray

from photonic_rc.models.errors import InvalidParameterError, ShapeError

BLOCK_EPSILON: Final[float] = 1e-6

BlockNorm = Literal["L2"]


@dataclass(frozen=True, slots=True)
class HogParams:
    cell_size: int = 7
    block_size: int = 1
    n_orientations: int = 9
    block_norm: BlockNorm = "L2"
    signed: bool = False

    def __post_init__(self) -> None:
        if self.cell_size < 1 or self.block_size < 1:
            raise InvalidParameterError(
                f"cell_size={self.cell_size} et block_size={self.block_size} doivent être >= 1"
            )
        if self.n_orientations < 2:  # noqa: PLR2004
            raise InvalidParameterError(f"Au moins 2 orientations (reçu {self.n_orientations})")
        if self.block_norm != "L2":
            raise InvalidParameterError(f"Normalisation de bloc inconnue : {self.block_norm}")

    @property
    def angle_range(self) -> float:
        return 360.0 if self.signed else 180.0

    def grid(self, height: int, width: int) -> tuple[int, int]:
        """Nombre de cellules (lignes, colonnes) ; ShapeError si incompatible."""
        if height % self.cell_size or width % self.cell_size:
            raise ShapeError(
                f"Image {height}x{width} non divisible par la cellule {self.cell_size}"
            )
        cells = (height // self.cell_size, width // self.cell_size)
        if cells[0] < self.block_size or cells[1] < self.block_size:
            raise ShapeError(
                f"Grille de blocs vide : {cells[0]}x{cells[1]} cellules, bloc {self.block_size}"
            )
        return cells

    def descriptor_length(self, height: int, width: int) -> int:
        ch, cw = self.grid(height, width)
        n_blocks = (ch - self.block_size + 1) * (cw - self.block_size + 1)
        return n_blocks * self.block_size**2 * self.n_orientations


def _as_batch(images: ArrayLike) -> NDArray[np.float64]:
    x = np.asarray(images, dtype=np.float64)
    if x.ndim == 2:  # noqa: PLR2004
        return x[None, ...]
    if x.ndim != 3:  # noqa: PLR2004
        raise ShapeError(f"Image 2D ou lot 3D attendu, reçu {x.shape}")
    return x


def gradients(images: ArrayLike) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    """(gx, gy) par différences centrées, bords à zéro ; forme (N, H, W)."""
    x = _as_batch(images)
    padded = np.pad(x, ((0, 0), (1, 1), (1, 1)))
    gx = padded[:, 1:-1, 2:] - padded[:, 1:-1, :-2]
    gy = padded[:, 2:, 1:-1] - padded[:, :-2, 1:-1]
    return gx, gy


def cell_histograms(images: ArrayLike, params: HogParams) -> NDArray[np.float64]:
    """
    Histogrammes d'orientation non normalisés par cellule.

    Args:
      images: ArrayLike: image (H, W) ou lot (N, H, W)
      params: HogParams

    Returns:
      NDArray de forme (N, cellules_y, cellules_x, n_orientations)
    """
    x = _as_batch(images)
    n, height, width = x.shape
    ch, cw = params.grid(height, width)
    gx, gy = gradients(x)
    magnitude = np.hypot(gx, gy)
    angle = np.mod(np.degrees(np.arctan2(gy, gx)), params.angle_range)

    nb = params.n_orientations
    position = angle / (params.angle_range / nb)
    lower = np.floor(position)
    frac = position - lower
    lo = lower.astype(np.int64) % nb
    hi = (lo + 1) % nb

    votes = np.zeros((n, height, width, nb), dtype=np.float64)
    np.put_along_axis(votes, lo[..., None], (magnitude * (1.0 - frac))[..., None], axis=-1)
    upper = np.take_along_axis(votes, hi[..., None], axis=-1)
    np.put_along_axis(votes, hi[..., None], upper + (magnitude * frac)[..., None], axis=-1)

    cs = params.cell_size
    return votes.reshape(n, ch, cs, cw, cs, nb).sum(axis=(2, 4))


def hog_batch(images: ArrayLike, params: HogParams) -> NDArray[np.float64]:
    """Descripteurs HOG d'un lot d'images, forme (N, descriptor_length)."""
    cells = cell_histograms(images, params)
    n, ch, cw, _ = cells.shape
    b = params.block_size
    blocks = []
    for by in range(ch - b + 1):
        for bx in range(cw - b + 1):
            v = cells[:, by : by + b, bx : bx + b, :].reshape(n, -1)
            norm = np.sqrt(np.sum(v * v, axis=1, keepdims=True) + BLOCK_EPSILON**2)
            blocks.append(v / norm)
    return np.concatenate(blocks, axis=1)


def hog(image: ArrayLike, params: HogParams | None = None) -> NDArray[np.float64]:
    """
    Descripteur HOG d'une image en niveaux de gris dans [0, 1].

    Args:
      image: ArrayLike: matrice (H, W)
      params: HogParams: défaut cellule 7, bloc 1, 9 orientations non signées

    Returns:
      NDArray 1D de longueur params.descriptor_length(H, W)
    """
    x = np.asarray(image, dtype=np.float64)
    if x.ndim != 2:  # noqa: PLR2004
        raise ShapeError(f"Image 2D attendue, reçu {x.shape}")
    return hog_batch(x, params or HogParams())[0]
