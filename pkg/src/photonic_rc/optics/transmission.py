# Copyright (c) 2026 Équipe photonic-rc
# Usage interne au projet photonic-rc

"""
Nom du module : optics/transmission.py

Description :
Modèle numérique du diffuseur : une matrice complexe dense dont les entrées sont
des gaussiennes complexes circulaires de variance unité. Une seule matrice est
partagée par toutes les couches (même diffuseur physique) ; chaque couche en
utilise un bloc de lignes et de colonnes.

Flux aléatoire : Generator(PCG64(seed)), parties réelles tirées d'abord
(standard_normal de forme (lignes, colonnes)), puis parties imaginaires, le tout
divisé par racine de 2. La matrice n'est jamais sérialisée : seules les
métadonnées (seed, dimensions) le sont, et la matrice est régénérée.

Utilisé par :
    optics/camera.py
    reservoir/deep_reservoir.py
    experiment/engine.py

Auteur : Équipe photonic-rc
"""

from dataclasses import dataclass, field
import logging
import math
from typing import Any, Final

import numpy as np
from numpy.typing import NDArray

from photonic_rc.models.errors import FormatError, InvalidParameterError, ResourceError

logger = logging.getLogger(__name__)

DEFAULT_MAX_ELEMENTS: Final[int] = 50_000_000  # ~800 Mo en double précision (réel + imaginaire)
PRNG_NAME: Final[str] = "numpy.PCG64"


@dataclass(frozen=True, slots=True)
class TransmissionModel:
    """Matrice de transmission complexe, déterminée par (seed, n_rows_max, n_cols)."""

    seed: int
    n_rows_max: int
    n_cols: int
    real: NDArray[np.float64] = field(repr=False, compare=False)
    imag: NDArray[np.float64] = field(repr=False, compare=False)

    @property
    def matrix(self) -> NDArray[np.complex128]:
        """Matrice complexe reconstituée (copie)."""
        return self.real + 1j * self.imag

    def metadata(self) -> dict[str, Any]:
        """Métadonnées persistables (la matrice elle-même est toujours régénérée)."""
        return {
            "prng": PRNG_NAME,
            "seed": self.seed,
            "n_rows_max": self.n_rows_max,
            "n_cols": self.n_cols,
        }


def build_transmission(
    seed: int,
    n_rows_max: int,
    n_cols: int,
    max_elements: int = DEFAULT_MAX_ELEMENTS,
) -> TransmissionModel:
    """
    Tire la matrice de transmission.

    Args:
      seed: int: graine 64 bits du flux PCG64
      n_rows_max: int: nombre de lignes (macro-pixels) disponibles
      n_cols: int: largeur totale du motif DMD en bits
      max_elements: int: plafond mémoire, en nombre d'entrées complexes

    Returns:
      TransmissionModel
    """
    if n_rows_max < 1 or n_cols < 1:
        raise InvalidParameterError(
            f"Dimensions de transmission invalides : {n_rows_max} x {n_cols}"
        )
    n_elements = n_rows_max * n_cols
    if n_elements > max_elements:
        raise ResourceError(
            f"Matrice {n_rows_max} x {n_cols} ({n_elements} entrées) au-delà du plafond "
            f"de {max_elements} entrées"
        )

    rng = np.random.Generator(np.random.PCG64(seed))
    inv_sqrt2 = 1.0 / math.sqrt(2.0)
    real = rng.standard_normal((n_rows_max, n_cols)) * inv_sqrt2
    imag = rng.standard_normal((n_rows_max, n_cols)) * inv_sqrt2
    real.setflags(write=False)
    imag.setflags(write=False)
    logger.debug("Transmission générée : seed=%s, %s x %s", seed, n_rows_max, n_cols)
    return TransmissionModel(seed=seed, n_rows_max=n_rows_max, n_cols=n_cols, real=real, imag=imag)


def transmission_from_metadata(
    meta: dict[str, Any], max_elements: int = DEFAULT_MAX_ELEMENTS
) -> TransmissionModel:
    """Régénère une matrice depuis ses métadonnées persistées."""
    if meta.get("prng") != PRNG_NAME:
        raise FormatError(f"Générateur inconnu dans les métadonnées : {meta.get('prng')!r}")
    try:
        return build_transmission(
            int(meta["seed"]), int(meta["n_rows_max"]), int(meta["n_cols"]), max_elements
        )
    except KeyError as exc:
        raise FormatError(f"Métadonnée de transmission manquante : {exc}") from exc
