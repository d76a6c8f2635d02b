# Copyright (c) 2026 Équipe photonic-rc
# Usage interne au projet photonic-rc

"""
Nom du module : encoding/quantize.py

Description :
Quantification 8 bits des intensités détectées et des états du réservoir.
La troncature à [0, 1] modélise la saturation de la caméra ; l'arrondi est
« demi vers le haut » pour rester identique d'une implémentation à l'autre.

Utilisé par :
    optics/camera.py (détection)
    reservoir/deep_reservoir.py (stockage 8 bits de l'état)

Auteur : Équipe photonic-rc
"""

from typing import Final, TypeAlias

import numpy as np
from numpy.typing import ArrayLike, NDArray

# Niveaux entiers dans [0, 255] ; la valeur réelle implicite est level / 255.
Quantized8: TypeAlias = NDArray[np.uint8]

LEVELS: Final[int] = 255


def quantize8(values: ArrayLike) -> Quantized8:
    """
    Quantifie des réels sur 8 bits.

    level = floor(clip(v, 0, 1) * 255 + 1/2). Les NaN sont traités comme un pixel noir.

    Args:
      values: ArrayLike:
        Valeurs réelles, de forme quelconque.

    Returns:
      Quantized8 : niveaux uint8 de même forme.
    """
    v = np.nan_to_num(np.asarray(values, dtype=np.float64), nan=0.0, posinf=1.0, neginf=0.0)
    clipped = np.clip(v, 0.0, 1.0)
    return np.floor(clipped * LEVELS + 0.5).astype(np.uint8)


def dequantize8(levels: ArrayLike) -> NDArray[np.float64]:
    """Renvoie level / 255 en double précision."""
    return np.asarray(levels, dtype=np.float64) / LEVELS
