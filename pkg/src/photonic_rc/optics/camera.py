# Copyright (c) 2026 Équipe photonic-rc
# Usage interne au projet photonic-rc

"""
Nom du module : optics/camera.py

Description :
Trajet de la lumière pour une couche : motif binaire → champ complexe
(transformée linéaire par le bloc de matrice) → intensité |champ|² → détection
8 bits à exposition fixe. La calibration fixe l'exposition une fois pour toutes
sur des motifs d'échauffement : le gain est le percentile choisi des intensités
regroupées, de sorte qu'environ (100 - percentile) % des valeurs saturent.

Le champ complexe est exposé par 'field' pour vérifier l'additivité avant la
non-linéarité.

Utilisé par :
    reservoir/deep_reservoir.py
    experiment/engine.py (calibration)

Auteur : Équipe photonic-rc
"""

import logging
from typing import Final

import numpy as np
from numpy.typing import ArrayLike, NDArray

from photonic_rc.encoding.basket import BasketCodec, BinaryPattern
from photonic_rc.encoding.quantize import Quantized8, quantize8
from photonic_rc.models.errors import CalibrationError, InvalidParameterError, ShapeError
from photonic_rc.optics.layer_optics import LayerOptics
from photonic_rc.optics.transmission import TransmissionModel

logger = logging.getLogger(__name__)

MIN_WARMUP_PATTERNS: Final[int] = 32
DEFAULT_PERCENTILE: Final[float] = 99.0
CALIBRATION_STREAM: Final[int] = 1


def _check_pattern(pattern: NDArray[np.uint8], layer: LayerOptics) -> None:
    if pattern.shape[-1] != layer.pattern_width:
        raise ShapeError(
            f"Motif de {pattern.shape[-1]} bits, la couche en pilote {layer.pattern_width}"
        )
    bias = pattern[..., layer.bias_cols.start : layer.bias_cols.stop]
    if not np.array_equal(bias, np.broadcast_to(layer.bias_pattern, bias.shape)):
        raise ShapeError("La région de biais du motif ne correspond pas au motif de la couche")


def field(
    pattern: BinaryPattern, model: TransmissionModel, layer: LayerOptics
) -> NDArray[np.complex128]:
    """
    Champ complexe sur les macro-pixels de la couche : M[lignes, colonnes] @ motif.

    Args:
      pattern: BinaryPattern: motif complet, forme (..., pattern_width)
      model: TransmissionModel
      layer: LayerOptics

    Returns:
      NDArray complexe de forme (..., n_l)
    """
    p = np.asarray(pattern, dtype=np.uint8)
    _check_pattern(p, layer)
    rows = slice(layer.row_range.start, layer.row_range.stop)
    cols = slice(layer.col_range.start, layer.col_range.stop)
    if layer.row_range.stop > model.n_rows_max or layer.col_range.stop > model.n_cols:
        raise ShapeError(
            f"Couche ({layer.row_range.stop} x {layer.col_range.stop}) hors de la matrice "
            f"({model.n_rows_max} x {model.n_cols})"
        )
    pf = p.astype(np.float64)
    re = pf @ model.real[rows, cols].T
    im = pf @ model.imag[rows, cols].T
    return re + 1j * im


def propagate(
    pattern: BinaryPattern, model: TransmissionModel, layer: LayerOptics
) -> NDArray[np.float64]:
    """Intensité |champ|² sur les n_l macro-pixels (toujours >= 0)."""
    f = field(pattern, model, layer)
    return f.real**2 + f.imag**2


def detect(intensity: ArrayLike, scale: float) -> Quantized8:
    """
    Détection caméra 8 bits à exposition fixe : quantize8(intensité / gain).

    Args:
      intensity: ArrayLike: intensités >= 0
      scale: float: gain de calibration > 0

    Returns:
      Quantized8
    """
    if not scale > 0.0:
        raise InvalidParameterError(f"Gain de détection non positif : {scale}")
    return quantize8(np.asarray(intensity, dtype=np.float64) / scale)


def calibrate_scale(
    model: TransmissionModel,
    layer: LayerOptics,
    warmup_patterns: list[BinaryPattern] | NDArray[np.uint8],
    percentile: float = DEFAULT_PERCENTILE,
) -> float:
    """
    Calcule le gain d'exposition d'une couche.

    Args:
      model: TransmissionModel
      layer: LayerOptics
      warmup_patterns: au moins 32 motifs complets
      percentile: float: dans ]50, 100]

    Returns:
      float : percentile des intensités regroupées
    """
    if not 50.0 < percentile <= 100.0:  # noqa: PLR2004
        raise InvalidParameterError(f"Percentile de calibration hors de ]50, 100] : {percentile}")
    patterns = np.asarray(warmup_patterns, dtype=np.uint8)
    if patterns.ndim != 2 or patterns.shape[0] < MIN_WARMUP_PATTERNS:
        raise InvalidParameterError(
            f"Au moins {MIN_WARMUP_PATTERNS} motifs d'échauffement requis "
            f"(reçu {patterns.shape[0] if patterns.ndim else 0})"
        )
    pooled = propagate(patterns, model, layer).reshape(-1)
    if not np.any(pooled > 0.0):
        raise CalibrationError("Intensités d'échauffement toutes nulles : optique dégénérée")
    scale = float(np.percentile(pooled, percentile))
    if not scale > 0.0:
        raise CalibrationError(
            f"Percentile {percentile} des intensités nul : exposition impossible à fixer"
        )
    logger.debug("Calibration : gain=%.6g (percentile %s)", scale, percentile)
    return scale


def warmup_patterns(
    layer: LayerOptics, codec: BasketCodec, count: int, seed: int, layer_index: int = 1
) -> NDArray[np.uint8]:
    """
    Motifs d'échauffement : entrée et état encodés à partir de niveaux uniformes, biais fixe.

    Flux : default_rng([seed, 1, layer_index]), un flux indépendant par couche.

    Args:
      layer: LayerOptics
      codec: BasketCodec
      count: int: nombre de motifs
      seed: int: graine optique de la répétition
      layer_index: int: indice de la couche (1..L)

    Returns:
      NDArray uint8 de forme (count, pattern_width)
    """
    rng = np.random.default_rng([seed, CALIBRATION_STREAM, layer_index])
    n_in = len(layer.input_cols) // codec.n_bin
    n_state = len(layer.state_cols) // codec.n_bin
    u = codec.encode_levels(rng.integers(0, 256, size=(count, n_in), dtype=np.uint8))
    x = codec.encode_levels(rng.integers(0, 256, size=(count, n_state), dtype=np.uint8))
    return layer.assemble(u, x)
