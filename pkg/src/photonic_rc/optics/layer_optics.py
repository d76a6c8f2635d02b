# Copyright (c) 2026 Équipe photonic-rc
# Usage interne au projet photonic-rc

"""
Nom du module : optics/layer_optics.py

Description :
Disposition du motif DMD d'une couche : trois régions de colonnes contiguës et
disjointes (entrée | état | biais) et le bloc de lignes (macro-pixels) lu par la
caméra. Le motif de biais est un arrangement pseudo-aléatoire fixe de pixels ON
à la fraction configurée, tiré avec default_rng([bias_seed, indice_couche]).

Utilisé par :
    optics/camera.py
    reservoir/deep_reservoir.py

Auteur : Équipe photonic-rc
"""

from dataclasses import dataclass, field, replace

import numpy as np
from numpy.typing import NDArray

from photonic_rc.encoding.basket import BinaryPattern
from photonic_rc.models.errors import InvalidParameterError, ShapeError


@dataclass(frozen=True, slots=True)
class LayerOptics:
    """Bloc de la matrice et régions du motif DMD pour une couche."""

    row_range: range
    input_cols: range
    state_cols: range
    bias_cols: range
    bias_pattern: BinaryPattern = field(repr=False, compare=False)
    scale: float = 1.0

    @property
    def n_neurons(self) -> int:
        return len(self.row_range)

    @property
    def pattern_width(self) -> int:
        return len(self.input_cols) + len(self.state_cols) + len(self.bias_cols)

    @property
    def col_range(self) -> range:
        """Colonnes pilotées par le motif de la couche (union des trois régions)."""
        return range(self.input_cols.start, self.bias_cols.stop)

    @property
    def bias_on_fraction(self) -> float:
        if len(self.bias_cols) == 0:
            return 0.0
        return float(self.bias_pattern.mean())

    def with_scale(self, scale: float) -> "LayerOptics":
        """Copie figée avec le gain de calibration donné."""
        if not scale > 0.0:
            raise InvalidParameterError(f"Gain de calibration non positif : {scale}")
        return replace(self, scale=float(scale))

    def assemble(self, u_bits: BinaryPattern, x_bits: BinaryPattern) -> BinaryPattern:
        """
        Assemble le motif complet [entrée | état | biais] (lots acceptés).

        Args:
          u_bits: BinaryPattern: bits d'entrée, forme (..., len(input_cols))
          x_bits: BinaryPattern: bits d'état, forme (..., len(state_cols))

        Returns:
          BinaryPattern : forme (..., pattern_width)
        """
        u = np.asarray(u_bits, dtype=np.uint8)
        x = np.asarray(x_bits, dtype=np.uint8)
        if u.shape[-1] != len(self.input_cols):
            raise ShapeError(
                f"Entrée de {u.shape[-1]} bits, la couche en attend {len(self.input_cols)}"
            )
        if x.shape[-1] != len(self.state_cols):
            raise ShapeError(
                f"État de {x.shape[-1]} bits, la couche en attend {len(self.state_cols)}"
            )
        if u.shape[:-1] != x.shape[:-1]:
            raise ShapeError(f"Lots incompatibles : {u.shape[:-1]} vs {x.shape[:-1]}")
        bias = np.broadcast_to(self.bias_pattern, (*u.shape[:-1], len(self.bias_cols)))
        return np.concatenate([u, x, bias], axis=-1)


def make_bias_pattern(
    width: int, fraction: float, bias_seed: int, layer_index: int
) -> BinaryPattern:
    """Motif de biais : round(fraction * width) pixels ON placés aléatoirement."""
    if not 0.0 <= fraction <= 1.0:
        raise InvalidParameterError(f"Fraction de biais hors de [0, 1] : {fraction}")
    n_on = int(np.floor(fraction * width + 0.5))
    rng = np.random.default_rng([bias_seed, layer_index])
    pattern = np.zeros(width, dtype=np.uint8)
    pattern[rng.permutation(width)[:n_on]] = 1
    pattern.setflags(write=False)
    return pattern


def make_layer_optics(
    n_neurons: int,
    input_width: int,
    state_width: int,
    bias_width: int,
    bias_fraction: float,
    bias_seed: int,
    layer_index: int,
) -> LayerOptics:
    """
    Construit la disposition d'une couche : lignes [0, n_neurons), colonnes à partir de 0.

    Args:
      n_neurons: int: nombre de macro-pixels lus (n_l)
      input_width: int: bits d'entrée (dim_entrée * n_bin)
      state_width: int: bits d'état (n_l * n_bin)
      bias_width: int: taille de la région de biais
      bias_fraction: float: fraction ON b^(l)
      bias_seed: int: graine du motif de biais
      layer_index: int: indice de couche (1..L), clé du flux de biais

    Returns:
      LayerOptics (gain 1.0, à calibrer)
    """
    if n_neurons < 1 or input_width < 0 or state_width < 0 or bias_width < 0:
        raise InvalidParameterError(
            f"Disposition invalide : n={n_neurons}, entrée={input_width}, "
            f"état={state_width}, biais={bias_width}"
        )
    input_cols = range(0, input_width)
    state_cols = range(input_width, input_width + state_width)
    bias_cols = range(state_cols.stop, state_cols.stop + bias_width)
    return LayerOptics(
        row_range=range(0, n_neurons),
        input_cols=input_cols,
        state_cols=state_cols,
        bias_cols=bias_cols,
        bias_pattern=make_bias_pattern(bias_width, bias_fraction, bias_seed, layer_index),
    )


def bias_region(patterns: NDArray[np.uint8], layer: LayerOptics) -> NDArray[np.uint8]:
    """Extrait la région de biais d'un motif (ou d'un lot de motifs)."""
    return np.asarray(patterns)[..., layer.bias_cols.start : layer.bias_cols.stop]
