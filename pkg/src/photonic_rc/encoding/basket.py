# Copyright (c) 2026 Équipe photonic-rc
# Usage interne au projet photonic-rc

"""
Nom du module : encoding/basket.py

Description :
Encodage « panier » : chaque scalaire de [0, 1] est projeté sur n_bin bits qui
valent 1 lorsque la valeur tombe dans la fenêtre fermée [c_i - s, c_i + s].
Deux valeurs proches partagent la plupart de leurs bits (petite distance de
Hamming), deux valeurs éloignées se décorrèlent.

Les centres et la demi-largeur sont des rationnels exacts. Les bornes sont
converties une fois pour toutes en seuils flottants dirigés (plus petit flottant
supérieur ou égal à la borne basse, plus grand flottant inférieur ou égal à la
borne haute) : la comparaison d'un flottant à ces seuils est alors exactement la
comparaison au rationnel, sans ambiguïté aux bords des fenêtres.

Utilisé par :
    reservoir/deep_reservoir.py (entrée et état de chaque couche)
    optics/camera.py (motifs de calibration)
    controller/execution.py (sous-commande encode)

Auteur : Équipe photonic-rc
"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import TypeAlias

import numpy as np
from numpy.typing import ArrayLike, NDArray

from photonic_rc.encoding.quantize import LEVELS
from photonic_rc.models.errors import EncodingDomainError, InvalidParameterError, ShapeError

# Suite ordonnée de bits {0, 1} ; la longueur d'un encodage vectoriel vaut n_scalaires * n_bin.
BinaryPattern: TypeAlias = NDArray[np.uint8]

MIN_BINS = 2


def _ceil_float(value: Fraction) -> float:
    """Plus petit flottant double >= value."""
    f = float(value)
    if Fraction(f) < value:
        f = float(np.nextafter(f, np.inf))
    return f


def _floor_float(value: Fraction) -> float:
    """Plus grand flottant double <= value."""
    f = float(value)
    if Fraction(f) > value:
        f = float(np.nextafter(f, -np.inf))
    return f


@dataclass(frozen=True, slots=True)
class BasketCodec:
    """Encodeur panier : n_bin bits par scalaire, centres c_i et demi-largeur s exacts."""

    n_bin: int
    centers: tuple[Fraction, ...]
    half_width: Fraction
    lower_edges: NDArray[np.float64] = field(repr=False, compare=False)
    upper_edges: NDArray[np.float64] = field(repr=False, compare=False)
    level_table: NDArray[np.uint8] = field(repr=False, compare=False)

    def encode_levels(self, levels: ArrayLike) -> BinaryPattern:
        """
        Encode des niveaux 8 bits (valeur level/255) par simple lecture de table.

        Args:
          levels: ArrayLike: niveaux uint8, forme (..., n)

        Returns:
          BinaryPattern : forme (..., n * n_bin)
        """
        lv = np.asarray(levels, dtype=np.uint8)
        bits = self.level_table[lv]
        return bits.reshape(*lv.shape[:-1], lv.shape[-1] * self.n_bin)


def make_codec(n_bin: int) -> BasketCodec:
    """
    Construit l'encodeur panier.

    c_i = (2i - 1) / (2 n_bin) et s = (2 floor(n_bin / 2) - 1) / (4 n_bin), i = 1..n_bin.

    Args:
      n_bin: int:
        Dimension d'encodage (bits par scalaire), au moins 2.

    Returns:
      BasketCodec
    """
    if isinstance(n_bin, bool) or not isinstance(n_bin, int | np.integer) or n_bin < MIN_BINS:
        raise InvalidParameterError(f"n_bin doit être un entier >= {MIN_BINS} (reçu {n_bin!r})")
    n_bin = int(n_bin)
    centers = tuple(Fraction(2 * i - 1, 2 * n_bin) for i in range(1, n_bin + 1))
    half_width = Fraction(2 * (n_bin // 2) - 1, 4 * n_bin)
    lower = np.array([_ceil_float(c - half_width) for c in centers])
    upper = np.array([_floor_float(c + half_width) for c in centers])

    # Table exacte pour les 256 niveaux : comparaison entière de 4*n_bin*level à 255*(bornes).
    lv = np.arange(LEVELS + 1, dtype=np.int64)[:, None]
    num_lo = np.array([(c - half_width) * 4 * n_bin for c in centers])
    num_hi = np.array([(c + half_width) * 4 * n_bin for c in centers])
    # (c ± s) * 4 n_bin est entier : 2(2i-1) ± (2 floor(n/2) - 1).
    lo_int = np.array([int(x) for x in num_lo], dtype=np.int64)[None, :]
    hi_int = np.array([int(x) for x in num_hi], dtype=np.int64)[None, :]
    scaled = 4 * n_bin * lv
    table = ((scaled >= LEVELS * lo_int) & (scaled <= LEVELS * hi_int)).astype(np.uint8)

    return BasketCodec(
        n_bin=n_bin,
        centers=centers,
        half_width=half_width,
        lower_edges=lower,
        upper_edges=upper,
        level_table=table,
    )


def encode_scalar(x: float, codec: BasketCodec) -> BinaryPattern:
    """
    Encode un scalaire de [0, 1] sur n_bin bits.

    Le bit i vaut 1 si et seulement si c_i - s <= x <= c_i + s (intervalle fermé).

    Args:
      x: float: valeur dans [0, 1]
      codec: BasketCodec

    Returns:
      BinaryPattern de longueur n_bin
    """
    value = float(x)
    if not 0.0 <= value <= 1.0:  # NaN compris
        raise EncodingDomainError(value)
    return ((value >= codec.lower_edges) & (value <= codec.upper_edges)).astype(np.uint8)


def encode_vector(values: ArrayLike, codec: BasketCodec) -> BinaryPattern:
    """
    Encode un vecteur (ou un lot de vecteurs) composante par composante puis concatène.

    Args:
      values: ArrayLike:
        Réels dans [0, 1], forme (..., n). Un vecteur vide donne un motif vide.
      codec: BasketCodec

    Returns:
      BinaryPattern de forme (..., n * n_bin), ordre des composantes préservé.
    """
    v = np.asarray(values, dtype=np.float64)
    if v.ndim == 0:
        v = v.reshape(1)
    bad = ~((v >= 0.0) & (v <= 1.0))
    if bad.any():
        flat_index = int(np.flatnonzero(bad.reshape(-1))[0])
        component = flat_index % v.shape[-1]
        raise EncodingDomainError(float(v.reshape(-1)[flat_index]), index=component)
    bits = (v[..., None] >= codec.lower_edges) & (v[..., None] <= codec.upper_edges)
    return bits.astype(np.uint8).reshape(*v.shape[:-1], v.shape[-1] * codec.n_bin)


def hamming_distance(a: ArrayLike, b: ArrayLike) -> int:
    """Nombre de positions où deux motifs binaires diffèrent."""
    pa = np.asarray(a, dtype=np.uint8)
    pb = np.asarray(b, dtype=np.uint8)
    if pa.shape != pb.shape:
        raise ShapeError(f"Motifs de formes différentes : {pa.shape} vs {pb.shape}")
    return int(np.count_nonzero(pa != pb))
