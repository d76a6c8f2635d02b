# Copyright (c) 2026 Équipe photonic-rc
# Usage interne au projet photonic-rc

"""
Nom du module : reservoir/deep_reservoir.py

Description :
Dynamique du réservoir profond multiplexé en temps. À chaque pas n, les L couches
sont mises à jour dans l'ordre croissant en réutilisant le même système optique :

    motif    = [ G(u_n^(l)) | x_(n-1)^(l) | biais^(l) ]
    v        = détection 8 bits de |M motif|²
    r_n^(l)  = quantize8( (1 - alpha) r_(n-1)^(l) / 255 + alpha v / 255 )
    x_n^(l)  = G(r_n^(l) / 255)

avec u^(1) = i_n (trame d'entrée dans [0, 1]) et u^(l) = x_n^(l-1), l'état encodé
de la couche précédente au MÊME pas n. Le mélange se fait sur les réels
déquantifiés puis l'état est re-stocké sur 8 bits.

Toutes les opérations acceptent un lot d'échantillons (dimension de tête) :
chaque ligne d'un lot est une trajectoire indépendante.

Utilisé par :
    experiment/engine.py
    tracking/trajectory_logger.py

Auteur : Équipe photonic-rc
"""

from collections.abc import Callable
from dataclasses import dataclass, field
import logging

import numpy as np
from numpy.typing import ArrayLike, NDArray

from photonic_rc.config.models import Aggregation, DeepConfig, OpticsConfig
from photonic_rc.encoding.basket import BasketCodec, BinaryPattern, encode_vector, make_codec
from photonic_rc.encoding.quantize import Quantized8, dequantize8, quantize8
from photonic_rc.models.errors import InvalidInputError, InvalidParameterError, ShapeError
from photonic_rc.optics.camera import calibrate_scale, detect, propagate, warmup_patterns
from photonic_rc.optics.layer_optics import LayerOptics, make_layer_optics
from photonic_rc.optics.transmission import TransmissionModel, build_transmission
from photonic_rc.reservoir.layers import LayerConfig, build_layer_configs, input_widths

logger = logging.getLogger(__name__)

StepProbe = Callable[[int, BinaryPattern], None]
StepHook = Callable[[int, "ReservoirState"], None]


@dataclass
class ReservoirState:
    """État 8 bits r^(l) et son encodage panier x^(l) pour chaque couche."""

    levels: list[Quantized8]
    bits: list[BinaryPattern]
    time_index: int = 0

    @classmethod
    def zeros(
        cls, sizes: list[int], codec: BasketCodec, batch_shape: tuple[int, ...] = ()
    ) -> "ReservoirState":
        """État remis à zéro (niveau 0 partout), encodage cohérent."""
        levels = [np.zeros((*batch_shape, n), dtype=np.uint8) for n in sizes]
        return cls(levels=levels, bits=[codec.encode_levels(r) for r in levels])

    def is_coherent(self, codec: BasketCodec) -> bool:
        """Vérifie x^(l) = G(r^(l) / 255) pour toutes les couches."""
        return all(
            np.array_equal(x, codec.encode_levels(r))
            for r, x in zip(self.levels, self.bits, strict=True)
        )

    def concatenated(self) -> NDArray[np.float32]:
        """[r^(1) | … | r^(L)] déquantifié (niveaux / 255)."""
        return np.concatenate([dequantize8(r) for r in self.levels], axis=-1).astype(np.float32)

    def copy(self) -> "ReservoirState":
        return ReservoirState(
            levels=[r.copy() for r in self.levels],
            bits=[x.copy() for x in self.bits],
            time_index=self.time_index,
        )


@dataclass
class DeepReservoir:
    """Réservoir profond : matrice partagée, couches, dispositions optiques calibrées."""

    model: TransmissionModel
    layers: list[LayerConfig]
    optics: list[LayerOptics]
    codec: BasketCodec
    n_features: int
    probe: StepProbe | None = field(default=None, repr=False)

    def __post_init__(self) -> None:
        if len(self.layers) != len(self.optics) or not self.layers:
            raise ShapeError("Il faut une disposition optique par couche (au moins une couche)")

    @property
    def depth(self) -> int:
        return len(self.layers)

    @property
    def sizes(self) -> list[int]:
        return [layer.n_neurons for layer in self.layers]

    @property
    def total_neurons(self) -> int:
        return sum(self.sizes)

    def reset(self, batch_shape: tuple[int, ...] = ()) -> ReservoirState:
        return ReservoirState.zeros(self.sizes, self.codec, batch_shape)

    # ---------------- dynamique ----------------

    def step_layer(
        self, layer_index: int, u_bits: BinaryPattern, state: ReservoirState
    ) -> tuple[Quantized8, BinaryPattern]:
        """
        Met à jour une couche (indice 0..L-1) et renvoie (r_l, x_l) nouveaux.

        L'état est modifié en place.
        """
        layer = self.layers[layer_index]
        optics = self.optics[layer_index]
        pattern = optics.assemble(u_bits, state.bits[layer_index])
        v = detect(propagate(pattern, self.model, optics), optics.scale)
        mixed = (1.0 - layer.alpha) * dequantize8(state.levels[layer_index]) + layer.alpha * (
            dequantize8(v)
        )
        r_new = quantize8(mixed)
        x_new = self.codec.encode_levels(r_new)
        state.levels[layer_index] = r_new
        state.bits[layer_index] = x_new
        return r_new, x_new

    def step_deep(self, frame: ArrayLike, state: ReservoirState) -> ReservoirState:
        """
        Un pas complet : couche 1 sur la trame encodée, puis chaque couche sur l'état
        fraîchement mis à jour de la précédente.

        Args:
          frame: ArrayLike: trame(s) dans [0, 1], forme (..., n_features)
          state: ReservoirState: modifié en place

        Returns:
          ReservoirState au pas n (le même objet)
        """
        i_n = np.asarray(frame, dtype=np.float64)
        if i_n.shape[-1] != self.n_features:
            raise ShapeError(
                f"Trame de dimension {i_n.shape[-1]}, la couche 1 en attend {self.n_features}"
            )
        u_bits = encode_vector(i_n, self.codec)
        for l_idx in range(self.depth):
            if self.probe is not None:
                self.probe(l_idx, u_bits)
            _, u_bits = self.step_layer(l_idx, u_bits, state)
        state.time_index += 1
        return state

    def run_batch(
        self,
        frames: ArrayLike,
        aggregation: Aggregation = "final",
        washout: int = 0,
        on_step: StepHook | None = None,
    ) -> NDArray[np.float32]:
        """
        Fait tourner un lot de séquences de même longueur, état remis à zéro au départ.

        Args:
          frames: ArrayLike: forme (B, T, n_features), valeurs dans [0, 1]
          aggregation: "final" | "mean" | "concat"
          washout: int: pas initiaux exclus de "mean" et "concat"
          on_step: rappel optionnel (n, état) après chaque pas

        Returns:
          NDArray (B, F) : F = N pour final/mean, (T - washout) * N pour concat
        """
        batch = np.asarray(frames, dtype=np.float64)
        if batch.ndim != 3:  # noqa: PLR2004
            raise ShapeError(f"Lot attendu de forme (B, T, d), reçu {batch.shape}")
        n_steps = batch.shape[1]
        if n_steps == 0:
            raise InvalidInputError("Séquence vide : au moins une trame est requise")
        if aggregation != "final" and washout >= n_steps:
            raise InvalidInputError(f"washout={washout} couvre toute la séquence ({n_steps} pas)")

        state = self.reset((batch.shape[0],))
        kept: list[NDArray[np.float32]] = []
        for t in range(n_steps):
            self.step_deep(batch[:, t, :], state)
            if on_step is not None:
                on_step(t, state)
            if aggregation != "final" and t >= washout:
                kept.append(state.concatenated())

        if aggregation == "final":
            return state.concatenated()
        if aggregation == "mean":
            return np.mean(np.stack(kept, axis=0), axis=0, dtype=np.float64).astype(np.float32)
        if aggregation == "concat":
            return np.concatenate(kept, axis=-1)
        raise InvalidParameterError(f"Agrégation inconnue : {aggregation}")

    def run_sequence(
        self,
        frames: ArrayLike,
        aggregation: Aggregation = "final",
        washout: int = 0,
        on_step: StepHook | None = None,
    ) -> NDArray[np.float32]:
        """Vecteur de lecture d'une seule séquence (forme (T, n_features))."""
        seq = np.asarray(frames, dtype=np.float64)
        if seq.ndim != 2 or seq.shape[0] == 0:  # noqa: PLR2004
            raise InvalidInputError(f"Séquence vide ou mal formée : forme {seq.shape}")
        return self.run_batch(seq[None, ...], aggregation, washout, on_step)[0]

    def feature_width(self, n_steps: int, aggregation: Aggregation, washout: int = 0) -> int:
        """Dimension du vecteur de lecture pour une séquence de n_steps trames."""
        if aggregation == "concat":
            return (n_steps - washout) * self.total_neurons
        return self.total_neurons


def layout(
    deep: DeepConfig, n_features: int, bias_seed: int
) -> tuple[list[LayerConfig], list[LayerOptics]]:
    """Couches et dispositions optiques non calibrées."""
    layers = build_layer_configs(deep, bias_seed)
    widths = input_widths(layers, n_features, deep.n_bin)
    optics = [
        make_layer_optics(
            n_neurons=layer.n_neurons,
            input_width=width,
            state_width=layer.n_neurons * deep.n_bin,
            bias_width=deep.bias_width,
            bias_fraction=layer.bias_fraction,
            bias_seed=layer.bias_seed,
            layer_index=index + 1,
        )
        for index, (layer, width) in enumerate(zip(layers, widths, strict=True))
    ]
    return layers, optics


def matrix_shape(deep: DeepConfig, n_features: int) -> tuple[int, int]:
    """(lignes, colonnes) de la matrice de transmission partagée."""
    _, optics = layout(deep, n_features, bias_seed=0)
    return max(o.n_neurons for o in optics), max(o.col_range.stop for o in optics)


def build_reservoir(
    deep: DeepConfig,
    n_features: int,
    optics_seed: int,
    bias_seed: int,
    optics_config: OpticsConfig | None = None,
    model: TransmissionModel | None = None,
) -> DeepReservoir:
    """
    Construit et calibre un réservoir complet.

    Args:
      deep: DeepConfig: architecture
      n_features: int: dimension d'une trame d'entrée
      optics_seed: int: graine de la matrice et des motifs de calibration
      bias_seed: int: graine des motifs de biais
      optics_config: OpticsConfig: calibration et plafond mémoire
      model: TransmissionModel: matrice déjà régénérée (sinon tirée depuis optics_seed)

    Returns:
      DeepReservoir prêt à l'emploi (gains figés)
    """
    opt = optics_config or OpticsConfig()
    codec = make_codec(deep.n_bin)
    layers, raw = layout(deep, n_features, bias_seed)
    n_rows, n_cols = max(o.n_neurons for o in raw), max(o.col_range.stop for o in raw)
    if model is None:
        model = build_transmission(
            optics_seed,
            n_rows_max=n_rows,
            n_cols=n_cols,
            max_elements=opt.max_matrix_elements,
        )
    elif (model.seed, model.n_rows_max, model.n_cols) != (optics_seed, n_rows, n_cols):
        raise ShapeError(
            f"Matrice fournie (seed={model.seed}, {model.n_rows_max} x {model.n_cols}) "
            f"incompatible avec l'architecture (seed={optics_seed}, {n_rows} x {n_cols})"
        )
    calibrated = [
        o.with_scale(
            calibrate_scale(
                model,
                o,
                warmup_patterns(o, codec, opt.warmup_patterns, optics_seed, index + 1),
                opt.calibration_percentile,
            )
        )
        for index, o in enumerate(raw)
    ]
    logger.info(
        "Réservoir construit : L=%s, neurones=%s, alpha=%s, biais=%s",
        len(layers),
        [c.n_neurons for c in layers],
        [round(c.alpha, 4) for c in layers],
        [round(c.bias_fraction, 4) for c in layers],
    )
    return DeepReservoir(
        model=model, layers=layers, optics=calibrated, codec=codec, n_features=n_features
    )
