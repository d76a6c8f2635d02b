# Copyright (c) 2026 Équipe photonic-rc
# Usage interne au projet photonic-rc

"""
Nom du module : features/sequences.py

Description :
Mise en séquence et normalisation des entrées du réservoir :

* SequenceSample : trames (T x d), étiquette, identité de source, groupe, segment ;
* MinMaxBounds : bornes min/max par caractéristique estimées sur l'entraînement,
  mise à l'échelle vers [0, 1] avec écrêtage (écart nul → 0) ;
* normalize_sequence : mise à l'échelle, mode TI-46 (86 canaux, zéro-padding à 130 pas) ;
* MnistSequencer / mnist_sequence : quatre bandes de 7 colonnes → HOG → PCA(25)
  → bornes min/max, soit 4 trames de 25 valeurs ;
* SequencePreprocessor : PCA optionnelle par trame puis bornes, pour les jeux
  séquentiels (TI-46, KTH, synthétiques) ;
* split_into_segments : découpe temporelle en segments égaux (KTH).

Tout ce qui est ajusté (PCA, bornes) l'est sur les échantillons d'entraînement seuls.

Utilisé par :
    experiment/engine.py
    providers/sequence_provider.py

Auteur : Équipe photonic-rc
"""

from collections.abc import Sequence
from dataclasses import dataclass, field, replace
import logging
from typing import Final

import numpy as np
from numpy.typing import ArrayLike, NDArray

from photonic_rc.config.models import PreprocessingConfig, SequenceMode
from photonic_rc.features.hog import HogParams, hog_batch
from photonic_rc.features.pca import PcaModel, pca_fit, pca_transform
from photonic_rc.models.errors import FormatError, InvalidInputError, NotFittedError, ShapeError

logger = logging.getLogger(__name__)

MNIST_SIDE: Final[int] = 28
MNIST_STRIPS: Final[tuple[slice, ...]] = (slice(0, 7), slice(7, 14), slice(14, 21), slice(21, 28))
HOG_CHUNK: Final[int] = 4096

Label = int | str


@dataclass(frozen=True)
class SequenceSample:
    frames: NDArray[np.float64]
    label: Label
    source_id: str = ""
    split_group: int | None = None
    segment: int | None = None

    def __post_init__(self) -> None:
        if self.frames.ndim != 2 or self.frames.shape[0] < 1:  # noqa: PLR2004
            raise InvalidInputError(
                f"Séquence '{self.source_id}' : au moins une trame 1D requise, "
                f"forme {self.frames.shape}"
            )

    @property
    def length(self) -> int:
        return int(self.frames.shape[0])

    @property
    def n_features(self) -> int:
        return int(self.frames.shape[1])

    def with_frames(self, frames: NDArray[np.float64]) -> "SequenceSample":
        return replace(self, frames=frames)


@dataclass(frozen=True)
class MinMaxBounds:
    low: NDArray[np.float64]
    high: NDArray[np.float64]

    @classmethod
    def fit(cls, rows: ArrayLike) -> "MinMaxBounds":
        """Bornes par colonne d'une matrice (lignes = trames d'entraînement)."""
        x = np.asarray(rows, dtype=np.float64)
        if x.ndim != 2 or x.shape[0] == 0:  # noqa: PLR2004
            raise InvalidInputError("Aucune trame d'entraînement pour estimer les bornes")
        return cls(low=x.min(axis=0), high=x.max(axis=0))

    @classmethod
    def fit_samples(cls, samples: Sequence[SequenceSample]) -> "MinMaxBounds":
        return cls.fit(np.concatenate([s.frames for s in samples], axis=0))

    def apply(self, x: ArrayLike) -> NDArray[np.float64]:
        v = np.asarray(x, dtype=np.float64)
        if v.shape[-1] != self.low.shape[0]:
            raise ShapeError(f"Dimension {v.shape[-1]}, bornes de dimension {self.low.shape[0]}")
        span = self.high - self.low
        safe = np.where(span > 0.0, span, 1.0)
        scaled = np.where(span > 0.0, (v - self.low) / safe, 0.0)
        return np.clip(scaled, 0.0, 1.0)


def _check_channels(sample: SequenceSample, channels: int) -> None:
    if sample.n_features != channels:
        raise FormatError(
            f"Cochléagramme '{sample.source_id}' : {sample.n_features} canaux, {channels} attendus"
        )


def _pad_steps(sample: SequenceSample, steps: int) -> SequenceSample:
    """Zéro-padding en fin de séquence jusqu'à 'steps' pas."""
    if sample.length > steps:
        raise FormatError(f"Séquence '{sample.source_id}' : {sample.length} pas > {steps}")
    return sample.with_frames(np.pad(sample.frames, ((0, steps - sample.length), (0, 0))))


def normalize_sequence(
    sample: SequenceSample,
    bounds: MinMaxBounds,
    mode: SequenceMode = "generic",
    ti46_channels: int = 86,
    ti46_steps: int = 130,
) -> SequenceSample:
    """
    Met les trames dans [0, 1] avec les bornes d'entraînement.

    Args:
      sample: SequenceSample
      bounds: MinMaxBounds: estimées sur l'entraînement
      mode: "generic" | "ti46" | "kth"
      ti46_channels: int: nombre de canaux imposé en mode TI-46
      ti46_steps: int: longueur après zéro-padding en mode TI-46

    Returns:
      SequenceSample normalisé
    """
    if mode == "ti46":
        _check_channels(sample, ti46_channels)
    scaled = sample.with_frames(bounds.apply(sample.frames))
    if mode == "ti46":
        return _pad_steps(scaled, ti46_steps)
    return scaled


def split_into_segments(sample: SequenceSample, n_segments: int = 4) -> list[SequenceSample]:
    """Découpe en n segments temporels égaux (à une trame près), numérotés 1..n."""
    if sample.length < n_segments:
        raise InvalidInputError(
            f"Séquence '{sample.source_id}' trop courte ({sample.length}) "
            f"pour {n_segments} segments"
        )
    parts = np.array_split(sample.frames, n_segments, axis=0)
    return [replace(sample, frames=part, segment=k) for k, part in enumerate(parts, start=1)]


def strips(images: ArrayLike) -> list[NDArray[np.float64]]:
    """Les quatre bandes verticales [0:7), [7:14), [14:21), [21:28) d'un lot (N, 28, 28)."""
    x = np.asarray(images, dtype=np.float64)
    if x.ndim == 2:  # noqa: PLR2004
        x = x[None, ...]
    if x.shape[1:] != (MNIST_SIDE, MNIST_SIDE):
        raise ShapeError(f"Images 28x28 attendues, reçu {x.shape[1:]}")
    return [x[:, :, cols] for cols in MNIST_STRIPS]


@dataclass
class MnistSequencer:
    """Chaîne MNIST ajustable : bandes → HOG → PCA → bornes min/max."""

    hog_params: HogParams = field(default_factory=HogParams)
    n_components: int = 25
    per_position: bool = False
    pcas: list[PcaModel] = field(default_factory=list)
    bounds: MinMaxBounds | None = None

    @classmethod
    def from_config(cls, config: PreprocessingConfig) -> "MnistSequencer":
        return cls(
            hog_params=HogParams(
                cell_size=config.hog_cell_size,
                block_size=config.hog_block_size,
                n_orientations=config.hog_orientations,
                signed=config.hog_signed,
            ),
            n_components=config.pca_components,
            per_position=config.pca_per_position,
        )

    @property
    def fitted(self) -> bool:
        return bool(self.pcas) and self.bounds is not None

    def descriptors(self, images: ArrayLike) -> NDArray[np.float64]:
        """Descripteurs HOG par bande, forme (N, 4, longueur)."""
        parts = strips(images)
        out = []
        for part in parts:
            chunks = [
                hog_batch(part[start : start + HOG_CHUNK], self.hog_params)
                for start in range(0, part.shape[0], HOG_CHUNK)
            ]
            out.append(np.concatenate(chunks, axis=0))
        return np.stack(out, axis=1)

    def _project(self, desc: NDArray[np.float64]) -> NDArray[np.float64]:
        if len(self.pcas) == 1:
            return pca_transform(self.pcas[0], desc)
        return np.stack([pca_transform(p, desc[:, k]) for k, p in enumerate(self.pcas)], axis=1)

    def fit(self, train_images: ArrayLike) -> "MnistSequencer":
        desc = self.descriptors(train_images)
        n, positions, length = desc.shape
        if self.per_position:
            self.pcas = [pca_fit(desc[:, k], self.n_components) for k in range(positions)]
        else:
            self.pcas = [pca_fit(desc.reshape(n * positions, length), self.n_components)]
        projected = self._project(desc)
        self.bounds = MinMaxBounds.fit(projected.reshape(-1, self.n_components))
        logger.info(
            "Séquenceur MNIST ajusté sur %s images : variance expliquée %s",
            n,
            [round(float(p.explained_variance_ratio.sum()), 4) for p in self.pcas],
        )
        return self

    def transform(self, images: ArrayLike) -> NDArray[np.float64]:
        """Séquences (N, 4, n_components) dans [0, 1]."""
        if not self.fitted or self.bounds is None:
            raise NotFittedError("Séquenceur MNIST non ajusté : appeler fit() d'abord")
        return self.bounds.apply(self._project(self.descriptors(images)))


def mnist_sequence(
    image: ArrayLike, sequencer: MnistSequencer, label: Label = 0, source_id: str = ""
) -> SequenceSample:
    """Séquence de 4 trames (une par bande de 7 colonnes) pour une image 28x28."""
    frames = sequencer.transform(np.asarray(image, dtype=np.float64)[None, ...])[0]
    return SequenceSample(frames=frames, label=label, source_id=source_id)


@dataclass
class SequencePreprocessor:
    """PCA par trame optionnelle puis bornes min/max, ajustées sur l'entraînement."""

    mode: SequenceMode = "generic"
    n_components: int | None = None
    ti46_channels: int = 86
    ti46_steps: int = 130
    pca: PcaModel | None = None
    bounds: MinMaxBounds | None = None

    @classmethod
    def from_config(cls, config: PreprocessingConfig, mode: SequenceMode) -> "SequencePreprocessor":
        return cls(
            mode=mode,
            n_components=config.sequence_pca_components,
            ti46_channels=config.ti46_channels,
            ti46_steps=config.ti46_steps,
        )

    def _reduce(self, sample: SequenceSample) -> SequenceSample:
        if self.pca is None:
            return sample
        return sample.with_frames(pca_transform(self.pca, sample.frames))

    def fit(self, train: Sequence[SequenceSample]) -> "SequencePreprocessor":
        if not train:
            raise InvalidInputError("Aucun échantillon d'entraînement")
        if self.mode == "ti46":
            for s in train:
                _check_channels(s, self.ti46_channels)
        if self.n_components is not None:
            pooled = np.concatenate([s.frames for s in train], axis=0)
            k = min(self.n_components, *pooled.shape)
            if k < self.n_components:
                logger.warning(
                    "PCA de séquence réduite à %s composantes (%s demandées)",
                    k,
                    self.n_components,
                )
            self.pca = pca_fit(pooled, k)
            logger.info(
                "PCA de séquence : %s composantes, variance expliquée %.4f",
                k,
                float(self.pca.explained_variance_ratio.sum()),
            )
        self.bounds = MinMaxBounds.fit_samples([self._reduce(s) for s in train])
        return self

    def transform(self, samples: Sequence[SequenceSample]) -> list[SequenceSample]:
        if self.bounds is None:
            raise NotFittedError("Prétraitement de séquence non ajusté")
        if self.pca is None:
            return [
                normalize_sequence(s, self.bounds, self.mode, self.ti46_channels, self.ti46_steps)
                for s in samples
            ]
        out = []
        for s in samples:
            if self.mode == "ti46":
                _check_channels(s, self.ti46_channels)
            reduced = normalize_sequence(self._reduce(s), self.bounds)
            if self.mode == "ti46":
                reduced = _pad_steps(reduced, self.ti46_steps)
            out.append(reduced)
        return out
