# Copyright (c) 2026 Équipe photonic-rc
# Usage interne au projet photonic-rc

"""
Nom du module : providers/synthetic_provider.py

Description :
Tâches séquentielles synthétiques, équilibrées et reproductibles, pour les essais
de bureau quand TI-46 ou KTH ne sont pas disponibles :

* delayed-recall : trames de bruit uniforme, sauf une trame « indice » (prototype de
  la classe bruité) placée 'delay' pas avant la fin ; avec une lecture sur l'état
  final, la tâche exige de mémoriser l'indice pendant 'delay' pas ;
* noisy-channel-classification : sinusoïdes dont la fréquence et les phases dépendent
  de la classe, passées dans un canal à mémoire (filtre à réponse finie) puis bruitées.

Flux aléatoire : default_rng([seed, indice_de_tâche]).

Utilisé par :
    experiment/engine.py
    controller/execution.py (dataset synth)

Auteur : Équipe photonic-rc
"""

import logging
from pathlib import Path
from typing import Final

import numpy as np

from photonic_rc.config.models import SyntheticConfig, SyntheticKind
from photonic_rc.features.dataset_format import write_sequence_dataset
from photonic_rc.features.sequences import SequenceSample
from photonic_rc.models.errors import InvalidParameterError

logger = logging.getLogger(__name__)

TASK_STREAMS: Final[dict[str, int]] = {"delayed-recall": 0, "noisy-channel-classification": 1}
CHANNEL_TAPS: Final[tuple[float, ...]] = (0.5, 0.3, 0.2)
GROUPS: Final[int] = 10


def _delayed_recall(
    params: SyntheticConfig, rng: np.random.Generator, label: int, prototypes: np.ndarray
) -> np.ndarray:
    frames = rng.uniform(0.0, 1.0, size=(params.length, params.n_features))
    cue = prototypes[label] + params.noise * rng.standard_normal(params.n_features)
    frames[params.length - 1 - params.delay] = np.clip(cue, 0.0, 1.0)
    return frames


def _noisy_channel(
    params: SyntheticConfig, rng: np.random.Generator, label: int, phases: np.ndarray
) -> np.ndarray:
    t = np.arange(params.length, dtype=np.float64)[:, None]
    cycles = 1.0 + label
    clean = 0.5 + 0.4 * np.sin(2.0 * np.pi * cycles * t / params.length + phases[label])
    taps = np.asarray(CHANNEL_TAPS)
    mixed = np.zeros_like(clean)
    for lag, weight in enumerate(taps):
        mixed[lag:] += weight * clean[: params.length - lag]
        mixed[:lag] += weight * clean[:1]
    noisy = mixed + params.noise * rng.standard_normal(mixed.shape)
    return np.clip(noisy, 0.0, 1.0)


def synthetic_task(
    kind: SyntheticKind, params: SyntheticConfig | None = None, seed: int = 0
) -> list[SequenceSample]:
    """
    Génère un jeu de classification de séquences équilibré.

    Args:
      kind: "delayed-recall" | "noisy-channel-classification"
      params: SyntheticConfig: classes, effectif par classe, longueur, dimension, délai, bruit
      seed: int: graine unique du jeu

    Returns:
      list[SequenceSample] mélangée, exactement n_per_class par classe
    """
    p = params or SyntheticConfig(kind=kind)
    if kind not in TASK_STREAMS:
        raise InvalidParameterError(f"Tâche synthétique inconnue : {kind}")
    rng = np.random.default_rng([seed, TASK_STREAMS[kind]])
    if kind == "delayed-recall":
        table = rng.uniform(0.0, 1.0, size=(p.n_classes, p.n_features))
        make = _delayed_recall
    else:
        table = rng.uniform(0.0, 2.0 * np.pi, size=(p.n_classes, p.n_features))
        make = _noisy_channel

    samples: list[SequenceSample] = []
    for j in range(p.n_per_class):
        for label in range(p.n_classes):
            samples.append(
                SequenceSample(
                    frames=make(p, rng, label, table),
                    label=label,
                    source_id=f"{kind}-{label}-{j:04d}",
                    split_group=j % GROUPS,
                )
            )
    order = rng.permutation(len(samples))
    shuffled = [samples[k] for k in order]
    logger.info(
        "Tâche synthétique %s : %s classes x %s, T=%s, d=%s",
        kind,
        p.n_classes,
        p.n_per_class,
        p.length,
        p.n_features,
    )
    return shuffled


def write_synthetic_task(
    directory: str | Path, kind: SyntheticKind, params: SyntheticConfig | None = None, seed: int = 0
) -> Path:
    """Génère puis écrit la tâche au format générique ; renvoie le manifeste."""
    return write_sequence_dataset(directory, synthetic_task(kind, params, seed))
