# Copyright (c) 2026 Équipe photonic-rc
# Usage interne au projet photonic-rc

"""
Nom du module : providers/sequence_provider.py

Description :
Chargement des jeux séquentiels au format générique (TI-46 précalculé, KTH
pré-extrait, répertoire quelconque). En mode KTH, les vidéos entières du manifeste
(sans colonne segment) sont découpées en quatre segments temporels égaux.

Utilisé par :
    experiment/engine.py

Auteur : Équipe photonic-rc
"""

import logging

from photonic_rc.config.loader import resolve_data_path
from photonic_rc.config.models import DatasetConfig
from photonic_rc.features.dataset_format import read_sequence_dataset
from photonic_rc.features.sequences import SequenceSample, split_into_segments
from photonic_rc.models.errors import ConfigError

logger = logging.getLogger(__name__)

KTH_SEGMENTS = 4


def load_sequence_dataset(config: DatasetConfig) -> list[SequenceSample]:
    """
    Charge le jeu décrit par la configuration.

    Args:
      config: DatasetConfig: chemin (relatif à PHOTONIC_RC_DATA_ROOT) et mode

    Returns:
      list[SequenceSample]
    """
    if config.path is None:
        raise ConfigError("dataset.path est requis pour un jeu séquentiel")
    samples = read_sequence_dataset(resolve_data_path(config.path))
    if config.mode != "kth":
        return samples

    whole = [s for s in samples if s.segment is None]
    if not whole:
        return samples
    if len(whole) != len(samples):
        raise ConfigError("Manifeste KTH mêlant vidéos entières et segments")
    segmented = [seg for s in whole for seg in split_into_segments(s, KTH_SEGMENTS)]
    logger.info("KTH : %s vidéos découpées en %s segments", len(whole), len(segmented))
    return segmented
