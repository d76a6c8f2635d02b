# Copyright (c) 2026 Équipe photonic-rc
# Usage interne au projet photonic-rc

"""
Nom du module : config/loader.py

Description :
Chargement de la configuration d'expérience : fichier YAML sectionné (une section
par bloc, clés scalaires typées), préréglages nommés par banc d'essai, empreinte
de configuration et résolution des chemins de données.

Utilisé par :
    ExecutionController
    orchestrator/sweep.py

Auteur : Équipe photonic-rc
"""

import hashlib
import json
import logging
import os
from pathlib import Path
from typing import Any

from dotenv import load_dotenv
from pydantic import ValidationError
import yaml

from photonic_rc.config.models import ExperimentConfig
from photonic_rc.models.errors import ConfigError

logger = logging.getLogger(__name__)

DATA_ROOT_ENV = "PHOTONIC_RC_DATA_ROOT"

# Préréglages : surcharges appliquées aux valeurs par défaut de ExperimentConfig.
PRESETS: dict[str, dict[str, Any]] = {
    "synthetic-recall": {
        "dataset": {"kind": "synthetic", "synthetic": {"kind": "delayed-recall"}},
        "reservoir": {"depth": 3, "total_neurons": 300},
        "protocol": {"name": "holdout"},
        "output": {"name": "synthetic-recall"},
    },
    "mnist-desk": {
        "dataset": {
            "kind": "mnist",
            "path": "mnist",
            "train_subsample": 10_000,
            "test_subsample": 2_000,
        },
        "reservoir": {"depth": 3, "total_neurons": 1500, "aggregation": "concat"},
        "protocol": {"name": "holdout"},
        "output": {"name": "mnist-desk"},
    },
    "mnist": {
        "dataset": {"kind": "mnist", "path": "mnist"},
        "reservoir": {"depth": 5, "total_neurons": 3500, "aggregation": "concat"},
        "protocol": {"name": "mnist-7fold"},
        "run": {"repetitions": 3},
        "output": {"name": "mnist"},
    },
    "ti46": {
        "dataset": {"kind": "sequence-dir", "path": "ti46", "mode": "ti46"},
        "reservoir": {"depth": 5, "total_neurons": 500, "aggregation": "final"},
        "protocol": {"name": "ti46-grouped-10fold"},
        "run": {"repetitions": 3},
        "output": {"name": "ti46"},
    },
    "kth": {
        "dataset": {"kind": "sequence-dir", "path": "kth", "mode": "kth"},
        "preprocessing": {"sequence_pca_components": 1000},
        "reservoir": {"depth": 5, "total_neurons": 10_000, "aggregation": "mean"},
        "optics": {"max_matrix_elements": 400_000_000},
        "protocol": {"name": "kth-central-2fold"},
        "run": {"repetitions": 3},
        "output": {"name": "kth"},
    },
}


def _build(data: dict[str, Any], origin: str) -> ExperimentConfig:
    try:
        return ExperimentConfig.model_validate(data)
    except ValidationError as exc:
        raise ConfigError(f"Configuration invalide ({origin}) :\n{exc}") from exc


def load_config(path: str | Path) -> ExperimentConfig:
    """
    Lit un fichier de configuration YAML.

    Une clé 'preset' au premier niveau applique d'abord le préréglage nommé,
    les sections du fichier le surchargent ensuite.

    Args:
      path: chemin du fichier

    Returns:
      ExperimentConfig
    """
    try:
        with open(path, encoding="utf-8") as f:
            data = yaml.safe_load(f) or {}
    except FileNotFoundError as exc:
        raise ConfigError(f"Fichier de configuration introuvable : {path}") from exc
    except yaml.YAMLError as exc:
        raise ConfigError(f"YAML illisible ({path}) : {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigError(f"Le fichier {path} doit contenir des sections clé/valeur")

    preset = data.pop("preset", None)
    if preset is not None:
        data = merge_overrides(preset_dict(str(preset)), data)
    return _build(data, str(path))


def preset_dict(name: str) -> dict[str, Any]:
    if name not in PRESETS:
        raise ConfigError(f"Préréglage inconnu : {name} (connus : {', '.join(sorted(PRESETS))})")
    return json.loads(json.dumps(PRESETS[name]))


def preset_config(name: str) -> ExperimentConfig:
    """Configuration complète d'un préréglage nommé."""
    return _build(preset_dict(name), f"préréglage {name}")


def merge_overrides(base: dict[str, Any], overrides: dict[str, Any]) -> dict[str, Any]:
    """Fusion récursive : les sections de 'overrides' remplacent celles de 'base'."""
    merged = dict(base)
    for key, value in overrides.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = merge_overrides(merged[key], value)
        else:
            merged[key] = value
    return merged


def with_overrides(config: ExperimentConfig, overrides: dict[str, Any]) -> ExperimentConfig:
    """Nouvelle configuration validée avec les surcharges données."""
    return _build(merge_overrides(config.model_dump(), overrides), "surcharges")


def config_digest(config: ExperimentConfig) -> str:
    """Empreinte SHA-256 du JSON canonique de la configuration résolue."""
    canonical = json.dumps(config.model_dump(mode="json"), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


def resolve_data_path(path: str | None) -> Path:
    """
    Résout un chemin de données relatif contre la racine PHOTONIC_RC_DATA_ROOT.

    La variable peut aussi provenir d'un fichier .env (python-dotenv).
    """
    if path is None:
        raise ConfigError("dataset.path doit être renseigné pour ce type de jeu de données")
    p = Path(path)
    if p.is_absolute():
        return p
    load_dotenv()
    root = os.environ.get(DATA_ROOT_ENV)
    if root:
        return Path(root) / p
    logger.warning(
        "%s non définie : chemin %s résolu depuis le répertoire courant", DATA_ROOT_ENV, p
    )
    return p
