# Copyright (c) 2026 Équipe photonic-rc
# Usage interne au projet photonic-rc

"""
Nom du module : readout/persistence.py

Description :
Sauvegarde texte d'un ReadoutModel, aller-retour bit à bit : tous les flottants
sont écrits en hexadécimal (float.hex). Format, une section par ligne :

    photonic-rc-readout 1
    shape <N_Y> <N_X>
    lambda <hex>
    labels <JSON>
    standardize <0|1>
    mean <hex> ...        (si standardize = 1)
    scale <hex> ...       (si standardize = 1)
    weights
    <hex> ...             (N_Y lignes, ordre ligne-major)

Utilisé par :
    experiment/engine.py

Auteur : Équipe photonic-rc
"""

import json
from pathlib import Path

import numpy as np
from numpy.typing import NDArray

from photonic_rc.models.errors import FormatError
from photonic_rc.readout.ridge import ReadoutModel, Standardizer

MAGIC = "photonic-rc-readout 1"


def _hex_row(values: NDArray[np.float64]) -> str:
    return " ".join(float(v).hex() for v in values)


def _parse_row(line: str, expected: int, what: str) -> NDArray[np.float64]:
    try:
        values = np.array([float.fromhex(tok) for tok in line.split()], dtype=np.float64)
    except ValueError as exc:
        raise FormatError(f"Valeur hexadécimale invalide dans {what}") from exc
    if values.shape[0] != expected:
        raise FormatError(f"{what} : {values.shape[0]} valeurs, {expected} attendues")
    return values


def _field(line: str, key: str) -> str:
    head, _, rest = line.partition(" ")
    if head != key:
        raise FormatError(f"Section '{key}' attendue, trouvé '{head}'")
    return rest


def save_model(model: ReadoutModel, path: str | Path) -> Path:
    """Écrit le modèle ; renvoie le chemin écrit."""
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    n_y, n_x = model.weights.shape
    lines = [
        MAGIC,
        f"shape {n_y} {n_x}",
        f"lambda {float(model.lam).hex()}",
        f"labels {json.dumps(list(model.class_labels))}",
        f"standardize {int(model.standardizer is not None)}",
    ]
    if model.standardizer is not None:
        lines.append(f"mean {_hex_row(model.standardizer.mean)}")
        lines.append(f"scale {_hex_row(model.standardizer.scale)}")
    lines.append("weights")
    lines.extend(_hex_row(row) for row in model.weights)
    target.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return target


def load_model(path: str | Path) -> ReadoutModel:
    """Relit un modèle écrit par save_model ; FormatError si le fichier est corrompu."""
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    if not lines or lines[0] != MAGIC:
        raise FormatError(f"En-tête '{MAGIC}' absent de {path}")
    try:
        n_y, n_x = (int(v) for v in _field(lines[1], "shape").split())
        lam = float.fromhex(_field(lines[2], "lambda"))
        labels = tuple(json.loads(_field(lines[3], "labels")))
        standardize = _field(lines[4], "standardize") == "1"
    except (IndexError, ValueError) as exc:
        raise FormatError(f"En-tête de modèle illisible dans {path}") from exc

    cursor = 5
    standardizer = None
    if standardize:
        if len(lines) < cursor + 2:
            raise FormatError("Sections mean/scale manquantes")
        mean = _parse_row(_field(lines[cursor], "mean"), n_x, "mean")
        scale = _parse_row(_field(lines[cursor + 1], "scale"), n_x, "scale")
        standardizer = Standardizer(mean=mean, scale=scale)
        cursor += 2
    if len(lines) != cursor + 1 + n_y or lines[cursor] != "weights":
        raise FormatError(f"Bloc de poids attendu : {n_y} lignes après 'weights'")
    rows = [_parse_row(line, n_x, f"weights[{k}]") for k, line in enumerate(lines[cursor + 1 :])]
    weights = np.vstack(rows) if rows else np.zeros((0, n_x))
    return ReadoutModel(weights=weights, lam=lam, class_labels=labels, standardizer=standardizer)
