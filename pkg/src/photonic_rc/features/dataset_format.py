# Copyright (c) 2026 Équipe photonic-rc
# Usage interne au projet photonic-rc

"""
Nom du module : features/dataset_format.py

Description :
Format générique des jeux séquentiels (TI-46 précalculé, KTH pré-extrait,
synthétiques) :

    <dossier>/manifest.csv     en-tête : sample_file,label,source_id,split_group[,segment]
    <dossier>/<sample_file>    matrice CSV sans en-tête, une ligne par pas de temps,
                               une colonne par caractéristique

Les chemins de 'sample_file' sont relatifs au dossier du manifeste. L'écriture est
déterministe (format numérique fixe, fins de ligne '\n') : même contenu → mêmes octets.

Utilisé par :
    providers/sequence_provider.py
    providers/synthetic_provider.py

Auteur : Équipe photonic-rc
"""

from collections.abc import Sequence
import logging
from pathlib import Path
from typing import Final

import numpy as np
import pandas as pd

from photonic_rc.features.sequences import Label, SequenceSample
from photonic_rc.models.errors import FormatError

logger = logging.getLogger(__name__)

MANIFEST_NAME: Final[str] = "manifest.csv"
MANIFEST_COLUMNS: Final[tuple[str, ...]] = ("sample_file", "label", "source_id", "split_group")
SEGMENT_COLUMN: Final[str] = "segment"
VALUE_FORMAT: Final[str] = "%.10g"


def _parse_label(raw: str) -> Label:
    text = raw.strip()
    return int(text) if text.lstrip("-").isdigit() else text


def _optional_int(raw: object) -> int | None:
    text = str(raw).strip()
    if text in ("", "nan", "None"):
        return None
    return int(text)


def read_matrix(path: Path) -> np.ndarray:
    """Matrice CSV (pas x caractéristiques) ; FormatError si illisible ou irrégulière."""
    try:
        values = np.loadtxt(path, delimiter=",", dtype=np.float64, ndmin=2)
    except (OSError, ValueError) as exc:
        raise FormatError(f"Matrice illisible : {path} ({exc})") from exc
    if values.size == 0:
        raise FormatError(f"Matrice vide : {path}")
    return values


def read_sequence_dataset(directory: str | Path) -> list[SequenceSample]:
    """
    Charge un jeu au format générique.

    Args:
      directory: str | Path: dossier contenant manifest.csv

    Returns:
      list[SequenceSample] dans l'ordre du manifeste
    """
    root = Path(directory)
    manifest = root / MANIFEST_NAME
    if not manifest.is_file():
        raise FormatError(f"Manifeste absent : {manifest}")
    frame = pd.read_csv(manifest, dtype=str, keep_default_na=False)
    columns = tuple(frame.columns)
    if columns not in (MANIFEST_COLUMNS, (*MANIFEST_COLUMNS, SEGMENT_COLUMN)):
        raise FormatError(
            f"En-tête de manifeste invalide {list(columns)} ; attendu "
            f"{','.join(MANIFEST_COLUMNS)}[,{SEGMENT_COLUMN}]"
        )

    samples: list[SequenceSample] = []
    for row in frame.itertuples(index=False):
        record = row._asdict()
        samples.append(
            SequenceSample(
                frames=read_matrix(root / record["sample_file"]),
                label=_parse_label(record["label"]),
                source_id=record["source_id"],
                split_group=_optional_int(record["split_group"]),
                segment=_optional_int(record.get(SEGMENT_COLUMN, "")),
            )
        )
    dims = {s.n_features for s in samples}
    if len(dims) > 1:
        raise FormatError(f"Dimensions de trame hétérogènes dans {root} : {sorted(dims)}")
    logger.info("Jeu séquentiel chargé : %s échantillons depuis %s", len(samples), root)
    return samples


def write_sequence_dataset(
    directory: str | Path, samples: Sequence[SequenceSample], with_segment: bool = False
) -> Path:
    """Écrit manifeste + matrices ; renvoie le chemin du manifeste."""
    root = Path(directory)
    (root / "samples").mkdir(parents=True, exist_ok=True)
    header = list(MANIFEST_COLUMNS) + ([SEGMENT_COLUMN] if with_segment else [])
    lines = [",".join(header)]
    for k, sample in enumerate(samples):
        name = f"samples/{k:06d}.csv"
        with open(root / name, "w", encoding="utf-8", newline="\n") as f:
            np.savetxt(f, sample.frames, fmt=VALUE_FORMAT, delimiter=",", newline="\n")
        fields = [
            name,
            str(sample.label),
            sample.source_id,
            "" if sample.split_group is None else str(sample.split_group),
        ]
        if with_segment:
            fields.append("" if sample.segment is None else str(sample.segment))
        lines.append(",".join(fields))
    manifest = root / MANIFEST_NAME
    manifest.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return manifest
