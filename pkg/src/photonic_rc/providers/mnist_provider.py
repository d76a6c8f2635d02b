# Copyright (c) 2026 Équipe photonic-rc
# Usage interne au projet photonic-rc

"""
Nom du module : providers/mnist_provider.py

Description :
Lecture des fichiers MNIST au format IDX (gros-boutiste) :

    images : i32 magic=2051 | i32 nombre | i32 lignes | i32 colonnes | u8[] pixels
    labels : i32 magic=2049 | i32 nombre | u8[] étiquettes (0..9)

Les fichiers peuvent être compressés (.gz). Les pixels sont ramenés à [0, 1] par /255.
Toute incohérence (magic, dimensions, taille) lève FormatError en citant l'offset
et les tailles attendue / réelle.

Utilisé par :
    experiment/engine.py

Auteur : Équipe photonic-rc
"""

from dataclasses import dataclass
import gzip
import logging
from pathlib import Path
import struct
from typing import Final

import numpy as np
from numpy.typing import NDArray

from photonic_rc.models.errors import FormatError

logger = logging.getLogger(__name__)

MNIST_IMAGE_MAGIC: Final[int] = 2051
MNIST_LABEL_MAGIC: Final[int] = 2049
N_CLASSES: Final[int] = 10

FILE_STEMS: Final[dict[str, tuple[str, ...]]] = {
    "train_images": ("train-images-idx3-ubyte", "train-images.idx3-ubyte"),
    "train_labels": ("train-labels-idx1-ubyte", "train-labels.idx1-ubyte"),
    "test_images": ("t10k-images-idx3-ubyte", "t10k-images.idx3-ubyte"),
    "test_labels": ("t10k-labels-idx1-ubyte", "t10k-labels.idx1-ubyte"),
}


@dataclass(frozen=True)
class MnistSplit:
    images: NDArray[np.float32]  # (N, 28, 28) dans [0, 1]
    labels: NDArray[np.int64]

    def __len__(self) -> int:
        return int(self.labels.shape[0])

    def subset(self, rows: NDArray[np.int64]) -> "MnistSplit":
        return MnistSplit(self.images[rows], self.labels[rows])


@dataclass(frozen=True)
class MnistData:
    train: MnistSplit
    test: MnistSplit

    def pooled(self) -> MnistSplit:
        """Les 70000 images (entraînement puis test) pour la validation croisée 7-fold."""
        return MnistSplit(
            np.concatenate([self.train.images, self.test.images]),
            np.concatenate([self.train.labels, self.test.labels]),
        )


def _read_bytes(path: Path) -> bytes:
    opener = gzip.open if path.suffix == ".gz" else open
    with opener(path, "rb") as f:
        return f.read()


def _header(data: bytes, n_ints: int, path: Path) -> tuple[int, ...]:
    needed = 4 * n_ints
    if len(data) < needed:
        raise FormatError(
            f"{path.name} : en-tête tronqué à l'offset {len(data)} "
            f"({needed} octets attendus, {len(data)} présents)"
        )
    return struct.unpack_from(f">{n_ints}i", data, 0)


def _check_magic(magic: int, expected: int, path: Path) -> None:
    if magic != expected:
        raise FormatError(f"{path.name} : magic {magic} à l'offset 0, {expected} attendu")


def _check_payload(data: bytes, offset: int, expected: int, path: Path) -> None:
    actual = len(data) - offset
    if actual != expected:
        raise FormatError(
            f"{path.name} : charge utile à l'offset {offset} de {actual} octets, "
            f"{expected} attendus"
        )


def read_idx_images(path: str | Path) -> NDArray[np.float32]:
    """Images IDX3 → tableau (N, lignes, colonnes) dans [0, 1]."""
    p = Path(path)
    data = _read_bytes(p)
    magic, count, rows, cols = _header(data, 4, p)
    _check_magic(magic, MNIST_IMAGE_MAGIC, p)
    if count < 0 or rows <= 0 or cols <= 0:
        raise FormatError(
            f"{p.name} : dimensions invalides à l'offset 4 ({count}, {rows}, {cols})"
        )
    _check_payload(data, 16, count * rows * cols, p)
    pixels = np.frombuffer(data, dtype=np.uint8, offset=16).reshape(count, rows, cols)
    return pixels.astype(np.float32) / np.float32(255.0)


def read_idx_labels(path: str | Path) -> NDArray[np.int64]:
    """Étiquettes IDX1 → vecteur d'entiers dans [0, 9]."""
    p = Path(path)
    data = _read_bytes(p)
    magic, count = _header(data, 2, p)
    _check_magic(magic, MNIST_LABEL_MAGIC, p)
    if count < 0:
        raise FormatError(f"{p.name} : nombre d'étiquettes négatif à l'offset 4 ({count})")
    _check_payload(data, 8, count, p)
    labels = np.frombuffer(data, dtype=np.uint8, offset=8).astype(np.int64)
    if labels.size and labels.max() >= N_CLASSES:
        bad = int(np.argmax(labels >= N_CLASSES))
        raise FormatError(
            f"{p.name} : étiquette {labels[bad]} hors de [0, 9] à l'offset {8 + bad}"
        )
    return labels


def _locate(directory: Path, key: str) -> Path:
    for stem in FILE_STEMS[key]:
        for candidate in (directory / stem, directory / f"{stem}.gz"):
            if candidate.is_file():
                return candidate
    raise FormatError(f"Fichier MNIST '{FILE_STEMS[key][0]}' introuvable dans {directory}")


def _split(directory: Path, prefix: str) -> MnistSplit:
    images = read_idx_images(_locate(directory, f"{prefix}_images"))
    labels = read_idx_labels(_locate(directory, f"{prefix}_labels"))
    if images.shape[0] != labels.shape[0]:
        raise FormatError(
            f"MNIST {prefix} : {images.shape[0]} images pour {labels.shape[0]} étiquettes"
        )
    return MnistSplit(images, labels)


def load_mnist(directory: str | Path) -> MnistData:
    """
    Charge les ensembles d'entraînement et de test MNIST.

    Args:
      directory: str | Path: dossier contenant les quatre fichiers IDX

    Returns:
      MnistData
    """
    root = Path(directory)
    data = MnistData(train=_split(root, "train"), test=_split(root, "test"))
    logger.info("MNIST chargé depuis %s : %s + %s images", root, len(data.train), len(data.test))
    return data
