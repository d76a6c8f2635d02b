# Copyright (c) 2026 Équipe photonic-rc
# Usage interne au projet photonic-rc

"""
Nom du module : experiment/protocols.py

Description :
Protocoles de validation croisée, sous forme de découpages (entraînement, test)
en indices :

* cv_mnist_7fold : 70000 images permutées (graine), 7 blocs de test disjoints
  de 10000, chaque image testée une seule fois ;
* cv_ti46_grouped : groupes équilibrés par classe (l'échantillon j de la classe c va
  dans le groupe (c * m + j) mod n_folds), ordre intra-groupe mélangé une fois,
  le fold k teste le groupe k ;
* cv_kth_central : fold A teste le segment 2, fold B le segment 3 ;
* holdout_split : un seul découpage aléatoire (ou entraînement = test, contrôle de
  sur-apprentissage).

Utilisé par :
    experiment/engine.py

Auteur : Équipe photonic-rc
"""

from collections import Counter
from collections.abc import Sequence
from dataclasses import dataclass
import logging
from typing import Final

import numpy as np
from numpy.typing import NDArray

from photonic_rc.models.errors import InvalidParameterError, ProtocolError

logger = logging.getLogger(__name__)

MNIST_POOL: Final[int] = 70_000
MNIST_FOLDS: Final[int] = 7
KTH_SEGMENTS: Final[tuple[int, ...]] = (1, 2, 3, 4)
KTH_TEST_SEGMENTS: Final[tuple[int, ...]] = (2, 3)

Label = int | str


@dataclass(frozen=True)
class FoldSplit:
    name: str
    train: NDArray[np.int64]
    test: NDArray[np.int64]

    def __post_init__(self) -> None:
        if np.intersect1d(self.train, self.test).size and not self.shared:
            raise ProtocolError(f"Fold {self.name} : indices communs entre entraînement et test")

    @property
    def shared(self) -> bool:
        """Vrai pour le contrôle entraînement = test (holdout dégénéré)."""
        return self.train.shape == self.test.shape and bool(np.all(self.train == self.test))


def check_disjoint_tests(folds: Sequence[FoldSplit], n_samples: int | None = None) -> None:
    """Vérifie que les jeux de test sont deux à deux disjoints (et couvrent n si donné)."""
    seen = np.concatenate([f.test for f in folds]) if folds else np.empty(0, dtype=np.int64)
    if np.unique(seen).size != seen.size:
        raise ProtocolError("Jeux de test non disjoints entre folds")
    if n_samples is not None and seen.size != n_samples:
        raise ProtocolError(f"Les tests couvrent {seen.size} échantillons sur {n_samples}")


def cv_mnist_7fold(n_samples: int, seed: int) -> list[FoldSplit]:
    """
    Validation croisée 7-fold sur le pool MNIST complet.

    Args:
      n_samples: int: taille du pool (doit valoir 70000)
      seed: int: graine de permutation

    Returns:
      list[FoldSplit] : 7 folds, test de 10000, entraînement de 60000
    """
    if n_samples != MNIST_POOL:
        raise ProtocolError(
            f"Le protocole 7-fold MNIST exige {MNIST_POOL} images, reçu {n_samples}"
        )
    order = np.random.default_rng(seed).permutation(n_samples).astype(np.int64)
    blocks = np.split(order, MNIST_FOLDS)
    folds = []
    for k, block in enumerate(blocks):
        test = np.sort(block)
        train = np.sort(np.concatenate([b for j, b in enumerate(blocks) if j != k]))
        folds.append(FoldSplit(name=f"mnist-{k + 1}", train=train, test=test))
    check_disjoint_tests(folds, n_samples)
    return folds


def ti46_groups(labels: Sequence[Label], n_folds: int = 10) -> NDArray[np.int64]:
    """Groupe de chaque échantillon ; ProtocolError si les classes sont déséquilibrées."""
    counts = Counter(labels)
    sizes = set(counts.values())
    if len(sizes) != 1:
        raise ProtocolError(f"Classes déséquilibrées : {dict(sorted(counts.items(), key=str))}")
    (m,) = sizes
    if (m * len(counts)) % n_folds:
        raise ProtocolError(
            f"{m * len(counts)} échantillons non divisibles en {n_folds} groupes "
            f"(effectifs {dict(sorted(counts.items(), key=str))})"
        )
    if m % n_folds:
        logger.warning(
            "Échelle réduite : %s échantillons par classe pour %s groupes, "
            "groupes non équilibrés par classe (hors protocole d'origine)",
            m,
            n_folds,
        )
    class_index = {c: k for k, c in enumerate(sorted(counts, key=str))}
    seen: Counter[Label] = Counter()
    groups = np.empty(len(labels), dtype=np.int64)
    for i, label in enumerate(labels):
        j = seen[label]
        seen[label] += 1
        groups[i] = (class_index[label] * m + j) % n_folds
    return groups


def cv_ti46_grouped(
    labels: Sequence[Label],
    seed: int,
    n_folds: int = 10,
    groups: Sequence[int] | None = None,
) -> list[FoldSplit]:
    """
    Validation croisée groupée équilibrée (TI-46 : 10 groupes de 50, 5 par chiffre).

    Args:
      labels: Sequence[Label]: étiquettes dans l'ordre des échantillons
      seed: int: graine du mélange intra-groupe
      n_folds: int: nombre de groupes / folds
      groups: Sequence[int] | None: groupes imposés (colonne split_group du manifeste)

    Returns:
      list[FoldSplit]
    """
    if n_folds < 2:  # noqa: PLR2004
        raise InvalidParameterError(f"Au moins 2 folds requis (reçu {n_folds})")
    if groups is None:
        assigned = ti46_groups(labels, n_folds)
    else:
        assigned = np.asarray(groups, dtype=np.int64)
        _check_given_groups(labels, assigned, n_folds)

    rng = np.random.default_rng(seed)
    members = [
        rng.permutation(np.flatnonzero(assigned == k)).astype(np.int64) for k in range(n_folds)
    ]
    folds = [
        FoldSplit(
            name=f"ti46-{k + 1}",
            train=np.concatenate([m for j, m in enumerate(members) if j != k]),
            test=members[k],
        )
        for k in range(n_folds)
    ]
    check_disjoint_tests(folds, len(labels))
    return folds


def _check_given_groups(labels: Sequence[Label], groups: NDArray[np.int64], n_folds: int) -> None:
    if groups.shape[0] != len(labels):
        raise ProtocolError(f"{groups.shape[0]} groupes pour {len(labels)} échantillons")
    if groups.min(initial=0) < 0 or groups.max(initial=0) >= n_folds:
        raise ProtocolError(f"Groupes hors de [0, {n_folds})")
    reference: Counter[Label] | None = None
    for k in range(n_folds):
        counts = Counter(label for label, g in zip(labels, groups, strict=True) if g == k)
        if reference is None:
            reference = counts
        elif counts != reference:
            raise ProtocolError(
                f"Groupe {k} déséquilibré : {dict(sorted(counts.items(), key=str))} "
                f"vs {dict(sorted(reference.items(), key=str))}"
            )


def cv_kth_central(segments: Sequence[int | None], source_ids: Sequence[str]) -> list[FoldSplit]:
    """
    Validation croisée 2-fold sur les segments centraux.

    Args:
      segments: Sequence[int | None]: indice de segment (1..4) de chaque échantillon
      source_ids: Sequence[str]: vidéo d'origine de chaque échantillon

    Returns:
      list[FoldSplit] : fold A (test = segment 2), fold B (test = segment 3)
    """
    by_source: dict[str, list[int | None]] = {}
    for seg, src in zip(segments, source_ids, strict=True):
        by_source.setdefault(src, []).append(seg)
    for src, segs in by_source.items():
        if sorted(s for s in segs if s is not None) != list(KTH_SEGMENTS) or None in segs:
            raise ProtocolError(f"Vidéo '{src}' : segments {segs}, attendu exactement 1..4")

    seg_array = np.asarray(segments, dtype=np.int64)
    folds = []
    for name, tested in zip(("A", "B"), KTH_TEST_SEGMENTS, strict=True):
        folds.append(
            FoldSplit(
                name=f"kth-{name}",
                train=np.flatnonzero(seg_array != tested).astype(np.int64),
                test=np.flatnonzero(seg_array == tested).astype(np.int64),
            )
        )
    check_disjoint_tests(folds)
    return folds


def holdout_split(
    n_samples: int, fraction: float, seed: int, train_equals_test: bool = False
) -> list[FoldSplit]:
    """Un seul découpage : 'fraction' des échantillons (mélangés) en test."""
    if not 0.0 < fraction < 1.0:
        raise InvalidParameterError(f"Fraction de test hors de ]0, 1[ : {fraction}")
    if n_samples < 2:  # noqa: PLR2004
        raise ProtocolError(f"Holdout impossible sur {n_samples} échantillon(s)")
    if train_equals_test:
        everything = np.arange(n_samples, dtype=np.int64)
        return [FoldSplit(name="holdout-self", train=everything, test=everything.copy())]
    order = np.random.default_rng(seed).permutation(n_samples).astype(np.int64)
    n_test = min(max(1, int(round(fraction * n_samples))), n_samples - 1)
    return [FoldSplit(name="holdout", train=np.sort(order[n_test:]), test=np.sort(order[:n_test]))]


def fixed_split(n_train: int, n_test: int) -> list[FoldSplit]:
    """Entraînement = n_train premiers échantillons, test = les n_test suivants."""
    return [
        FoldSplit(
            name="holdout",
            train=np.arange(n_train, dtype=np.int64),
            test=np.arange(n_train, n_train + n_test, dtype=np.int64),
        )
    ]
