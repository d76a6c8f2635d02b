# Copyright (c) 2026 Équipe photonic-rc
# Usage interne au projet photonic-rc

"""
Nom du module : orchestrator/resource_manager.py

Description :
Gestionnaire de ressources des runs : borne le nombre de travailleurs parallèles
(folds, cellules de balayage) et vérifie la taille de la matrice de transmission
avant de lancer un réservoir.

Utilisé par :
    experiment/engine.py
    orchestrator/sweep.py

Auteur : Équipe photonic-rc
"""

import logging

from joblib import cpu_count

from photonic_rc.models.errors import ResourceError

logger = logging.getLogger(__name__)

BYTES_PER_ELEMENT = 16  # parties réelle et imaginaire en float64


class ResourceManager:
    """Limites globales de parallélisme et de mémoire."""

    def __init__(
        self, max_workers: int | None = None, max_matrix_elements: int = 50_000_000
    ) -> None:
        """
        Args:
          max_workers: int | None:
            Plafond de travailleurs (None = nombre de cœurs)
          max_matrix_elements: int:
            Nombre maximal d'éléments complexes de la matrice de transmission
        """
        self.max_workers = max_workers or cpu_count()
        self.max_matrix_elements = max_matrix_elements

    def workers(self, requested: int, n_tasks: int) -> int:
        """
        Nombre de travailleurs effectif.

        Args:
          requested: int: valeur configurée (-1 = tous les cœurs)
          n_tasks: int: nombre de tâches indépendantes

        Returns:
          int dans [1, min(max_workers, n_tasks)]
        """
        wanted = self.max_workers if requested < 1 else requested
        return max(1, min(wanted, self.max_workers, n_tasks))

    def can_allocate(self, n_rows: int, n_cols: int) -> bool:
        return n_rows * n_cols <= self.max_matrix_elements

    def check_transmission(self, n_rows: int, n_cols: int) -> None:
        """ResourceError si la matrice dépasse le plafond ; journalise l'empreinte mémoire."""
        if not self.can_allocate(n_rows, n_cols):
            raise ResourceError(
                f"Matrice {n_rows} x {n_cols} ({n_rows * n_cols} éléments) au-delà du plafond "
                f"{self.max_matrix_elements}"
            )
        logger.debug(
            "Matrice %s x %s : %.1f Mo", n_rows, n_cols, n_rows * n_cols * BYTES_PER_ELEMENT / 1e6
        )
