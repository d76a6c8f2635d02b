# Copyright (c) 2026 Équipe photonic-rc
# Usage interne au projet photonic-rc

"""
Nom du module : tracking/run_journal.py

Description :
Journal structuré des évènements d'un run (fold terminé ou échoué, cellule de
balayage terminée) dans un fichier JSON-lines horodaté en UTC.
Le journal sert au suivi ; il ne fait pas partie des artefacts déterministes.

Utilisé par :
    experiment/engine.py
    orchestrator/sweep.py

Auteur : Équipe photonic-rc
"""

from dataclasses import dataclass
from datetime import datetime, timezone
import json
from pathlib import Path
from typing import Any

UTC = timezone.utc  # datetime.UTC n'existe qu'à partir de Python 3.11


@dataclass
class RunEvent:
    kind: str  # "fold" ou "cell"
    name: str
    status: str  # "ok" ou "failed"
    meta: dict[str, Any] | None = None


class RunJournal:
    """Écrit un évènement par ligne, en ajout."""

    def __init__(self, path: str | Path = "results/run_journal.jsonl") -> None:
        """
        Args:
          path: str | Path:
            Fichier à écrire (dossier créé si absent)
        """
        self.path = Path(path)
        self.path.parent.mkdir(parents=True, exist_ok=True)

    def log_event(self, event: RunEvent) -> None:
        entry = {
            "timestamp": datetime.now(UTC).isoformat(),
            "kind": event.kind,
            "name": event.name,
            "status": event.status,
            "meta": event.meta or {},
        }
        with open(self.path, "a", encoding="utf-8") as f:
            f.write(json.dumps(entry, default=str) + "\n")

    def read(self) -> list[dict[str, Any]]:
        if not self.path.exists():
            return []
        with open(self.path, encoding="utf-8") as f:
            return [json.loads(line) for line in f if line.strip()]
