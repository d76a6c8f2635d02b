# Copyright (c) 2026 Équipe photonic-rc
# Usage interne au projet photonic-rc

"""
Nom du module : config/logging_setup.py

Description :
Installe la journalisation du processus : console lisible et, si un répertoire
est configuré, fichier JSON-lines (un objet par enregistrement).

Utilisé par :
    ExecutionController

Auteur : Équipe photonic-rc
"""

from datetime import datetime, timezone
import json
import logging
from pathlib import Path

from photonic_rc.config.models import LoggingConfig

UTC = timezone.utc  # datetime.UTC n'existe qu'à partir de Python 3.11

CONSOLE_FORMAT = "%(asctime)s %(levelname)s %(name)s : %(message)s"


class JsonLineFormatter(logging.Formatter):
    """Formate chaque enregistrement en une ligne JSON."""

    def format(self, record: logging.LogRecord) -> str:
        payload = {
            "timestamp": datetime.fromtimestamp(record.created, tz=UTC).isoformat(),
            "level": record.levelname,
            "logger": record.name,
            "message": record.getMessage(),
        }
        if record.exc_info:
            payload["exception"] = self.formatException(record.exc_info)
        return json.dumps(payload, ensure_ascii=False)


def configure_logging(config: LoggingConfig) -> None:
    """
    Configure le logger racine du paquet.

    Args:
      config: LoggingConfig: niveau, répertoire et nom du fichier JSON-lines
    """
    root = logging.getLogger("photonic_rc")
    root.setLevel(config.level.upper())
    root.handlers.clear()

    console = logging.StreamHandler()
    console.setFormatter(logging.Formatter(CONSOLE_FORMAT))
    root.addHandler(console)

    if config.dir:
        log_dir = Path(config.dir)
        log_dir.mkdir(parents=True, exist_ok=True)
        file_handler = logging.FileHandler(log_dir / config.filename, encoding="utf-8")
        file_handler.setFormatter(JsonLineFormatter())
        root.addHandler(file_handler)
