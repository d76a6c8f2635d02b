# Copyright (c) 2026 Équipe photonic-rc
# Usage interne au projet photonic-rc

"""
Nom du script : runner_depth_trend.py

Description :
Diagnostic de tendance profondeur sur la tâche synthétique delayed-recall :
réservoir profond (L = 5) contre réservoir peu profond (L = 1, alpha 0.95) au
budget de 500 neurones, trois graines optiques. Diagnostic de rapport, pas un
critère bloquant : l'écart est signalé, jamais fatal.

Utilisé pour : vérification manuelle après modification de la dynamique

Auteur : Équipe photonic-rc
"""

import json
import sys

from photonic_rc.config.loader import preset_config
from photonic_rc.config.logging_setup import configure_logging
from photonic_rc.orchestrator.sweep import depth_trend_diagnostic


def main() -> None:
    """Affiche le verdict JSON du diagnostic."""
    config = preset_config("synthetic-recall")
    configure_logging(config.logging)
    verdict = depth_trend_diagnostic(config, budget=500, deep_depth=5, n_seeds=3)
    json.dump(verdict, sys.stdout, indent=2)
    print()


if __name__ == "__main__":
    main()
