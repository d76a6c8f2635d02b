# Copyright (c) 2026 Équipe photonic-rc
# Usage interne au projet photonic-rc

"""
Nom du module : controller/execution.py

Description :
Contrôleur principal d'exécution. Centralise la préparation d'un run : résolution
de la configuration (fichier YAML ou préréglage), journalisation, dossier de
sortie, puis délègue au moteur d'expérience, au balayage ou au rendu de rapport.
Fournit aussi les utilitaires de la CLI (encodage d'un fichier, jeu synthétique).

Utilisé par :
    cli/main.py (point d'entrée du système)

Auteur : Équipe photonic-rc
"""

from dataclasses import dataclass
import logging
from pathlib import Path
from typing import Any

import numpy as np

from photonic_rc.config.loader import PRESETS, load_config, preset_config, with_overrides
from photonic_rc.config.logging_setup import configure_logging
from photonic_rc.config.models import ExperimentConfig, SyntheticConfig, SyntheticKind
from photonic_rc.encoding.basket import encode_vector, make_codec
from photonic_rc.experiment.engine import run_experiment
from photonic_rc.experiment.report import RunReport
from photonic_rc.models.errors import ConfigError, FormatError
from photonic_rc.orchestrator.sweep import SweepResult, run_sweep
from photonic_rc.providers.synthetic_provider import write_synthetic_task
from photonic_rc.reporting.report_renderer import ReportRenderer
from photonic_rc.tracking.run_journal import RunJournal

logger = logging.getLogger(__name__)


def resolve_config(source: str, overrides: dict[str, Any] | None = None) -> ExperimentConfig:
    """Fichier YAML existant, sinon nom de préréglage."""
    path = Path(source)
    if path.is_file():
        config = load_config(path)
    elif source in PRESETS:
        config = preset_config(source)
    else:
        raise ConfigError(
            f"Ni fichier ni préréglage : {source} (préréglages : {sorted(PRESETS)})"
        )
    return with_overrides(config, overrides) if overrides else config


@dataclass
class ExecutionController:
    """Contrôleur d'exécution unique pour run, sweep et report."""

    config: ExperimentConfig
    output_dir: Path

    @classmethod
    def from_source(
        cls, source: str, output_dir: str | None = None, overrides: dict[str, Any] | None = None
    ) -> "ExecutionController":
        config = resolve_config(source, overrides)
        configure_logging(config.logging)
        out = Path(output_dir) if output_dir else Path(config.output.dir) / config.output.name
        return cls(config=config, output_dir=out)

    def journal(self) -> RunJournal:
        return RunJournal(self.output_dir / "run_journal.jsonl")

    def run(self) -> RunReport:
        """Lance l'expérience et écrit ses artefacts."""
        report = run_experiment(self.config, output_dir=self.output_dir, journal=self.journal())
        ReportRenderer(self.output_dir).render()
        return report

    def sweep(self, axis: str, grid: dict[str, list[Any]] | None = None) -> SweepResult:
        """Lance un balayage d'ablation dans <sortie>/sweep_<axe>."""
        target = self.output_dir / f"sweep_{axis}"
        result = run_sweep(self.config, axis, grid, output_dir=target, journal=self.journal())
        ReportRenderer(target).render()
        return result


def render_report(results_dir: str | Path) -> Path:
    return ReportRenderer(results_dir).render()


def read_vector(path: str | Path) -> np.ndarray:
    """Vecteur numérique d'un fichier texte (séparateurs : virgules, blancs)."""
    text = Path(path).read_text(encoding="utf-8").replace(",", " ")
    try:
        return np.array([float(tok) for tok in text.split()], dtype=np.float64)
    except ValueError as exc:
        raise FormatError(f"Valeur non numérique dans {path}") from exc


def encode_file(path: str | Path, n_bin: int = 10) -> list[str]:
    """Encodage panier de chaque valeur du fichier, une chaîne de bits par valeur."""
    values = read_vector(path)
    codec = make_codec(n_bin)
    bits = encode_vector(values, codec).reshape(len(values), n_bin)
    return ["".join(str(int(b)) for b in row) for row in bits]


def synth_dataset(
    kind: SyntheticKind, out: str | Path, seed: int = 0, params: dict[str, Any] | None = None
) -> Path:
    """Écrit une tâche synthétique au format générique ; renvoie le manifeste."""
    try:
        config = SyntheticConfig(kind=kind, **(params or {}))
    except ValueError as exc:
        raise ConfigError(f"Paramètres synthétiques invalides : {exc}") from exc
    return write_synthetic_task(out, kind, config, seed)
