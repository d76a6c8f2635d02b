# Copyright (c) 2026 Équipe photonic-rc
# Usage interne au projet photonic-rc

"""
Nom du module : cli/main.py

Description :
Point d'entrée principal (commande 'photonic-rc'). Ce fichier ne contient aucune
logique métier : il lit les arguments et délègue au contrôleur d'exécution.

Sous-commandes :
    run <config>                         expérience complète
    sweep <config> --axis <nom>          balayage d'ablation
    encode <fichier> [--n-bin N]         encodage panier d'un vecteur (débogage)
    dataset synth <type> --out DIR       tâche synthétique au format générique
    report <dossier>                     re-rendu des tableaux, tracés et résumé

Utilisé par :
    Interface CLI (lancement manuel ou script)

Auteur : Équipe photonic-rc
"""

import argparse
import logging
import sys
from typing import Any

from photonic_rc.controller.execution import (
    ExecutionController,
    encode_file,
    render_report,
    synth_dataset,
)
from photonic_rc.models.errors import ConfigError, PhotonicRcError
from photonic_rc.orchestrator.grid_scanner import AXES

logger = logging.getLogger(__name__)


def _scalar(text: str) -> Any:
    for cast in (int, float):
        try:
            return cast(text)
        except ValueError:
            continue
    if text.lower() in ("true", "false"):
        return text.lower() == "true"
    return text


def parse_assignments(items: list[str] | None) -> dict[str, Any]:
    """'section.cle=valeur' → {"section": {"cle": valeur}} (clé simple acceptée)."""
    out: dict[str, Any] = {}
    for item in items or []:
        key, sep, value = item.partition("=")
        if not sep or not key:
            raise ConfigError(f"Affectation invalide : {item!r} (attendu cle=valeur)")
        node = out
        parts = key.split(".")
        for part in parts[:-1]:
            node = node.setdefault(part, {})
        node[parts[-1]] = _scalar(value)
    return out


def _int_list(text: str | None) -> list[int] | None:
    return None if text is None else [int(v) for v in text.split(",") if v]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="photonic-rc", description="Simulateur de réservoir photonique profond binarisé"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="lance une expérience")
    run.add_argument("config", help="fichier YAML ou nom de préréglage")
    run.add_argument("--out", help="dossier de sortie")
    run.add_argument("--set", action="append", metavar="SECTION.CLE=VALEUR")

    sweep = sub.add_parser("sweep", help="balayage d'ablation")
    sweep.add_argument("config")
    sweep.add_argument("--axis", required=True, choices=AXES)
    sweep.add_argument("--depths", help="profondeurs, ex. 2,3,4,5")
    sweep.add_argument("--budgets", help="budgets (depth-vs-shallow), ex. 200,500")
    sweep.add_argument("--series", help="séries à garder, séparées par des virgules")
    sweep.add_argument("--out")
    sweep.add_argument("--set", action="append", metavar="SECTION.CLE=VALEUR")

    encode = sub.add_parser("encode", help="encodage panier d'un fichier de valeurs dans [0, 1]")
    encode.add_argument("file")
    encode.add_argument("--n-bin", type=int, default=10)

    dataset = sub.add_parser("dataset", help="outils de jeux de données")
    dsub = dataset.add_subparsers(dest="dataset_command", required=True)
    synth = dsub.add_parser("synth", help="génère une tâche synthétique")
    synth.add_argument("kind", choices=["delayed-recall", "noisy-channel-classification"])
    synth.add_argument("--out", required=True)
    synth.add_argument("--seed", type=int, default=0)
    synth.add_argument("--param", action="append", metavar="CLE=VALEUR")

    report = sub.add_parser("report", help="re-rendu d'un dossier de résultats")
    report.add_argument("results")
    return parser


def main(argv: list[str] | None = None) -> int:
    """
    Exécute une sous-commande.

    Args:
      argv: list[str] | None: arguments (défaut : sys.argv[1:])

    Returns:
      int : code de sortie (0 succès, 1 erreur du domaine)
    """
    args = build_parser().parse_args(argv)
    try:
        if args.command == "run":
            controller = ExecutionController.from_source(
                args.config, args.out, parse_assignments(args.set)
            )
            report = controller.run()
            print(
                f"{report.name} : précision {report.mean_accuracy} ± {report.std_accuracy} "
                f"→ {controller.output_dir}"
            )
            return 0 if not report.failed else 1
        if args.command == "sweep":
            controller = ExecutionController.from_source(
                args.config, args.out, parse_assignments(args.set)
            )
            grid: dict[str, list[Any]] = {}
            if args.depths:
                grid["depths"] = _int_list(args.depths) or []
            if args.budgets:
                grid["budgets"] = _int_list(args.budgets) or []
            if args.series:
                grid["series"] = args.series.split(",")
            result = controller.sweep(args.axis, grid or None)
            print(f"{args.axis} : {len(result.outcomes)} cellules → {controller.output_dir}")
            return 0
        if args.command == "encode":
            for line in encode_file(args.file, args.n_bin):
                print(line)
            return 0
        if args.command == "dataset":
            params = parse_assignments(args.param)
            manifest = synth_dataset(args.kind, args.out, args.seed, params)
            print(manifest)
            return 0
        if args.command == "report":
            print(render_report(args.results))
            return 0
    except PhotonicRcError as exc:
        logger.error("%s", exc)
        print(f"Erreur : {exc}", file=sys.stderr)
        return 1
    return 2


def run_cli() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run_cli()
