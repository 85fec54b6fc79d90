"""
app/harness/cli.py

Point d'entrée en ligne de commande du harness.

Usage (depuis la racine du projet) :

    python -m app.harness.cli compare --config configs/haberman_srda.env
    python -m app.harness.cli sweep   --config configs/haberman_srda.env --alpha-min 1 --alpha-max 30
    python -m app.harness.cli noise   --config configs/haberman_srda.env
    python -m app.harness.cli lpmr    --config configs/haberman_srda.env --alpha-min -10 --alpha-max 40

Codes de sortie : 0 succès, 1 configuration, 2 données, 3 échec numérique.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import NoReturn

from app.config import configure_logging, load_experiment_config, settings
from app.errors import exit_code_for
from app.harness.experiment import run_alpha_sweep, run_comparison, run_lpmr, run_noise_study
from app.harness.report import write_text
from app.search.trace import table_to_csv

logger = logging.getLogger(__name__)


def parse_levels(text: str) -> list[tuple[float, float]]:
    """'0.05:1.0,0.1:1.0' -> [(0.05, 1.0), (0.1, 1.0)]"""
    levels = []
    for item in text.split(","):
        fraction, _, magnitude = item.partition(":")
        levels.append((float(fraction), float(magnitude or 1.0)))
    return levels


class HarnessArgumentParser(argparse.ArgumentParser):
    """Une erreur de ligne de commande est une erreur de configuration (code 1)."""

    def error(self, message: str) -> NoReturn:
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: erreur : {message}\n")


def parse_args(argv: list[str] | None = None) -> argparse.Namespace:
    parser = HarnessArgumentParser(
        description="Comparer réduction de features classique et réduction après DCG."
    )
    parser.add_argument("--log-level", type=str, default=None, help="Niveau de log (INFO, DEBUG...).")

    common = HarnessArgumentParser(add_help=False)
    common.add_argument("--config", type=str, required=True, help="Fichier de configuration DCG_*.")
    common.add_argument("--seed", type=int, default=None, help="Surcharge de DCG_SEED.")
    common.add_argument("--alpha-min", type=int, default=None, help="Borne basse de alpha.")
    common.add_argument("--alpha-max", type=int, default=None, help="Borne haute de alpha.")
    common.add_argument(
        "--strategy",
        type=str,
        choices=["fixed", "grid", "hill_climb", "sga"],
        default=None,
        help="Stratégie de recherche de alpha.",
    )
    common.add_argument("--output", type=str, default=None, help="Fichier de sortie.")

    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("compare", parents=[common], help="Baseline vs DCG (rapport JSON).")
    sub.add_parser("sweep", parents=[common], help="Table alpha,accuracy_percent.")
    noise = sub.add_parser("noise", parents=[common], help="Étude de sensibilité au bruit.")
    noise.add_argument("--levels", type=parse_levels, default=None, help="ex: 0.05:1.0,0.1:1.0")
    sub.add_parser("lpmr", parents=[common], help="Table de séparabilité / LPMR.")
    return parser.parse_args(argv)


def _default_output(command: str, name: str) -> Path:
    suffix = {"compare": "report.json", "noise": "noise.json", "sweep": "sweep.csv", "lpmr": "lpmr.csv"}
    return Path(settings.reports_dir) / f"{name}_{suffix[command]}"


def run(args: argparse.Namespace) -> int:
    # sweep et lpmr prennent les bornes telles quelles (0 non requis)
    scans = args.command in ("sweep", "lpmr")
    config = load_experiment_config(
        args.config,
        seed=args.seed,
        alpha_min=None if scans else args.alpha_min,
        alpha_max=None if scans else args.alpha_max,
        strategy=args.strategy,
    )
    alpha_min = config.alpha_min if args.alpha_min is None else args.alpha_min
    alpha_max = config.alpha_max if args.alpha_max is None else args.alpha_max
    output = Path(args.output) if args.output else _default_output(args.command, config.name)

    if args.command == "compare":
        report = run_comparison(config)
        write_text(output, report.to_json())
    elif args.command == "sweep":
        rows = run_alpha_sweep(config, alpha_min, alpha_max)
        write_text(output, table_to_csv(rows))
    elif args.command == "noise":
        study = run_noise_study(config, args.levels)
        write_text(output, study.to_json())
    else:
        report = run_lpmr(config, alpha_min, alpha_max)
        write_text(output, report.to_csv())
    return 0


def main(argv: list[str] | None = None) -> int:
    args = parse_args(argv)
    configure_logging(args.log_level)

    logger.info("=== Harness DCG : %s ===", args.command)
    try:
        code = run(args)
    except Exception as e:
        code = exit_code_for(e)
        logger.error("Échec (code %d) : %s", code, e)
        if code == 1 and not hasattr(e, "exit_code"):
            logger.exception("Erreur inattendue")
        return code

    logger.info("=== Terminé ✅ ===")
    return code


if __name__ == "__main__":
    sys.exit(main())
