# -*- coding: utf-8 -*-

"""
Entry point for the command line.

    python main.py <command> (--fixture NAME | --file PATH [--kind KIND]) [options]
"""
import faulthandler
faulthandler.enable()  # Enable fault handler for better error reporting

# **** IMPORTS ****
import sys
import json
import logging
import argparse
from pathlib import Path
from typing import List, Optional

from treewalk import config, registry
from treewalk.util import discover_classes, parse_range
from treewalk.fixtures import read_weight_table
from treewalk.config import LOGGER_CONFIG
from treewalk.exceptions import ConfigError, TreewalkError
from treewalk.processes.app_process import ExperimentProcess, write_error
from treewalk.data_structures.data_structures.experiment_config.experiment_config import ExperimentConfig

# **** LOGGING ****
logger = logging.getLogger(__name__)

# **** FUNCTIONS ****
def global_exception_hook(exctype, value, tb):
    """Called for any unhandled exception that would crash the command."""
    logger.error("Unhandled exception in command", exc_info=(exctype, value, tb))
    sys.exit(1)
sys.excepthook = global_exception_hook


def register_commands() -> None:
    discovered = discover_classes(Path(__file__).parent / "treewalk" / "processes" / "processes", ExperimentProcess)
    for process in discovered:
        registry.register_processes({process})
    logger.debug(f"Registered commands: {', '.join(registry.command_names())}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="treewalk",
        description="Automorphisms of rooted trees, Schreier networks and random walk entropy bounds.",
    )
    parser.add_argument("--version", action="version", version=f"{config.TOOLKIT_NAME} {config.VERSION}")
    commands = parser.add_subparsers(dest="command", required=True, metavar="command")
    for name in registry.command_names():
        process = registry.fetch_process_by_name(name)
        sub = commands.add_parser(name, help=process.description, description=process.description)
        source = sub.add_mutually_exclusive_group(required=True)
        source.add_argument("--fixture", help=f"Named group: {', '.join(registry.known_fixtures())}")
        source.add_argument("--file", help="Automaton or directed-group definition file")
        sub.add_argument("--kind", choices=("automaton", "directed"), default="automaton", help="Format of --file")
        sub.add_argument("--weights", help="Weight table, one '<generator word> <p/q>' per line")
        sub.add_argument("--symmetric", action="store_true", help="Require the weight table to be symmetric")
        sub.add_argument("--levels", default="2..7", help="Level range a..b (default 2..7)")
        sub.add_argument("--k", default="1..10", help="Step range a..b (default 1..10)")
        sub.add_argument("--seed", type=int, default=None, help=f"Seed (default {config.DEFAULT_SEED})")
        sub.add_argument("--budget-keys", type=int, default=None, help="Triviality and support budget")
        sub.add_argument("--samples", type=int, default=0, help="Monte-Carlo samples (0 for the command default)")
        sub.add_argument("--out", default=None, help=f"Artifact directory (default {config.OUTPUT_DIR})")
    return parser


def build_document(args: argparse.Namespace) -> dict:
    weights = None
    if args.weights is not None:
        path = Path(args.weights)
        if not path.is_file():
            raise ConfigError(f"Weight table {path} does not exist", path=str(path))
        weights = read_weight_table(path.read_text(encoding="utf-8"))
    return ExperimentConfig.build(
        args.command,
        fixture=args.fixture,
        file=args.file,
        kind=args.kind,
        weights=weights,
        symmetric=args.symmetric,
        levels=parse_range(args.levels),
        k=parse_range(args.k),
        budget_keys=args.budget_keys,
        seed=args.seed,
        samples=args.samples,
    )


# **** MAIN ****
def main(argv: Optional[List[str]] = None) -> int:
    """
    Runs one command.

    Returns:
        int: 0 on success, otherwise the exit status of the raised error.
    """
    if not registry.process_registry:
        register_commands()
    args = build_parser().parse_args(argv)
    out_dir = Path(args.out) if args.out is not None else config.OUTPUT_DIR
    try:
        document = build_document(args)
    except TreewalkError as e:
        logger.error(f"Invalid configuration: {e.message}")
        write_error(out_dir, e)
        print(json.dumps(e.to_record(), sort_keys=True), file=sys.stderr)
        return e.exit_status

    process = registry.fetch_process_by_name(args.command)
    try:
        msg, _ = process.execute(document, out_dir=out_dir)
    except TreewalkError as e:
        # error.json and the failed summary are already written
        print(json.dumps(e.to_record(), sort_keys=True), file=sys.stderr)
        return e.exit_status
    print(msg)
    return 0


# ****
if __name__ == "__main__":
    import logging.config
    logging.config.dictConfig(LOGGER_CONFIG)
    sys.exit(main())
