"""
Command line module.

This module aggregates the subcommands (resolve, kt, verify, ainfty, betti)
into a single argument parser, validates the parsed flags into a
:class:`~ktres.models.run_config.RunConfig` and maps errors to exit codes.
"""
import argparse
import json
import logging
import sys
from typing import List, Optional

from pydantic import ValidationError

from ktres import __version__
from ktres.commands import ainfty, betti, kt, resolve, verify
from ktres.commands.common import EXIT_FAILED, EXIT_INPUT
from ktres.config import LOG_LEVEL
from ktres.exceptions import InputError, KTResError
from ktres.models.run_config import RunConfig

logger = logging.getLogger(__name__)

LOG_FORMAT = "%(asctime)s — %(name)s — %(levelname)s — %(message)s"
COMMANDS = [resolve, kt, verify, ainfty, betti]


def build_parser() -> argparse.ArgumentParser:
    """The ``ktres`` parser with one subparser per command."""
    parser = argparse.ArgumentParser(
        prog="ktres",
        description="Arborescent Koszul-Tate resolutions of O/I",
    )
    parser.add_argument("--version", action="version", version=__version__)
    verbosity = parser.add_mutually_exclusive_group()
    verbosity.add_argument("--verbose", action="store_true", help="Log DEBUG")
    verbosity.add_argument("--quiet", action="store_true", help="Log WARNING")
    subparsers = parser.add_subparsers(dest="command", required=True)
    for command in COMMANDS:
        command.register(subparsers)
    return parser


def configure_logging(verbose: bool = False, quiet: bool = False) -> None:
    """Log to stderr so that reports on stdout stay machine readable."""
    level = "DEBUG" if verbose else "WARNING" if quiet else LOG_LEVEL
    logging.basicConfig(level=level, format=LOG_FORMAT, stream=sys.stderr)
    logging.getLogger().setLevel(level)


def main(argv: Optional[List[str]] = None) -> int:
    """
    Parse the flags, run the subcommand and return its exit code.

    Returns
    -------
    int
        0 when every check passed, 2 when a check failed or a computation
        could not continue, 3 on invalid input.
    """
    args = build_parser().parse_args(argv)
    configure_logging(args.verbose, args.quiet)
    try:
        config = RunConfig.model_validate(vars(args))
        logger.debug(f"Run configuration: {config.model_dump_json()}")
        return args.handler(config)
    except (InputError, ValidationError, OSError, json.JSONDecodeError) as exc:
        logger.error(f"Invalid input: {exc}")
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except KTResError as exc:
        logger.error(f"{type(exc).__name__}: {exc}")
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAILED


def main_entry() -> None:
    """Console script entry point."""
    sys.exit(main())
