"""The ``resolve`` subcommand: build, validate and save a free resolution."""
import argparse
from pathlib import Path

from ktres.commands.common import (
    add_output_arguments,
    add_resolution_arguments,
    build_resolution,
    emit,
    exit_code,
    verdict,
)
from ktres.load import resolution_to_file, write_model
from ktres.models.run_config import RunConfig
from ktres.services.resolution import describe, format_ideal, validate
from ktres.utils.tables import rank_table, status_table

NAME = "resolve"


def register(subparsers) -> argparse.ArgumentParser:
    parser = subparsers.add_parser(
        NAME, help="Build a free resolution of O/I and check it"
    )
    add_resolution_arguments(parser)
    add_output_arguments(parser)
    parser.add_argument("--out", type=Path, help="Write the resolution file here")
    parser.set_defaults(handler=run)
    return parser


def run(config: RunConfig) -> int:
    """Validate the resolution, print the rank table and save it to ``--out``."""
    res = build_resolution(config)
    report = validate(res)
    if config.out is not None:
        write_model(resolution_to_file(res), config.out)

    rows = [
        {
            "check": c.name,
            "degree": "" if c.degree is None else c.degree,
            "status": verdict(c.passed),
            "detail": c.detail or "",
        }
        for c in report.checks
    ]
    text = "\n".join(
        [
            f"Ideal: {', '.join(format_ideal(res))} ({res.kind} resolution)",
            "",
            rank_table(dict(enumerate(res.ranks, start=1)), describe(res)),
            "",
            status_table(rows),
            "",
            f"Minimal at the origin: {'yes' if report.minimal else 'no'}",
            f"Truncated: {'yes' if report.truncated else 'no'}",
            f"Validation: {verdict(report.passed)}",
        ]
    )
    emit(config, report, text)
    return exit_code(report.passed)
