"""The ``kt`` subcommand: compute the arborescent operations and save them."""
import argparse
from collections import Counter
from pathlib import Path

from ktres.algebra.freemod import format_element
from ktres.algebra.trees import encode, tree_degree
from ktres.commands.common import (
    EXIT_FAILED,
    EXIT_OK,
    add_output_arguments,
    add_psi_arguments,
    add_resolution_arguments,
    build_resolution,
    build_table,
    emit,
    verdict,
)
from ktres.load import load_psi_table, psi_table_to_file, write_model
from ktres.models.run_config import RunConfig
from ktres.services.resolution import validate
from ktres.utils.tables import status_table

NAME = "kt"


def register(subparsers) -> argparse.ArgumentParser:
    parser = subparsers.add_parser(
        NAME, help="Compute psi so that the tree differential squares to zero"
    )
    add_resolution_arguments(parser)
    add_psi_arguments(parser, with_file=False)
    add_output_arguments(parser)
    parser.add_argument(
        "--seed-table", type=Path, help="Partial psi table to complete"
    )
    parser.add_argument("--out", type=Path, help="Write the psi table file here")
    parser.set_defaults(handler=run)
    return parser


def run(config: RunConfig) -> int:
    """Build the table on a valid resolution and write it to ``--out``."""
    res = build_resolution(config)
    validation = validate(res)
    if not validation.passed:
        failed = next(c for c in validation.checks if not c.passed)
        print(f"The resolution is not valid: {failed.name} fails ({failed.detail})")
        return EXIT_FAILED

    seed_table = None
    if config.seed_table is not None:
        seed_table = load_psi_table(config.seed_table, res)
    table = build_table(config, res, seed_table)
    document = psi_table_to_file(table)
    if config.out is not None:
        write_model(document, config.out)

    per_degree = Counter(tree_degree(tree) for tree in table.entries)
    rows = [
        {"degree": degree, "nonzero values": per_degree[degree]}
        for degree in sorted(per_degree)
    ]
    lines = [
        f"psi from the {config.backend} backend, complete up to tree degree "
        f"{table.max_degree}; zero above degree {table.vanishing_degree}",
        "",
        status_table(rows),
        "",
    ]
    lines += [
        f"psi{encode(tree)} = {format_element(value)}"
        for tree, value in table.sorted_entries()
    ]
    lines += ["", f"Construction: {verdict(True)}"]
    emit(config, document, "\n".join(lines))
    return EXIT_OK
