"""
Shared plumbing of the subcommands.

Argument groups used by several subcommands, and the two steps every
subcommand starts with: obtaining the resolution (from a file, a fixture or
an ideal) and obtaining the psi table (from a file or by construction).
"""
import argparse
import logging
from typing import Callable, List, Optional

from pydantic import BaseModel

from ktres.algebra.polyring import make_ring, parse_poly
from ktres.config import (
    DEFAULT_FIELD,
    DEFAULT_MAX_DEGREE,
    DEFAULT_MAX_LENGTH,
    DEFAULT_SEED,
)
from ktres.load import load_psi_table, load_resolution
from ktres.models.run_config import RunConfig
from ktres.services.psi import PsiTable, construct_psi, psi_from_dga
from ktres.services.resolution import (
    Resolution,
    build_koszul,
    build_taylor,
    resolve_ideal,
)
from ktres.utils.tables import timing_table
from ktres.utils.timings import get_timings

logger = logging.getLogger(__name__)

# Exit codes
EXIT_OK = 0
EXIT_FAILED = 2
EXIT_INPUT = 3

Handler = Callable[[RunConfig], int]


def comma_list(text: str) -> List[str]:
    """Split ``"x^2, x*y"`` into ``["x^2", "x*y"]``."""
    items = [item.strip() for item in text.split(",")]
    if not all(items):
        raise argparse.ArgumentTypeError(f"Empty item in {text!r}")
    return items


def add_resolution_arguments(parser: argparse.ArgumentParser) -> None:
    """Flags that select or build the resolution."""
    group = parser.add_argument_group("resolution")
    group.add_argument(
        "--resolution",
        help="Resolution file, or fixture:<name> for a bundled example",
    )
    group.add_argument("--vars", dest="variables", type=comma_list)
    group.add_argument("--ideal", type=comma_list, help="Comma-separated generators")
    group.add_argument("--field", default=DEFAULT_FIELD, help="QQ or GF(p)")
    group.add_argument(
        "--kind", choices=["generic", "koszul", "taylor"], default="generic"
    )
    group.add_argument(
        "--names", type=comma_list, help="Names of the degree-1 generators"
    )
    group.add_argument("--max-length", type=int, default=DEFAULT_MAX_LENGTH)


def add_psi_arguments(parser: argparse.ArgumentParser, with_file: bool = True) -> None:
    """Flags that select or build the psi table."""
    group = parser.add_argument_group("arborescent operations")
    if with_file:
        group.add_argument("--psi", help="Psi table file; constructed when absent")
    group.add_argument(
        "--backend", choices=["generic-lift", "dga"], default="generic-lift"
    )
    group.add_argument("--max-degree", type=int, default=DEFAULT_MAX_DEGREE)


def add_output_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--format", choices=["text", "json"], default="text")
    parser.add_argument("--seed", type=int, default=DEFAULT_SEED)


def build_resolution(config: RunConfig) -> Resolution:
    """
    The resolution a run works on.

    Parameters
    ----------
    config : RunConfig
        A file or fixture in ``resolution``, otherwise ``variables`` and
        ``ideal`` with the builder in ``kind``.

    Returns
    -------
    Resolution
        The resolution, not yet validated.
    """
    if config.resolution is not None:
        return load_resolution(config.resolution)
    assert config.variables is not None and config.ideal is not None
    ring = make_ring(tuple(config.variables), config.field)
    gens = [parse_poly(ring, g) for g in config.ideal]
    logger.info(f"Building the {config.kind} resolution of {len(gens)} generators")
    if config.kind == "koszul":
        return build_koszul(ring, gens)
    if config.kind == "taylor":
        return build_taylor(ring, gens)
    return resolve_ideal(ring, gens, config.max_length, config.names)


def build_table(
    config: RunConfig, res: Resolution, seed_table: Optional[PsiTable] = None
) -> PsiTable:
    """The psi table of a run: read from ``psi`` or built with ``backend``."""
    if config.psi is not None:
        return load_psi_table(config.psi, res)
    if config.backend == "dga":
        return psi_from_dga(res, config.max_degree)
    return construct_psi(res, config.max_degree, seed_table=seed_table)


def emit(config: RunConfig, report: BaseModel, text: str) -> None:
    """
    Print a report.

    JSON output is the report model alone, so that repeated runs print
    identical bytes; text output is followed by the timing table.
    """
    if config.format == "json":
        print(report.model_dump_json(indent=2))
        return
    print(text)
    print()
    print("Timings")
    print(timing_table(get_timings()))


def verdict(passed: bool) -> str:
    return "PASS" if passed else "FAIL"


def exit_code(passed: bool) -> int:
    return EXIT_OK if passed else EXIT_FAILED
