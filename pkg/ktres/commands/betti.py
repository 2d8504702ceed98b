"""The ``betti`` subcommand: reduced complex, b_i and minimality at the origin."""
import argparse

from ktres.commands.common import (
    add_output_arguments,
    add_psi_arguments,
    add_resolution_arguments,
    build_resolution,
    build_table,
    emit,
    exit_code,
    verdict,
)
from ktres.models.run_config import RunConfig
from ktres.services.delta import KTComplex
from ktres.services.koszul_tate import ExteriorKTComplex, KoszulTateComplex
from ktres.services.reduced import betti_report
from ktres.utils.tables import betti_table, status_table

NAME = "betti"


def register(subparsers) -> argparse.ArgumentParser:
    parser = subparsers.add_parser(
        NAME, help="Homology of the reduced complex and minimality"
    )
    add_resolution_arguments(parser)
    add_psi_arguments(parser)
    add_output_arguments(parser)
    parser.add_argument(
        "--kt",
        choices=["arborescent", "koszul"],
        default="arborescent",
        help="Which Koszul-Tate resolution to reduce",
    )
    parser.add_argument(
        "--witness", type=int, help="Certify the witness tree T_m for this m"
    )
    parser.set_defaults(handler=run)
    return parser


def run(config: RunConfig) -> int:
    """
    Print b_i next to the generator counts.

    The run fails when a b_i exceeds its generator count or when a requested
    witness certificate does not hold; a non-minimal resolution is a result,
    not a failure.
    """
    res = build_resolution(config)
    kt: KoszulTateComplex
    if config.kt == "koszul":
        kt = ExteriorKTComplex(res, config.max_degree)
    else:
        kt = KTComplex(build_table(config, res), config.max_degree)
    report = betti_report(kt, config.max_degree, config.witness)

    b = {i: value for i, value in enumerate(report.b) if value is not None}
    counts = {i: c for i, c in enumerate(report.generators) if c is not None}
    lines = [
        f"Reduced complex of the {report.kt} Koszul-Tate resolution, "
        f"generators up to degree {report.truncation_degree}",
        "",
        betti_table(b, counts),
        "",
        f"b_i <= generators: {verdict(report.rank_bound_ok)}",
        f"Minimal at the origin: {'yes' if report.minimal else 'no'}",
    ]
    if report.first_violation is not None:
        lines.append(f"First redundant generator: {report.first_violation}")
        rows = [v.model_dump() for v in report.violations]
        lines += ["", status_table(rows)]
    passed = report.rank_bound_ok
    if report.witness is not None:
        w = report.witness
        lines += [
            "",
            f"Witness T_{w.m} = {w.tree} (pair {w.pair}, degree {w.degree}): "
            f"closed={w.closed}, exact={w.exact}, {verdict(w.passed)}",
        ]
        passed = passed and w.passed
    emit(config, report, "\n".join(lines))
    return exit_code(passed)
