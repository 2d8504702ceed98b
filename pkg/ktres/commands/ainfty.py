"""The ``ainfty`` subcommand: relation suites of the induced higher products."""
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
from ktres.services.ainfty import ainfty_report
from ktres.utils.tables import status_table

NAME = "ainfty"


def register(subparsers) -> argparse.ArgumentParser:
    parser = subparsers.add_parser(
        NAME, help="Check the A-infinity and C-infinity relations of mu_n"
    )
    add_resolution_arguments(parser)
    add_psi_arguments(parser)
    add_output_arguments(parser)
    parser.add_argument("--n-max", type=int, default=4)
    parser.add_argument("--cinfty-n-max", type=int, default=4)
    parser.set_defaults(handler=run)
    return parser


def run(config: RunConfig) -> int:
    res = build_resolution(config)
    table = build_table(config, res)
    report = ainfty_report(
        table, config.n_max, config.cinfty_n_max, seed=config.seed
    )

    rows = [
        {
            "relation": r.relation,
            "n": r.n,
            "i": "" if r.i is None else r.i,
            "tuples": r.checked,
            "status": verdict(r.passed),
        }
        for r in report.ainfty + report.cinfty
    ]
    lines = [status_table(rows)]
    failed = [r for r in report.ainfty + report.cinfty if not r.passed]
    if failed:
        lines.append(f"  first counterexample: {failed[0].counterexample}")
    lines += ["", "Nonzero higher products on generators"]
    lines += [
        f"mu_{v.n}({', '.join(v.arguments)}) = {v.value}" for v in report.nonzero_mu
    ] or ["(none)"]
    lines += ["", f"Relations: {verdict(report.passed)}"]
    emit(config, report, "\n".join(lines))
    return exit_code(report.passed)
