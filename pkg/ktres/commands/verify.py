"""
The ``verify`` subcommand.

Checks that the tree differential squares to zero, the retract identities,
the homology certificate and, with ``--fixtures``, audits a hand-written psi
table entry by entry.
"""
import argparse
from pathlib import Path
from typing import Dict, List

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
from ktres.load import load_psi_table
from ktres.models.reports import CheckResult, VerifyReport
from ktres.models.run_config import RunConfig
from ktres.services.delta import KTComplex, verify_delta_squared
from ktres.services.homology import verify_homology
from ktres.services.psi import audit_psi_table
from ktres.services.retract import verify_retract
from ktres.utils.tables import status_table

NAME = "verify"


def register(subparsers) -> argparse.ArgumentParser:
    parser = subparsers.add_parser(
        NAME, help="Check delta^2 = 0, the retract and the homology"
    )
    add_resolution_arguments(parser)
    add_psi_arguments(parser)
    add_output_arguments(parser)
    parser.add_argument("--fixtures", type=Path, help="Psi table file to audit")
    parser.add_argument("--homology-degree", type=int, default=3)
    parser.set_defaults(handler=run)
    return parser


def _rows(checks: List[CheckResult]) -> List[Dict[str, object]]:
    return [
        {
            "identity": c.name,
            "degree": "" if c.degree is None else c.degree,
            "cases": c.checked,
            "status": verdict(c.passed),
        }
        for c in checks
    ]


def run(config: RunConfig) -> int:
    """Run every verifier and fail on the first identity that does not hold."""
    res = build_resolution(config)
    table = build_table(config, res)
    kt = KTComplex(table, config.max_degree)

    delta_squared = verify_delta_squared(kt)
    retract = verify_retract(kt)
    homology = verify_homology(kt, config.homology_degree)
    audit = None
    if config.fixtures is not None:
        audit = audit_psi_table(res, load_psi_table(config.fixtures, res))

    report = VerifyReport(
        passed=delta_squared.passed and retract.passed and homology.passed,
        delta_squared=delta_squared,
        retract=retract,
        homology=homology,
        audit=audit,
    )
    if audit is not None:
        report.passed = report.passed and audit.passed

    lines = [
        f"delta^2 = 0 on {delta_squared.checked} trees up to degree "
        f"{delta_squared.max_degree}: {verdict(delta_squared.passed)}"
    ]
    if delta_squared.first_failure is not None:
        failure = delta_squared.first_failure
        lines.append(
            f"  first failure {failure.tree} "
            f"[{' '.join(failure.decorations)}]: {failure.residual}"
        )
    lines += ["", "Retract", status_table(_rows(retract.checks))]
    lines += [
        "",
        f"Homology (up to degree {homology.degree_limit})",
        status_table(_rows(homology.checks)),
    ]
    failed = [c for c in retract.checks + homology.checks if not c.passed]
    if failed:
        lines.append(f"  first counterexample: {failed[0].detail}")
    if audit is not None:
        rows = [
            {
                "tree": e.tree,
                "degree": e.degree,
                "status": e.status,
                "residual": e.residual or "",
            }
            for e in audit.entries
        ]
        lines += ["", f"Audit of {config.fixtures}", status_table(rows)]
    lines += ["", f"Verification: {verdict(report.passed)}"]
    emit(config, report, "\n".join(lines))
    return exit_code(report.passed)
