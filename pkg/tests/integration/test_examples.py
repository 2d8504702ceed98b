"""End-to-end runs on the bundled resolutions and the Taylor product."""
import pytest

from ktres.algebra.freemod import ModuleElement
from ktres.algebra.trees import Node, tree_degree
from ktres.load import load_psi_table
from ktres.services.ainfty import (
    AInftyStructure,
    mu_n_via_kn,
    nonzero_mu,
    verify_ainfty,
)
from ktres.services.delta import KTComplex, verify_delta_squared
from ktres.services.homology import verify_homology
from ktres.services.psi import (
    PsiTable,
    audit_psi_table,
    construct_psi,
    psi_associator,
)
from ktres.services.resolution import validate
from ktres.services.retract import verify_retract


def _elements(res, *names):
    return [ModuleElement.generator(res.gen(n), res.ring) for n in names]


def test_square_pipeline(square_res, square_fixture_table):
    """
    Test validate, construct, verify and audit on <x^2, xy, y^2>.

    Parameters
    ----------
    square_res : Resolution
        Bundled resolution.
    square_fixture_table : PsiTable
        Bundled psi table.

    Returns
    -------
    None
    """
    assert validate(square_res).passed
    table = construct_psi(square_res, 5)
    kt = KTComplex(table)
    assert verify_delta_squared(kt).passed
    assert verify_retract(kt).passed
    assert verify_homology(kt, 2).passed
    audit = audit_psi_table(square_res, square_fixture_table)
    assert [e.status for e in audit.entries] == ["pass", "fail", "pass"]
    failed = audit.entries[1]
    assert failed.tree == "(pixx piyy)"
    assert failed.residual


@pytest.mark.slow
def test_square_xz_delta_squared(square_xz_res, square_xz_table):
    assert validate(square_xz_res).passed
    assert square_xz_table.vanishing_degree == 4
    report = verify_delta_squared(KTComplex(square_xz_table), 7)
    assert report.passed
    assert report.max_degree == 7


def test_square_xz_fixture_binary_entries(square_xz_res):
    fixture = load_psi_table("fixture:x2_xy_y2_xz", square_xz_res)
    audit = audit_psi_table(square_xz_res, fixture)
    binary = [e for e in audit.entries if e.degree == 3]
    assert len(binary) == 6
    assert all(e.status == "pass" for e in binary)


def test_nonassoc_associators(nonassoc_res, nonassoc_fixture_table):
    """
    Test that the binary operation is not associative on the bundled table.

    Parameters
    ----------
    nonassoc_res : Resolution
        Resolution of <x^2, xy, y^2z^2, zw, w^2>.
    nonassoc_fixture_table : PsiTable
        Bundled psi table.

    Returns
    -------
    None
    """
    _, y, z, _ = nonassoc_res.ring.gens
    a, c, e = _elements(nonassoc_res, "pia", "pic", "pie")
    (top,) = _elements(nonassoc_res, "piabde")
    boundary = nonassoc_res.d(top) * (y * z)
    assert psi_associator(nonassoc_fixture_table, a, e, c) == boundary
    assert psi_associator(nonassoc_fixture_table, a, c, e) == -boundary


def test_nonassoc_fixture_audit(nonassoc_res, nonassoc_fixture_table):
    audit = audit_psi_table(nonassoc_res, nonassoc_fixture_table)
    status = {e.tree: e.status for e in audit.entries}
    assert status["(pid pibe)"] == "pass"
    assert status["(pib pid pie)"] == "pass"
    assert status["(pia (pic pie))"] == "pass"
    binary = [e for e in audit.entries if e.degree == 3]
    assert len(binary) == 10
    assert audit.passed


@pytest.mark.slow
def test_nonassoc_ainfty(nonassoc_res, nonassoc_fixture_table):
    """
    Test the higher products of the bundled table.

    The only psi value on a binary tree with three leaves is the one on
    (pia (pie pic)), so mu_3 is nonzero on pia, pie, pic and cancels the
    associator there; mu_4 and mu_5 vanish on generators because their
    trees lie above the vanishing degree.

    Parameters
    ----------
    nonassoc_res : Resolution
        Resolution of <x^2, xy, y^2z^2, zw, w^2>.
    nonassoc_fixture_table : PsiTable
        Bundled psi table.

    Returns
    -------
    None
    """
    table = nonassoc_fixture_table
    assert verify_delta_squared(KTComplex(table), 5).passed
    _, y, z, _ = nonassoc_res.ring.gens
    (top,) = _elements(nonassoc_res, "piabde")
    structure = AInftyStructure(table)
    args = _elements(nonassoc_res, "pia", "pie", "pic")
    mu3 = structure.mu(args)
    assert mu3 == top * (-y * z)
    assert mu3 == mu_n_via_kn(table, args)
    swapped = _elements(nonassoc_res, "pia", "pic", "pie")
    assert structure.mu(swapped) == top * (y * z)
    four = _elements(nonassoc_res, "pia", "pib", "pic", "pid")
    assert not structure.mu(four)
    assert not structure.mu(four + _elements(nonassoc_res, "pie"))
    assert all(r.passed for r in verify_ainfty(table, 5, samples=2))


@pytest.mark.slow
def test_nonassoc_seeded_completion(nonassoc_res, nonassoc_fixture_table):
    # keep the bundled binary values on degree-1 generators, complete the rest
    seed = PsiTable(
        nonassoc_res,
        max_degree=3,
        entries={
            tree: value
            for tree, value in nonassoc_fixture_table.entries.items()
            if tree_degree(tree) == 3
        },
    )
    table = construct_psi(nonassoc_res, 5, seed_table=seed)
    assert verify_delta_squared(KTComplex(table), 5).passed
    assert nonzero_mu(table, 3)


def test_taylor_pipeline(taylor_res, taylor_table, taylor_kt):
    report = validate(taylor_res)
    assert report.passed
    assert not report.minimal
    assert verify_delta_squared(taylor_kt, 7).passed
    assert audit_psi_table(taylor_res, taylor_table).passed
    pair = Node(tuple(taylor_res.gen(n) for n in ("e{1}", "e{2}")))
    assert taylor_table.evaluate(pair)
