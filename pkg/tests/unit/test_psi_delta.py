from dataclasses import replace

import pytest

from ktres.algebra.forest import TreeAlgebraElement
from ktres.algebra.freemod import ModuleElement
from ktres.algebra.trees import Node, tree_degree
from ktres.exceptions import DgcaLawError, IncompletePsiTableError, InputError
from ktres.services.delta import KTComplex, compare_delta_methods, verify_delta_squared
from ktres.services.psi import (
    PsiTable,
    audit_psi_table,
    construct_psi,
    psi_from_dga,
    psi_vee,
)
from ktres.services.resolution import DgcaProduct


def _gens(res, *names):
    return [res.gen(n) for n in names]


def test_psi_of_trivial_tree_is_minus_d(square_res, square_table):
    x, _ = square_res.ring.gens
    (pixx,) = _gens(square_res, "pixx")
    assert square_table.evaluate(pixx) == -square_res.d_gen(pixx)


def test_binary_value_lifts_obstruction(square_res, square_table):
    """
    Test that d∘psi of a pair is (d a1) a2 - (d a2) a1.

    Parameters
    ----------
    square_res : Resolution
        Resolution of <x^2, xy, y^2>.
    square_table : PsiTable
        Constructed psi table.

    Returns
    -------
    None
    """
    x, y = square_res.ring.gens
    pixx, pixy = _gens(square_res, "pixx", "pixy")
    tree = Node((pixx, pixy))
    expected = ModuleElement({pixy: x**2, pixx: -x * y})
    assert square_res.d(square_table.evaluate(tree)) == expected
    assert square_table.obstructions[tree] == expected


def test_psi_vanishes_above_length_plus_one(square_table):
    assert square_table.vanishing_degree == 3
    assert all(tree_degree(t) <= 3 for t in square_table.entries)
    assert len(square_table.entries) == 3


def test_evaluate_sign_and_zero(square_res, square_table):
    pixx, pixy = _gens(square_res, "pixx", "pixy")
    assert square_table.evaluate(Node((pixy, pixx))) == -square_table.evaluate(
        Node((pixx, pixy))
    )
    assert not square_table.evaluate(Node((pixx, pixx)))
    # degree 6 is above the vanishing degree
    assert not square_table.evaluate(Node((pixx, pixy, Node((pixx, pixy)))))


def test_incomplete_table_raises(square_res):
    pixx, pixy = _gens(square_res, "pixx", "pixy")
    table = PsiTable(square_res, max_degree=2)
    with pytest.raises(IncompletePsiTableError):
        table.evaluate(Node((pixx, pixy)))


def test_set_value_checks_degree(square_res):
    x, _ = square_res.ring.gens
    pixx, pixy, pixxy = _gens(square_res, "pixx", "pixy", "pixxy")
    table = PsiTable(square_res, max_degree=3)
    with pytest.raises(InputError):
        table.set_value(Node((pixx, pixy)), ModuleElement({pixy: x}))
    key = table.set_value(Node((pixy, pixx)), ModuleElement({pixxy: x}))
    assert key == Node((pixx, pixy))
    assert table.entries[key] == ModuleElement({pixxy: -x})


def test_delta_on_trees(square_res, square_kt):
    x, _ = square_res.ring.gens
    pixx, pixy = _gens(square_res, "pixx", "pixy")
    assert square_kt.delta_tree(pixx) == TreeAlgebraElement.scalar(x**2)
    tree = Node((pixx, pixy))
    expected = TreeAlgebraElement.from_forest((pixx, pixy))
    for gen, coeff in square_kt.table.evaluate(tree):
        expected = expected - TreeAlgebraElement.from_tree(gen, coeff)
    assert square_kt.delta_tree(tree) == expected


def test_delta_squared_on_square(square_kt):
    report = verify_delta_squared(square_kt, 6)
    assert report.passed
    assert report.max_degree == 6
    assert report.checked > 0
    assert verify_delta_squared(square_kt, 5, method="recursive").passed


def test_closed_and_recursive_delta_agree(square_kt):
    trees = [t for degree in range(1, 7) for t in square_kt.generators(degree)]
    assert compare_delta_methods(square_kt, trees) == []


def test_obstruction_has_no_tree_terms(square_kt):
    for tree in square_kt.basis.nontrivial_trees(5):
        _, rest = square_kt.obstruction(tree)
        assert not rest


def test_lift_order_does_not_matter(square_res):
    table = construct_psi(square_res, 5, lift_order_seed=7)
    assert verify_delta_squared(KTComplex(table)).passed


def test_seed_table_is_kept(square_res, square_fixture_table):
    """
    Test that seeded values survive the construction.

    The bundled value on (pixx piyy) is kept even though it does not lift
    its obstruction; the audit reports it.

    Parameters
    ----------
    square_res : Resolution
        Resolution of <x^2, xy, y^2>.
    square_fixture_table : PsiTable
        Psi table read from the bundled fixture.

    Returns
    -------
    None
    """
    table = construct_psi(square_res, 4, seed_table=square_fixture_table)
    assert table.entries == square_fixture_table.entries
    audit = audit_psi_table(square_res, table)
    statuses = {e.tree: e.status for e in audit.entries}
    assert statuses == {
        "(pixx pixy)": "pass",
        "(pixy piyy)": "pass",
        "(pixx piyy)": "fail",
    }
    assert not audit.passed


def test_constructed_table_audits(square_res, square_table):
    audit = audit_psi_table(square_res, square_table)
    assert audit.passed
    assert len(audit.entries) == 3


def test_psi_from_dga_corollas(taylor_res, taylor_table):
    x, _ = taylor_res.ring.gens
    e1, e2 = _gens(taylor_res, "e{1}", "e{2}")
    e12 = taylor_res.gen("e{1,2}")
    a = ModuleElement.generator(e1, taylor_res.ring)
    b = ModuleElement.generator(e2, taylor_res.ring)
    assert taylor_table.source == "dga"
    assert psi_vee(taylor_table, a, b) == ModuleElement({e12: x})
    assert psi_vee(taylor_table, b, a) == ModuleElement({e12: -x})
    assert all(
        all(not isinstance(c, Node) for c in tree.children)
        for tree in taylor_table.entries
    )


def test_psi_from_dga_rejects_broken_product(taylor_res, square_res):
    e1, e2 = _gens(taylor_res, "e{1}", "e{2}")
    table = dict(taylor_res.product.table)
    table[(e1, e2)] = -table[(e1, e2)]
    broken = replace(taylor_res, product=DgcaProduct(table))
    with pytest.raises(DgcaLawError):
        psi_from_dga(broken)
    with pytest.raises(InputError):
        psi_from_dga(square_res)
