import pytest

from ktres.exceptions import InputError, NoWitnessError
from ktres.services.delta import KTComplex
from ktres.services.koszul_tate import ExteriorKTComplex
from ktres.services.psi import construct_psi
from ktres.services.reduced import (
    betti,
    betti_report,
    is_minimal,
    reduce_at_origin,
    witness_pair,
    witness_Tm,
    witness_tree,
)


@pytest.fixture(scope="module")
def taylor_reduced(taylor_kt):
    return reduce_at_origin(taylor_kt, 6)


def test_exterior_complex_of_regular_sequence(koszul_res):
    """
    Test the reduced complex of the Koszul complex of x^2, y^3.

    Parameters
    ----------
    koszul_res : Resolution
        Koszul complex of a regular sequence.

    Returns
    -------
    None
    """
    kt = ExteriorKTComplex(koszul_res, 6)
    report = betti_report(kt)
    assert report.kt == "koszul"
    assert report.b == [None, 2, 0, 0, 0, 0]
    assert report.generators == [None, 2, 0, 0, 0, 0]
    assert report.minimal
    assert report.first_violation is None
    assert report.rank_bound_ok
    assert report.witness is None


def test_exterior_complex_rejects_trees(koszul_res, taylor_res):
    kt = ExteriorKTComplex(koszul_res, 3)
    assert kt.generators(2) == []
    with pytest.raises(InputError):
        kt.linear_part(taylor_res.gen("e{1,2}"))


def test_reduced_taylor_complex(taylor_reduced):
    b = betti(taylor_reduced)
    assert sorted(b) == [1, 2, 3, 4, 5]
    assert b[1] == 3
    assert b[3] >= 1
    assert b[5] >= 1
    assert all(b[i] <= len(taylor_reduced.bases[i]) for i in b)
    assert not taylor_reduced.is_zero()


def test_taylor_arborescent_is_not_minimal(taylor_kt):
    """
    Test that the Taylor product yields unit coefficients.

    Both the Taylor differential of e{1,2,3} and psi of (e{1} e{3}) hit
    e{1,3} with coefficient one, since lcm(x^2, y^2) is x^2 y^2.

    Parameters
    ----------
    taylor_kt : KTComplex
        Arborescent resolution built on the Taylor product.

    Returns
    -------
    None
    """
    minimal, first, violations = is_minimal(taylor_kt, 3)
    assert not minimal
    assert first == "|e{1,3}|"
    sources = {v.generator for v in violations if v.term == "|e{1,3}|"}
    assert sources == {"|e{1,2,3}|", "(e{1} e{3})"}
    assert all(v.degree == 3 for v in violations)


def test_first_violation_of_generic_lift(square_kt):
    minimal, first, violations = is_minimal(square_kt, 5)
    assert not minimal
    assert first == "(pixx pixy piyy)"
    assert violations[0].term == first


def test_witness_tree(taylor_kt, taylor_reduced):
    assert witness_pair(taylor_kt) == (0, 1)
    e1, e2 = taylor_kt.resolution.gen("e{1}"), taylor_kt.resolution.gen("e{2}")
    assert witness_tree(taylor_kt, 0, (0, 1)) == e1
    report = witness_Tm(taylor_kt, 1, taylor_reduced)
    assert report.tree == "(e{1} e{2})"
    assert report.pair == (1, 2)
    assert report.degree == 3
    assert report.closed
    assert not report.exact
    assert report.passed
    assert witness_tree(taylor_kt, 2, (0, 1)).children[1] == e2


def test_witness_of_degree_five(taylor_kt, taylor_reduced):
    report = witness_Tm(taylor_kt, 2, taylor_reduced)
    assert report.tree == "(e{2} (e{1} e{2}))"
    assert report.degree == 5
    assert report.closed
    assert not report.exact
    assert report.passed


def test_witness_errors(koszul_res, taylor_kt, taylor_reduced):
    with pytest.raises(NoWitnessError):
        witness_pair(ExteriorKTComplex(koszul_res, 3))
    with pytest.raises(InputError):
        witness_Tm(taylor_kt, 3, taylor_reduced)
    with pytest.raises(InputError):
        witness_Tm(taylor_kt, -1, taylor_reduced)


def test_betti_does_not_depend_on_lift_order(square_res, square_kt):
    """
    Test that b_i survives a different choice of psi.

    Parameters
    ----------
    square_res : Resolution
        Resolution of <x^2, xy, y^2>.
    square_kt : KTComplex
        Arborescent resolution with the default lift order.

    Returns
    -------
    None
    """
    permuted = KTComplex(construct_psi(square_res, 5, lift_order_seed=3))
    expected = betti(reduce_at_origin(square_kt, 5))
    assert betti(reduce_at_origin(permuted, 5)) == expected
    assert expected[1] == 3


@pytest.mark.parametrize("name", ["koszul", "taylor"])
def test_minimality_three_ways(name, koszul_res, taylor_kt):
    kt = ExteriorKTComplex(koszul_res, 5) if name == "koszul" else taylor_kt
    reduced = reduce_at_origin(kt, 5)
    b = betti(reduced)
    counts = {i: len(reduced.bases[i]) for i in b}
    minimal, _, _ = is_minimal(kt, 5)
    assert minimal == reduced.is_zero() == (b == counts)
    assert minimal == (name == "koszul")
