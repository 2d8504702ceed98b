import pytest

from ktres.algebra.freemod import ONE, Gen, ModuleElement
from ktres.algebra.trees import Node
from ktres.exceptions import InputError
from ktres.services.ainfty import (
    AInftyStructure,
    ainfty_report,
    build_kn,
    generator_tuples,
    mu_n,
    mu_n_via_kn,
    random_mixed_tuples,
    verify_ainfty,
    verify_cinfty,
)
from ktres.services.psi import PsiTable

A = Gen(1, 0, "a")
B = Gen(1, 1, "b")
C = Gen(1, 2, "c")
D = Gen(1, 3, "d")
P = Gen(2, 0, "p")
Q = Gen(2, 1, "q")

DECORATIONS = [
    (A,),
    (A, B),
    (A, P),
    (A, B, C),
    (P, A, Q),
    (A, B, C, D),
    (A, P, B, Q),
    (A, B, C, D, P),
]


@pytest.mark.parametrize("decorations", DECORATIONS)
def test_kn_recursion_matches_closed_form(decorations):
    recursive = build_kn(decorations)
    closed = build_kn(decorations, method="closed")
    assert recursive.value == closed.value
    assert all(c in (1, -1) for c in recursive.value.values())


def test_kn_small_values():
    assert build_kn([A]).value == {A: 1}
    # (-1)^{|a|} for the only split
    assert build_kn([A, B]).value == {Node((A, B)): -1}
    assert build_kn([P, A]).value == {Node((P, A)): 1}
    k4 = build_kn([A, B, C, D])
    assert len(k4.value) == 5
    assert k4.n == 4
    assert k4.degree == 4 + 3
    with pytest.raises(InputError):
        build_kn([])


@pytest.mark.parametrize("decorations", DECORATIONS)
def test_kn_is_a_cycle(decorations):
    """
    Test that the tree differential kills k_n.

    Parameters
    ----------
    decorations : Tuple[Gen, ...]
        Leaves of k_n.

    Returns
    -------
    None
    """
    assert build_kn(decorations).boundary() == {}


def test_generator_tuples():
    assert list(generator_tuples([A, P], 2, 3)) == [(A, A), (A, P), (P, A)]
    assert list(generator_tuples([A, P], 0, 0)) == [()]
    assert list(generator_tuples([P], 2, 3)) == []


def test_low_arity_products(square_res, square_table):
    structure = AInftyStructure(square_table)
    pixx, pixy = square_res.gen("pixx"), square_res.gen("pixy")
    a = ModuleElement.generator(pixx, square_res.ring)
    b = ModuleElement.generator(pixy, square_res.ring)
    unit = ModuleElement.scalar(square_res.ring.one)
    assert structure.mu([a]) == -square_res.d(a)
    assert structure.mu([unit, a]) == a
    assert structure.mu([a, unit]) == a
    assert structure.mu([a, b]) == square_table.evaluate(Node((pixx, pixy)))
    assert not structure.mu([unit, a, b])
    assert structure.degree_bound == 3


def test_mu_via_kn_agrees(square_res, square_table):
    x, y = square_res.ring.gens
    pixx, pixy, piyy = (square_res.gen(n) for n in ("pixx", "pixy", "piyy"))
    args = [
        ModuleElement({pixx: x, ONE: y}),
        ModuleElement({pixy: square_res.ring.one}),
        ModuleElement({piyy: y}),
    ]
    assert mu_n(square_table, args) == mu_n_via_kn(square_table, args)
    assert mu_n(square_table, args[:2]) == mu_n_via_kn(square_table, args[:2])


def test_random_tuples_are_seeded(square_res, square_table):
    structure = AInftyStructure(square_table)
    basis = list(generator_tuples(square_res.generators(), 2, 3))
    first = random_mixed_tuples(structure, basis, 4, seed=3)
    assert first == random_mixed_tuples(structure, basis, 4, seed=3)
    assert len(first) == 4
    assert all(len(args) == 2 for args in first)
    assert random_mixed_tuples(structure, [], 4, seed=3) == []


def test_relations_on_square(square_table):
    """
    Test the higher associativity and shuffle relations of the constructed psi.

    Parameters
    ----------
    square_table : PsiTable
        Constructed psi table of <x^2, xy, y^2>.

    Returns
    -------
    None
    """
    ainfty = verify_ainfty(square_table, 4, samples=3)
    assert [r.n for r in ainfty] == [1, 2, 3, 4]
    assert all(r.passed for r in ainfty)
    cinfty = verify_cinfty(square_table, 3, samples=3)
    assert [(r.n, r.i) for r in cinfty] == [(2, 1), (3, 1), (3, 2)]
    assert all(r.passed for r in cinfty)


def test_relations_on_taylor_product(taylor_table):
    report = ainfty_report(taylor_table, n_max=4, cinfty_n_max=3, samples=2)
    assert report.passed
    # psi of a product vanishes off the corollas, so no binary tree survives
    assert report.nonzero_mu == []
    assert report.cinfty_n_max == 3


def test_wrong_binary_value_is_caught(square_res, square_table):
    pixx, pixy = square_res.gen("pixx"), square_res.gen("pixy")
    entries = dict(square_table.entries)
    broken = PsiTable(square_res, square_table.max_degree, entries=entries)
    key = Node((pixx, pixy))
    broken.entries[key] = broken.entries[key] * 2
    # mu_2 stays graded commutative: the sign comes from canonicalization
    assert all(r.passed for r in verify_cinfty(broken, 2, samples=0))
    ainfty = verify_ainfty(broken, 2, samples=0)
    assert not ainfty[1].passed
    assert ainfty[1].counterexample
