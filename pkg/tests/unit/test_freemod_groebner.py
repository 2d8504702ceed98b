from ktres.algebra.freemod import (
    ONE,
    FreeModule,
    ModuleElement,
    ModuleMap,
    format_element,
    from_vector,
    to_vector,
)
from ktres.algebra.groebner import (
    GroebnerBasis,
    in_submodule,
    kernel_generators,
    lift,
)
from ktres.services.resolution import UNIT_MODULE


def _total_degree(p):
    return max(sum(m) for m in p.monoms())


def _ideal_map(ring, gens):
    source = FreeModule(1, tuple(f"e{i}" for i in range(len(gens))))
    return ModuleMap(source, UNIT_MODULE, [list(gens)])


def test_module_element_arithmetic(ring_xy):
    """
    Test sums, scalar products and the pruning of zero coefficients.

    Parameters
    ----------
    ring_xy : PolyRing
        The ring QQ[x, y].

    Returns
    -------
    None
    """
    x, y = ring_xy.gens
    module = FreeModule(1, ("a", "b"))
    a, b = module.gens
    u = ModuleElement({a: x, b: y})
    v = ModuleElement({a: -x})
    assert (u + v) == ModuleElement({b: y})
    assert u - u == 0
    assert not ModuleElement({a: ring_xy.zero})
    assert (u * x)[a] == x**2
    assert format_element(ModuleElement({a: x, b: -ring_xy.one})) == "(x)*a - b"
    assert format_element(ModuleElement()) == "0"
    assert ModuleElement.scalar(x).scalar_part() == x
    assert ModuleElement({ONE: x, a: y}).module_part() == ModuleElement({a: y})


def test_vector_conversion(ring_xy):
    x, _ = ring_xy.gens
    module = FreeModule(2, ("p", "q"))
    element = ModuleElement({module.gens[1]: x})
    assert to_vector(element, module) == {1: x}
    assert from_vector({1: x}, module) == element


def test_module_map(ring_xy):
    x, y = ring_xy.gens
    d1 = _ideal_map(ring_xy, [x**2, x * y, y**2])
    e0, e1, _ = d1.source.gens
    assert d1(ModuleElement({e0: y, e1: -x})) == 0
    assert d1.column(0) == ModuleElement({ONE: x**2})
    assert not d1.is_zero()


def test_ideal_membership(ring_xy):
    x, y = ring_xy.gens
    ideal = [ModuleElement({ONE: g}) for g in (x**2, x * y, y**2)]
    member = ModuleElement({ONE: x**2 * y + y**3})
    assert in_submodule(member, ideal, UNIT_MODULE, ring_xy)
    assert not in_submodule(ModuleElement({ONE: x}), ideal, UNIT_MODULE, ring_xy)
    assert in_submodule(ModuleElement(), [], UNIT_MODULE, ring_xy)


def test_lift_recovers_combination(ring_xy):
    x, y = ring_xy.gens
    gens = [ModuleElement({ONE: g}) for g in (x**2, x * y, y**2)]
    target = ModuleElement({ONE: x**3 + x * y**2})
    coeffs = lift(target, gens, UNIT_MODULE, ring_xy)
    assert coeffs is not None
    total = sum((c * g[ONE] for c, g in zip(coeffs, gens)), ring_xy.zero)
    assert total == x**3 + x * y**2
    assert lift(ModuleElement({ONE: y}), gens, UNIT_MODULE, ring_xy) is None


def test_groebner_basis_of_principal_ideal(ring_xy):
    x, y = ring_xy.gens
    basis = GroebnerBasis(ring_xy, [{0: x * y}, {0: x * y**2}])
    assert basis.contains({0: x**2 * y})
    assert not basis.contains({0: x})
    assert len(basis.generators) == 1


def test_kernel_of_ideal_map(ring_xy):
    """
    Test that the syzygies of x^2, xy, y^2 are the two linear relations.

    Parameters
    ----------
    ring_xy : PolyRing
        The ring QQ[x, y].

    Returns
    -------
    None
    """
    x, y = ring_xy.gens
    d1 = _ideal_map(ring_xy, [x**2, x * y, y**2])
    kernel = kernel_generators(d1, ring_xy)
    assert len(kernel) == 2
    for k in kernel:
        assert d1(k) == 0
        assert all(_total_degree(c) == 1 for _, c in k)


def test_kernel_of_regular_sequence(ring_xy):
    x, y = ring_xy.gens
    d1 = _ideal_map(ring_xy, [x**2, y**3])
    kernel = kernel_generators(d1, ring_xy)
    assert len(kernel) == 1
    e0, e1 = d1.source.gens
    (k,) = kernel
    assert k[e0] * x**2 + k[e1] * y**3 == 0
    assert {_total_degree(k[e0]), _total_degree(k[e1])} == {3, 2}
