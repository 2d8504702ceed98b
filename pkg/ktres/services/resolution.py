"""
Resolution service module.

Free resolutions of O/I: the generic one driven by syzygies, the Koszul
complex and the Taylor complex with their graded-commutative products, and
the validation of all of them.
"""
import logging
from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Dict, List, Optional, Sequence, Tuple

from sympy.polys.rings import PolyElement, PolyRing

from ktres.algebra.freemod import (
    ONE,
    FreeModule,
    Gen,
    ModuleElement,
    ModuleMap,
    format_element,
)
from ktres.algebra.groebner import in_submodule, kernel_generators
from ktres.algebra.polyring import (
    constant_term,
    format_poly,
    leading_monomial,
    monomial_lcm,
    monomial_poly,
    monomial_quotient,
)
from ktres.exceptions import InputError
from ktres.models.reports import CheckResult, ValidationReport
from ktres.utils.timings import log_execution_time

logger = logging.getLogger(__name__)

UNIT_MODULE = FreeModule(0, ("1",))


@dataclass
class DgcaProduct:
    """
    Graded-commutative product on the generators of a resolution.

    Attributes
    ----------
    table : Dict[Tuple[Gen, Gen], ModuleElement]
        Products of ordered pairs of generators of positive degree; missing
        pairs multiply to zero. ``ONE`` acts as the unit.
    """

    table: Dict[Tuple[Gen, Gen], ModuleElement]

    def multiply_gens(self, a: Gen, b: Gen, ring: PolyRing) -> ModuleElement:
        if a == ONE:
            return ModuleElement.generator(b, ring)
        if b == ONE:
            return ModuleElement.generator(a, ring)
        return self.table.get((a, b), ModuleElement())

    def multiply(
        self, x: ModuleElement, y: ModuleElement, ring: PolyRing
    ) -> ModuleElement:
        """Bilinear extension of the product to module elements."""
        result = ModuleElement()
        for a, ca in x:
            for b, cb in y:
                result = result + self.multiply_gens(a, b, ring) * (ca * cb)
        return result


@dataclass
class Resolution:
    """
    A free resolution of O/I of finite length.

    Attributes
    ----------
    ring : PolyRing
        The polynomial ring O.
    ideal : List[PolyElement]
        Generators of I.
    modules : List[FreeModule]
        ``modules[i]`` is M_i; ``modules[0]`` is O with the generator ``1``.
    differentials : List[ModuleMap]
        ``differentials[i - 1]`` is d_i : M_i -> M_{i-1}.
    product : DgcaProduct, optional
        Graded-commutative associative product, when known.
    kind : str
        How the resolution was obtained.
    truncated : bool
        Set when the generic builder hit its length bound.
    """

    ring: PolyRing
    ideal: List[PolyElement]
    modules: List[FreeModule]
    differentials: List[ModuleMap]
    product: Optional[DgcaProduct] = None
    kind: str = "generic"
    truncated: bool = False
    _by_name: Dict[str, Gen] = field(init=False, repr=False)

    def __post_init__(self):
        if not self.modules or self.modules[0] != UNIT_MODULE:
            raise InputError("The degree-0 module of a resolution must be O")
        if len(self.differentials) != self.length:
            raise InputError(
                f"{self.length} modules of positive degree need as many differentials"
            )
        self._by_name = {}
        for module in self.modules[1:]:
            for gen in module.gens:
                if gen.name in self._by_name or gen.name == ONE.name:
                    raise InputError(f"Generator name {gen.name!r} is not unique")
                self._by_name[gen.name] = gen

    @property
    def length(self) -> int:
        return len(self.modules) - 1

    @property
    def ranks(self) -> List[int]:
        return [m.rank for m in self.modules[1:]]

    def module(self, degree: int) -> FreeModule:
        """M_degree; the zero module outside ``0..length``."""
        if 0 <= degree <= self.length:
            return self.modules[degree]
        return FreeModule(degree, ())

    def differential(self, degree: int) -> ModuleMap:
        """d_degree : M_degree -> M_{degree-1}."""
        if 1 <= degree <= self.length:
            return self.differentials[degree - 1]
        source, target = self.module(degree), self.module(degree - 1)
        return ModuleMap(source, target, [[] for _ in range(target.rank)])

    def generators(self) -> List[Gen]:
        """Generators of positive degree, by degree then index."""
        return [g for module in self.modules[1:] for g in module.gens]

    def gen(self, name: str) -> Gen:
        if name == ONE.name:
            return ONE
        try:
            return self._by_name[name]
        except KeyError:
            raise InputError(f"Unknown generator {name!r}")

    def d(self, element: ModuleElement) -> ModuleElement:
        """The differential on an element of M ⊕ O; it kills O."""
        result = ModuleElement()
        for gen, coeff in element:
            if gen.degree > 0:
                column = self.differential(gen.degree).column(gen.index)
                result = result + column * coeff
        return result

    def d_gen(self, gen: Gen) -> ModuleElement:
        if gen.degree == 0:
            return ModuleElement()
        return self.differential(gen.degree).column(gen.index)


def _auto_names(degree: int, rank: int) -> Tuple[str, ...]:
    return tuple(f"g{degree}_{j + 1}" for j in range(rank))


@log_execution_time
def resolve_ideal(
    ring: PolyRing,
    gens: Sequence[PolyElement],
    max_length: int,
    names: Optional[Sequence[str]] = None,
) -> Resolution:
    """
    Resolve O/I by iterated kernels.

    Parameters
    ----------
    ring : PolyRing
        The polynomial ring.
    gens : Sequence[PolyElement]
        Nonzero generators of I; M_1 is free on exactly these.
    max_length : int
        Maximal number of free modules.
    names : Sequence[str], optional
        Names of the degree-1 generators.

    Returns
    -------
    Resolution
        Each M_{k+1} is free on a minimal generating set of ker d_k; the
        ``truncated`` flag is set when the bound stops the construction.
    """
    if not gens or any(not g for g in gens):
        raise InputError("The ideal needs nonzero generators")
    if max_length < 1:
        raise InputError("max_length must be at least 1")
    first = FreeModule(1, tuple(names) if names else _auto_names(1, len(gens)))
    if first.rank != len(gens):
        raise InputError(f"{len(gens)} generators but {first.rank} names")
    modules = [UNIT_MODULE, first]
    differentials = [ModuleMap(first, UNIT_MODULE, [list(gens)])]
    truncated = False
    while True:
        kernel = kernel_generators(differentials[-1], ring)
        if not kernel:
            break
        degree = len(modules)
        if degree > max_length:
            truncated = True
            logger.warning(f"Resolution truncated at length {max_length}")
            break
        source = FreeModule(degree, _auto_names(degree, len(kernel)))
        target = modules[-1]
        matrix = [[k[g] or ring.zero for k in kernel] for g in target.gens]
        modules.append(source)
        differentials.append(ModuleMap(source, target, matrix))
        logger.info(f"M_{degree} has rank {source.rank}")
    return Resolution(
        ring, list(gens), modules, differentials, kind="generic", truncated=truncated
    )


def subset_name(subset: Sequence[int]) -> str:
    """Name of the generator indexed by a subset, e.g. ``e{1,3}``."""
    return "e{" + ",".join(str(i + 1) for i in subset) + "}"


def _merge_sign(left: Sequence[int], right: Sequence[int]) -> int:
    inversions = sum(1 for i in left for j in right if i > j)
    return -1 if inversions % 2 else 1


def _subset_resolution(
    ring: PolyRing,
    gens: Sequence[PolyElement],
    weight,
    kind: str,
) -> Resolution:
    """
    Shared builder of the Koszul and Taylor complexes.

    Generators are indexed by nonempty subsets of ``range(k)``.
    ``weight(subset)`` is the monomial label of a subset: the product of the
    generators for Koszul, their least common multiple for Taylor.
    """
    k = len(gens)
    subsets = {i: list(combinations(range(k), i)) for i in range(1, k + 1)}
    modules = [UNIT_MODULE] + [
        FreeModule(i, tuple(subset_name(s) for s in subsets[i]))
        for i in range(1, k + 1)
    ]
    position = {s: j for i in subsets for j, s in enumerate(subsets[i])}
    position[()] = 0

    differentials = []
    for i in range(1, k + 1):
        source, target = modules[i], modules[i - 1]
        matrix = [[ring.zero] * source.rank for _ in range(target.rank)]
        for j, subset in enumerate(subsets[i]):
            for r, element in enumerate(subset):
                face = tuple(s for s in subset if s != element)
                coeff = weight(subset, face)
                matrix[position[face]][j] += coeff if r % 2 == 0 else -coeff
        differentials.append(ModuleMap(source, target, matrix))

    table: Dict[Tuple[Gen, Gen], ModuleElement] = {}
    for a_subset, b_subset in product(position, repeat=2):
        if not a_subset or not b_subset or set(a_subset) & set(b_subset):
            continue
        union = tuple(sorted(a_subset + b_subset))
        coeff = weight.product(a_subset, b_subset, union)
        a = modules[len(a_subset)].gens[position[a_subset]]
        b = modules[len(b_subset)].gens[position[b_subset]]
        c = modules[len(union)].gens[position[union]]
        table[(a, b)] = ModuleElement({c: coeff * _merge_sign(a_subset, b_subset)})
    return Resolution(
        ring, list(gens), modules, differentials, product=DgcaProduct(table), kind=kind
    )


class _KoszulWeight:
    def __init__(self, ring: PolyRing, gens: Sequence[PolyElement]):
        self.ring, self.gens = ring, gens

    def __call__(self, subset, face):
        (missing,) = set(subset) - set(face)
        return self.gens[missing]

    def product(self, a, b, union):
        return self.ring.one


class _TaylorWeight:
    def __init__(self, ring: PolyRing, monomials: Sequence[PolyElement]):
        self.ring = ring
        self.exponents = [leading_monomial(m) for m in monomials]

    def label(self, subset) -> Tuple[int, ...]:
        lcm = self.ring.zero_monom
        for s in subset:
            lcm = monomial_lcm(lcm, self.exponents[s])
        return lcm

    def __call__(self, subset, face):
        quotient = monomial_quotient(self.label(subset), self.label(face))
        return monomial_poly(self.ring, quotient)

    def product(self, a, b, union):
        numerator = tuple(x + y for x, y in zip(self.label(a), self.label(b)))
        return monomial_poly(self.ring, monomial_quotient(numerator, self.label(union)))


@log_execution_time
def build_koszul(ring: PolyRing, gens: Sequence[PolyElement]) -> Resolution:
    """
    Koszul complex of a sequence, with the wedge product.

    The basis of the exterior power of degree i is given by increasing index
    tuples; d(e_S) = sum_r (-1)^r phi_{s_r} e_{S minus s_r}. The complex is a
    resolution exactly when the sequence is regular; that is not asserted
    here.
    """
    if not gens:
        raise InputError("The Koszul complex needs at least one element")
    return _subset_resolution(ring, gens, _KoszulWeight(ring, gens), "koszul")


@log_execution_time
def build_taylor(ring: PolyRing, monomials: Sequence[PolyElement]) -> Resolution:
    """
    Taylor resolution of a monomial ideal, with its product.

    d(e_T) = sum_j sign(j, T) (m_T / m_{T minus j}) e_{T minus j}, where m_T
    is the least common multiple of the monomials indexed by T, and
    e_S * e_T = sign(S, T) (m_S m_T / m_{S union T}) e_{S union T} for
    disjoint S and T.
    """
    if not monomials:
        raise InputError("The Taylor resolution needs at least one monomial")
    return _subset_resolution(ring, monomials, _TaylorWeight(ring, monomials), "taylor")


def check_dgca_laws(res: Resolution) -> List[CheckResult]:
    """Graded commutativity, associativity and Leibniz on generators."""
    if res.product is None:
        return []
    ring, prod = res.ring, res.product
    gens = res.generators()
    unit = [ONE] + gens

    def elem(g: Gen) -> ModuleElement:
        return ModuleElement.generator(g, ring)

    commutative = associative = leibniz = None
    count = [0, 0, 0]
    for a, b in product(gens, repeat=2):
        count[0] += 1
        lhs = prod.multiply_gens(a, b, ring)
        rhs = prod.multiply_gens(b, a, ring) * (-1 if a.degree * b.degree % 2 else 1)
        if commutative is None and lhs != rhs:
            commutative = f"{a.name}*{b.name}"
        count[2] += 1
        lhs = res.d(prod.multiply_gens(a, b, ring))
        rhs = prod.multiply(res.d_gen(a), elem(b), ring) + prod.multiply(
            elem(a), res.d_gen(b), ring
        ) * (-1 if a.degree % 2 else 1)
        if leibniz is None and lhs != rhs:
            leibniz = f"d({a.name}*{b.name})"
    for a, b, c in product(unit, repeat=3):
        if a.degree + b.degree + c.degree > res.length:
            continue
        count[1] += 1
        lhs = prod.multiply(prod.multiply_gens(a, b, ring), elem(c), ring)
        rhs = prod.multiply(elem(a), prod.multiply_gens(b, c, ring), ring)
        if associative is None and lhs != rhs:
            associative = f"({a.name}*{b.name})*{c.name}"
    return [
        CheckResult(
            name="graded commutativity",
            passed=commutative is None,
            checked=count[0],
            detail=commutative,
        ),
        CheckResult(
            name="associativity",
            passed=associative is None,
            checked=count[1],
            detail=associative,
        ),
        CheckResult(
            name="Leibniz rule",
            passed=leibniz is None,
            checked=count[2],
            detail=leibniz,
        ),
    ]


def is_minimal_resolution(res: Resolution) -> bool:
    """Whether d(M_{i+1}) lies in J M_i for the maximal ideal J at the origin."""
    for d in res.differentials[1:]:
        for row in d.matrix:
            if any(entry and constant_term(entry) for entry in row):
                return False
    return True


@log_execution_time
def validate(res: Resolution) -> ValidationReport:
    """
    Check that a complex is a free resolution of O/I.

    Parameters
    ----------
    res : Resolution
        The complex to check.

    Returns
    -------
    ValidationReport
        One entry per check: d∘d = 0 in every degree, the image of d_1 equals
        I, every kernel generator of d_i lifts through d_{i+1}, d_N is
        injective, and the product laws when a product is present.
    """
    ring = res.ring
    checks: List[CheckResult] = []
    for i in range(2, res.length + 1):
        ok = res.differential(i - 1).compose_is_zero(res.differential(i))
        checks.append(CheckResult(name="d∘d = 0", degree=i, passed=ok))

    columns = res.differential(1).columns() if res.length else []
    ideal = [ModuleElement({ONE: g}) for g in res.ideal]
    missing = [g for g in ideal if not in_submodule(g, columns, UNIT_MODULE, ring)]
    extra = [c for c in columns if not in_submodule(c, ideal, UNIT_MODULE, ring)]
    checks.append(
        CheckResult(
            name="image of d_1 is I",
            degree=1,
            passed=not missing and not extra,
            checked=len(ideal) + len(columns),
            detail=format_element((missing + extra)[0]) if missing or extra else None,
        )
    )

    for i in range(1, res.length + 1):
        d = res.differential(i)
        kernel = kernel_generators(d, ring)
        if i == res.length:
            checks.append(
                CheckResult(
                    name="d_N injective",
                    degree=i,
                    passed=not kernel or res.truncated,
                    checked=len(kernel),
                    detail=format_element(kernel[0]) if kernel else None,
                )
            )
            continue
        image = res.differential(i + 1).columns()
        bad = [k for k in kernel if not in_submodule(k, image, d.source, ring)]
        checks.append(
            CheckResult(
                name="ker d_i ⊆ im d_{i+1}",
                degree=i,
                passed=not bad,
                checked=len(kernel),
                detail=format_element(bad[0]) if bad else None,
            )
        )

    checks.extend(check_dgca_laws(res))
    report = ValidationReport(
        passed=all(c.passed for c in checks),
        length=res.length,
        ranks=res.ranks,
        truncated=res.truncated,
        minimal=is_minimal_resolution(res),
        checks=checks,
    )
    status = "passed" if report.passed else "FAILED"
    logger.info(f"Validation {status}: ranks {res.ranks}")
    return report


def describe(res: Resolution) -> Dict[int, List[str]]:
    """Generator names per degree (for rank tables)."""
    return {m.degree: list(m.names) for m in res.modules[1:]}


def format_ideal(res: Resolution) -> List[str]:
    return [format_poly(g) for g in res.ideal]
