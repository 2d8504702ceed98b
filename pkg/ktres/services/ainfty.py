"""
A-infinity module.

The products mu_n that psi induces on M ⊕ O, the elements k_n of the tree
module that organise them, and the checkers of the A-infinity and
C-infinity relations. Degrees are unshifted throughout.
"""
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Dict, Iterator, List, Literal, Optional, Sequence, Tuple

import numpy as np

from ktres.algebra.freemod import ONE, Gen, ModuleElement, format_element
from ktres.algebra.polyring import Scalar
from ktres.algebra.trees import (
    Node,
    Tree,
    TreeCombination,
    add_term,
    binary_trees,
    boundary_of,
    left_weight_P,
)
from ktres.config import DEFAULT_SEED, MAX_WORKERS
from ktres.exceptions import InputError
from ktres.models.reports import AInftyReport, MuValue, RelationResult
from ktres.services.psi import PsiTable
from ktres.utils.signs import koszul_sign, shuffles, signature
from ktres.utils.timings import log_execution_time

logger = logging.getLogger(__name__)

KnMethod = Literal["recursive", "closed"]


def _parity_sign(exponent: int) -> int:
    return -1 if exponent % 2 else 1


@dataclass(frozen=True)
class KnElement:
    """
    The element k_n of the tree module on given decorations.

    Attributes
    ----------
    decorations : Tuple[Gen, ...]
        The leaves a_1, ..., a_n, in order.
    value : Dict[Tree, int]
        Signed ordered binary trees; every shape appears once with
        coefficient 1 or -1.
    """

    decorations: Tuple[Gen, ...]
    value: Dict[Tree, int]

    @property
    def n(self) -> int:
        return len(self.decorations)

    @property
    def degree(self) -> int:
        return sum(g.degree for g in self.decorations) + self.n - 1

    def boundary(self) -> TreeCombination:
        """The tree differential of k_n; zero for every n."""
        return boundary_of(self.value)


@lru_cache(maxsize=None)
def _kn_recursive(decorations: Tuple[Gen, ...]) -> Tuple[Tuple[Tree, int], ...]:
    if len(decorations) == 1:
        return ((decorations[0], 1),)
    result: Dict[Tree, int] = {}
    for j in range(1, len(decorations)):
        left, right = decorations[:j], decorations[j:]
        sign = _parity_sign(sum(g.degree for g in left) + j - 1)
        for s, c in _kn_recursive(left):
            for u, e in _kn_recursive(right):
                add_term(result, Node((s, u)), sign * c * e)
    return tuple(result.items())


def _kn_closed(decorations: Tuple[Gen, ...]) -> Dict[Tree, int]:
    return {
        tree: _parity_sign(left_weight_P(tree)) for tree in binary_trees(decorations)
    }


def build_kn(decorations: Sequence[Gen], method: KnMethod = "recursive") -> KnElement:
    """
    k_n on the given decorations.

    The recursion starts from k_1 = |a_1| and grafts k_j ⊗ k_{n-j} with the
    sign (-1)^{|k_j|}; the closed form is the sum over all ordered binary
    trees t with the sign (-1)^{P(t)}, P the total degree of left subtrees.
    """
    decorations = tuple(decorations)
    if not decorations:
        raise InputError("k_n needs at least one decoration")
    if method == "recursive":
        value = dict(_kn_recursive(decorations))
    else:
        value = _kn_closed(decorations)
    return KnElement(decorations, value)


def _homogeneous_parts(x: ModuleElement) -> List[Tuple[int, ModuleElement]]:
    parts: Dict[int, Dict[Gen, Scalar]] = {}
    for gen, coeff in x:
        parts.setdefault(gen.degree, {})[gen] = coeff
    return [(d, ModuleElement(parts[d])) for d in sorted(parts)]


class AInftyStructure:
    """
    The products mu_n on M ⊕ O defined by a psi table.

    mu_1 is -d, mu_2 is the O-bilinear product extended by psi on the
    two-leaf tree, and mu_n for n >= 3 is the signed sum of psi over the
    ordered binary trees with n leaves; it vanishes as soon as one argument
    lies in O.
    """

    def __init__(self, table: PsiTable):
        self.table = table
        self.resolution = table.resolution
        self._cache: Dict[Tuple[Gen, ...], ModuleElement] = {}

    @property
    def degree_bound(self) -> int:
        """Highest tree degree on which psi can be evaluated."""
        return min(self.table.max_degree, self.table.vanishing_degree)

    def mu_gens(self, gens: Tuple[Gen, ...]) -> ModuleElement:
        """mu_n on generators of M ⊕ O."""
        if gens not in self._cache:
            self._cache[gens] = self._mu_gens(gens)
        return self._cache[gens]

    def _mu_gens(self, gens: Tuple[Gen, ...]) -> ModuleElement:
        ring = self.resolution.ring
        n = len(gens)
        if n == 1:
            return -self.resolution.d_gen(gens[0])
        if n == 2:
            a, b = gens
            if a == ONE:
                return ModuleElement.generator(b, ring)
            if b == ONE:
                return ModuleElement.generator(a, ring)
            return self.table.evaluate(Node(gens))
        if ONE in gens:
            return ModuleElement()
        eta = sum((n - i) * g.degree for i, g in enumerate(gens, start=1))
        result = ModuleElement()
        for tree in binary_trees(gens):
            sign = _parity_sign(left_weight_P(tree) + eta)
            result = result + self.table.evaluate(tree) * sign
        return result

    def mu(self, args: Sequence[ModuleElement]) -> ModuleElement:
        """mu_n extended multilinearly to elements of M ⊕ O."""
        result = ModuleElement()
        for terms in product(*(list(a) for a in args)):
            coeff: Scalar = 1
            for _, c in terms:
                coeff = coeff * c
            result = result + self.mu_gens(tuple(g for g, _ in terms)) * coeff
        return result

    def mu_via_kn(self, args: Sequence[ModuleElement]) -> ModuleElement:
        """
        mu_n for n >= 3 as eta times psi of k_n.

        eta = (-1)^{sum_r |a_r| (n - r)}; the value of k_n comes from its
        recursion.
        """
        n = len(args)
        if n < 3:
            return self.mu(args)
        result = ModuleElement()
        for terms in product(*(list(a) for a in args)):
            gens = tuple(g for g, _ in terms)
            if ONE in gens:
                continue
            coeff: Scalar = 1
            for _, c in terms:
                coeff = coeff * c
            eta = _parity_sign(
                sum((n - r) * g.degree for r, g in enumerate(gens, start=1))
            )
            for tree, sign in build_kn(gens).value.items():
                result = result + self.table.evaluate(tree) * (sign * eta * coeff)
        return result

    def ainfty_residual(self, args: Sequence[ModuleElement]) -> ModuleElement:
        """
        Left-hand side of the higher associativity relation of arity n.

        sum over i + j + k = n of (-1)^{i + jk} mu_{i+1+k}(a_1..a_i,
        mu_j(a_{i+1}..a_{i+j}), ..., a_n), each term carrying the Koszul sign
        (-1)^{(j-2)(|a_1| + ... + |a_i|)} of mu_j passing the first i
        arguments.
        """
        n = len(args)
        result = ModuleElement()
        for parts in product(*(_homogeneous_parts(a) for a in args)):
            degrees = [d for d, _ in parts]
            elements = [x for _, x in parts]
            for j in range(1, n + 1):
                for i in range(0, n - j + 1):
                    k = n - i - j
                    sign = _parity_sign(i + j * k + (j - 2) * sum(degrees[:i]))
                    inner = self.mu(elements[i : i + j])
                    if not inner:
                        continue
                    outer = elements[:i] + [inner] + elements[i + j :]
                    result = result + self.mu(outer) * sign
        return result

    def cinfty_residual(self, args: Sequence[ModuleElement], i: int) -> ModuleElement:
        """
        Shuffle sum of mu_n for the (i, n - i) shuffles.

        sum over shuffles s of e(s) theta(s, a) mu_n(a_s), with e the
        signature and theta the Koszul sign of the unshifted degrees.
        """
        n = len(args)
        result = ModuleElement()
        for parts in product(*(_homogeneous_parts(a) for a in args)):
            degrees = [d for d, _ in parts]
            elements = [x for _, x in parts]
            for shuffle in shuffles(i, n):
                sign = signature(shuffle) * koszul_sign(degrees, shuffle)
                result = result + self.mu([elements[p] for p in shuffle]) * sign
        return result


def mu_n(table: PsiTable, args: Sequence[ModuleElement]) -> ModuleElement:
    return AInftyStructure(table).mu(args)


def mu_n_via_kn(table: PsiTable, args: Sequence[ModuleElement]) -> ModuleElement:
    return AInftyStructure(table).mu_via_kn(args)


def generator_tuples(
    gens: Sequence[Gen], n: int, budget: int
) -> Iterator[Tuple[Gen, ...]]:
    """Ordered n-tuples of generators whose degrees add up to at most ``budget``."""
    if n == 0:
        yield ()
        return
    for gen in gens:
        if gen.degree <= budget:
            for rest in generator_tuples(gens, n - 1, budget - gen.degree):
                yield (gen,) + rest


def _random_poly(rng: np.random.Generator, ring):
    value = ring(int(rng.integers(-2, 3)))
    for x in ring.gens:
        value += int(rng.integers(-2, 3)) * x
    return value


def random_mixed_tuples(
    structure: AInftyStructure,
    basis: List[Tuple[Gen, ...]],
    count: int,
    seed: int,
) -> List[List[ModuleElement]]:
    """
    Random arguments p * a + q * 1 built on basis tuples.

    The polynomial coefficients p and q are affine with small integer
    coefficients, drawn from a seeded generator.
    """
    if not basis:
        return []
    ring = structure.resolution.ring
    rng = np.random.default_rng(seed)
    tuples = []
    for _ in range(count):
        gens = basis[int(rng.integers(len(basis)))]
        tuples.append(
            [
                ModuleElement({g: _random_poly(rng, ring)})
                + ModuleElement.scalar(_random_poly(rng, ring))
                for g in gens
            ]
        )
    return tuples


def _describe(args: Sequence[ModuleElement], residual: ModuleElement) -> str:
    arguments = ", ".join(format_element(a) for a in args)
    return f"({arguments}) -> {format_element(residual)}"


def _run_suite(
    structure: AInftyStructure,
    relation: Literal["ainfty", "cinfty"],
    n: int,
    i: Optional[int],
    samples: int,
    seed: int,
) -> RelationResult:
    res = structure.resolution
    gens = [ONE] + res.generators()
    budget = structure.degree_bound - n + 1
    basis = list(generator_tuples(gens, n, budget))
    cases = [
        [ModuleElement.generator(g, res.ring) for g in gens] for gens in basis
    ] + random_mixed_tuples(structure, basis, samples, seed)

    def residual(args: List[ModuleElement]) -> ModuleElement:
        if relation == "ainfty":
            return structure.ainfty_residual(args)
        assert i is not None
        return structure.cinfty_residual(args, i)

    with ThreadPoolExecutor(max_workers=MAX_WORKERS) as executor:
        residuals = list(executor.map(residual, cases))
    counterexample = next(
        (_describe(a, r) for a, r in zip(cases, residuals) if r), None
    )
    result = RelationResult(
        relation=relation,
        n=n,
        i=i,
        checked=len(cases),
        passed=counterexample is None,
        counterexample=counterexample,
    )
    if counterexample:
        logger.warning(f"{relation} relation fails for n={n}: {counterexample}")
    else:
        logger.info(f"{relation} relation holds for n={n} on {len(cases)} tuples")
    return result


@log_execution_time
def verify_ainfty(
    table: PsiTable, n_max: int, samples: int = 5, seed: int = DEFAULT_SEED
) -> List[RelationResult]:
    """
    Higher associativity for every arity up to ``n_max``.

    Every tuple of generators of M ⊕ O inside the degree truncation is
    checked, together with ``samples`` random tuples with polynomial
    coefficients per arity.
    """
    structure = AInftyStructure(table)
    return [
        _run_suite(structure, "ainfty", n, None, samples, seed + n)
        for n in range(1, n_max + 1)
    ]


@log_execution_time
def verify_cinfty(
    table: PsiTable, n_max: int, samples: int = 5, seed: int = DEFAULT_SEED
) -> List[RelationResult]:
    """Vanishing of mu_n on shuffles, for 2 <= n <= n_max and 1 <= i < n."""
    structure = AInftyStructure(table)
    return [
        _run_suite(structure, "cinfty", n, i, samples, seed + 10 * n + i)
        for n in range(2, n_max + 1)
        for i in range(1, n)
    ]


def nonzero_mu(table: PsiTable, n_max: int) -> List[MuValue]:
    """Nonzero higher products mu_n, 3 <= n <= n_max, on module generators."""
    structure = AInftyStructure(table)
    gens = structure.resolution.generators()
    values = []
    for n in range(3, n_max + 1):
        budget = structure.degree_bound - n + 1
        for args in generator_tuples(gens, n, budget):
            value = structure.mu_gens(args)
            if value:
                values.append(
                    MuValue(
                        n=n,
                        arguments=[g.name for g in args],
                        value=format_element(value),
                    )
                )
    logger.info(f"{len(values)} nonzero higher products up to arity {n_max}")
    return values


def ainfty_report(
    table: PsiTable,
    n_max: int,
    cinfty_n_max: int,
    samples: int = 5,
    seed: int = DEFAULT_SEED,
) -> AInftyReport:
    """Both relation suites and the table of nonzero higher products."""
    ainfty = verify_ainfty(table, n_max, samples, seed)
    cinfty = verify_cinfty(table, cinfty_n_max, samples, seed)
    return AInftyReport(
        passed=all(r.passed for r in ainfty + cinfty),
        n_max=n_max,
        cinfty_n_max=cinfty_n_max,
        ainfty=ainfty,
        cinfty=cinfty,
        nonzero_mu=nonzero_mu(table, n_max),
    )
