"""
Reduced complex module.

The complex of field vector spaces obtained from a Koszul-Tate resolution by
dropping products of generators and evaluating coefficients at the origin,
its homology dimensions b_i, the minimality predicate and the witness trees
that certify odd b_i for monomial ideals that are not complete
intersections.
"""
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple, Union

from sympy.polys.domains.domain import Domain
from sympy.polys.matrices import DomainMatrix

from ktres.algebra.polyring import constant_term, format_poly, leading_monomial
from ktres.algebra.trees import Node, Tree, canonicalize, encode, sort_key
from ktres.config import MAX_WORKERS
from ktres.exceptions import InputError, NoWitnessError, SignFaultError
from ktres.models.reports import BettiReport, Violation, WitnessReport
from ktres.services.koszul_tate import KoszulTateComplex
from ktres.utils.timings import log_execution_time

logger = logging.getLogger(__name__)

# The unit of S(E) in degree 0, written as the empty forest.
Generator = Union[Tree, Tuple[()]]
Entries = List[List[Any]]


@dataclass
class ReducedComplex:
    """
    The reduced complex at the origin, up to a truncation degree.

    Attributes
    ----------
    name : str
        Which Koszul-Tate resolution was reduced.
    truncation_degree : int
        Generators were enumerated up to this degree.
    domain : Domain
        The coefficient field.
    bases : Dict[int, List[Generator]]
        Generators per degree; degree 0 holds the unit ``()``.
    entries : Dict[int, Entries]
        ``entries[i]`` is the matrix from degree i to degree i - 1 as a list
        of rows over ``domain``; rows follow ``bases[i - 1]`` and columns
        ``bases[i]``.
    """

    name: str
    truncation_degree: int
    domain: Domain
    bases: Dict[int, List[Generator]]
    entries: Dict[int, Entries]
    _ranks: Dict[int, int] = field(default_factory=dict, repr=False)

    def shape(self, degree: int) -> Tuple[int, int]:
        return len(self.bases[degree - 1]), len(self.bases[degree])

    def matrix(self, degree: int) -> DomainMatrix:
        return DomainMatrix(self.entries[degree], self.shape(degree), self.domain)

    def rank(self, degree: int) -> int:
        """Rank of the matrix leaving ``degree``; zero outside the truncation."""
        if degree not in self.entries:
            return 0
        if degree not in self._ranks:
            rows, cols = self.shape(degree)
            self._ranks[degree] = self.matrix(degree).rank() if rows and cols else 0
        return self._ranks[degree]

    def is_zero(self) -> bool:
        return all(
            not value for rows in self.entries.values() for row in rows for value in row
        )


def _column(
    kt: KoszulTateComplex,
    generator: Tree,
    position: Dict[Generator, int],
    domain: Domain,
) -> List[Any]:
    """Constant coefficients of delta(generator) on the generators one below."""
    column = [domain.zero] * len(position)
    for forest, coeff in kt.linear_part(generator).terms.items():
        if len(forest) > 1:
            continue
        key: Generator = forest[0] if forest else ()
        if key in position:
            column[position[key]] += domain.convert(constant_term(coeff))
    return column


def _entries(
    kt: KoszulTateComplex, degree: int, bases: Dict[int, List[Generator]], domain
) -> Entries:
    position = {g: i for i, g in enumerate(bases[degree - 1])}
    columns = [_column(kt, g, position, domain) for g in bases[degree]]
    return [[column[i] for column in columns] for i in range(len(position))]


def _composes_to_zero(rc: ReducedComplex, degree: int) -> bool:
    """Whether the matrices into and out of ``degree - 1`` compose to zero."""
    outer_shape, inner_shape = rc.shape(degree - 1), rc.shape(degree)
    if not all(outer_shape) or not all(inner_shape):
        return True
    composite = rc.matrix(degree - 1).matmul(rc.matrix(degree))
    return composite.to_Matrix().is_zero_matrix


@log_execution_time
def reduce_at_origin(
    kt: KoszulTateComplex, max_degree: Optional[int] = None
) -> ReducedComplex:
    """
    Reduce a Koszul-Tate resolution modulo products and the maximal ideal.

    Parameters
    ----------
    kt : KoszulTateComplex
        The resolution to reduce.
    max_degree : int, optional
        Truncation degree; the complex's own by default.

    Returns
    -------
    ReducedComplex
        One field matrix per degree from 1 to ``max_degree``.

    Raises
    ------
    SignFaultError
        If two consecutive matrices do not compose to zero.
    """
    max_degree = kt.max_degree if max_degree is None else max_degree
    domain = kt.resolution.ring.domain
    bases: Dict[int, List[Generator]] = {0: [()]}
    for degree in range(1, max_degree + 1):
        bases[degree] = list(kt.generators(degree))
    degrees = list(range(1, max_degree + 1))
    with ThreadPoolExecutor(max_workers=MAX_WORKERS) as executor:
        entries = list(executor.map(lambda d: _entries(kt, d, bases, domain), degrees))
    reduced = ReducedComplex(
        name=kt.name,
        truncation_degree=max_degree,
        domain=domain,
        bases=bases,
        entries=dict(zip(degrees, entries)),
    )
    for degree in range(2, max_degree + 1):
        if not _composes_to_zero(reduced, degree):
            raise SignFaultError(
                f"The reduced differentials into and out of degree {degree - 1} "
                "do not compose to zero"
            )
    logger.info(
        f"Reduced complex of the {kt.name} resolution: "
        f"{[len(bases[d]) for d in degrees]} generators"
    )
    return reduced


def betti(rc: ReducedComplex) -> Dict[int, int]:
    """b_i = dim ker - dim im, for 1 <= i < truncation degree."""
    with ThreadPoolExecutor(max_workers=MAX_WORKERS) as executor:
        list(executor.map(rc.rank, sorted(rc.entries)))
    return {
        i: len(rc.bases[i]) - rc.rank(i) - rc.rank(i + 1)
        for i in range(1, rc.truncation_degree)
    }


def _encode(generator: Generator) -> str:
    return encode(generator) if generator != () else "1"


def _order(generator: Generator) -> tuple:
    return sort_key(generator) if generator != () else (0,)


def find_violations(
    kt: KoszulTateComplex, max_degree: Optional[int] = None
) -> List[Tuple[Generator, Violation]]:
    """
    Generators hit with a unit coefficient by the differential of another.

    Returns (target, violation) pairs sorted by the target in canonical
    order, then by the source.
    """
    max_degree = kt.max_degree if max_degree is None else max_degree
    found = []
    for degree in range(1, max_degree + 1):
        for generator in kt.generators(degree):
            for forest, coeff in kt.linear_part(generator).terms.items():
                constant = constant_term(coeff)
                if len(forest) > 1 or not constant:
                    continue
                target: Generator = forest[0] if forest else ()
                violation = Violation(
                    degree=degree,
                    generator=encode(generator),
                    term=_encode(target),
                    coefficient=str(constant),
                )
                found.append((_order(target), sort_key(generator), target, violation))
    found.sort(key=lambda item: (item[0], item[1]))
    return [(target, violation) for _, _, target, violation in found]


def is_minimal(
    kt: KoszulTateComplex, max_degree: Optional[int] = None
) -> Tuple[bool, Optional[str], List[Violation]]:
    """
    Whether delta sends every generator into J·E ⊕ S^{>=2}(E).

    Returns the verdict, the first generator hit with a unit coefficient
    (the redundant one) and every violation.
    """
    violations = find_violations(kt, max_degree)
    first = _encode(violations[0][0]) if violations else None
    return not violations, first, [v for _, v in violations]


def witness_pair(kt: KoszulTateComplex) -> Tuple[int, int]:
    """The first pair of monomials whose lcm is not their product."""
    ideal = kt.resolution.ideal
    exponents = [leading_monomial(g) for g in ideal]
    for i in range(len(ideal)):
        for j in range(i + 1, len(ideal)):
            if any(a and b for a, b in zip(exponents[i], exponents[j])):
                return i, j
    raise NoWitnessError(
        "No witness pair: the monomials "
        f"{', '.join(format_poly(g) for g in ideal)} are pairwise coprime"
    )


def witness_tree(kt: KoszulTateComplex, m: int, pair: Tuple[int, int]) -> Tree:
    """The left comb T_m: T_0 = |e_i| and T_m grafts T_{m-1} and e_j."""
    gens = kt.resolution.module(1).gens
    tree: Tree = gens[pair[0]]
    for _ in range(m):
        tree = Node((tree, gens[pair[1]]))
    return tree


@log_execution_time
def witness_Tm(kt: KoszulTateComplex, m: int, rc: ReducedComplex) -> WitnessReport:
    """
    Certify that T_m gives a nonzero class of degree 2m + 1.

    T_m is looked up in the reduced basis in its canonical form; the Koszul
    sign of the reordering changes neither closedness nor exactness.

    The class is closed when the reduced differential kills T_m and exact
    when T_m lies in the column span of the reduced differential one degree
    up; the certificate passes when it is closed and not exact.

    Raises
    ------
    NoWitnessError
        If the monomials are pairwise coprime.
    InputError
        If the reduced complex does not reach degree 2m + 2.
    """
    if m < 0:
        raise InputError("m must be non-negative")
    pair = witness_pair(kt)
    degree = 2 * m + 1
    if rc.truncation_degree < degree + 1:
        raise InputError(
            f"T_{m} needs the reduced complex up to degree {degree + 1}, "
            f"it stops at {rc.truncation_degree}"
        )
    sign, tree = canonicalize(witness_tree(kt, m, pair))
    if not sign:
        raise InputError(f"T_{m} vanishes in the tree module")
    basis = rc.bases[degree]
    if tree not in basis:
        raise InputError(f"{encode(tree)} is not a generator of degree {degree}")
    index = basis.index(tree)
    closed = all(not row[index] for row in rc.entries[degree])

    span = rc.rank(degree + 1)
    incoming = rc.entries[degree + 1]
    domain = rc.domain
    extended = [
        row + [domain.one if i == index else domain.zero]
        for i, row in enumerate(incoming)
    ]
    rows, cols = rc.shape(degree + 1)
    exact = DomainMatrix(extended, (rows, cols + 1), domain).rank() == span

    report = WitnessReport(
        m=m,
        pair=(pair[0] + 1, pair[1] + 1),
        tree=encode(tree),
        degree=degree,
        closed=closed,
        exact=exact,
        passed=closed and not exact,
    )
    logger.info(f"Witness {report.tree}: closed={closed}, exact={exact}")
    return report


@log_execution_time
def betti_report(
    kt: KoszulTateComplex,
    max_degree: Optional[int] = None,
    witness: Optional[int] = None,
) -> BettiReport:
    """Reduced complex, b_i, rank bound, minimality and the optional witness."""
    rc = reduce_at_origin(kt, max_degree)
    b = betti(rc)
    minimal, first, violations = is_minimal(kt, rc.truncation_degree)
    counts = {i: len(rc.bases[i]) for i in b}
    report = BettiReport(
        kt=rc.name,
        truncation_degree=rc.truncation_degree,
        b=[None] + [b[i] for i in sorted(b)],
        generators=[None] + [counts[i] for i in sorted(b)],
        rank_bound_ok=all(b[i] <= counts[i] for i in b),
        minimal=minimal,
        first_violation=first,
        violations=violations,
        witness=witness_Tm(kt, witness, rc) if witness is not None else None,
    )
    if not report.rank_bound_ok:
        logger.warning("A Betti number exceeds the number of generators")
    return report
