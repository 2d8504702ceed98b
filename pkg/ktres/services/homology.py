"""
Homology certificate module.

A finite check that the arborescent differential resolves O/I: in degree
zero the image of delta is the ideal, and in the first few positive degrees
every kernel generator of delta, seen as an O-linear map between the finite
free modules S(Tree[M])_i, lifts through delta one degree up.
"""
import logging
from typing import Dict, List, Optional

from ktres.algebra.forest import Forest, TreeAlgebraElement, format_forest
from ktres.algebra.freemod import (
    ONE,
    FreeModule,
    ModuleElement,
    ModuleMap,
    format_element,
)
from ktres.algebra.groebner import in_submodule, kernel_generators
from ktres.algebra.polyring import as_poly
from ktres.models.reports import CheckResult, HomologyReport
from ktres.services.delta import KTComplex
from ktres.services.resolution import UNIT_MODULE
from ktres.utils.timings import log_execution_time

logger = logging.getLogger(__name__)


def _forests(kt: KTComplex, degree: int) -> List[Forest]:
    return kt.basis.forests(degree, min_size=0 if degree == 0 else 1)


def forest_module(kt: KTComplex, degree: int) -> FreeModule:
    """S(Tree[M])_degree as a free O-module, one generator per basis forest."""
    return FreeModule(degree, tuple(format_forest(f) for f in _forests(kt, degree)))


def delta_map(kt: KTComplex, degree: int) -> ModuleMap:
    """delta : S(Tree[M])_degree -> S(Tree[M])_{degree-1} as a matrix."""
    ring = kt.resolution.ring
    source, target = forest_module(kt, degree), forest_module(kt, degree - 1)
    position: Dict[Forest, int] = {
        f: i for i, f in enumerate(_forests(kt, degree - 1))
    }
    matrix = [[ring.zero] * source.rank for _ in range(target.rank)]
    for j, forest in enumerate(_forests(kt, degree)):
        image = kt.delta(TreeAlgebraElement.from_forest(forest))
        for term, coeff in image.terms.items():
            matrix[position[term]][j] += as_poly(ring, coeff)
    return ModuleMap(source, target, matrix)


def check_degree_zero(kt: KTComplex) -> CheckResult:
    """The images of the degree-1 trivial trees generate exactly I."""
    res = kt.resolution
    ring = res.ring
    images = []
    for gen in res.module(1).gens:
        scalar = kt.delta_tree(gen).scalar_part()
        images.append(ModuleElement({ONE: as_poly(ring, scalar)}))
    ideal = [ModuleElement({ONE: g}) for g in res.ideal]
    missing = [g for g in ideal if not in_submodule(g, images, UNIT_MODULE, ring)]
    extra = [g for g in images if not in_submodule(g, ideal, UNIT_MODULE, ring)]
    bad = missing + extra
    return CheckResult(
        name="H_0 = O/I",
        degree=0,
        passed=not bad,
        checked=len(images) + len(ideal),
        detail=format_element(bad[0]) if bad else None,
    )


def check_exact_at(kt: KTComplex, degree: int) -> CheckResult:
    """Kernel generators of delta in ``degree`` lift through delta one degree up."""
    ring = kt.resolution.ring
    outgoing = delta_map(kt, degree)
    incoming = delta_map(kt, degree + 1)
    kernel = kernel_generators(outgoing, ring)
    image = incoming.columns()
    bad = [k for k in kernel if not in_submodule(k, image, outgoing.source, ring)]
    logger.info(
        f"Degree {degree}: {len(kernel)} kernel generators over "
        f"{outgoing.source.rank} forests, {len(bad)} not exact"
    )
    return CheckResult(
        name="ker δ_i ⊆ im δ_{i+1}",
        degree=degree,
        passed=not bad,
        checked=len(kernel),
        detail=format_element(bad[0]) if bad else None,
    )


@log_execution_time
def verify_homology(kt: KTComplex, degree_limit: Optional[int] = 3) -> HomologyReport:
    """
    Certify the homology of delta up to a degree.

    Parameters
    ----------
    kt : KTComplex
        The arborescent resolution.
    degree_limit : int, optional
        Highest degree checked for exactness. It is capped at one below the
        completeness degree of the psi table; the cap is what the report
        states.

    Returns
    -------
    HomologyReport
        The degree-zero check and one exactness check per degree.
    """
    cap = kt.max_degree - 1
    limit = cap if degree_limit is None else min(degree_limit, cap)
    checks = [check_degree_zero(kt)]
    for degree in range(1, limit + 1):
        checks.append(check_exact_at(kt, degree))
    return HomologyReport(
        passed=all(c.passed for c in checks), degree_limit=limit, checks=checks
    )
