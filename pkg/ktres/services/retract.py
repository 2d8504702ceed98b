"""
Retract module.

The maps between S(Tree[M]) and M ⊕ O that exhibit the arborescent
resolution as homotopy equivalent to the free resolution it was built from:
the inclusion, the projection through psi and the homotopy grafting a forest
onto a new root, with the side relations they satisfy.
"""
import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, List, Optional, Tuple, Union

from ktres.algebra.forest import (
    Forest,
    TreeAlgebraElement,
    format_forest,
    format_tree_element,
)
from ktres.algebra.freemod import ONE, ModuleElement, format_element
from ktres.algebra.polyring import as_poly
from ktres.algebra.trees import Node, root
from ktres.config import MAX_WORKERS
from ktres.models.reports import CheckResult, RetractReport
from ktres.services.delta import KTComplex
from ktres.utils.timings import log_execution_time

logger = logging.getLogger(__name__)

Residual = Union[ModuleElement, TreeAlgebraElement]
SideRelation = Callable[[KTComplex, TreeAlgebraElement], Residual]


def incl(element: ModuleElement) -> TreeAlgebraElement:
    """Send a generator ``a`` to the trivial tree ``|a|`` and O to the scalars."""
    result = TreeAlgebraElement()
    for gen, coeff in element:
        result.add_forest(() if gen == ONE else (gen,), coeff)
    return result


def proj(kt: KTComplex, x: TreeAlgebraElement) -> ModuleElement:
    """
    Project S(Tree[M]) onto M ⊕ O.

    Scalars and trivial trees are kept, single non-trivial trees vanish and
    a product of at least two trees goes to psi of the tree obtained by
    grafting them onto a common root.
    """
    ring = kt.resolution.ring
    result = ModuleElement()
    for forest, coeff in x.terms.items():
        if not forest:
            result = result + ModuleElement({ONE: as_poly(ring, coeff)})
        elif len(forest) == 1:
            if not isinstance(forest[0], Node):
                result = result + ModuleElement({forest[0]: as_poly(ring, coeff)})
        else:
            result = result + kt.table.evaluate(root(forest)) * coeff
    return result


def homotopy(x: TreeAlgebraElement) -> TreeAlgebraElement:
    """Graft every product of at least two trees onto a new root; zero elsewhere."""
    result = TreeAlgebraElement()
    for forest, coeff in x.terms.items():
        if len(forest) >= 2:
            result.add_forest((root(forest),), coeff)
    return result


def _homotopy_formula(kt: KTComplex, x: TreeAlgebraElement) -> Residual:
    twisted = kt.delta(homotopy(x)) + homotopy(kt.delta(x))
    return incl(proj(kt, x)) - (x - twisted)


def _homotopy_squared(kt: KTComplex, x: TreeAlgebraElement) -> Residual:
    return homotopy(homotopy(x))


def _proj_after_homotopy(kt: KTComplex, x: TreeAlgebraElement) -> Residual:
    return proj(kt, homotopy(x))


def _chain_map(kt: KTComplex, x: TreeAlgebraElement) -> Residual:
    return kt.resolution.d(proj(kt, x)) - proj(kt, kt.delta(x))


SIDE_RELATIONS: List[Tuple[str, SideRelation]] = [
    ("incl∘proj = id − (hδ+δh)", _homotopy_formula),
    ("h∘h = 0", _homotopy_squared),
    ("proj∘h = 0", _proj_after_homotopy),
]
CHAIN_MAP: Tuple[str, SideRelation] = ("d∘proj = proj∘δ", _chain_map)


def _format_residual(forest: Forest, residual: Residual) -> str:
    if isinstance(residual, ModuleElement):
        return f"{format_forest(forest)}: {format_element(residual)}"
    return f"{format_forest(forest)}: {format_tree_element(residual)}"


def _check_on_forests(
    kt: KTComplex, relations: List[Tuple[str, SideRelation]], max_degree: int
) -> List[CheckResult]:
    """One row per relation and degree, with the first failing forest."""
    checks = []
    for degree in range(0, max_degree + 1):
        forests = kt.basis.forests(degree, min_size=0)

        def residuals(forest: Forest) -> List[Residual]:
            x = TreeAlgebraElement.from_forest(forest)
            return [relation(kt, x) for _, relation in relations]

        with ThreadPoolExecutor(max_workers=MAX_WORKERS) as executor:
            results = list(executor.map(residuals, forests))
        for position, (name, _) in enumerate(relations):
            first = next(
                (
                    _format_residual(f, r[position])
                    for f, r in zip(forests, results)
                    if r[position]
                ),
                None,
            )
            checks.append(
                CheckResult(
                    name=name,
                    degree=degree,
                    passed=first is None,
                    checked=len(forests),
                    detail=first,
                )
            )
        logger.info(
            f"{len(relations)} identities checked on {len(forests)} forests "
            f"of degree {degree}"
        )
    return checks


def verify_proj_chain_map(
    kt: KTComplex, max_degree: Optional[int] = None
) -> List[CheckResult]:
    """Check ``d∘proj = proj∘δ`` on every basis forest, degree by degree."""
    max_degree = kt.max_degree - 1 if max_degree is None else max_degree
    return _check_on_forests(kt, [CHAIN_MAP], max_degree)


@log_execution_time
def verify_retract(kt: KTComplex, max_degree: Optional[int] = None) -> RetractReport:
    """
    Check the retract identities on every basis element.

    Parameters
    ----------
    kt : KTComplex
        The arborescent resolution.
    max_degree : int, optional
        Forests are checked up to this degree; one below the completeness
        degree of the table by default, since the homotopy raises the degree.

    Returns
    -------
    RetractReport
        proj∘incl = id and h∘incl = 0 on generators of M ⊕ O; the other
        side relations and the chain map property of proj on forests.
    """
    max_degree = kt.max_degree - 1 if max_degree is None else max_degree
    res = kt.resolution
    elements = [ModuleElement.scalar(res.ring.one)] + [
        ModuleElement.generator(g, res.ring) for g in res.generators()
    ]
    checks = [
        CheckResult(
            name="proj∘incl = id",
            passed=all(proj(kt, incl(a)) == a for a in elements),
            checked=len(elements),
        ),
        CheckResult(
            name="h∘incl = 0",
            passed=all(not homotopy(incl(a)) for a in elements),
            checked=len(elements),
        ),
    ]
    checks.extend(_check_on_forests(kt, SIDE_RELATIONS + [CHAIN_MAP], max_degree))
    for check in checks:
        if not check.passed:
            logger.warning(
                f"{check.name} fails in degree {check.degree}: {check.detail}"
            )
    return RetractReport(
        passed=all(c.passed for c in checks), max_degree=max_degree, checks=checks
    )
