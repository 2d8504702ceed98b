"""
Koszul-Tate differential module.

The derivation delta of S(Tree[M]) attached to a psi table, in its explicit
form (sum over vertices and leaves) and in its recursive form (unroot,
differentiate, re-root), together with the check that it squares to zero.
"""
import logging
from concurrent.futures import ThreadPoolExecutor
from typing import TYPE_CHECKING, Dict, List, Literal, Optional, Tuple

from ktres.algebra.forest import TreeAlgebraElement, format_tree_element, project
from ktres.algebra.freemod import ONE, ModuleElement
from ktres.algebra.polyring import Scalar, as_poly
from ktres.algebra.trees import (
    Node,
    Tree,
    TreeBasis,
    canonicalize,
    encode,
    leaf_paths,
    leaves,
    merge_vertex,
    normalize_o_leaves,
    root,
    subtree_at,
    substitute,
    tree_degree,
    unroot,
    vertex_paths,
    weight_W,
)
from ktres.config import MAX_WORKERS
from ktres.models.reports import DeltaSquaredReport, TreeFailure
from ktres.utils.timings import log_execution_time

if TYPE_CHECKING:
    from ktres.services.psi import PsiTable

logger = logging.getLogger(__name__)

Method = Literal["closed", "recursive"]


def _add_normalized(result: TreeAlgebraElement, tree: Tree, coeff: Scalar) -> None:
    normal = normalize_o_leaves(tree)
    if normal is None or not coeff:
        return
    factor, remaining = normal
    forest = () if remaining is None else (remaining,)
    result.add_forest(forest, coeff * factor)


def _add_module_element(
    result: TreeAlgebraElement, element: ModuleElement, sign: int
) -> None:
    """Add ``sign * |[element]``; the unit component becomes a scalar."""
    for gen, coeff in element:
        result.add_forest(() if gen == ONE else (gen,), coeff * sign)


class KTComplex:
    """
    The arborescent Koszul-Tate resolution (S(Tree[M]), delta).

    Parameters
    ----------
    table : PsiTable
        The arborescent operations; the resolution is taken from it.
    max_degree : int, optional
        Degree up to which the complex is verified; the table's by default.

    Attributes
    ----------
    resolution : Resolution
        The underlying free resolution.
    basis : TreeBasis
        Enumerator of canonical trees and forests over its generators.
    """

    name = "arborescent"

    def __init__(self, table: "PsiTable", max_degree: Optional[int] = None):
        self.table = table
        self.resolution = table.resolution
        self.max_degree = table.max_degree if max_degree is None else max_degree
        self.basis = TreeBasis(self.resolution.generators())
        self._cache: Dict[Method, Dict[Tree, TreeAlgebraElement]] = {
            "closed": {},
            "recursive": {},
        }

    def generators(self, degree: int) -> List[Tree]:
        """Canonical trees of the given degree: the free generators of S(Tree[M])."""
        return self.basis.trees(degree)

    def linear_part(self, tree: Tree) -> TreeAlgebraElement:
        return self.delta_tree(tree)

    def delta_tree(self, tree: Tree, method: Method = "closed") -> TreeAlgebraElement:
        """delta of a single decorated tree, as an element of S(Tree[M])."""
        sign, canonical = canonicalize(tree)
        if not sign:
            return TreeAlgebraElement()
        cache = self._cache[method]
        if canonical not in cache:
            if method == "closed":
                cache[canonical] = self._closed(canonical)
            else:
                cache[canonical] = self._recursive(canonical)
        return cache[canonical] * sign

    def delta(
        self, x: TreeAlgebraElement, method: Method = "closed"
    ) -> TreeAlgebraElement:
        """
        Apply delta as a derivation of degree -1.

        Parameters
        ----------
        x : TreeAlgebraElement
            The element to differentiate.
        method : {"closed", "recursive"}
            Which description of delta to use on single trees.

        Returns
        -------
        TreeAlgebraElement
            ``sum_i (-1)^{|t_1| + ... + |t_{i-1}|} t_1 ... delta(t_i) ... t_k``
            over the forests of ``x``.
        """
        result = TreeAlgebraElement()
        for forest, coeff in x.terms.items():
            passed = 0
            for i, tree in enumerate(forest):
                sign = -1 if passed % 2 else 1
                for image, c in self.delta_tree(tree, method).terms.items():
                    result.add_forest(
                        forest[:i] + image + forest[i + 1 :], coeff * c * sign
                    )
                passed += tree_degree(tree)
        return result

    def _closed(self, tree: Tree, omit_root_psi: bool = False) -> TreeAlgebraElement:
        res = self.resolution
        result = TreeAlgebraElement()
        if not isinstance(tree, Node):
            _add_module_element(result, res.d_gen(tree), 1)
            return result
        result.add_forest(unroot(tree), 1)
        if not omit_root_psi:
            _add_module_element(result, self.table.evaluate(tree), -1)
        for path in vertex_paths(tree)[1:]:
            sign = -1 if weight_W(tree, path) % 2 else 1
            _add_normalized(result, merge_vertex(tree, path), sign)
            value = self.table.evaluate(subtree_at(tree, path))
            for coeff, substituted in substitute(tree, path, value):
                _add_normalized(result, substituted, -sign * coeff)
        for path in leaf_paths(tree):
            sign = -1 if weight_W(tree, path) % 2 else 1
            differential = res.d_gen(subtree_at(tree, path))
            for coeff, substituted in substitute(tree, path, differential):
                _add_normalized(result, substituted, sign * coeff)
        return result

    def _recursive(self, tree: Tree) -> TreeAlgebraElement:
        if not isinstance(tree, Node):
            return self._closed(tree)
        unrooted = TreeAlgebraElement.from_forest(unroot(tree))
        result = TreeAlgebraElement.from_forest(unroot(tree))
        _add_module_element(result, self.table.evaluate(tree), -1)
        inner = project(self.delta(unrooted, "recursive"), "p_ge2")
        for forest, coeff in inner.terms.items():
            result.add_forest((root(forest),), -coeff)
        return result

    def obstruction(self, tree: Node) -> Tuple[ModuleElement, TreeAlgebraElement]:
        """
        What d∘psi_t has to equal for delta to square to zero on ``tree``.

        delta is applied twice with the root term of psi left out. The
        trivial-tree part of the result is the obstruction B; the rest must
        vanish and is returned for diagnosis.
        """
        ring = self.resolution.ring
        twice = self.delta(self._closed(tree, omit_root_psi=True))
        obstruction = ModuleElement()
        rest = TreeAlgebraElement()
        for forest, coeff in twice.terms.items():
            if not forest:
                obstruction = obstruction + ModuleElement({ONE: as_poly(ring, coeff)})
            elif len(forest) == 1 and not isinstance(forest[0], Node):
                obstruction = obstruction + ModuleElement(
                    {forest[0]: as_poly(ring, coeff)}
                )
            else:
                rest.terms[forest] = coeff
        return obstruction, rest


def tree_failure(tree: Tree, residual: TreeAlgebraElement) -> TreeFailure:
    return TreeFailure(
        tree=encode(tree),
        decorations=[getattr(leaf, "name", str(leaf)) for leaf in leaves(tree)],
        residual=format_tree_element(residual),
    )


@log_execution_time
def verify_delta_squared(
    kt: KTComplex, max_degree: Optional[int] = None, method: Method = "closed"
) -> DeltaSquaredReport:
    """
    Apply delta twice to every canonical tree of degree at most ``max_degree``.

    delta∘delta is a derivation, so vanishing on the free generators of
    S(Tree[M]) is vanishing everywhere.
    """
    max_degree = kt.max_degree if max_degree is None else max_degree
    checked = 0
    first: Optional[TreeFailure] = None

    def squared(tree: Tree) -> TreeAlgebraElement:
        return kt.delta(kt.delta_tree(tree, method), method)

    for degree in range(1, max_degree + 1):
        trees = kt.generators(degree)
        with ThreadPoolExecutor(max_workers=MAX_WORKERS) as executor:
            residuals = list(executor.map(squared, trees))
        checked += len(trees)
        for tree, residual in zip(trees, residuals):
            if residual:
                first = tree_failure(tree, residual)
                logger.warning(f"delta^2 != 0 on {first.tree}: {first.residual}")
                break
        if first is not None:
            break
        logger.info(f"delta^2 = 0 on {len(trees)} trees of degree {degree}")
    return DeltaSquaredReport(
        passed=first is None,
        max_degree=max_degree,
        checked=checked,
        method=method,
        first_failure=first,
    )


def compare_delta_methods(kt: KTComplex, trees: List[Tree]) -> List[TreeFailure]:
    """Trees on which the explicit and the recursive delta disagree."""
    failures = []
    for tree in trees:
        difference = kt.delta_tree(tree, "closed") - kt.delta_tree(tree, "recursive")
        if difference:
            failures.append(tree_failure(tree, difference))
    return failures
