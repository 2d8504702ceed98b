"""
Arborescent operations module.

The table of values psi_t on canonical decorated trees, its construction
degree by degree through Groebner lifts, the shortcut for resolutions that
carry a graded-commutative product, and the audit of hand-written tables.
"""
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import numpy as np

from ktres.algebra.forest import format_tree_element
from ktres.algebra.freemod import ONE, Gen, ModuleElement, format_element, to_vector
from ktres.algebra.groebner import GroebnerBasis
from ktres.algebra.trees import (
    Node,
    Tree,
    TreeBasis,
    canonicalize,
    encode,
    leaves,
    sort_key,
    tree_degree,
)
from ktres.config import MAX_WORKERS
from ktres.exceptions import (
    DgcaLawError,
    IncompletePsiTableError,
    InputError,
    NotInImageError,
    SignFaultError,
)
from ktres.models.reports import AuditEntry, AuditReport
from ktres.services.delta import KTComplex
from ktres.services.resolution import Resolution, check_dgca_laws
from ktres.utils.timings import log_execution_time

logger = logging.getLogger(__name__)


@dataclass
class PsiTable:
    """
    Values of the arborescent operations on canonical trees.

    Attributes
    ----------
    resolution : Resolution
        The resolution the values live in.
    max_degree : int
        Every tree of degree at most this has its value in ``entries`` (or
        is zero).
    entries : Dict[Node, ModuleElement]
        Nonzero values keyed by canonical trees.
    obstructions : Dict[Node, ModuleElement]
        The element each value was lifted from, when constructed.
    source : str
        ``construct``, ``dga`` or ``file``.
    """

    resolution: Resolution
    max_degree: int
    entries: Dict[Node, ModuleElement] = field(default_factory=dict)
    obstructions: Dict[Node, ModuleElement] = field(default_factory=dict)
    source: str = "construct"

    @property
    def vanishing_degree(self) -> int:
        """Above this tree degree every value is zero."""
        return self.resolution.length + 1

    def evaluate(self, tree: Tree) -> ModuleElement:
        """
        psi_t on a decorated tree.

        A trivial tree gives ``-d`` of its decoration. Other trees are
        canonicalized and the stored value is multiplied by the sign.
        """
        if isinstance(tree, Gen):
            return -self.resolution.d_gen(tree)
        if not isinstance(tree, Node):
            raise InputError(f"psi is not defined on the leaf {tree!r}")
        degree = tree_degree(tree)
        if degree > self.vanishing_degree:
            return ModuleElement()
        if degree > self.max_degree:
            raise IncompletePsiTableError(
                f"psi of {encode(tree)} (degree {degree}) is needed but the table "
                f"is only complete up to degree {self.max_degree}"
            )
        sign, canonical = canonicalize(tree)
        if not sign or canonical not in self.entries:
            return ModuleElement()
        return self.entries[canonical] * sign

    def set_value(self, tree: Node, value: ModuleElement) -> Node:
        """Store ``value`` as psi of ``tree``, moving it to the canonical key."""
        sign, canonical = canonicalize(tree)
        if not sign:
            if value:
                raise InputError(f"{encode(tree)} is zero but has a nonzero value")
            return tree
        assert isinstance(canonical, Node)
        expected = tree_degree(tree) - 1
        if any(g.degree != expected for g, _ in value):
            raise InputError(
                f"psi of {encode(tree)} must have degree {expected}, "
                f"got {format_element(value)}"
            )
        if value:
            self.entries[canonical] = value * sign
        else:
            self.entries.pop(canonical, None)
        return canonical

    def sorted_entries(self) -> List[Tuple[Node, ModuleElement]]:
        return sorted(self.entries.items(), key=lambda item: sort_key(item[0]))


class _Lifter:
    """Lifts through d_k with one Groebner basis per degree."""

    def __init__(self, res: Resolution, order_seed: Optional[int] = None):
        self.res = res
        self.order_seed = order_seed
        self._bases: Dict[int, Tuple[GroebnerBasis, List[int]]] = {}

    def _basis(self, degree: int) -> Tuple[GroebnerBasis, List[int]]:
        if degree not in self._bases:
            d = self.res.differential(degree)
            order = list(range(d.source.rank))
            if self.order_seed is not None:
                rng = np.random.default_rng(self.order_seed + degree)
                order = [int(j) for j in rng.permutation(d.source.rank)]
            columns = [to_vector(d.column(j), d.target) for j in order]
            self._bases[degree] = (GroebnerBasis(self.res.ring, columns), order)
        return self._bases[degree]

    def lift(self, target: ModuleElement, degree: int) -> Optional[ModuleElement]:
        """An element of M_degree mapped onto ``target`` by d, or None."""
        if not target:
            return ModuleElement()
        if degree > self.res.length:
            return None
        basis, order = self._basis(degree)
        d = self.res.differential(degree)
        coeffs = basis.lift(to_vector(target, d.target))
        if coeffs is None:
            return None
        return ModuleElement({d.source.gens[j]: c for j, c in zip(order, coeffs)})


@log_execution_time
def construct_psi(
    res: Resolution,
    max_degree: int,
    seed_table: Optional[PsiTable] = None,
    lift_order_seed: Optional[int] = None,
) -> PsiTable:
    """
    Build psi degree by degree so that delta squares to zero.

    Parameters
    ----------
    res : Resolution
        A validated free resolution.
    max_degree : int
        Tree degree up to which the table is complete. Degrees above the
        length of the resolution plus one need no values.
    seed_table : PsiTable, optional
        Values to keep; the remaining trees are completed around them.
    lift_order_seed : int, optional
        Permute the generators handed to the lift (tie-breaking).

    Returns
    -------
    PsiTable
        The table, with the obstruction of every constructed value.

    Raises
    ------
    SignFaultError
        If an obstruction is not a trivial-tree element or is not a cycle.
    NotInImageError
        If an obstruction does not lift: the resolution is not exact.
    """
    table = PsiTable(res, max_degree=2)
    seeded = set()
    if seed_table is not None:
        for tree, value in seed_table.entries.items():
            seeded.add(table.set_value(tree, value))
    kt = KTComplex(table)
    lifter = _Lifter(res, lift_order_seed)
    top = min(max_degree, table.vanishing_degree)
    for degree in range(3, top + 1):
        table.max_degree = degree - 1
        trees = kt.basis.nontrivial_trees(degree)
        with ThreadPoolExecutor(max_workers=MAX_WORKERS) as executor:
            obstructions = list(executor.map(kt.obstruction, trees))
        for tree, (obstruction, rest) in zip(trees, obstructions):
            table.obstructions[tree] = obstruction
            if tree in seeded:
                continue
            if rest:
                raise SignFaultError(
                    f"delta^2 of {encode(tree)} has non-trivial terms: "
                    f"{format_tree_element(rest)}"
                )
            if res.d(obstruction):
                raise SignFaultError(
                    f"The obstruction of {encode(tree)} is not a cycle"
                )
            value = lifter.lift(obstruction, degree - 1)
            if value is None:
                raise NotInImageError(
                    f"The obstruction {format_element(obstruction)} of "
                    f"{encode(tree)} is not in the image of d_{degree - 1}"
                )
            table.set_value(tree, value)
        logger.info(
            f"psi built on {len(trees)} trees of degree {degree}, "
            f"{sum(1 for t in trees if t in table.entries)} nonzero"
        )
    table.max_degree = max_degree
    return table


@log_execution_time
def psi_from_dga(res: Resolution, max_degree: Optional[int] = None) -> PsiTable:
    """
    psi from a graded-commutative product on the resolution.

    The corolla with leaves a_1, ..., a_n gets the iterated product
    a_1 * ... * a_n; every other shape gets zero.

    Raises
    ------
    DgcaLawError
        If the product is not graded commutative, associative or Leibniz.
    """
    if res.product is None:
        raise InputError("The resolution carries no product")
    broken = [c for c in check_dgca_laws(res) if not c.passed]
    if broken:
        raise DgcaLawError(
            "; ".join(f"{c.name} fails at {c.detail}" for c in broken)
        )
    bound = res.length + 1
    table = PsiTable(
        res, max_degree=bound if max_degree is None else max_degree, source="dga"
    )
    basis = TreeBasis(res.generators())
    for degree in range(3, bound + 1):
        for tree in basis.nontrivial_trees(degree):
            if not all(isinstance(c, Gen) for c in tree.children):
                continue
            first, *rest = tree.children
            value = ModuleElement.generator(first, res.ring)
            for gen in rest:
                value = res.product.multiply(
                    value, ModuleElement.generator(gen, res.ring), res.ring
                )
            if value:
                table.entries[tree] = value
    logger.info(f"psi from the product: {len(table.entries)} nonzero corollas")
    return table


@log_execution_time
def audit_psi_table(res: Resolution, table: PsiTable) -> AuditReport:
    """
    Check every entry of a table against the obstruction its lower entries give.

    Missing entries of the table read as zero. Each entry is ``pass`` when
    d∘psi_t equals its obstruction, ``fail`` otherwise and ``inconsistent``
    when the obstruction itself has non-trivial trees.
    """
    widened = PsiTable(res, max_degree=res.length + 1, entries=dict(table.entries))
    kt = KTComplex(widened)
    audited = []
    for tree, value in widened.sorted_entries():
        obstruction, rest = kt.obstruction(tree)
        entry = AuditEntry(
            tree=encode(tree),
            decorations=[leaf.name for leaf in leaves(tree) if isinstance(leaf, Gen)],
            degree=tree_degree(tree),
            status="pass",
            obstruction=format_element(obstruction),
        )
        if rest:
            entry.status = "inconsistent"
            entry.residual = format_tree_element(rest)
        else:
            residual = obstruction - res.d(value)
            if residual:
                entry.status = "fail"
                entry.residual = format_element(residual)
        logger.info(f"Audit {entry.tree}: {entry.status}")
        audited.append(entry)
    return AuditReport(
        passed=all(e.status == "pass" for e in audited), entries=audited
    )


def psi_vee(table: PsiTable, x: ModuleElement, y: ModuleElement) -> ModuleElement:
    """The binary operation psi on the two-leaf tree, extended bilinearly."""
    result = ModuleElement()
    for a, ca in x:
        for b, cb in y:
            if a == ONE or b == ONE:
                continue
            result = result + table.evaluate(Node((a, b))) * (ca * cb)
    return result


def psi_associator(
    table: PsiTable, a: ModuleElement, b: ModuleElement, c: ModuleElement
) -> ModuleElement:
    """``psi(a, psi(b, c)) - psi(psi(a, b), c)`` for the two-leaf tree."""
    return psi_vee(table, a, psi_vee(table, b, c)) - psi_vee(
        table, psi_vee(table, a, b), c
    )
