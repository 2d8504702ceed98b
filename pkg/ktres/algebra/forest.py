"""
Free graded-commutative algebra on decorated trees.

An element of S(Tree[M]) is an O-linear combination of forests. A forest is
stored as a tuple of canonical trees in canonical order; the sign of the
reordering is absorbed into the coefficient. The empty forest is the unit,
so pure scalars are elements too.
"""
import logging
from typing import Dict, Iterable, Iterator, Literal, Optional, Sequence, Tuple

from ktres.algebra.polyring import Scalar, constant_term, format_poly
from ktres.algebra.trees import (
    Node,
    Tree,
    add_term,
    canonicalize,
    encode,
    sort_key,
    tree_degree,
)
from ktres.utils.signs import koszul_sort

logger = logging.getLogger(__name__)

Forest = Tuple[Tree, ...]
Projection = Literal["p1_triv", "p1_tree", "p_ge2"]


def forest_degree(forest: Sequence[Tree]) -> int:
    return sum(tree_degree(t) for t in forest)


def forest_key(forest: Forest) -> tuple:
    return tuple(sort_key(t) for t in forest)


def canonical_forest(trees: Iterable[Tree]) -> Tuple[int, Forest]:
    """
    Canonicalize every tree and sort the forest.

    Returns the total Koszul sign (0 when the forest vanishes) and the forest.
    """
    sign = 1
    canonical = []
    for tree in trees:
        s, t = canonicalize(tree)
        if not s:
            return 0, ()
        sign *= s
        canonical.append(t)
    s, ordered = koszul_sort(canonical, sort_key, tree_degree)
    if not s:
        return 0, ()
    return sign * s, tuple(ordered)


class TreeAlgebraElement:
    """
    A finite combination of canonical forests with polynomial coefficients.

    Attributes
    ----------
    terms : Dict[Forest, Scalar]
        Nonzero coefficients keyed by canonical forests.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Dict[Forest, Scalar]] = None):
        self.terms: Dict[Forest, Scalar] = {f: c for f, c in (terms or {}).items() if c}

    @classmethod
    def from_forest(cls, trees: Iterable[Tree], coeff: Scalar = 1):
        """The element ``coeff * t_1 ⊙ ... ⊙ t_k``, in canonical form."""
        sign, forest = canonical_forest(trees)
        if not sign:
            return cls()
        return cls({forest: coeff * sign})

    @classmethod
    def from_tree(cls, tree: Tree, coeff: Scalar = 1):
        return cls.from_forest((tree,), coeff)

    @classmethod
    def scalar(cls, value: Scalar):
        return cls({(): value})

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self) -> Iterator[Tuple[Forest, Scalar]]:
        return iter(sorted(self.terms.items(), key=lambda item: forest_key(item[0])))

    def __getitem__(self, forest: Forest) -> Scalar:
        return self.terms.get(forest, 0)

    def __eq__(self, other) -> bool:
        if isinstance(other, int) and other == 0:
            return not self.terms
        if not isinstance(other, TreeAlgebraElement):
            return NotImplemented
        return self.terms == other.terms

    def __add__(self, other: "TreeAlgebraElement") -> "TreeAlgebraElement":
        result = dict(self.terms)
        for forest, coeff in other.terms.items():
            add_term(result, forest, coeff)
        return TreeAlgebraElement(result)

    def __neg__(self) -> "TreeAlgebraElement":
        return TreeAlgebraElement({f: -c for f, c in self.terms.items()})

    def __sub__(self, other: "TreeAlgebraElement") -> "TreeAlgebraElement":
        return self + (-other)

    def __mul__(self, factor: Scalar) -> "TreeAlgebraElement":
        return TreeAlgebraElement({f: c * factor for f, c in self.terms.items()})

    __rmul__ = __mul__

    def add_forest(self, trees: Iterable[Tree], coeff: Scalar) -> None:
        """In-place ``self += coeff * t_1 ⊙ ... ⊙ t_k``."""
        sign, forest = canonical_forest(trees)
        if sign and coeff:
            add_term(self.terms, forest, coeff * sign)

    def degrees(self) -> Tuple[int, ...]:
        return tuple(sorted({forest_degree(f) for f in self.terms}))

    def scalar_part(self) -> Scalar:
        return self.terms.get((), 0)

    def single_trees(self) -> Dict[Tree, Scalar]:
        """Coefficients of the one-tree forests."""
        return {f[0]: c for f, c in self.terms.items() if len(f) == 1}

    def constant_terms(self) -> "TreeAlgebraElement":
        """Every coefficient evaluated at the origin."""
        return TreeAlgebraElement(
            {f: constant_term(c) for f, c in self.terms.items()}
        )

    def __repr__(self) -> str:
        return format_tree_element(self)


def sym_product(
    x: TreeAlgebraElement, y: TreeAlgebraElement
) -> TreeAlgebraElement:
    """Graded-commutative product, Koszul signs on tree degrees."""
    result = TreeAlgebraElement()
    for f, c in x.terms.items():
        for g, e in y.terms.items():
            result.add_forest(f + g, c * e)
    return result


def project(x: TreeAlgebraElement, which: Projection) -> TreeAlgebraElement:
    """
    One of the three complementary projections.

    ``p1_triv`` keeps single trivial trees together with the scalars,
    ``p1_tree`` keeps single non-trivial trees and ``p_ge2`` keeps products
    of at least two trees.
    """

    def keep(forest: Forest) -> bool:
        if which == "p_ge2":
            return len(forest) >= 2
        if which == "p1_tree":
            return len(forest) == 1 and isinstance(forest[0], Node)
        if which == "p1_triv":
            return len(forest) == 0 or (
                len(forest) == 1 and not isinstance(forest[0], Node)
            )
        raise ValueError(f"Unknown projection {which!r}")

    return TreeAlgebraElement({f: c for f, c in x.terms.items() if keep(f)})


def format_forest(forest: Forest) -> str:
    if not forest:
        return "1"
    return " ⊙ ".join(encode(t) for t in forest)


def format_tree_element(x: TreeAlgebraElement) -> str:
    """Human-readable form, e.g. ``(x)*(pixxy piyy) - (pixx pixy piyy)``."""
    if not x:
        return "0"
    parts = []
    for forest, coeff in x:
        text = format_poly(coeff)
        body = format_forest(forest)
        if not forest:
            parts.append(f"({text})")
        elif text == "1":
            parts.append(body)
        elif text == "-1":
            parts.append(f"-{body}")
        else:
            parts.append(f"({text})*{body}")
    return " + ".join(parts).replace("+ -", "- ")
