"""
Decorated trees module.

Planar rooted trees whose vertices have at least two children and whose
leaves are decorated by generators of a resolution, considered up to
permutations of the children of a vertex weighted by Koszul signs.

A tree is either a leaf or a :class:`Node`. Leaves are generators
(:class:`~ktres.algebra.freemod.Gen`), polynomial decorations
(:class:`OLeaf`, transient, removed by :func:`normalize_o_leaves`) or fresh
leaves (:class:`Slot`, left behind by :func:`up_down`). Vertices are
addressed by paths: tuples of child positions starting at the root, the root
itself being ``()``.
"""
import logging
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Tuple, Union

from sympy.polys.rings import PolyElement

from ktres.algebra.freemod import ONE, Gen, ModuleElement
from ktres.algebra.polyring import Scalar
from ktres.config import TREE_CACHE_SIZE
from ktres.exceptions import InputError
from ktres.utils.signs import koszul_sort

logger = logging.getLogger(__name__)

Path = Tuple[int, ...]


@dataclass(frozen=True)
class OLeaf:
    """A leaf decorated by a polynomial, of degree zero."""

    value: PolyElement


@dataclass(frozen=True)
class Slot:
    """A fresh undecorated leaf of the given degree."""

    degree: int


@dataclass(frozen=True)
class Node:
    """
    A vertex with its ordered children.

    Attributes
    ----------
    children : Tuple[Tree, ...]
        At least two subtrees, in planar order.
    """

    children: Tuple["Tree", ...]

    def __post_init__(self):
        if len(self.children) < 2:
            raise InputError("A vertex needs at least two children")

    def __repr__(self) -> str:
        return encode(self)


Leaf = Union[Gen, OLeaf, Slot]
Tree = Union[Gen, OLeaf, Slot, Node]
TreeCombination = Dict[Tree, int]


def is_leaf(tree: Tree) -> bool:
    return not isinstance(tree, Node)


@lru_cache(maxsize=TREE_CACHE_SIZE)
def tree_degree(tree: Tree) -> int:
    """Sum of the leaf degrees plus the number of vertices."""
    if isinstance(tree, Node):
        return sum(tree_degree(c) for c in tree.children) + 1
    if isinstance(tree, Gen):
        return tree.degree
    if isinstance(tree, Slot):
        return tree.degree
    return 0


def vertex_count(tree: Tree) -> int:
    if isinstance(tree, Node):
        return 1 + sum(vertex_count(c) for c in tree.children)
    return 0


def leaves(tree: Tree) -> List[Leaf]:
    """Leaf decorations in planar order."""
    if isinstance(tree, Node):
        return [leaf for c in tree.children for leaf in leaves(c)]
    return [tree]


@lru_cache(maxsize=TREE_CACHE_SIZE)
def sort_key(tree: Tree) -> tuple:
    """
    Canonical order of subtrees.

    Trees compare by total degree, then leaf count, then shape and
    decorations. Equal keys mean equal trees.
    """
    degree = tree_degree(tree)
    if isinstance(tree, Node):
        children = tuple(sort_key(c) for c in tree.children)
        return degree, len(leaves(tree)), 1, children
    if isinstance(tree, Gen):
        return degree, 1, 0, (tree.degree, tree.index)
    if isinstance(tree, Slot):
        return degree, 1, -1, (tree.degree,)
    raise InputError("Polynomial leaves have no canonical position")


@lru_cache(maxsize=TREE_CACHE_SIZE)
def canonicalize(tree: Tree) -> Tuple[int, Optional[Tree]]:
    """
    Sort the children of every vertex.

    Returns
    -------
    Tuple[int, Optional[Tree]]
        The accumulated Koszul sign and the canonical tree, or ``(0, None)``
        when some vertex has two equal children of odd degree.
    """
    if not isinstance(tree, Node):
        return 1, tree
    sign = 1
    children = []
    for child in tree.children:
        s, c = canonicalize(child)
        if not s:
            return 0, None
        sign *= s
        children.append(c)
    s, ordered = koszul_sort(children, sort_key, tree_degree)
    if not s:
        return 0, None
    return sign * s, Node(tuple(ordered))


def normalize_o_leaves(tree: Tree) -> Optional[Tuple[Scalar, Optional[Tree]]]:
    """
    Erase polynomial leaves.

    A polynomial leaf under a vertex keeping at least two other children is
    erased and its value multiplies the coefficient; otherwise the tree is
    zero. A tree that is a single polynomial leaf becomes that scalar.

    Returns
    -------
    Optional[Tuple[Scalar, Optional[Tree]]]
        ``None`` for zero, else the coefficient and the remaining tree
        (``None`` when only a scalar remains).
    """
    if isinstance(tree, OLeaf):
        return tree.value, None
    if not isinstance(tree, Node):
        return 1, tree
    coeff: Scalar = 1
    kept = []
    for child in tree.children:
        if isinstance(child, OLeaf):
            coeff = child.value * coeff
            continue
        normal = normalize_o_leaves(child)
        if normal is None:
            return None
        c, subtree = normal
        coeff = c * coeff
        kept.append(subtree)
    if len(kept) < 2:
        return None
    return coeff, Node(tuple(kept))


def vertex_paths(tree: Tree) -> List[Path]:
    """Paths of all vertices, root first, in preorder."""
    if not isinstance(tree, Node):
        return []
    paths: List[Path] = [()]
    for i, child in enumerate(tree.children):
        paths.extend((i,) + p for p in vertex_paths(child))
    return paths


def leaf_paths(tree: Tree) -> List[Path]:
    """Paths of all leaves, in planar order."""
    if not isinstance(tree, Node):
        return [()]
    return [(i,) + p for i, c in enumerate(tree.children) for p in leaf_paths(c)]


def subtree_at(tree: Tree, path: Path) -> Tree:
    for step in path:
        if not isinstance(tree, Node) or not 0 <= step < len(tree.children):
            raise InputError(f"No vertex at path {path}")
        tree = tree.children[step]
    return tree


def replace_at(tree: Tree, path: Path, new: Tree) -> Tree:
    """The tree with the subtree at ``path`` replaced by ``new``."""
    if not path:
        return new
    if not isinstance(tree, Node) or not 0 <= path[0] < len(tree.children):
        raise InputError(f"No vertex at path {path}")
    children = list(tree.children)
    children[path[0]] = replace_at(children[path[0]], path[1:], new)
    return Node(tuple(children))


def weight_W(tree: Tree, path: Path) -> int:
    """
    Weight of the vertex or leaf at ``path``.

    The number of edges from the root plus the degrees of the child subtrees
    passed on the left at every vertex of the path. The root has weight 0.
    """
    weight = 0
    for step in path:
        if not isinstance(tree, Node) or not 0 <= step < len(tree.children):
            raise InputError(f"No vertex at path {path}")
        weight += 1 + sum(tree_degree(c) for c in tree.children[:step])
        tree = tree.children[step]
    return weight


def is_binary(tree: Tree) -> bool:
    if not isinstance(tree, Node):
        return True
    return len(tree.children) == 2 and all(is_binary(c) for c in tree.children)


def left_count_b(tree: Tree, path: Path) -> int:
    """Number of vertices whose left subtree contains the vertex at ``path``."""
    if not is_binary(tree):
        raise InputError("left_count_b is defined on binary trees only")
    subtree_at(tree, path)
    return sum(1 for step in path if step == 0)


def left_weight_P(tree: Tree) -> int:
    """Sum over the vertices of a binary tree of the degree of the left subtree."""
    if not is_binary(tree):
        raise InputError("left_weight_P is defined on binary trees only")
    if not isinstance(tree, Node):
        return 0
    left, right = tree.children
    return tree_degree(left) + left_weight_P(left) + left_weight_P(right)


def merge_vertex(tree: Tree, path: Path) -> Node:
    """Merge the inner vertex at ``path`` with its parent."""
    if not path:
        raise InputError("The root cannot be merged")
    vertex = subtree_at(tree, path)
    if not isinstance(vertex, Node):
        raise InputError(f"Path {path} points to a leaf")
    parent = subtree_at(tree, path[:-1])
    assert isinstance(parent, Node)
    j = path[-1]
    children = parent.children[:j] + vertex.children + parent.children[j + 1 :]
    merged = replace_at(tree, path[:-1], Node(children))
    assert isinstance(merged, Node)
    return merged


def add_term(target: Dict, key, coeff) -> None:
    """Accumulate ``coeff`` on ``key``, dropping zero coefficients."""
    value = target.get(key, 0) + coeff
    if value:
        target[key] = value
    else:
        target.pop(key, None)


def boundary(tree: Tree) -> TreeCombination:
    """
    The tree differential: the signed sum of all single merges.

    Each inner vertex A contributes ``(-1)^{W_A}`` times the canonical form of
    the tree with A merged into its parent.
    """
    result: TreeCombination = {}
    for path in vertex_paths(tree)[1:]:
        sign, merged = canonicalize(merge_vertex(tree, path))
        if sign:
            add_term(result, merged, sign * (-1) ** weight_W(tree, path))
    return result


def boundary_of(combination: TreeCombination) -> TreeCombination:
    result: TreeCombination = {}
    for tree, coeff in combination.items():
        for merged, c in boundary(tree).items():
            add_term(result, merged, coeff * c)
    return result


def up_down(tree: Tree, path: Path) -> Tuple[Tree, Tree]:
    """
    Split a tree at a vertex or leaf.

    Returns the subtree rooted at ``path`` and the tree with that subtree
    replaced by a fresh leaf, whose degree is one less than the subtree's.
    """
    upper = subtree_at(tree, path)
    return upper, replace_at(tree, path, Slot(tree_degree(upper) - 1))


def substitute(
    tree: Tree, path: Path, element: ModuleElement
) -> List[Tuple[Scalar, Tree]]:
    """
    Replace the subtree at ``path`` by a module element, term by term.

    A component along the unit becomes a polynomial leaf; pass the results
    through :func:`normalize_o_leaves` before canonicalizing.
    """
    terms: List[Tuple[Scalar, Tree]] = []
    for gen, coeff in element:
        if gen == ONE:
            terms.append((1, replace_at(tree, path, OLeaf(coeff))))
        else:
            terms.append((coeff, replace_at(tree, path, gen)))
    return terms


def root(forest: Sequence[Tree]) -> Node:
    """Graft at least two trees onto a new root; degree goes up by one."""
    if len(forest) < 2:
        raise InputError("Only forests of at least two trees can be rooted")
    return Node(tuple(forest))


def unroot(tree: Tree) -> Tuple[Tree, ...]:
    """Remove the root; inverse of :func:`root`."""
    if not isinstance(tree, Node):
        raise InputError("A trivial tree cannot be unrooted")
    return tree.children


def planar_trees(decorations: Sequence[Tree]) -> List[Tree]:
    """All planar trees with the given leaves in the given order."""
    return list(_planar_trees(tuple(decorations)))


@lru_cache(maxsize=TREE_CACHE_SIZE)
def _planar_trees(decorations: Tuple[Tree, ...]) -> Tuple[Tree, ...]:
    n = len(decorations)
    if n == 1:
        return decorations
    result = []
    for k in range(2, n + 1):
        for cuts in combinations(range(1, n), k - 1):
            bounds = (0,) + cuts + (n,)
            blocks = [decorations[bounds[i] : bounds[i + 1]] for i in range(k)]
            for children in product(*(_planar_trees(b) for b in blocks)):
                result.append(Node(tuple(children)))
    return tuple(result)


@lru_cache(maxsize=TREE_CACHE_SIZE)
def binary_trees(decorations: Tuple[Tree, ...]) -> Tuple[Tree, ...]:
    """All ordered binary trees with the given leaves, split by split."""
    n = len(decorations)
    if n == 1:
        return decorations
    result = []
    for i in range(1, n):
        for left in binary_trees(decorations[:i]):
            for right in binary_trees(decorations[i:]):
                result.append(Node((left, right)))
    return tuple(result)


def encode(tree: Tree) -> str:
    """
    Text form of a tree, e.g. ``((pixx pixy) piyy)``.

    A trivial tree is written between bars, ``|pixx|``.
    """
    if not isinstance(tree, Node):
        return f"|{_encode(tree)}|"
    return _encode(tree)


def _encode(tree: Tree) -> str:
    if isinstance(tree, Node):
        return "(" + " ".join(_encode(c) for c in tree.children) + ")"
    if isinstance(tree, Gen):
        return tree.name
    if isinstance(tree, Slot):
        return f"_{tree.degree}"
    return f"[{tree.value}]"


def _tokens(text: str) -> Iterator[str]:
    name = ""
    for char in text:
        if char in "()|" or char.isspace():
            if name:
                yield name
                name = ""
            if not char.isspace():
                yield char
        else:
            name += char
    if name:
        yield name


def decode(text: str, lookup: Callable[[str], Gen]) -> Tree:
    """
    Parse the text form of :func:`encode`.

    Parameters
    ----------
    text : str
        Encoded tree. Redundant parentheses around a single subtree are
        accepted and dropped.
    lookup : Callable[[str], Gen]
        Resolves decoration names to generators.

    Returns
    -------
    Tree
        The ordered (not canonicalized) tree.
    """
    tokens = list(_tokens(text))
    if len(tokens) == 3 and tokens[0] == tokens[2] == "|":
        return lookup(tokens[1])
    position = 0

    def parse() -> Tree:
        nonlocal position
        if position >= len(tokens):
            raise InputError(f"Unexpected end of tree {text!r}")
        token = tokens[position]
        position += 1
        if token == "(":
            children = []
            while position < len(tokens) and tokens[position] != ")":
                children.append(parse())
            if position >= len(tokens):
                raise InputError(f"Unbalanced parentheses in tree {text!r}")
            position += 1
            if len(children) == 1 and isinstance(children[0], Node):
                return children[0]
            if len(children) < 2:
                raise InputError(f"A vertex of {text!r} has fewer than two children")
            return Node(tuple(children))
        if token in ")|":
            raise InputError(f"Unexpected {token!r} in tree {text!r}")
        return lookup(token)

    tree = parse()
    if position != len(tokens):
        raise InputError(f"Trailing text in tree {text!r}")
    return tree


class TreeBasis:
    """
    Canonical trees and forests of a fixed degree over a set of generators.

    Parameters
    ----------
    gens : Sequence[Gen]
        Generators of positive degree, used as leaf decorations.

    Notes
    -----
    Trees of each degree are listed in canonical order. Forests are
    multisets of canonical trees listed in canonical order, a tree of odd
    degree appearing at most once.
    """

    def __init__(self, gens: Sequence[Gen]):
        self.gens = sorted(gens, key=sort_key)
        self._trees: Dict[int, List[Tree]] = {}
        self._forests: Dict[Tuple[int, int, int], List[Tuple[int, ...]]] = {}
        self._candidates: List[Tree] = []
        self._candidate_degree = 0

    def trees(self, degree: int) -> List[Tree]:
        """All canonical trees of the given degree."""
        if degree not in self._trees:
            trees: List[Tree] = [g for g in self.gens if g.degree == degree]
            if degree >= 3:
                trees.extend(Node(f) for f in self._multisets(degree - 1, 2))
            self._trees[degree] = sorted(trees, key=sort_key)
        return self._trees[degree]

    def nontrivial_trees(self, degree: int) -> List[Node]:
        return [t for t in self.trees(degree) if isinstance(t, Node)]

    def forests(self, degree: int, min_size: int = 1) -> List[Tuple[Tree, ...]]:
        """All canonical forests of the given total degree with enough trees."""
        if degree == 0:
            return [()] if min_size == 0 else []
        return self._multisets(degree, max(min_size, 1))

    def _candidates_upto(self, degree: int) -> List[Tree]:
        while self._candidate_degree < degree:
            self._candidate_degree += 1
            self._candidates.extend(self.trees(self._candidate_degree))
        return self._candidates

    def _multisets(self, degree: int, min_size: int) -> List[Tuple[Tree, ...]]:
        candidates = self._candidates_upto(degree)
        return [
            tuple(candidates[i] for i in combo)
            for combo in self._index_multisets(degree, 0, min_size)
        ]

    def _index_multisets(
        self, total: int, start: int, min_size: int
    ) -> List[Tuple[int, ...]]:
        key = (total, start, min_size)
        if key in self._forests:
            return self._forests[key]
        result: List[Tuple[int, ...]] = []
        if total == 0 and min_size <= 0:
            result.append(())
        candidates = self._candidates
        for i in range(start, len(candidates)):
            d = tree_degree(candidates[i])
            if d > total:
                break
            following = i if d % 2 == 0 else i + 1
            for rest in self._index_multisets(
                total - d, following, max(min_size - 1, 0)
            ):
                result.append((i,) + rest)
        self._forests[key] = result
        return result
