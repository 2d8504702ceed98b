"""
Groebner bases of submodules of free modules.

Vectors are sparse maps from generator position to polynomial. Terms are
compared position-over-term: the leading term of a vector lives in its first
nonzero position and is the leading term of that coordinate for the ring's
degree-reverse-lexicographic order. Every basis element remembers how it is
written in terms of the input generators, which is what lifting and the
Schreyer syzygies need.
"""
import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from sympy.polys.monomials import monomial_div, monomial_lcm
from sympy.polys.rings import PolyElement, PolyRing

from ktres.algebra.freemod import (
    FreeModule,
    ModuleElement,
    ModuleMap,
    Vector,
    from_vector,
    to_vector,
)

logger = logging.getLogger(__name__)

Monomial = Tuple[int, ...]


def _add_into(target: Vector, source: Vector, factor: Optional[PolyElement] = None):
    for pos, coeff in source.items():
        value = target.get(pos, 0) + (coeff if factor is None else coeff * factor)
        if value:
            target[pos] = value
        else:
            target.pop(pos, None)


def _mul_term(vector: Vector, monom: Monomial, coeff) -> Vector:
    result = {}
    for pos, poly in vector.items():
        product = poly.mul_term((monom, coeff))
        if product:
            result[pos] = product
    return result


def _combine(vectors: Sequence[Vector], weights: Vector) -> Vector:
    """``sum(weights[k] * vectors[k])``."""
    result: Vector = {}
    for k, weight in weights.items():
        _add_into(result, vectors[k], weight)
    return result


def _leading(vector: Vector) -> Tuple[int, Monomial, object]:
    pos = min(vector)
    poly = vector[pos]
    return pos, poly.LM, poly.LC


def vector_degree(vector: Vector) -> int:
    """Largest total degree of a coordinate; -1 for the zero vector."""
    return max((max(sum(m) for m in p.monoms()) for p in vector.values()), default=-1)


@dataclass
class _Element:
    vec: Vector
    trans: Vector
    pos: int
    lm: Monomial
    lc: object


class GroebnerBasis:
    """
    Groebner basis of the submodule generated by a list of vectors.

    Parameters
    ----------
    ring : PolyRing
        Coefficient ring.
    gens : Sequence[Vector]
        Generators of the submodule, as position-indexed vectors.

    Attributes
    ----------
    gens : List[Vector]
        The input generators, in order.
    elements : List[_Element]
        The reduced basis with its transformation rows.
    """

    def __init__(self, ring: PolyRing, gens: Sequence[Vector]):
        self.ring = ring
        self.gens: List[Vector] = [dict(g) for g in gens]
        self.elements = self._interreduce(self._buchberger())

    @property
    def generators(self) -> List[Vector]:
        return [e.vec for e in self.elements]

    @property
    def transformation(self) -> List[Vector]:
        return [e.trans for e in self.elements]

    def _make(self, vec: Vector, trans: Vector) -> _Element:
        pos, lm, lc = _leading(vec)
        return _Element(vec, trans, pos, lm, lc)

    def _reduce_by(
        self, elements: Sequence[_Element], vec: Vector
    ) -> Tuple[Vector, Vector]:
        """Full reduction; returns the remainder and the quotient weights."""
        domain = self.ring.domain
        remainder: Vector = {}
        quotient: Vector = {}
        work = dict(vec)
        while work:
            pos, lm, lc = _leading(work)
            for k, element in enumerate(elements):
                if element.pos != pos:
                    continue
                monom = monomial_div(lm, element.lm)
                if monom is None:
                    continue
                coeff = domain.quo(lc, element.lc)
                _add_into(work, _mul_term(element.vec, monom, -coeff))
                term = self.ring.term_new(monom, coeff)
                _add_into(quotient, {k: term})
                break
            else:
                term = self.ring.term_new(lm, lc)
                _add_into(remainder, {pos: term})
                _add_into(work, {pos: -term})
        return remainder, quotient

    def _spair(self, a: _Element, b: _Element) -> Tuple[Monomial, Monomial]:
        lcm = monomial_lcm(a.lm, b.lm)
        return monomial_div(lcm, a.lm), monomial_div(lcm, b.lm)

    def _buchberger(self) -> List[_Element]:
        one = self.ring.domain.one
        elements = [
            self._make(g, {j: self.ring.one}) for j, g in enumerate(self.gens) if g
        ]
        pairs = [
            (i, k)
            for k in range(len(elements))
            for i in range(k)
            if elements[i].pos == elements[k].pos
        ]
        rank_one = all(e.pos == 0 for e in elements)
        while pairs:
            i, k = pairs.pop(0)
            a, b = elements[i], elements[k]
            if rank_one and monomial_lcm(a.lm, b.lm) == tuple(
                x + y for x, y in zip(a.lm, b.lm)
            ):
                continue
            ma, mb = self._spair(a, b)
            ca = self.ring.domain.quo(one, a.lc)
            cb = self.ring.domain.quo(one, b.lc)
            svec = _mul_term(a.vec, ma, ca)
            _add_into(svec, _mul_term(b.vec, mb, -cb))
            strans = _mul_term(a.trans, ma, ca)
            _add_into(strans, _mul_term(b.trans, mb, -cb))
            remainder, quotient = self._reduce_by(elements, svec)
            if not remainder:
                continue
            trans = dict(strans)
            _add_into(trans, _combine([e.trans for e in elements], quotient), -1)
            elements.append(self._make(remainder, trans))
            new = len(elements) - 1
            pairs.extend(
                (r, new) for r in range(new) if elements[r].pos == elements[new].pos
            )
        return elements

    def _interreduce(self, elements: List[_Element]) -> List[_Element]:
        keep = []
        for k, e in enumerate(elements):
            redundant = any(
                r != k
                and o.pos == e.pos
                and monomial_div(e.lm, o.lm) is not None
                and (o.lm != e.lm or r < k)
                for r, o in enumerate(elements)
            )
            if not redundant:
                keep.append(e)
        reduced = []
        for k, e in enumerate(keep):
            others = keep[:k] + keep[k + 1 :]
            remainder, quotient = self._reduce_by(others, e.vec)
            trans = dict(e.trans)
            _add_into(trans, _combine([o.trans for o in others], quotient), -1)
            scale = self.ring.domain.quo(self.ring.domain.one, _leading(remainder)[2])
            reduced.append(
                self._make(
                    _mul_term(remainder, self.ring.zero_monom, scale),
                    _mul_term(trans, self.ring.zero_monom, scale),
                )
            )
        return reduced

    def reduce(self, vec: Vector) -> Tuple[Vector, Vector]:
        """
        Normal form of a vector.

        Returns
        -------
        Tuple[Vector, Vector]
            The remainder and coefficients ``c`` over the input generators
            with ``vec = sum(c[j] * gens[j]) + remainder``.
        """
        remainder, quotient = self._reduce_by(self.elements, vec)
        return remainder, _combine(self.transformation, quotient)

    def contains(self, vec: Vector) -> bool:
        return not self._reduce_by(self.elements, vec)[0]

    def lift(self, vec: Vector) -> Optional[List[PolyElement]]:
        """
        Write a vector as a combination of the input generators.

        Returns
        -------
        Optional[List[PolyElement]]
            One coefficient per input generator, or ``None`` when the vector
            is not in the submodule.
        """
        remainder, coeffs = self.reduce(vec)
        if remainder:
            return None
        return [coeffs.get(j, self.ring.zero) for j in range(len(self.gens))]

    def syzygies(self) -> List[Vector]:
        """
        Generators of the relations among the input generators (Schreyer).

        Every S-pair of the basis reduces to zero; each reduction, pulled back
        through the transformation rows, gives a relation. Together with the
        relations expressing every input through the basis they generate
        the whole syzygy module.
        """
        one = self.ring.domain.one
        transformation = self.transformation
        relations: List[Vector] = []
        for k in range(len(self.elements)):
            for i in range(k):
                a, b = self.elements[i], self.elements[k]
                if a.pos != b.pos:
                    continue
                ma, mb = self._spair(a, b)
                ca = self.ring.domain.quo(one, a.lc)
                cb = self.ring.domain.quo(one, b.lc)
                svec = _mul_term(a.vec, ma, ca)
                _add_into(svec, _mul_term(b.vec, mb, -cb))
                remainder, quotient = self._reduce_by(self.elements, svec)
                if remainder:
                    raise ArithmeticError("S-pair of a Groebner basis did not reduce")
                weights = {i: self.ring.term_new(ma, ca)}
                _add_into(weights, {k: self.ring.term_new(mb, -cb)})
                _add_into(weights, quotient, -1)
                relations.append(_combine(transformation, weights))
        for j, g in enumerate(self.gens):
            _, quotient = self._reduce_by(self.elements, g)
            relation = {j: self.ring.one}
            _add_into(relation, _combine(transformation, quotient), -1)
            relations.append(relation)
        return [r for r in relations if r]


def _normalize(ring: PolyRing, vector: Vector) -> Vector:
    lc = _leading(vector)[2]
    return _mul_term(vector, ring.zero_monom, ring.domain.quo(ring.domain.one, lc))


def prune_generators(ring: PolyRing, vectors: Sequence[Vector]) -> List[Vector]:
    """
    Drop generators that lie in the submodule spanned by the others.

    Candidates are visited from the highest degree down, so for homogeneous
    input the survivors form a minimal generating set.
    """
    seen = []
    for v in vectors:
        if v and _normalize(ring, v) not in seen:
            seen.append(_normalize(ring, v))
    keep = sorted(seen, key=vector_degree)
    for idx in reversed(range(len(keep))):
        others = keep[:idx] + keep[idx + 1 :]
        if others and GroebnerBasis(ring, others).contains(keep[idx]):
            keep.pop(idx)
    return keep


def _vectors(gens: Sequence[ModuleElement], module: FreeModule) -> List[Vector]:
    return [to_vector(g, module) for g in gens]


def groebner(gens: Sequence[ModuleElement], module: FreeModule, ring: PolyRing):
    """Groebner basis of the submodule of ``module`` generated by ``gens``."""
    return GroebnerBasis(ring, _vectors(gens, module))


def lift(
    target: ModuleElement,
    gens: Sequence[ModuleElement],
    module: FreeModule,
    ring: PolyRing,
) -> Optional[List[PolyElement]]:
    """
    Solve ``target = sum(c_j * gens[j])``.

    Returns ``None`` when ``target`` is not in the submodule (NotInImage).
    """
    return groebner(gens, module, ring).lift(to_vector(target, module))


def syzygies(
    gens: Sequence[ModuleElement],
    module: FreeModule,
    ring: PolyRing,
    minimize: bool = True,
) -> List[Vector]:
    """
    Generating relations among ``gens``.

    Parameters
    ----------
    gens : Sequence[ModuleElement]
        Elements of ``module``.
    module : FreeModule
        Their ambient free module.
    ring : PolyRing
        Coefficient ring.
    minimize : bool, optional
        Prune redundant relations, True by default.

    Returns
    -------
    List[Vector]
        Relations as vectors indexed by the position in ``gens``.
    """
    vectors = _vectors(gens, module)
    zero = [j for j, v in enumerate(vectors) if not v]
    nonzero = [j for j, v in enumerate(vectors) if v]
    relations: List[Vector] = [{j: ring.one} for j in zero]
    if nonzero:
        basis = GroebnerBasis(ring, [vectors[j] for j in nonzero])
        for relation in basis.syzygies():
            relations.append({nonzero[p]: c for p, c in relation.items()})
    if minimize:
        relations = prune_generators(ring, relations)
    logger.debug(f"{len(relations)} syzygies among {len(gens)} generators")
    return relations


def kernel_generators(f: ModuleMap, ring: PolyRing) -> List[ModuleElement]:
    """Generators of the kernel of ``f``, as elements of its source."""
    return [
        from_vector(v, f.source) for v in syzygies(f.columns(), f.target, ring)
    ]


def in_submodule(
    element: ModuleElement,
    gens: Sequence[ModuleElement],
    module: FreeModule,
    ring: PolyRing,
) -> bool:
    """Membership test; the answer does not depend on the order of ``gens``."""
    if not element:
        return True
    if not gens:
        return False
    return groebner(gens, module, ring).contains(to_vector(element, module))

