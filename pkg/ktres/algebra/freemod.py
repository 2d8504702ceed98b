"""
Free module module.

Graded free modules over a polynomial ring, their elements and the O-linear
maps between them. A generator is identified by its homological degree and
its index within the free module of that degree; the unit ``ONE`` spans the
degree-zero module O itself.
"""
import logging
from dataclasses import dataclass, field
from typing import (
    Dict,
    Iterator,
    List,
    Mapping,
    NamedTuple,
    Optional,
    Sequence,
    Tuple,
)

from sympy.polys.rings import PolyElement, PolyRing

from ktres.algebra.polyring import Scalar, format_poly
from ktres.exceptions import InputError

logger = logging.getLogger(__name__)


class Gen(NamedTuple):
    """
    A basis generator of a graded free module.

    Attributes
    ----------
    degree : int
        Homological degree.
    index : int
        Position within the free module of that degree.
    name : str
        Display name, unique across the whole resolution.
    """

    degree: int
    index: int
    name: str

    def __repr__(self) -> str:
        return self.name


ONE = Gen(0, 0, "1")

Vector = Dict[int, PolyElement]


def gen_key(gen: Gen) -> Tuple[int, int]:
    """Sort key of generators: by degree, then by index."""
    return gen.degree, gen.index


@dataclass(frozen=True)
class FreeModule:
    """
    A free module of finite rank sitting in one homological degree.

    Attributes
    ----------
    degree : int
        Homological degree.
    names : Tuple[str, ...]
        Generator names, pairwise distinct.
    """

    degree: int
    names: Tuple[str, ...]
    gens: Tuple[Gen, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if len(set(self.names)) != len(self.names):
            raise InputError(f"Repeated generator names in degree {self.degree}")
        gens = tuple(Gen(self.degree, i, name) for i, name in enumerate(self.names))
        object.__setattr__(self, "gens", gens)

    @property
    def rank(self) -> int:
        return len(self.names)


class ModuleElement:
    """
    A finite O-linear combination of generators.

    Generators of different degrees may be mixed, so that elements of
    M ⊕ O (with ``ONE`` for the O summand) are represented too. Zero
    coefficients are never stored.
    """

    __slots__ = ("coords",)

    def __init__(self, coords: Optional[Mapping[Gen, Scalar]] = None):
        self.coords: Dict[Gen, Scalar] = {
            g: c for g, c in (coords or {}).items() if c
        }

    @classmethod
    def generator(cls, gen: Gen, ring: PolyRing) -> "ModuleElement":
        return cls({gen: ring.one})

    @classmethod
    def scalar(cls, value: Scalar) -> "ModuleElement":
        """The element ``value * ONE`` of the O summand."""
        return cls({ONE: value})

    def __bool__(self) -> bool:
        return bool(self.coords)

    def __iter__(self) -> Iterator[Tuple[Gen, Scalar]]:
        return iter(sorted(self.coords.items(), key=lambda item: gen_key(item[0])))

    def __len__(self) -> int:
        return len(self.coords)

    def __getitem__(self, gen: Gen) -> Scalar:
        return self.coords.get(gen, 0)

    def __eq__(self, other) -> bool:
        if isinstance(other, int) and other == 0:
            return not self.coords
        if not isinstance(other, ModuleElement):
            return NotImplemented
        return self.coords == other.coords

    def __add__(self, other: "ModuleElement") -> "ModuleElement":
        result = dict(self.coords)
        for g, c in other.coords.items():
            result[g] = result.get(g, 0) + c
        return ModuleElement(result)

    def __neg__(self) -> "ModuleElement":
        return ModuleElement({g: -c for g, c in self.coords.items()})

    def __sub__(self, other: "ModuleElement") -> "ModuleElement":
        return self + (-other)

    def __mul__(self, factor: Scalar) -> "ModuleElement":
        return ModuleElement({g: c * factor for g, c in self.coords.items()})

    __rmul__ = __mul__

    def degrees(self) -> List[int]:
        return sorted({g.degree for g in self.coords})

    def scalar_part(self) -> Scalar:
        return self.coords.get(ONE, 0)

    def module_part(self) -> "ModuleElement":
        return ModuleElement({g: c for g, c in self.coords.items() if g != ONE})

    def __repr__(self) -> str:
        return format_element(self)


def format_element(element: ModuleElement) -> str:
    """Human-readable form, e.g. ``x*pixxy - y*pixyy``."""
    if not element:
        return "0"
    parts = []
    for gen, coeff in element:
        text = format_poly(coeff)
        if gen == ONE:
            parts.append(f"({text})")
        elif text == "1":
            parts.append(gen.name)
        elif text == "-1":
            parts.append(f"-{gen.name}")
        else:
            parts.append(f"({text})*{gen.name}")
    return " + ".join(parts).replace("+ -", "- ")


def to_vector(element: ModuleElement, module: FreeModule) -> Vector:
    """Coordinates of an element of ``module`` indexed by generator position."""
    vector: Vector = {}
    for gen, coeff in element.coords.items():
        if gen.degree != module.degree or gen.index >= module.rank:
            raise InputError(f"{gen.name} is not a generator of degree {module.degree}")
        vector[gen.index] = coeff
    return vector


def from_vector(vector: Mapping[int, PolyElement], module: FreeModule) -> ModuleElement:
    """Inverse of :func:`to_vector`."""
    return ModuleElement({module.gens[i]: c for i, c in vector.items()})


@dataclass
class ModuleMap:
    """
    An O-linear map between free modules, given by its matrix.

    Attributes
    ----------
    source : FreeModule
        Domain.
    target : FreeModule
        Codomain.
    matrix : List[List[PolyElement]]
        ``matrix[i][j]`` is the coefficient of target generator ``i`` in the
        image of source generator ``j``.
    """

    source: FreeModule
    target: FreeModule
    matrix: List[List[PolyElement]]

    def __post_init__(self):
        if len(self.matrix) != self.target.rank or any(
            len(row) != self.source.rank for row in self.matrix
        ):
            raise InputError(
                f"Matrix of the map from degree {self.source.degree} to degree "
                f"{self.target.degree} must be {self.target.rank} x {self.source.rank}"
            )

    def column(self, j: int) -> ModuleElement:
        """Image of the ``j``-th source generator."""
        return ModuleElement(
            {self.target.gens[i]: row[j] for i, row in enumerate(self.matrix)}
        )

    def columns(self) -> List[ModuleElement]:
        return [self.column(j) for j in range(self.source.rank)]

    def __call__(self, element: ModuleElement) -> ModuleElement:
        result = ModuleElement()
        for gen, coeff in element.coords.items():
            if gen.degree != self.source.degree:
                raise InputError(f"{gen.name} is not in the source of this map")
            result = result + self.column(gen.index) * coeff
        return result

    def compose_is_zero(self, inner: "ModuleMap") -> bool:
        """Whether ``self ∘ inner`` vanishes identically."""
        return all(not self(column) for column in inner.columns())

    def is_zero(self) -> bool:
        return all(not entry for row in self.matrix for entry in row)


def free_generators(modules: Sequence[FreeModule]) -> List[Gen]:
    """All generators of the given modules, in degree then index order."""
    return [gen for module in modules for gen in module.gens]
