"""
Koszul-Tate complexes module.

The common surface of the Koszul-Tate resolutions the reduced complex is
computed from, and the exterior algebra on the Koszul generators, which is
a Koszul-Tate resolution on its own when the sequence is regular.
"""
import logging
from typing import List, Protocol

from ktres.algebra.forest import TreeAlgebraElement
from ktres.algebra.freemod import Gen
from ktres.algebra.trees import Tree
from ktres.exceptions import InputError
from ktres.services.resolution import Resolution

logger = logging.getLogger(__name__)


class KoszulTateComplex(Protocol):
    """
    What the reduced complex needs from a Koszul-Tate resolution S(E).

    Attributes
    ----------
    name : str
        Short label used in reports.
    resolution : Resolution
        The resolution the generators come from; fixes ring and field.
    max_degree : int
        Generators are enumerated up to this degree.
    """

    name: str
    resolution: Resolution
    max_degree: int

    def generators(self, degree: int) -> List[Tree]:
        """Free generators of E in the given degree."""
        ...

    def linear_part(self, generator: Tree) -> TreeAlgebraElement:
        """delta of a generator, as an element of S(E)."""
        ...


class ExteriorKTComplex:
    """
    The Koszul complex of a sequence read as S(E_1).

    E is concentrated in degree one, its generators theta_i are odd and
    delta(theta_i) = phi_i. This is a Koszul-Tate resolution exactly when
    phi_1, ..., phi_k is a regular sequence, and it is then minimal.

    Parameters
    ----------
    resolution : Resolution
        Any resolution; its degree-1 generators and d_1 give theta_i and phi_i.
    max_degree : int
        Degree bound reported by the reduced complex.
    """

    name = "koszul"

    def __init__(self, resolution: Resolution, max_degree: int):
        if resolution.length < 1:
            raise InputError("The Koszul-Tate complex needs degree-1 generators")
        self.resolution = resolution
        self.max_degree = max_degree
        self._gens = list(resolution.module(1).gens)
        logger.info(
            f"Exterior algebra on {len(self._gens)} odd generators "
            f"({resolution.kind} resolution)"
        )

    def generators(self, degree: int) -> List[Tree]:
        return list(self._gens) if degree == 1 else []

    def linear_part(self, generator: Tree) -> TreeAlgebraElement:
        if not isinstance(generator, Gen) or generator.degree != 1:
            raise InputError(
                f"{generator!r} is not a generator of the exterior algebra"
            )
        return TreeAlgebraElement.scalar(self.resolution.d_gen(generator).scalar_part())
