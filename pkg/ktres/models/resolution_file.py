"""Resolution file models."""
from typing import Dict, List, Optional, Tuple

from pydantic import BaseModel, model_validator


class RingSpec(BaseModel):
    """
    Polynomial ring declaration.

    Attributes
    ----------
    variables : List[str]
        Variable names; their order defines the monomial order.
    field : str
        Coefficient field, ``QQ`` or ``GF(p)``.
    """

    variables: List[str]
    field: str = "QQ"


class ModuleSpec(BaseModel):
    """
    A free module of the resolution.

    Attributes
    ----------
    degree : int
        Homological degree, at least 1.
    rank : int
        Number of generators.
    names : List[str]
        Generator names.
    """

    degree: int
    rank: int
    names: List[str]

    @model_validator(mode="after")
    def _check_rank(self):
        if self.degree < 1:
            raise ValueError(f"Module degree must be at least 1, got {self.degree}")
        if len(self.names) != self.rank:
            raise ValueError(
                f"Module of degree {self.degree} declares rank {self.rank} "
                f"but names {len(self.names)} generators"
            )
        return self


class DifferentialSpec(BaseModel):
    """
    Matrix of ``d_degree``.

    Attributes
    ----------
    degree : int
        Source degree of the differential.
    matrix : List[List[str]]
        Entry ``[i][j]`` is the coefficient of target generator ``i`` in the
        image of source generator ``j``.
    """

    degree: int
    matrix: List[List[str]]


class ProductEntry(BaseModel):
    """
    One value of the product table.

    Attributes
    ----------
    left, right : Tuple[int, str]
        Degree and name of the two factors.
    value : Dict[str, str]
        Generator name to coefficient.
    """

    left: Tuple[int, str]
    right: Tuple[int, str]
    value: Dict[str, str]


class ResolutionFile(BaseModel):
    """Serialized free resolution of O/I, optionally with its product."""

    ring: RingSpec
    ideal: List[str]
    modules: List[ModuleSpec]
    differentials: List[DifferentialSpec]
    product: Optional[List[ProductEntry]] = None
    kind: str = "generic"
    truncated: bool = False
