"""Psi table file models."""
from typing import Dict, List

from pydantic import BaseModel, Field


class PsiEntry(BaseModel):
    """
    One nonzero value of the arborescent operations.

    Attributes
    ----------
    tree : str
        Decorated tree in the parenthesized encoding, e.g. ``(pixx pixy)``.
    decorations : List[str]
        Leaf decorations in leaf order; must agree with ``tree``.
    value : Dict[str, str]
        Generator name to coefficient.
    """

    tree: str
    decorations: List[str]
    value: Dict[str, str]


class PsiTableFile(BaseModel):
    """
    Serialized psi table.

    Attributes
    ----------
    max_degree : int
        Tree degree up to which the listed entries are all nonzero values.
    entries : List[PsiEntry]
        The nonzero values.
    """

    max_degree: int = Field(ge=1)
    entries: List[PsiEntry]
