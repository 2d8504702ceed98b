"""Command line run configuration model."""
from pathlib import Path
from typing import List, Literal, Optional

from pydantic import BaseModel, Field, model_validator

from ktres.config import (
    DEFAULT_FIELD,
    DEFAULT_MAX_DEGREE,
    DEFAULT_MAX_LENGTH,
    DEFAULT_SEED,
)


class RunConfig(BaseModel, extra="ignore"):
    """
    Parameters of one command line run.

    Attributes
    ----------
    command : str
        Subcommand name.
    variables : List[str], optional
        Ring variables when the resolution is built from an ideal.
    field : str
        Coefficient field.
    ideal : List[str], optional
        Ideal generators (polynomial text).
    kind : str
        Resolution builder: ``generic``, ``koszul`` or ``taylor``.
    names : List[str], optional
        Names for the degree-1 generators of a generic resolution.
    resolution : str, optional
        Resolution file path, or ``fixture:<name>``.
    psi : Path, optional
        Psi table file; computed when absent.
    seed_table : Path, optional
        Partial psi table to complete (``kt`` only).
    fixtures : Path, optional
        Psi table to audit (``verify`` only).
    max_degree : int
        Tree degree bound.
    max_length : int
        Length bound of the generic resolution.
    backend : str
        ``generic-lift`` or ``dga``.
    n_max, cinfty_n_max : int
        Arity bounds of the A-infinity and C-infinity relation suites.
    homology_degree : int
        Degree bound of the homology certificate in ``verify``.
    kt : str
        ``arborescent`` or ``koszul`` (``betti`` only).
    witness : int, optional
        Build the witness tree T_m for this m (``betti`` only).
    seed : int
        Seed of the randomized parts.
    out : Path, optional
        Output file of ``resolve`` and ``kt``.
    format : str
        Report format, ``text`` or ``json``.
    """

    command: Literal["resolve", "kt", "verify", "ainfty", "betti"]
    variables: Optional[List[str]] = None
    field: str = DEFAULT_FIELD
    ideal: Optional[List[str]] = None
    kind: Literal["generic", "koszul", "taylor"] = "generic"
    names: Optional[List[str]] = None
    resolution: Optional[str] = None
    psi: Optional[Path] = None
    seed_table: Optional[Path] = None
    fixtures: Optional[Path] = None
    max_degree: int = Field(DEFAULT_MAX_DEGREE, ge=1)
    max_length: int = Field(DEFAULT_MAX_LENGTH, ge=1)
    backend: Literal["generic-lift", "dga"] = "generic-lift"
    n_max: int = Field(4, ge=1)
    cinfty_n_max: int = Field(4, ge=2)
    homology_degree: int = Field(3, ge=0)
    kt: Literal["arborescent", "koszul"] = "arborescent"
    witness: Optional[int] = Field(None, ge=0)
    seed: int = DEFAULT_SEED
    out: Optional[Path] = None
    format: Literal["text", "json"] = "text"

    @model_validator(mode="after")
    def _check_inputs(self):
        if self.resolution is None and self.ideal is None:
            raise ValueError("Either a resolution file or an ideal is required")
        if self.resolution is None and self.variables is None:
            raise ValueError("--vars is required when building from an ideal")
        building = self.resolution is None
        if self.backend == "dga" and building and self.kind == "generic":
            raise ValueError(
                "The dga backend needs a product: use --kind taylor or koszul"
            )
        if self.kt == "koszul" and building and self.kind != "koszul":
            raise ValueError("--kt koszul reads the Koszul complex: use --kind koszul")
        return self
