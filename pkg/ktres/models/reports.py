"""Report models returned by the verifiers and printed by the commands."""
from typing import List, Literal, Optional, Tuple

from pydantic import BaseModel


class CheckResult(BaseModel):
    """
    Outcome of one named check.

    Attributes
    ----------
    name : str
        What was checked.
    degree : int, optional
        Homological or tree degree the check refers to.
    passed : bool
        Whether it held.
    checked : int
        Number of cases evaluated.
    detail : str, optional
        First counterexample or a short note.
    """

    name: str
    degree: Optional[int] = None
    passed: bool
    checked: int = 1
    detail: Optional[str] = None


class ValidationReport(BaseModel):
    """Result of validating a free resolution."""

    passed: bool
    length: int
    ranks: List[int]
    truncated: bool = False
    minimal: bool
    checks: List[CheckResult]


class TreeFailure(BaseModel):
    """
    A basis tree on which an identity fails.

    Attributes
    ----------
    tree : str
        Encoded tree.
    decorations : List[str]
        Its leaf decorations.
    residual : str
        The nonzero residual.
    """

    tree: str
    decorations: List[str]
    residual: str


class DeltaSquaredReport(BaseModel):
    """Result of applying the differential twice to every basis tree."""

    passed: bool
    max_degree: int
    checked: int
    method: str
    first_failure: Optional[TreeFailure] = None


class RetractReport(BaseModel):
    """Side relations of the retract between S(Tree[M]) and M ⊕ O."""

    passed: bool
    max_degree: int
    checks: List[CheckResult]


class HomologyReport(BaseModel):
    """Finite homology certificate of the Koszul-Tate differential."""

    passed: bool
    degree_limit: int
    checks: List[CheckResult]


class AuditEntry(BaseModel):
    """
    Audit of one entry of a user-supplied psi table.

    Attributes
    ----------
    tree : str
        Encoded tree.
    decorations : List[str]
        Leaf decorations.
    degree : int
        Tree degree.
    status : str
        ``pass``, ``fail`` or ``inconsistent`` (non-trivial obstruction).
    obstruction : str, optional
        The obstruction the value must lift.
    residual : str, optional
        ``obstruction - d(value)`` when the entry fails.
    """

    tree: str
    decorations: List[str]
    degree: int
    status: Literal["pass", "fail", "inconsistent"]
    obstruction: Optional[str] = None
    residual: Optional[str] = None


class AuditReport(BaseModel):
    """Entry-by-entry audit of a psi table."""

    passed: bool
    entries: List[AuditEntry]


class VerifyReport(BaseModel):
    """Everything the ``verify`` command checks."""

    passed: bool
    delta_squared: DeltaSquaredReport
    retract: RetractReport
    homology: Optional[HomologyReport] = None
    audit: Optional[AuditReport] = None


class RelationResult(BaseModel):
    """
    One family of A-infinity or C-infinity relations.

    Attributes
    ----------
    relation : str
        ``ainfty`` or ``cinfty``.
    n : int
        Arity.
    i : int, optional
        Size of the first block of the shuffles (``cinfty`` only).
    checked : int
        Number of argument tuples evaluated.
    passed : bool
        Whether every residual vanished.
    counterexample : str, optional
        First failing tuple and its residual.
    """

    relation: Literal["ainfty", "cinfty"]
    n: int
    i: Optional[int] = None
    checked: int
    passed: bool
    counterexample: Optional[str] = None


class MuValue(BaseModel):
    """A nonzero higher product on generators."""

    n: int
    arguments: List[str]
    value: str


class AInftyReport(BaseModel):
    """Relation suites of the induced A-infinity/C-infinity structure."""

    passed: bool
    n_max: int
    cinfty_n_max: int
    ainfty: List[RelationResult]
    cinfty: List[RelationResult]
    nonzero_mu: List[MuValue]


class Violation(BaseModel):
    """
    A generator whose differential has a unit coefficient on a generator.

    Attributes
    ----------
    degree : int
        Degree of the source generator.
    generator : str
        Encoded source generator.
    term : str
        Encoded generator hit with a unit coefficient.
    coefficient : str
        The constant coefficient.
    """

    degree: int
    generator: str
    term: str
    coefficient: str


class WitnessReport(BaseModel):
    """Certificate that the witness tree T_m gives a nonzero class."""

    m: int
    pair: Tuple[int, int]
    tree: str
    degree: int
    closed: bool
    exact: bool
    passed: bool


class BettiReport(BaseModel):
    """
    Homology dimensions of the reduced complex at the origin.

    Attributes
    ----------
    kt : str
        Which Koszul-Tate resolution was reduced.
    truncation_degree : int
        Generators were enumerated up to this degree; ``b`` is reported up to
        one less, and nothing is claimed beyond.
    b : List[Optional[int]]
        ``b[i]`` for ``1 <= i < truncation_degree``; ``b[0]`` is null.
    generators : List[Optional[int]]
        Number of generators per degree, same indexing.
    rank_bound_ok : bool
        Whether ``b[i] <= generators[i]`` everywhere.
    minimal : bool
        Whether the differential vanishes modulo the maximal ideal.
    first_violation : str, optional
        The first generator hit with a unit coefficient.
    violations : List[Violation]
        All such hits.
    witness : WitnessReport, optional
        The witness certificate when requested.
    """

    kt: str
    truncation_degree: int
    b: List[Optional[int]]
    generators: List[Optional[int]]
    rank_bound_ok: bool
    minimal: bool
    first_violation: Optional[str] = None
    violations: List[Violation]
    witness: Optional[WitnessReport] = None
