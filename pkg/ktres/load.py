"""
Data loading module for the package.

This module reads and writes the two file formats of the package, the
resolution file and the psi table file, and resolves the bundled fixtures
referred to as ``fixture:<name>``. Parsed files are cached so that repeated
commands and tests do not read them twice.
"""
import json
import logging
from functools import lru_cache
from pathlib import Path
from typing import Dict, List, Tuple, Union

from pydantic import ValidationError

from ktres.algebra.freemod import (
    ONE,
    FreeModule,
    Gen,
    ModuleElement,
    ModuleMap,
    gen_key,
)
from ktres.algebra.polyring import field_name, format_poly, make_ring, parse_poly
from ktres.algebra.trees import Node, decode, encode, leaves
from ktres.config import FIXTURES_DIR
from ktres.exceptions import InputError
from ktres.models.psi_table_file import PsiEntry, PsiTableFile
from ktres.models.resolution_file import (
    DifferentialSpec,
    ModuleSpec,
    ProductEntry,
    ResolutionFile,
    RingSpec,
)
from ktres.services.psi import PsiTable
from ktres.services.resolution import UNIT_MODULE, DgcaProduct, Resolution
from ktres.utils.timings import log_execution_time

logger = logging.getLogger(__name__)

FIXTURE_PREFIX = "fixture:"
RESOLUTION_SUFFIX = ".resolution.json"
PSI_SUFFIX = ".psi.json"

# Bundled fixtures: the three worked examples
FIXTURES = ["x2_xy_y2", "x2_xy_y2_xz", "x2_xy_y2z2_zw_w2"]


def resolve_source(source: Union[str, Path], suffix: str) -> Path:
    """
    Turn a file argument into a path.

    Parameters
    ----------
    source : str or Path
        A file path, or ``fixture:<name>`` for a bundled fixture.
    suffix : str
        File suffix of the fixture kind, ``.resolution.json`` or
        ``.psi.json``.

    Returns
    -------
    Path
        The path to read.
    """
    text = str(source)
    if text.startswith(FIXTURE_PREFIX):
        name = text[len(FIXTURE_PREFIX) :]
        if name not in FIXTURES:
            raise InputError(
                f"Unknown fixture {name!r}; available: {', '.join(FIXTURES)}"
            )
        return FIXTURES_DIR / f"{name}{suffix}"
    return Path(text)


def _read_json(path: Path) -> dict:
    if not path.exists():
        raise InputError(f"File not found: {path}")
    with open(path, encoding="utf-8") as handle:
        try:
            return json.load(handle)
        except json.JSONDecodeError as exc:
            raise InputError(f"{path} is not valid JSON: {exc}")


@lru_cache(maxsize=None)
@log_execution_time
def read_resolution_file(path: Path) -> ResolutionFile:
    """Parse and validate a resolution file."""
    logger.info(f"Reading resolution file {path}")
    try:
        return ResolutionFile.model_validate(_read_json(path))
    except ValidationError as exc:
        raise InputError(f"Invalid resolution file {path}:\n{exc}")


@lru_cache(maxsize=None)
@log_execution_time
def read_psi_file(path: Path) -> PsiTableFile:
    """Parse and validate a psi table file."""
    logger.info(f"Reading psi table file {path}")
    try:
        return PsiTableFile.model_validate(_read_json(path))
    except ValidationError as exc:
        raise InputError(f"Invalid psi table file {path}:\n{exc}")


def _element(res: Resolution, value: Dict[str, str], where: str) -> ModuleElement:
    coords: Dict[Gen, object] = {}
    for name, coeff in value.items():
        gen = res.gen(name)
        if gen in coords:
            raise InputError(f"{where}: generator {name!r} is listed twice")
        coords[gen] = parse_poly(res.ring, coeff)
    return ModuleElement(coords)


def resolution_from_file(data: ResolutionFile) -> Resolution:
    """
    Build a :class:`Resolution` from its file model.

    Raises
    ------
    InputError
        On missing degrees, wrong matrix shapes or unknown generator names.
    """
    ring = make_ring(tuple(data.ring.variables), data.ring.field)
    ideal = [parse_poly(ring, g) for g in data.ideal]

    specs = sorted(data.modules, key=lambda m: m.degree)
    degrees = [m.degree for m in specs]
    if degrees != list(range(1, len(specs) + 1)):
        raise InputError(f"Module degrees must be 1, 2, ..., got {degrees}")
    modules = [UNIT_MODULE] + [FreeModule(m.degree, tuple(m.names)) for m in specs]

    matrices = {d.degree: d.matrix for d in data.differentials}
    if sorted(matrices) != degrees or len(matrices) != len(data.differentials):
        raise InputError(
            f"Expected one differential per module degree {degrees}, "
            f"got {[d.degree for d in data.differentials]}"
        )
    differentials = []
    for degree in degrees:
        source, target = modules[degree], modules[degree - 1]
        rows = matrices[degree]
        if len(rows) != target.rank or any(len(r) != source.rank for r in rows):
            raise InputError(
                f"d_{degree} must be a {target.rank} x {source.rank} matrix"
            )
        matrix = [[parse_poly(ring, entry) for entry in row] for row in rows]
        differentials.append(ModuleMap(source, target, matrix))

    res = Resolution(
        ring,
        ideal,
        modules,
        differentials,
        kind=data.kind,
        truncated=data.truncated,
    )
    if data.product is not None:
        table: Dict[Tuple[Gen, Gen], ModuleElement] = {}
        for entry in data.product:
            a, b = res.gen(entry.left[1]), res.gen(entry.right[1])
            if (a.degree, b.degree) != (entry.left[0], entry.right[0]):
                raise InputError(
                    f"Product entry {a.name}*{b.name} declares wrong degrees"
                )
            where = f"product {a.name}*{b.name}"
            if (a, b) in table:
                raise InputError(f"{where} is listed twice")
            table[(a, b)] = _element(res, entry.value, where)
        res.product = DgcaProduct(table)
    return res


def load_resolution(source: Union[str, Path]) -> Resolution:
    """
    Load a resolution from a file or a bundled fixture.

    Parameters
    ----------
    source : str or Path
        A resolution file path or ``fixture:<name>``.

    Returns
    -------
    Resolution
        The resolution; it is not validated here.
    """
    path = resolve_source(source, RESOLUTION_SUFFIX)
    res = resolution_from_file(read_resolution_file(path))
    logger.info(f"Loaded {res.kind} resolution with ranks {res.ranks} from {path}")
    return res


def _coefficients(element: ModuleElement) -> Dict[str, str]:
    return {gen.name: format_poly(coeff) for gen, coeff in element}


def resolution_to_file(res: Resolution) -> ResolutionFile:
    """The file model of a resolution, in deterministic order."""
    product = None
    if res.product is not None:
        keys = sorted(
            res.product.table, key=lambda ab: (gen_key(ab[0]), gen_key(ab[1]))
        )
        product = [
            ProductEntry(
                left=(a.degree, a.name),
                right=(b.degree, b.name),
                value=_coefficients(res.product.table[(a, b)]),
            )
            for a, b in keys
            if res.product.table[(a, b)]
        ]
    return ResolutionFile(
        ring=RingSpec(
            variables=[str(s) for s in res.ring.symbols],
            field=field_name(res.ring.domain),
        ),
        ideal=[format_poly(g) for g in res.ideal],
        modules=[
            ModuleSpec(degree=m.degree, rank=m.rank, names=list(m.names))
            for m in res.modules[1:]
        ],
        differentials=[
            DifferentialSpec(
                degree=d.source.degree,
                matrix=[[format_poly(entry) for entry in row] for row in d.matrix],
            )
            for d in res.differentials
        ],
        product=product,
        kind=res.kind,
        truncated=res.truncated,
    )


def _decorations(tree: Node) -> List[str]:
    return [leaf.name for leaf in leaves(tree) if isinstance(leaf, Gen)]


def psi_table_from_file(data: PsiTableFile, res: Resolution) -> PsiTable:
    """
    Build a :class:`PsiTable` from its file model.

    Entries are moved to their canonical trees with the Koszul sign of the
    reordering. Entries listed twice (after canonicalization) are rejected.
    """

    def lookup(name: str) -> Gen:
        gen = res.gen(name)
        if gen == ONE:
            raise InputError("The unit cannot decorate a tree")
        return gen

    table = PsiTable(res, max_degree=data.max_degree, source="file")
    seen = set()
    for entry in data.entries:
        tree = decode(entry.tree, lookup)
        if not isinstance(tree, Node):
            raise InputError(f"psi of the trivial tree {entry.tree!r} is fixed by d")
        if _decorations(tree) != entry.decorations:
            raise InputError(
                f"Decorations {entry.decorations} do not match the leaves of "
                f"{entry.tree!r}"
            )
        value = _element(res, entry.value, entry.tree)
        key = table.set_value(tree, value)
        if key in seen:
            raise InputError(f"{entry.tree!r} is listed twice (as {encode(key)})")
        seen.add(key)
    logger.info(
        f"Loaded {len(table.entries)} psi values up to degree {table.max_degree}"
    )
    return table


def load_psi_table(source: Union[str, Path], res: Resolution) -> PsiTable:
    """
    Load a psi table for a resolution from a file or a bundled fixture.

    Parameters
    ----------
    source : str or Path
        A psi table file path or ``fixture:<name>``.
    res : Resolution
        The resolution whose generators decorate the trees.

    Returns
    -------
    PsiTable
        The table, with ``source`` set to ``file``.
    """
    path = resolve_source(source, PSI_SUFFIX)
    return psi_table_from_file(read_psi_file(path), res)


def psi_table_to_file(table: PsiTable) -> PsiTableFile:
    """The file model of a table: its nonzero values in canonical order."""
    return PsiTableFile(
        max_degree=table.max_degree,
        entries=[
            PsiEntry(
                tree=encode(tree),
                decorations=_decorations(tree),
                value=_coefficients(value),
            )
            for tree, value in table.sorted_entries()
        ],
    )


def write_model(model: Union[ResolutionFile, PsiTableFile], path: Path) -> None:
    """Write a file model as indented JSON."""
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(model.model_dump_json(indent=2) + "\n", encoding="utf-8")
    logger.info(f"Wrote {path}")
