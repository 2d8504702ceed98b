import json

import pytest

from ktres.config import FIXTURES_DIR
from ktres.exceptions import InputError
from ktres.load import (
    FIXTURES,
    PSI_SUFFIX,
    RESOLUTION_SUFFIX,
    load_psi_table,
    load_resolution,
    psi_table_from_file,
    psi_table_to_file,
    read_psi_file,
    resolution_to_file,
    resolve_source,
    write_model,
)
from ktres.models.psi_table_file import PsiTableFile
from ktres.services.resolution import validate

SQUARE_PSI = {
    "max_degree": 3,
    "entries": [
        {
            "tree": "(pixx pixy)",
            "decorations": ["pixx", "pixy"],
            "value": {"pixxy": "x"},
        }
    ],
}


def _write(path, data):
    path.write_text(json.dumps(data), encoding="utf-8")
    return path


def test_resolve_source(tmp_path):
    path = resolve_source("fixture:x2_xy_y2", RESOLUTION_SUFFIX)
    assert path == FIXTURES_DIR / "x2_xy_y2.resolution.json"
    assert path.exists()
    assert resolve_source(tmp_path / "a.json", PSI_SUFFIX) == tmp_path / "a.json"
    with pytest.raises(InputError):
        resolve_source("fixture:nope", PSI_SUFFIX)


@pytest.mark.parametrize("name", FIXTURES)
def test_bundled_fixtures_load(name):
    res = load_resolution(f"fixture:{name}")
    table = load_psi_table(f"fixture:{name}", res)
    assert validate(res).passed
    assert table.source == "file"
    assert table.entries


def test_resolution_round_trip(taylor_res, tmp_path):
    """
    Test that writing and reading a resolution keeps its maps and product.

    Parameters
    ----------
    taylor_res : Resolution
        Taylor resolution of <x^2, xy, y^2>, which carries a product.
    tmp_path : Path
        Temporary directory.

    Returns
    -------
    None
    """
    path = tmp_path / "taylor.resolution.json"
    write_model(resolution_to_file(taylor_res), path)
    loaded = load_resolution(path)
    assert loaded.ranks == taylor_res.ranks
    assert loaded.kind == "taylor"
    assert [d.matrix for d in loaded.differentials] == [
        d.matrix for d in taylor_res.differentials
    ]
    assert loaded.product.table == {
        k: v for k, v in taylor_res.product.table.items() if v
    }


def test_psi_table_round_trip(square_res, square_table, tmp_path):
    path = tmp_path / "square.psi.json"
    write_model(psi_table_to_file(square_table), path)
    loaded = load_psi_table(path, square_res)
    assert loaded.entries == square_table.entries
    assert loaded.max_degree == square_table.max_degree


def test_psi_entries_are_canonicalized(square_res):
    x, _ = square_res.ring.gens
    data = {
        "max_degree": 3,
        "entries": [
            {
                "tree": "(pixy pixx)",
                "decorations": ["pixy", "pixx"],
                "value": {"pixxy": "x"},
            }
        ],
    }
    table = psi_table_from_file(PsiTableFile.model_validate(data), square_res)
    ((key, value),) = table.entries.items()
    assert psi_table_to_file(table).entries[0].tree == "(pixx pixy)"
    assert value[square_res.gen("pixxy")] == -x
    assert key.children == (square_res.gen("pixx"), square_res.gen("pixy"))


@pytest.mark.parametrize(
    "entry",
    [
        # listed twice once canonicalized
        {"tree": "(pixy pixx)", "decorations": ["pixy", "pixx"], "value": {}},
        # decorations disagree with the leaves
        {"tree": "(pixx piyy)", "decorations": ["piyy", "pixx"], "value": {}},
        # trivial tree
        {"tree": "|pixx|", "decorations": ["pixx"], "value": {}},
        # unknown generator
        {"tree": "(pixx pizz)", "decorations": ["pixx", "pizz"], "value": {}},
        # wrong degree of the value
        {
            "tree": "(pixx piyy)",
            "decorations": ["pixx", "piyy"],
            "value": {"pixx": "1"},
        },
        # the unit on a leaf
        {"tree": "(1 pixx)", "decorations": ["1", "pixx"], "value": {}},
    ],
)
def test_bad_psi_entries(square_res, entry):
    data = {"max_degree": 3, "entries": SQUARE_PSI["entries"] + [entry]}
    with pytest.raises(InputError):
        psi_table_from_file(PsiTableFile.model_validate(data), square_res)


def test_bad_files(tmp_path, square_res):
    broken = tmp_path / "broken.psi.json"
    broken.write_text("{not json", encoding="utf-8")
    with pytest.raises(InputError):
        read_psi_file(broken)
    with pytest.raises(InputError):
        read_psi_file(tmp_path / "missing.psi.json")
    invalid = _write(tmp_path / "invalid.psi.json", {"max_degree": 0, "entries": []})
    with pytest.raises(InputError):
        load_psi_table(invalid, square_res)


def test_bad_resolution_files(tmp_path):
    """
    Test that malformed resolution files are rejected with an input error.

    Parameters
    ----------
    tmp_path : Path
        Temporary directory.

    Returns
    -------
    None
    """
    data = resolution_to_file(load_resolution("fixture:x2_xy_y2")).model_dump()
    wrong_shape = json.loads(json.dumps(data))
    wrong_shape["differentials"][1]["matrix"][0].append("0")
    missing = json.loads(json.dumps(data))
    missing["differentials"] = missing["differentials"][:1]
    bad_rank = json.loads(json.dumps(data))
    bad_rank["modules"][0]["rank"] = 4
    for i, case in enumerate([wrong_shape, missing, bad_rank]):
        path = _write(tmp_path / f"case{i}.resolution.json", case)
        with pytest.raises(InputError):
            load_resolution(path)
