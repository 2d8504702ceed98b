import json
from unittest.mock import patch

import pytest

from ktres.cli import main
from ktres.exceptions import NotInImageError

SQUARE = "--resolution fixture:x2_xy_y2"
TAYLOR = "--vars x,y --ideal x^2,x*y,y^2 --kind taylor"


def _run(capsys, command):
    code = main(command.split())
    return code, capsys.readouterr()


def test_resolve_then_kt(tmp_path, capsys):
    """
    Test the resolve and kt commands chained through files.

    Parameters
    ----------
    tmp_path : Path
        Temporary directory for the written files.
    capsys : CaptureFixture
        Captures stdout and stderr.

    Returns
    -------
    None
    """
    res_path = tmp_path / "ex.resolution.json"
    code, out = _run(
        capsys,
        "resolve --vars x,y --ideal x^2,x*y,y^2 --names pixx,pixy,piyy "
        f"--out {res_path} --format json",
    )
    assert code == 0
    report = json.loads(out.out)
    assert report["passed"]
    assert report["ranks"] == [3, 2]
    assert res_path.exists()

    psi_path = tmp_path / "ex.psi.json"
    code, out = _run(
        capsys, f"kt --resolution {res_path} --max-degree 4 --out {psi_path}"
    )
    assert code == 0
    assert "Construction: PASS" in out.out
    assert "Timings" in out.out
    written = json.loads(psi_path.read_text(encoding="utf-8"))
    assert written["max_degree"] == 4
    assert len(written["entries"]) == 3


def test_json_output_is_deterministic(capsys):
    command = f"kt {SQUARE} --max-degree 4 --format json"
    first, out1 = _run(capsys, command)
    second, out2 = _run(capsys, command)
    assert first == second == 0
    assert out1.out == out2.out
    assert "Timings" not in out1.out


def test_verify_constructed_table(capsys):
    code, out = _run(capsys, f"verify {SQUARE} --max-degree 4 --format json")
    assert code == 0
    report = json.loads(out.out)
    assert report["delta_squared"]["passed"]
    assert report["homology"]["degree_limit"] == 3
    assert report["audit"] is None


def test_verify_reports_bad_fixture_entry(capsys):
    """
    Test that the bundled table with its wrong entry fails verification.

    Parameters
    ----------
    capsys : CaptureFixture
        Captures stdout and stderr.

    Returns
    -------
    None
    """
    code, out = _run(
        capsys, f"verify {SQUARE} --max-degree 4 --fixtures fixture:x2_xy_y2"
    )
    assert code == 2
    assert "Verification: FAIL" in out.out
    assert "(pixx piyy)" in out.out

    code, out = _run(capsys, f"verify {SQUARE} --psi fixture:x2_xy_y2 --format json")
    assert code == 2
    assert not json.loads(out.out)["delta_squared"]["passed"]


def test_ainfty_command(capsys):
    code, out = _run(
        capsys, f"ainfty {TAYLOR} --backend dga --n-max 3 --cinfty-n-max 3"
    )
    assert code == 0
    assert "Relations: PASS" in out.out


def test_betti_command(capsys):
    code, out = _run(
        capsys,
        "betti --vars x,y --ideal x^2,y^3 --kind koszul --kt koszul "
        "--max-degree 4 --format json",
    )
    assert code == 0
    report = json.loads(out.out)
    assert report["b"] == [None, 2, 0, 0]
    assert report["minimal"]


def test_betti_witness(capsys):
    code, out = _run(
        capsys, f"betti {TAYLOR} --backend dga --max-degree 4 --witness 1"
    )
    assert code == 0
    assert "Minimal at the origin: no" in out.out
    assert "Witness T_1 = (e{1} e{2})" in out.out


def test_kt_rejects_inexact_resolution(capsys):
    code, out = _run(capsys, "kt --vars x,y --ideal x^2,x*y --kind koszul")
    assert code == 2
    assert "not valid" in out.out


@pytest.mark.parametrize(
    "command",
    [
        "resolve",
        "resolve --vars x,y --ideal x^^2",
        "resolve --vars x --ideal x*z",
        "kt --resolution fixture:unknown",
        "kt --resolution /nonexistent/file.json",
        f"kt {SQUARE} --max-degree 0",
        "betti --vars x,y --ideal x^2 --backend dga",
    ],
)
def test_invalid_input_exit_code(capsys, command):
    code, out = _run(capsys, command)
    assert code == 3
    assert "error:" in out.err


def test_computation_error_exit_code(capsys):
    with patch(
        "ktres.commands.verify.verify_homology",
        side_effect=NotInImageError("no lift"),
    ):
        code, out = _run(capsys, f"verify {SQUARE} --max-degree 3")
    assert code == 2
    assert "no lift" in out.err


def test_version(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["--version"])
    assert exc.value.code == 0
    assert capsys.readouterr().out.strip()
