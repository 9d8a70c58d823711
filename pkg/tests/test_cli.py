import json
import subprocess
import sys

import pytest

from gkzdimer import fixtures
from gkzdimer.cli import main
from gkzdimer.polyring import format_poly, parse_poly


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, (json.loads(out) if out.strip() else None), err


def test_analyze_b2(capsys):
    code, report, _ = run(capsys, "analyze", "--B", "[[0,1,1,-2],[-1,0,2,-1]]")
    assert code == 0
    assert report["fan"]["vol_A"] == 3
    assert {tuple(v) for v in report["fan"]["secondary_vertices"]} == fixtures.B2_SECONDARY_VERTICES
    assert report["surfaces"] == {"count": 7, "complete": True, "perfect": 1}
    (d,) = report["dessins"]
    assert parse_poly(d["det"], 4) == parse_poly(fixtures.B2_DET_CRIT, 4)
    assert d["conjecture"]["status"] == "holds"
    assert d["genus"] == 1
    assert d["newton_equals_secondary"] and d["vertex_coefficients_ok"]


def test_output_is_deterministic(capsys):
    main(["analyze", "--B", "B2"])
    first = capsys.readouterr().out
    main(["analyze", "--B", "B2"])
    assert capsys.readouterr().out == first


def test_named_polygons(capsys):
    _, square, _ = run(capsys, "dessin", "--polygon", "square")
    assert [d["genus"] for d in square["dessins"]] == [0]
    _, f0, _ = run(capsys, "dessin", "--polygon", "F0")
    assert [d["genus"] for d in f0["dessins"]] == [1]


def test_plucker_input_with_factor(capsys):
    c = json.dumps([[0, 3, -3], [-3, 0, 3], [3, -3, 0]])
    code, report, _ = run(capsys, "gkz", "--C", c, "--G", "[[1,1],[0,3]]")
    assert code == 0
    assert report["gkz"]["torsion_orders"] == [3]


@pytest.mark.parametrize(
    "argv",
    [
        ["analyze", "--B", "[[0,1"],
        ["analyze", "--B", "[[1,-1,0],[2,-2,0]]"],
        ["analyze", "--B", "B2", "--polygon", "square"],
        ["analyze"],
        ["adet", "--B", "B1"],
        ["analyze", "--B", "B2", "--dessin", "5"],
        ["kasteleyn", "--B", "B2", "--weights", "[1, 0, 1]"],
    ],
)
def test_invalid_input(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert "error" in json.loads(err)


def test_mismatch_exit_code(capsys, tmp_path):
    wrong = tmp_path / "wrong.json"
    wrong.write_text(json.dumps({"polynomial": fixtures.CUBIC_DISCRIMINANT}))
    code, report, _ = run(capsys, "adet", "--B", "B2", "--ea-fixture", str(wrong))
    assert code == 3
    assert report["status"] == "fails"
    assert report["dessins"][0]["diffs"]


def test_b8_with_factor_fixture(capsys, tmp_path):
    path = tmp_path / "b8.json"
    path.write_text(json.dumps({"nvars": 6, "factors": [[t, k] for t, k in fixtures.B8_E_A_FACTORS]}))
    code, report, _ = run(capsys, "adet", "--B", "B8", "--ea-fixture", str(path))
    assert code == 0
    assert [d["sign"] for d in report["dessins"]] == [-1] * 6
    assert report["E_A"] == format_poly(fixtures.b8_e_a())


def test_cap_exit_code(capsys):
    code, _, err = run(capsys, "surface", "--B", "B8", "--cap", "10")
    assert code == 4
    assert json.loads(err)["stage"] == "surface"


def test_surface_listing(capsys):
    code, report, _ = run(capsys, "surface", "--B", "B2", "--full")
    assert code == 0 and report["count"] == 7
    assert sum(s["perfect"] for s in report["surfaces"]) == 1
    _, first, _ = run(capsys, "surface", "--B", "B2", "--first-step-only")
    assert first["complete"] is False


def test_kasteleyn_weights(capsys):
    _, unit, _ = run(capsys, "kasteleyn", "--B", "B2", "--weights", "unit")
    assert unit["dessins"][0]["det"].startswith("1*u^[0,0,3,3]")
    _, custom, _ = run(capsys, "kasteleyn", "--B", "B2", "--weights", json.dumps([1] * 10))
    assert custom["dessins"][0]["det"] == unit["dessins"][0]["det"]


def test_mirror_flips_superpotential(capsys):
    _, plain, _ = run(capsys, "dessin", "--B", "B1")
    _, mirrored, _ = run(capsys, "dessin", "--B", "B1", "--mirror")
    assert plain["dessins"][0]["sigma0"] != mirrored["dessins"][0]["sigma0"]


def test_svg_files(capsys, tmp_path):
    target = tmp_path / "b2.svg"
    code, report, _ = run(capsys, "svg", "--B", "B2", "--svg", str(target), "--fan", "--zigzag")
    assert code == 0
    assert len(report["written"]) == 3
    text = target.read_text()
    # ten rhombi plus the dashed period frame
    assert text.count("<polygon") == 11
    assert "<line" in text
    assert (tmp_path / "b2_fan.svg").read_text().count("<text") == 4 + 4


def test_module_entry_point():
    out = subprocess.run(
        [sys.executable, "-m", "gkzdimer", "fan", "--B", "B1"], capture_output=True, text=True, check=True
    )
    assert json.loads(out.stdout)["fan"]["vol_A"] == 3
