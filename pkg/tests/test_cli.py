import json
import subprocess
import sys
from pathlib import Path

import pytest

from slipfree import io
from slipfree.cli import DEFAULT_SEED, run

DATA = Path(__file__).resolve().parent.parent / "data"


def call(capsys, *argv):
    code = run([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_validate(capsys):
    code, out, _ = call(capsys, "validate", DATA / "skew_triangle.json")
    assert code == 0
    assert out == "kind: quasi-metric\npoints: 3\nbase: x0\n"


def test_validate_reports_triangle(capsys):
    code, _, err = call(capsys, "validate", DATA / "bad_triangle.json")
    assert code == 1 and "[triangle] at (a,b,c)" in err


def test_float_is_rejected_with_its_line(tmp_path, capsys):
    path = tmp_path / "f.json"
    path.write_text('{\n  "points": ["a", "b"],\n  "base": "a",\n  "d": [[0, 1.5], [1, 0]]\n}\n')
    code, _, err = call(capsys, "validate", path)
    assert code == 1 and f"{path}:4:" in err and "float" in err


@pytest.mark.parametrize("argv", [
    ["validate", "missing.json"],
    ["nonsense"],
    ["freenorm", "--method", "bogus", "x.json"],
    ["check", "--property", "S", "--seed", "-1", "--space", "x.json"],
    ["check", "--property", "H"],
    ["asymmetrize", "--cone", "monotone"],
])
def test_usage_and_io_errors_exit_one(argv, capsys):
    code, _, err = call(capsys, *argv)
    assert code == 1 and err.startswith("error")


def test_freenorm_hemi(capsys):
    code, out, _ = call(capsys, "freenorm", DATA / "hemi4_molecule.json")
    assert code == 0
    lines = out.splitlines()
    assert "dual: 3" in lines and "kr: 3" in lines and "sym (sum): 6" in lines
    assert any("delta(" in ln and "cost" in ln for ln in lines)


def test_freenorm_dump_lp(capsys):
    code, out, _ = call(capsys, "freenorm", DATA / "u_molecule.json", "--method", "dual",
                        "--dump-lp")
    assert code == 0 and out.startswith("# dual program\nmaximize:")
    assert "kr:" not in out


def test_check_sstar_counterexample(capsys):
    code, out, _ = call(capsys, "check", "--property", "Sstar", "--cone", "lplus",
                        "--space", DATA / "line_0_1_3.json")
    assert code == 2
    report = json.loads(out)
    assert report["verdict"] == "counterexample"
    assert report["witness"]["molecule"] == {"1": "-1", "3": "1"}


def test_check_s_holds(capsys):
    code, out, _ = call(capsys, "check", "--property", "S", "--space", DATA / "line_0_1_3.json")
    assert code == 0 and json.loads(out)["verdict"] == "holds"


def test_check_sstar_on_tree_uses_default_seed(capsys):
    code, out, _ = call(capsys, "check", "--property", "Sstar", "--cone", "monotone",
                        "--tree", DATA / "path_0_3.json")
    report = json.loads(out)
    assert code == 0 and report["sample"]["seed"] == DEFAULT_SEED


def test_check_h(capsys):
    code, out, _ = call(capsys, "check", "--property", "H", "--space", DATA / "u_0_1_2.json")
    report = json.loads(out)
    assert code == 0 and report["alpha"] == "1"


def test_slipnorm_reports_violation(capsys):
    code, out, _ = call(capsys, "slipnorm", DATA / "hemi_chain_f.json")
    assert code == 0
    assert "slip_norm: inf" in out and "d_monotone: false" in out
    assert "violation: d(b,a) = 0 but f(a) > f(b)" in out


def test_extend(capsys):
    code, out, err = call(capsys, "extend", DATA / "u_partial_f.json")
    assert code == 0 and json.loads(out)["values"] == {"0": "0", "1": "1", "2": "2"}
    assert "slip_norm of extension: 1" in err


def test_tree_norm(capsys):
    code, out, _ = call(capsys, "tree-norm", "--tree", DATA / "y_tree.json",
                        "--molecule", DATA / "y_tree_molecule.json")
    assert code == 0
    assert out.splitlines()[-3:] == ["asym: 1", "asym(-Q): 1", "sym: 2"]


def test_pushforward(capsys):
    code, out, err = call(capsys, "pushforward", "--map", DATA / "double_map.json",
                          "--molecule", DATA / "u_molecule.json")
    assert code == 0 and "slip constant: 2" in err
    assert json.loads(out)["space"]["points"] == ["0", "2", "4"]


def test_ball_json(capsys):
    code, out, _ = call(capsys, "ball", "--space", DATA / "skew_triangle.json")
    doc = json.loads(out)
    assert code == 0 and doc["coordinates"] == ["x1", "x2"]
    assert doc["vertices"][0] == ["-3/2", "-1"] and doc["rays"] == []


def test_ball_svg_matches_library(capsys):
    from slipfree.fixtures import skew_triangle
    from slipfree.polytope import render_svg

    code, out, _ = call(capsys, "ball", "--space", DATA / "skew_triangle.json", "--emit", "svg",
                        "--polar")
    assert code == 0 and out == render_svg(skew_triangle(), polar=True)


@pytest.mark.parametrize("argv, loader", [
    (["symmetrize", DATA / "skew_triangle.json", "--mode", "sum"], io.load_space),
    (["reverse", DATA / "hemi4.json"], io.load_space),
    (["adjoin", DATA / "u_0_2.json"], io.load_space),
    (["asymmetrize", "--space", DATA / "line_m2_0_2.json"], io.load_space),
    (["asymmetrize", "--cone", "monotone", "--tree", DATA / "path_0_3.json"], io.load_space),
    (["extend", DATA / "u_partial_f.json"], io.load_function),
    (["pushforward", "--map", DATA / "double_map.json", "--molecule", DATA / "u_molecule.json"],
     io.load_molecule),
    (["check", "--property", "S0star", "--space", DATA / "line_m2_0_2.json"], io.read_json),
], ids=["symmetrize", "reverse", "adjoin", "asym-lplus", "asym-monotone", "extend",
        "pushforward", "check"])
def test_outputs_reload_and_are_stable(argv, loader, tmp_path, capsys):
    first = tmp_path / "a.json"
    second = tmp_path / "b.json"
    run([str(a) for a in argv] + ["-o", str(first)])
    run([str(a) for a in argv] + ["-o", str(second)])
    capsys.readouterr()
    assert first.read_bytes() == second.read_bytes()
    loader(first)


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "slipfree", "validate", str(DATA / "hemi4.json")],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.startswith("kind: quasi-hemi-metric")
