from __future__ import annotations

import json
import subprocess
import sys

import pytest

from cubefree_gl2.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_count_all_shapes(capsys):
    code, out, _ = run(capsys, "count", "--q", "5", "--m", "4")
    assert code == 0
    counts = {row["label"]: row["count"] for row in json.loads(out)["reducible"]}
    assert counts == {"Z4": 4, "Z2xZ2": 1}


def test_count_single_shape(capsys):
    code, out, _ = run(capsys, "count", "--q", "7", "--m", "3")
    assert code == 0
    assert [r["count"] for r in json.loads(out)["reducible"]] == [3]
    code, out, _ = run(capsys, "count", "--q", "5", "--m", "4", "--shape",
                       '{"sylows": [{"p": 2, "beta": 2, "kind": "elementary-abelian"}]}')
    assert code == 0 and json.loads(out)["count"] == 1


@pytest.mark.parametrize("argv,needle", [
    (("count", "--q", "5", "--m", "10"), "p | m"),
    (("count", "--q", "5", "--m", "8"), "cube-free"),
    (("count", "--q", "6", "--m", "2"), "prime power"),
    (("reps", "--q", "5", "--m", "10"), "p | m"),
    (("verify", "--q", "17"), "cap"),
    (("count", "--q", "5", "--m", "2", "--shape", "{"), "--shape"),
])
def test_precondition_errors(capsys, argv, needle):
    code, out, err = run(capsys, *argv)
    assert code == 2 and needle in err and out == ""


def test_reps(capsys, tmp_path):
    code, out, _ = run(capsys, "reps", "--q", "5", "--m", "2")
    assert code == 0
    gens = [r["generators"] for r in json.loads(out)["representatives"]]
    assert gens == [[[[[4], [0]], [[0], [4]]]], [[[[4], [0]], [[0], [1]]]]]
    target = tmp_path / "reps.json"
    code, out, _ = run(capsys, "reps", "--q", "7", "--m", "6", "--geo", "imprimitive", "--out", str(target))
    assert code == 0 and out == ""
    (entry,) = json.loads(target.read_text())["representatives"]
    assert entry["generators"] == [[[[2], [0]], [[0], [4]]], [[[0], [1]], [[1], [0]]]]


def test_reps_primitive_failure_is_recorded(capsys):
    code, out, _ = run(capsys, "reps", "--q", "3", "--m", "4", "--geo", "primitive")
    data = json.loads(out)
    assert code == 0 and data["representatives"] == []
    assert any("imprimitive" in w["reason"] for w in data["warnings"])


def test_reps_deterministic(capsys):
    first = run(capsys, "reps", "--q", "7", "--m", "12")[1]
    assert run(capsys, "reps", "--q", "7", "--m", "12")[1] == first


def test_verify(capsys, tmp_path):
    fig, js = tmp_path / "v.png", tmp_path / "v.json"
    code, out, _ = run(capsys, "verify", "--q", "3", "--max-m", "24", "--json", str(js), "--figure", str(fig))
    assert code == 0
    assert out.splitlines()[0].startswith("q | m")
    assert fig.stat().st_size > 0
    assert all(r["agreement"] for r in json.loads(js.read_text())["reports"])


def test_verify_reports_a5(capsys):
    code, out, _ = run(capsys, "verify", "--q", "4", "--max-m", "60")
    assert code == 0
    (row,) = [line for line in out.splitlines() if line.split("|")[1].strip() == "60"]
    assert "non-solvable" in row and row.rstrip().endswith("EXCLUDED")


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "cubefree_gl2", "count", "--q", "7", "--m", "6"],
                         capture_output=True, text=True, check=True)
    assert json.loads(res.stdout)["reducible"][0]["count"] == 7
