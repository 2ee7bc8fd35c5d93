import json
import subprocess
import sys

import pytest

from flagweights.cli import main

VAND3 = {"rows": 3, "cols": 3, "entries": [["1", "1", "1"], ["1", "2", "4"], ["1", "3", "9"]]}
ID3 = {"rows": 3, "cols": 3, "entries": [["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]]}
SINGULAR = {"rows": 2, "cols": 2, "entries": [["1", "2"], ["2", "4"]]}


@pytest.fixture
def files(tmp_path):
    out = {}
    for name, data in [("vand3", VAND3), ("id3", ID3), ("singular", SINGULAR),
                       ("planted", {"dim": 2, "points": [[4, 0], [3, 1], [1, 3], [0, 4]]}),
                       ("square", [[1, 0], [0, 1], [0, -1], [-1, 0]])]:
        p = tmp_path / f"{name}.json"
        p.write_text(json.dumps(data))
        out[name] = str(p)
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    out["bad"] = str(bad)
    return out


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, (json.loads(out) if out.strip() else None), err


def test_matroid(files, capsys):
    code, out, _ = run(capsys, "matroid", "--matrix", files["id3"], "--k", "2")
    assert code == 0 and out["bases"] == [[1, 2]]
    code, out, _ = run(capsys, "matroid", "--matrix", files["vand3"], "--k", "2", "--ggms")
    assert code == 0 and out["ggms"]["passed"]


def test_wtset(files, capsys):
    code, out, _ = run(capsys, "wtset", "--matrix", files["vand3"], "--lambda", "2,1,0")
    assert code == 0 and out["grading"] == 3 and len(out["points"]) == 7


def test_semistable(files, capsys):
    code, out, _ = run(capsys, "semistable", "--matrix", files["vand3"],
                       "--lambda", "2,1,0", "--mu", "1,1,1")
    assert code == 0 and out["semistable"] and out["witness_degree"] == 1
    assert out["witness"] == [{"k": 1, "I": [1]}, {"k": 2, "I": [2, 3]}]
    code, out, _ = run(capsys, "semistable", "--matrix", files["id3"],
                       "--lambda", "1,0,0", "--mu", "0,1,0")
    assert code == 0 and not out["semistable"] and out["hull_certificate"]["functional"]


def test_normality(files, capsys):
    code, out, _ = run(capsys, "normality", "--matrix", files["vand3"],
                       "--lambda", "2,1,0", "--max-degree", "4")
    assert code == 0 and out["normal_up_to_D"]
    code, out, _ = run(capsys, "normality", "--generators", files["planted"], "--max-degree", "2")
    assert code == 1
    assert out["holes"] == [{"degree": 1, "point": [2, 2]}]


def test_saturation_check(files, capsys):
    code, out, _ = run(capsys, "saturation-check", "--matrix", files["vand3"], "--lambda", "2,1,0")
    assert code == 0 and out["is_saturated"]
    code, out, _ = run(capsys, "saturation-check", "--points", files["square"],
                       "--roots", "b2", "--shift", "1,0")
    assert code == 1 and out["missing_points"] == [[0, 0]]


def test_extend_basis(capsys):
    code, out, _ = run(capsys, "extend-basis", "--roots", "1,0,-1")
    assert code == 0 and len(out["basis"]) == 2 and out["index"] == 1
    assert out["invariant_factors"] == [1, 1]
    code, out, err = run(capsys, "extend-basis", "--roots", "1,-1,0;0,1,-1;1,0,-1")
    assert code == 2 and out is None and "cycle" in err


def test_so5_demo(capsys):
    code, out, _ = run(capsys, "so5-demo")
    assert code == 0 and out["matches_expected"]
    assert out["saturation"]["missing_points"] == [[0, 0]] and out["origin_in_square"]


def test_input_errors(files, capsys):
    assert run(capsys, "wtset", "--matrix", files["bad"], "--lambda", "1,0")[0] == 2
    assert run(capsys, "wtset", "--matrix", files["singular"], "--lambda", "1,0")[0] == 2
    assert run(capsys, "wtset", "--matrix", "/nonexistent.json", "--lambda", "1,0")[0] == 2
    assert run(capsys, "wtset", "--matrix", files["vand3"], "--lambda", "1,2,0")[0] == 2
    assert run(capsys, "semistable", "--matrix", files["vand3"], "--lambda", "2,1,0",
               "--mu", "1,x")[0] == 2
    with pytest.raises(SystemExit) as info:
        main(["property-suite", "--suite", "nonsense"])
    assert info.value.code == 2


def test_output_file(files, capsys, tmp_path):
    target = tmp_path / "out.json"
    code = main(["matroid", "--matrix", files["id3"], "--k", "1", "--output", str(target)])
    assert code == 0 and capsys.readouterr().out == ""
    assert json.loads(target.read_text())["bases"] == [[1]]


def test_suite_is_deterministic(capsys):
    argv = ["property-suite", "--suite", "saturation", "--seed", "11", "--count", "4"]
    first = subprocess.run([sys.executable, "-m", "flagweights.cli", *argv],
                           capture_output=True, check=True).stdout
    second = subprocess.run([sys.executable, "-m", "flagweights.cli", *argv],
                            capture_output=True, check=True).stdout
    assert first == second
    data = json.loads(first)
    assert data["passed"] == 4 and data["first_counterexample"] is None


@pytest.mark.parametrize("suite", ["ggms", "saturation", "sat-lemma", "witness",
                                   "intersection", "normality", "basis"])
def test_each_suite_runs(suite, capsys):
    code, out, _ = run(capsys, "property-suite", "--suite", suite, "--seed", "3", "--count", "3")
    assert code == 0 and out["passed"] == 3 and out["suite"] == suite
