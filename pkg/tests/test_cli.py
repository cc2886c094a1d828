import io
import json
import subprocess
import sys

import pytest

from hypermorse.cli import run


def call(*argv):
    out = io.StringIO()
    code = run(list(argv), stdout=out)
    return code, out.getvalue()


def test_faces_census():
    code, text = call("faces", "--n", "8", "--k", "3")
    assert code == 0
    assert "   0       56       56" in text


def test_faces_json():
    code, text = call("faces", "--n", "4", "--k", "2", "--format", "json")
    data = json.loads(text)
    assert code == 0 and data["consistent"]
    assert [r["count"] for r in data["census"]] == [1, 6, 12, 8, 1]
    assert data["faces"][0] == {"label": "empty", "dim": -1, "s0": 0, "s1": 0}
    assert {"label": "1*0*", "dim": 1, "s0": 1, "s1": 1} in data["faces"]


def test_match_json():
    code, text = call("match", "--n", "3", "--k", "2", "--m0", "0", "--m1", "1",
                      "--format", "json")
    data = json.loads(text)
    assert code == 0
    assert (data["n"], data["k"], data["m0"], data["m1"]) == (3, 2, 0, 1)
    assert {"lower": "**1", "upper": "***", "rule": "R1c"} in data["pairs"]


def test_verify_example():
    code, text = call("verify", "--n", "8", "--k", "3", "--m0", "2", "--m1", "1",
                      "--format", "json")
    data = json.loads(text)
    assert code == 0
    assert {"lower": "10010100", "upper": "1*010*00", "rule": "R9"} in data["pairs"]
    assert data["verdict"]["acyclic"] is True
    assert data["verdict"]["witness"] is None
    assert set(data["verdict"]["census"].values()) == {0}
    assert all(v for k, v in data["report"].items() if k != "problems")


def test_verify_text_and_perturb():
    code, text = call("verify", "--n", "4", "--k", "2", "--m0", "0", "--m1", "1",
                      "--perturb", "20", "--seed", "3")
    assert code == 0
    assert "20/20 agree" in text
    assert "pairs (14):" in text


def test_sweep_grid():
    code, text = call("sweep", "--n", "6", "--k", "3", "--format", "json")
    data = json.loads(text)
    assert code == 0 and data["all_pass"]
    assert len(data["grid"]) == (6 - 3) * (3 - 1)
    assert {c["verdict"] for c in data["grid"]} == {"complete+acyclic"}


def test_sweep_parallel_matches_serial():
    serial = call("sweep", "--n", "6", "--k", "3")
    parallel = call("sweep", "--n", "6", "--k", "3", "--jobs", "2")
    assert serial == parallel
    assert serial[1].count("complete+acyclic") == 6


def test_hasse_dot():
    code, text = call("hasse", "--n", "3", "--k", "2", "--m0", "0", "--m1", "1")
    assert code == 0
    assert text.startswith("digraph")
    assert text.count("style=bold") == 4
    code, plain = call("hasse", "--n", "3", "--k", "2")
    assert code == 0 and "style=bold" not in plain


def test_homology_boundary():
    code, text = call("homology", "--n", "4", "--k", "2", "--boundary",
                      "--format", "json")
    data = json.loads(text)
    assert code == 0
    by_degree = {r["degree"]: r for r in data["homology"]}
    assert by_degree[2]["betti"] == 1
    assert all(r["betti"] == 0 for d, r in by_degree.items() if d != 2)
    assert data["euler_characteristic"] == 2


def test_homology_subcomplex_file(tmp_path):
    path = tmp_path / "sub.txt"
    path.write_text("1**\n*1*\n**1\n")
    code, text = call("homology", "--n", "3", "--k", "2", "--subcomplex", str(path))
    assert code == 0
    assert "closure added 3 face(s)" in text
    assert "H~_1  = Z" in text


def test_homology_export(tmp_path):
    code, _ = call("homology", "--n", "3", "--k", "2", "--boundary",
                   "--export-matrices", str(tmp_path))
    assert code == 0
    lines = (tmp_path / "boundary_1.txt").read_text().splitlines()
    assert lines[0] == "# rows 6 cols 6"
    assert len(lines) == 1 + 12


def test_out_file(tmp_path):
    target = tmp_path / "faces.txt"
    code, text = call("faces", "--n", "4", "--k", "2", "--out", str(target))
    assert code == 0 and text == ""
    assert "total cells" in target.read_text()


@pytest.mark.parametrize("argv", [
    ("match", "--n", "4", "--k", "1", "--m0", "0", "--m1", "1"),
    ("verify", "--n", "4", "--k", "1", "--m0", "0", "--m1", "1"),
    ("sweep", "--n", "4", "--k", "1"),
    ("verify", "--n", "6", "--k", "3", "--m0", "5", "--m1", "1"),
    ("faces", "--n", "3", "--k", "3"),
    ("match", "--n", "6", "--k", "3", "--m0", "1"),
])
def test_usage_errors(argv, capsys):
    code, _ = call(*argv)
    assert code == 2
    assert "error" in capsys.readouterr().err


def test_bad_format_is_usage_error():
    with pytest.raises(SystemExit) as exc:
        call("faces", "--n", "4", "--k", "2", "--format", "dot")
    assert exc.value.code == 2


def test_deterministic_output():
    for argv in [("verify", "--n", "5", "--k", "2", "--m0", "1", "--m1", "1",
                  "--perturb", "5", "--seed", "9"),
                 ("hasse", "--n", "4", "--k", "2", "--m0", "0", "--m1", "1")]:
        assert call(*argv) == call(*argv)


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "hypermorse", "faces",
                           "--n", "3", "--k", "1"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert "J(3,1)" in proc.stdout
