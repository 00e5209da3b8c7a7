import csv
import io
import json
import subprocess
import sys

import pytest

from rootlines.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_roots_build(capsys):
    code, out, _ = run(capsys, "roots", "build", "--type", "E7")
    assert code == 0 and "126" in out
    code, out, _ = run(capsys, "roots", "build", "--type", "A2", "--format", "json")
    assert code == 0 and len(json.loads(out)["roots"]) == 6


def test_bad_label_is_usage_error(capsys):
    code, _, err = run(capsys, "roots", "build", "--type", "Q9")
    assert code == 2 and "usage" in err


def test_unsupported_format_is_usage_error(capsys):
    code, _, err = run(capsys, "gradings", "enumerate", "--type", "E7", "--format", "dot")
    assert code == 2 and err


def test_argparse_errors_exit_2():
    with pytest.raises(SystemExit) as e:
        main(["mesh"])
    assert e.value.code == 2


def test_lines_classify_and_decompose(capsys):
    code, out, _ = run(capsys, "lines", "classify", "--type", "E7", "--format", "json")
    assert code == 0 and json.loads(out)
    code, out, _ = run(capsys, "lines", "decompose", "--type", "E8", "--format", "dot")
    assert code == 0 and out.startswith("graph")
    code, _, _ = run(capsys, "lines", "decompose", "--type", "A1xA1")
    assert code == 2


def test_gradings_enumerate(capsys):
    code, out, _ = run(capsys, "gradings", "enumerate", "--type", "E7")
    assert code == 0 and "27" in out and "E6" in out and "Albert" in out
    code, out, _ = run(capsys, "gradings", "enumerate", "--type", "E8")
    assert code == 0 and "no 3-gradings" in out


def test_mesh_dot(capsys):
    code, out, _ = run(capsys, "mesh", "--max-rank", "7", "--dot")
    assert code == 0
    assert '"E7" -> "E6" [label="27", weight=27];' in out
    code, _, _ = run(capsys, "mesh", "--max-rank", "12")
    assert code == 2


def test_sequence_verify_star(capsys):
    code, out, _ = run(capsys, "sequence", "verify-star", "--format", "json")
    data = json.loads(out)
    assert code == 0
    assert data["labels"] == ["E7", "E6", "D5", "A4", "A1xA2"]
    assert data["local"] and data["maximal"] and data["uniqueness"]["ok"]


def test_lie_build(capsys, tmp_path):
    target = tmp_path / "a2.json"
    code, out, _ = run(capsys, "lie", "build", "--type", "A2", "--verify-jacobi", "--format", "json",
                          "-o", str(target))
    assert code == 0 and out == ""
    data = json.loads(target.read_text())
    assert data["dim"] == 8 and data["jacobi"]["ok"]
    code, _, _ = run(capsys, "lie", "build", "--type", "G2")
    assert code == 2


def test_particles_table_csv(capsys):
    code, out, _ = run(capsys, "particles", "table", "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert code == 0 and len(rows) == 17


def test_particles_triads_published_order(capsys):
    code, out, _ = run(capsys, "particles", "triads", "--generation", "2", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["triads"][0] == ["nu_L", "u_L^r", "u_R^r"]
    assert len(data["triads"]) == 15


def test_particles_census(capsys):
    code, out, _ = run(capsys, "particles", "census", "--format", "csv")
    assert code == 0 and len(out.strip().splitlines()) == 127


def test_verify_all_subset(capsys):
    code, out, _ = run(capsys, "verify-all", "--only", "root-counts,grading-census", "--format", "json")
    assert code == 0 and json.loads(out)["status"] == "pass"
    code, _, _ = run(capsys, "verify-all", "--only", "nonsense")
    assert code == 2


def test_outputs_are_byte_stable(capsys):
    for argv in (["particles", "census", "--format", "csv"], ["mesh", "--max-rank", "6", "--format", "json"],
                 ["lie", "build", "--type", "A3", "--format", "json"]):
        first = run(capsys, *argv)[1]
        assert run(capsys, *argv)[1] == first


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "rootlines", "gradings", "enumerate", "--type", "E6"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and "bi-Cayley" in proc.stdout
