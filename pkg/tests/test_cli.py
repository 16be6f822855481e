import json
from pathlib import Path

import pytest

from monodromy import Matrix, MonodromyTuple, levelt_construct, zeta
from monodromy.cli import main

DATA = Path(__file__).parent / "data"


def write(path, doc):
    path.write_text(json.dumps(doc) if not isinstance(doc, str) else doc)
    return str(path)


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_construct_writes_tuple(tmp_path, capsys):
    spectra = write(tmp_path / "s.json", [["1", "-1"], ["e(1/4)", "e(3/4)"]])
    out_file = tmp_path / "t.json"
    code, out, _ = run(capsys, "construct", spectra, "-o", out_file)
    assert code == 0
    assert "n=2 p=2" in out and "disjoint: confirmed" in out
    t = MonodromyTuple.from_json(json.loads(out_file.read_text()))
    assert t.members == (Matrix([[0, 1], [1, 0]]), Matrix([[0, -1], [1, 0]]))


def test_construct_accepts_spectrum_objects(tmp_path, capsys):
    spectra = write(tmp_path / "s.json",
                    {"spectra": [{"values": ["1", "-1"]}, {"values": [zeta(4).to_json(), "e(3/4)"]}]})
    code, out, err = run(capsys, "construct", spectra)
    assert code == 0
    assert json.loads(out)["p"] == 2
    assert "confirmed" in err


def test_construct_common_eigenvalue_exit_3(tmp_path, capsys):
    code, _, err = run(capsys, "construct", write(tmp_path / "s.json", [["1", "2"], ["1", "3"]]))
    assert code == 3 and "common eigenvalue" in err


def test_construct_zero_eigenvalue_exit_3(tmp_path, capsys):
    code, _, err = run(capsys, "construct", write(tmp_path / "s.json", [["0", "2"], ["1", "3"]]))
    assert code == 3


@pytest.mark.parametrize("text", ["", "   \n", "[[", '[["1", "x"], ["2", "3"]]', '{"a": 1}'])
def test_construct_malformed_exit_2(tmp_path, capsys, text):
    code, _, err = run(capsys, "construct", write(tmp_path / "s.json", text))
    assert code == 2 and err.startswith("error:")


def test_parse_error_has_location(tmp_path, capsys):
    _, _, err = run(capsys, "construct", write(tmp_path / "s.json", '[["1",\n "2",]]'))
    assert "line 2" in err
    _, _, err = run(capsys, "construct", write(tmp_path / "s.json", '[["1", "2"], ["1/0", "3"]]'))
    assert "spectrum 2" in err


def test_missing_file_exit_2(tmp_path, capsys):
    code, _, _ = run(capsys, "construct", tmp_path / "nope.json")
    assert code == 2


def test_analyze_irreducible(tmp_path, capsys):
    t = levelt_construct([[1, -1], [zeta(4), -zeta(4)]])
    src = write(tmp_path / "t.json", t.to_json())
    report = tmp_path / "r.json"
    code, out, _ = run(capsys, "analyze", src, "--report", report)
    assert code == 0 and "irreducible: yes" in out
    doc = json.loads(report.read_text())
    assert doc["irreducible"] is True
    assert doc["burnside_dim"] == 4
    assert doc["spectra_intersection"] == {"values": []}
    assert doc["rigidity_index"] is None and doc["reasons"]["rigidity_index"]


def test_analyze_reducible_witness(tmp_path, capsys):
    src = write(tmp_path / "t.json", {"members": [[["1", "0"], ["0", "2"]], [["1", "1"], ["0", "3"]]]})
    code, out, _ = run(capsys, "analyze", src)
    doc = json.loads(out)
    assert code == 0
    assert doc["irreducible"] is False
    assert doc["invariant_witness"]["dim"] == 1
    assert doc["invariant_witness"]["basis"] == [[{"N": 1, "coeffs": ["1"]}, {"N": 1, "coeffs": ["0"]}]]


def test_analyze_singular_exit_4(tmp_path, capsys):
    src = write(tmp_path / "t.json", {"members": [[["1", "0"], ["0", "0"]], [["1", "1"], ["0", "1"]]]})
    code, _, err = run(capsys, "analyze", src)
    assert code == 4 and "singular" in err


def test_analyze_shape_error_exit_2(tmp_path, capsys):
    src = write(tmp_path / "t.json", {"members": [[["1", "0"], ["0", "1"]], [["1"]]]})
    code, _, _ = run(capsys, "analyze", src)
    assert code == 2


def test_hypergeom_summary_and_exit_codes(tmp_path, capsys):
    out_file = tmp_path / "h.json"
    code, out, _ = run(capsys, "hypergeom", "--num", "1/2,1/2", "--den", "1,1", "-o", out_file)
    assert code == 0
    assert "pseudo-reflection: yes" in out and "irreducible: yes" in out
    assert "rigidity index: 2" in out
    code, _, err = run(capsys, "hypergeom", "--num", "1/3,2/3", "--den", "1/3,1")
    assert code == 3 and "(1, 1)" in err
    code, _, _ = run(capsys, "hypergeom", "--num", "1/2", "--den", "1")
    assert code == 2


def test_hypergeom_golden(tmp_path, capsys):
    out_file = tmp_path / "h.json"
    run(capsys, "hypergeom", "--num", "1/2,1/2", "--den", "1,1", "-o", out_file)
    assert out_file.read_bytes() == (DATA / "gauss_hypergeom.json").read_bytes()
    report = tmp_path / "r.json"
    run(capsys, "analyze", out_file, "-o", report)
    assert report.read_bytes() == (DATA / "gauss_report.json").read_bytes()


def test_conjugate_command(tmp_path, capsys):
    t = levelt_construct([[1, -1], [zeta(4), -zeta(4)]])
    h = Matrix([[1, 2], [zeta(3), 1]])
    a = write(tmp_path / "a.json", t.to_json())
    b = write(tmp_path / "b.json", t.conjugate(h).to_json())
    code, out, _ = run(capsys, "conjugate", a, b)
    doc = json.loads(out)
    assert code == 0 and doc["conjugate"] is True
    u = Matrix.from_json(doc["conjugator"])
    for g, g2 in zip(t, t.conjugate(h)):
        assert u @ g @ u.inverse() == g2
    other = write(tmp_path / "c.json", levelt_construct([[2, -1], [zeta(4), -zeta(4)]]).to_json())
    code, out, _ = run(capsys, "conjugate", a, other)
    assert code == 0 and json.loads(out) == {"conjugate": False, "conjugator": None}


def test_normalize_command_round_trip(tmp_path, capsys):
    t = levelt_construct([[1, 2, 3], [-1, -2, 5]])
    S = Matrix([[1, 1, 0], [2, 1, 1], [0, 0, 2]])
    src = write(tmp_path / "t.json", MonodromyTuple([S.inverse() @ A @ S for A in t]).to_json())
    out_file = tmp_path / "n.json"
    code, _, _ = run(capsys, "normalize", src, "-o", out_file)
    assert code == 0
    doc = json.loads(out_file.read_text())
    assert MonodromyTuple.from_json(doc["tuple"]) == t
    # the written file is accepted as input again
    code, _, _ = run(capsys, "normalize", out_file, "-o", tmp_path / "n2.json")
    assert code == 0
    again = json.loads((tmp_path / "n2.json").read_text())
    assert again["tuple"] == doc["tuple"]


def test_normalize_rejects_unshared(tmp_path, capsys):
    t = levelt_construct([[1, 2], [3, 4]]).conjugate(Matrix([[1, 0], [1, 1]]))
    code, _, err = run(capsys, "normalize", write(tmp_path / "t.json", t.to_json()))
    assert code == 3 and "differ at entry" in err


def test_written_files_round_trip(tmp_path, capsys):
    spectra = write(tmp_path / "s.json", [["1", "e(1/3)", "e(2/3)"], ["e(1/4)", "-1", "2"]])
    first = tmp_path / "t1.json"
    run(capsys, "construct", spectra, "-o", first)
    t = MonodromyTuple.from_json(json.loads(first.read_text()))
    assert json.dumps(t.to_json(), indent=2, ensure_ascii=False) + "\n" == first.read_text()
    r1, r2 = tmp_path / "r1.json", tmp_path / "r2.json"
    run(capsys, "analyze", first, "-o", r1)
    run(capsys, "analyze", first, "-o", r2)
    assert r1.read_bytes() == r2.read_bytes()


def test_no_command_exit_2(capsys):
    assert main([]) == 2


def test_module_entry_point(tmp_path):
    import subprocess
    import sys

    proc = subprocess.run([sys.executable, "-m", "monodromy", "hypergeom", "--num", "1/2,1/2",
                           "--den", "1,1", "-o", str(tmp_path / "h.json")],
                          capture_output=True, text=True, timeout=120)
    assert proc.returncode == 0
    assert "rigidity index: 2" in proc.stdout
