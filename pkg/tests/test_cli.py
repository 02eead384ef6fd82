import io
import json
import subprocess
import sys

import pytest

from frankl.cli import main
from frankl.lattice import parse, serialize

from conftest import N5_COVERS


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


@pytest.fixture
def n5_file(tmp_path):
    path = tmp_path / "n5.lat"
    path.write_text("lattice 5\n" + "".join(f"{a} {b}\n" for a, b in N5_COVERS))
    return str(path)


def test_certify_n5(n5_file):
    code, out = run("lattice", "certify", n5_file, "--m", "3", "--x", "2", "--y", "2")
    assert code == 0
    assert "phi2 = {2↦0, 4↦3}" in out
    assert "witness = 2" in out and "verified = true" in out


def test_certify_generalized_json(n5_file):
    code, out = run("lattice", "certify", n5_file, "--m", "3", "--x", "2", "--y", "2",
                    "--generalized", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["schema_version"] == 1
    assert data["phi2"] == [[2, 0], [4, 3]] and data["verified"] is True


def test_certify_bad_triple(n5_file, capsys):
    code, out = run("lattice", "certify", n5_file, "--m", "2", "--x", "1", "--y", "1")
    assert code == 2 and out == ""
    assert "not left-modular" in capsys.readouterr().err
    assert run("lattice", "certify", n5_file, "--m", "9", "--x", "1", "--y", "1")[0] == 2


def test_enumerate_scan():
    code, out = run("lattice", "enumerate", "5", "--scan")
    assert code == 0
    assert out.splitlines()[0] == "5 lattices, 0 counterexamples"


def test_enumerate_emit_files(tmp_path):
    code, out = run("lattice", "enumerate", "6", "--emit-files", str(tmp_path))
    assert code == 0 and out == "15 lattices\n"
    files = sorted(tmp_path.iterdir())
    assert len(files) == 15
    for f in files:
        assert serialize(parse(f.read_text())) == f.read_text()


def test_enumerate_cap():
    assert run("lattice", "enumerate", "11")[0] == 2


def test_check_formats(n5_file):
    code, out = run("lattice", "check", n5_file, "--format", "csv")
    header, row = out.splitlines()
    assert code == 0 and header.startswith("schema_version,lattice_size,satisfied,witness")
    assert row.startswith("1,5,true,2,2,")
    code, out = run("lattice", "check", n5_file, "--format", "json", "--emit-certificate")
    data = json.loads(out)
    assert data["witness"] == 2 and data["certificate"]["modular_element"] == 3


def test_check_rejects_bad_files(tmp_path):
    bad = tmp_path / "bad.lat"
    bad.write_text("lattice 4\n0 1\n0 2\n1 3\n")
    assert run("lattice", "check", str(bad))[0] == 2
    assert run("lattice", "check", str(tmp_path / "missing.lat"))[0] == 2
    one = tmp_path / "one.lat"
    one.write_text("lattice 1\n")
    assert run("lattice", "check", str(one))[0] == 2


def test_props(n5_file):
    code, out = run("lattice", "props", n5_file, "--format", "json")
    data = json.loads(out)
    assert data["left_modular_elements"] == [0, 1, 3, 4]
    assert data["dually_semimodular"] is False and data["comodernistic"] is True
    assert data["left_modular_chain"] == [0, 1, 3, 4]
    assert data["averaged_up_set"] == "7/3"


def test_group_check_sym3():
    code, out = run("group", "check", "sym:3", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["satisfied"] is True
    assert data["path"] == "normal-quotient"
    assert data["normal_subgroup"] == [0, 3, 4]


def test_group_lattice_round_trip(tmp_path):
    path = tmp_path / "s4.lat"
    assert run("group", "lattice", "sym:4", "--out", str(path))[0] == 0
    lat = json.loads(run("lattice", "check", str(path), "--format", "json")[1])
    grp = json.loads(run("group", "check", "sym:4", "--format", "json")[1])
    assert lat["lattice_size"] == grp["lattice_size"] == 30
    assert lat["satisfied"] == grp["satisfied"] is True


def test_group_interval():
    code, out = run("group", "interval", "dicyclic:2", "--h", "0", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["lattice_size"] == 6 and data["h"] == [0]
    assert run("group", "interval", "cyclic:4", "--h", "1")[0] == 2
    assert run("group", "interval", "cyclic:4", "--h", "1,x")[0] == 2


def test_group_sweeps():
    code, out = run("group", "solvable-intervals", "sym:4", "--format", "json")
    assert code == 0 and json.loads(out)["intervals"] == 120
    assert run("group", "solvable-intervals", "alt:5")[0] == 2
    assert run("group", "complemented", "sym:3")[0] == 0
    assert run("group", "complemented", "cyclic:4")[0] == 2


def test_group_input_errors(tmp_path, capsys):
    assert run("group", "check", "widget:3")[0] == 2
    bad = tmp_path / "g.txt"
    bad.write_text("group cayley 2\n0 1\n1 7\n")
    assert run("group", "check", str(bad))[0] == 2
    assert "line 3" in capsys.readouterr().err
    assert run("group", "check", "cyclic:1")[0] == 2


def test_group_perm_file(tmp_path):
    path = tmp_path / "d4.perm"
    path.write_text("group perm 4\n(1 2 3 4)\n(1 3)\n")
    code, out = run("group", "check", str(path), "--format", "json")
    assert code == 0 and json.loads(out)["lattice_size"] == 10


def test_max_order(monkeypatch):
    monkeypatch.setenv("FRANKL_MAX_ORDER", "2000")
    assert run("group", "check", "cyclic:30", "--max-order", "20")[0] == 2
    monkeypatch.setenv("FRANKL_MAX_ORDER", "20")
    assert run("group", "check", "cyclic:30")[0] == 2
    assert run("group", "check", "cyclic:30", "--max-order", "40")[0] == 0
    assert run("group", "check", "cyclic:3", "--max-order", "0")[0] == 2


def test_output_is_byte_identical():
    for argv in (["group", "check", "alt:4", "--format", "json", "--emit-certificate"],
                 ["lattice", "enumerate", "6", "--scan", "--format", "csv"]):
        assert run(*argv) == run(*argv)


def test_usage_errors():
    assert run()[0] == 2
    assert run("lattice", "bogus")[0] == 2
    assert run("lattice", "check", "x", "--format", "xml")[0] == 2


def test_suite_small():
    code, out = run("suite", "--max-lattice", "5", "--max-group", "8")
    lines = out.splitlines()
    assert code == 0 and lines[-1] == "11/11 criteria passed"
    assert all(line.startswith("PASS [") for line in lines[:-1])


def test_module_entry_point(n5_file):
    proc = subprocess.run([sys.executable, "-m", "frankl", "lattice", "check", n5_file],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "witness" in proc.stdout
