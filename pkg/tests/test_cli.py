import csv
import io
import json
import subprocess
import sys

import pytest

from slnhom.cli import run
from slnhom.invariants import from_json, trefoil_homology, unknot_homology


def call(*argv):
    buf = io.StringIO()
    code = run(list(argv), buf)
    return code, buf.getvalue()


def test_trefoil_table_render():
    code, text = call("trefoil", "--n", "4", "--a", "2", "--format", "table")
    assert code == 0
    assert "Z⊕Z₂" in text
    # q descends down the rows, h increases along the columns
    lines = [ln for ln in text.splitlines() if ln.strip()]
    assert any(ln.split()[0] == "30" for ln in lines)
    qs = [int(ln.split()[0]) for ln in lines if ln.split()[0].lstrip("-").isdigit()]
    assert qs == sorted(qs, reverse=True)


def test_ascii_and_divisor_chain():
    code, text = call("trefoil", "--n", "6", "--a", "3", "--ascii", "--divisor-chain")
    assert code == 0
    assert "Z+Z_2+Z_6+Z_6" in text


def test_unknot_json():
    code, text = call("unknot", "--n", "2", "--a", "1", "--format", "json")
    assert code == 0
    doc = json.loads(text)
    assert sorted((g["h"], g["q"], g["rank"]) for g in doc["groups"]) == [(0, -1, 1), (0, 1, 1)]
    spec, H = from_json(text)
    assert H == unknot_homology(2, 1)


def test_json_round_trip_trefoil():
    _, text = call("trefoil", "--n", "5", "--a", "2", "--format", "json")
    _, H = from_json(text)
    assert H == trefoil_homology(5, 2)


def test_csv_columns():
    code, text = call("hopf", "--n", "3", "--a", "1", "--b", "2", "--format", "csv")
    assert code == 0
    rows = list(csv.reader(io.StringIO(text)))
    assert rows[0] == ["h", "q", "rank", "torsion"]
    assert len(rows) > 1


def test_threads_identical_bytes():
    _, one = call("trefoil", "--n", "5", "--a", "2", "--format", "json", "--threads", "1")
    _, many = call("trefoil", "--n", "5", "--a", "2", "--format", "json", "--threads", "3")
    _, again = call("trefoil", "--n", "5", "--a", "2", "--format", "json", "--threads", "1")
    assert one == many == again


def test_reduced_flag():
    code, text = call("trefoil", "--n", "2", "--a", "1", "--reduced", "--format", "json")
    assert code == 0
    assert sum(g["rank"] for g in json.loads(text)["groups"]) == 3


def test_truncation_output():
    code, text = call("trefoil", "--n", "3", "--a", "1", "--truncation", "8")
    assert code == 0
    assert "resolution=ok" in text and "FAIL" not in text


def test_repspace():
    code, text = call("repspace", "--link", "trefoil", "--n", "4", "--a", "2", "--format", "json")
    assert code == 0
    doc = json.loads(text)
    assert len(doc["components"]) == 3
    assert doc["within_tolerance"] and doc["max_residual"] <= 1e-9
    assert {"params", "block_sizes", "diagonal_pair", "dim", "poincare"} <= set(doc["components"][0])


def test_repspace_tolerance_failure():
    # rounding leaves residuals around 1e-16, above a zero tolerance
    code, text = call("repspace", "--link", "trefoil", "--n", "4", "--a", "2", "--tol", "0")
    assert code == 1 and "above tolerance" in text


def test_verify_single_table():
    code, text = call("verify-tables", "--table", "4,2")
    assert code == 0
    assert text.strip() == "table N=4 a=2: ok; euler ok"


def test_verify_reports_first_mismatch():
    code, text = call("verify-tables", "--table", "6,3", "--threads", "4")
    assert code == 1
    assert "first mismatch at (h,q)=(-5,35)" in text


def test_plot_written(tmp_path):
    path = tmp_path / "t.png"
    code, _ = call("hopf", "--n", "3", "--a", "1", "--b", "1", "--plot", str(path))
    assert code == 0 and path.stat().st_size > 0
    path = tmp_path / "r.png"
    code, _ = call("repspace", "--link", "hopf", "--n", "3", "--a", "1", "--b", "1", "--plot", str(path))
    assert code == 0 and path.stat().st_size > 0


@pytest.mark.parametrize("argv", [
    ["trefoil", "--n", "2", "--a", "3"],
    ["trefoil", "--n", "2"],
    ["hopf", "--n", "3", "--a", "1"],
    ["trefoil", "--n", "3", "--a", "1", "--format", "xml"],
    ["trefoil", "--n", "3", "--a", "1", "--threads", "0"],
    ["trefoil", "--n", "3", "--a", "1", "--truncation", "-2"],
    ["verify-tables", "--table", "7,2"],
    ["verify-tables", "--table", "x"],
    ["frobnicate"],
])
def test_invalid_flags_exit_2(argv):
    proc = subprocess.run([sys.executable, "-m", "slnhom.cli", *argv], capture_output=True, text=True)
    assert proc.returncode == 2, proc.stderr


def test_console_output_deterministic():
    cmd = [sys.executable, "-m", "slnhom.cli", "trefoil", "--n", "4", "--a", "2"]
    a = subprocess.run(cmd, capture_output=True).stdout
    b = subprocess.run(cmd, capture_output=True).stdout
    assert a == b and a


def test_selftest():
    code, text = call("selftest")
    assert code == 0 and text.strip().endswith("selftest ok")
