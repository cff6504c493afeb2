import csv
import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from insdelcodes import report
from insdelcodes.channel import simulate
from insdelcodes.cli import main
from insdelcodes.gf import find_primitive, make_field
from insdelcodes.insdel import min_insdel_exhaustive, witness_report
from insdelcodes.lincode import LinearCode, rs_code
from insdelcodes.rs2opt import build_rs2, verify_theorem_b

GOLDEN = Path(__file__).parent / "golden"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def rs_file(tmp_path, capsys):
    path = tmp_path / "rs.json"
    assert run(capsys, "construct", "rs", "--p", 7, "--k", 2, "--locators", "1,2,3,4,5", "--output", path)[0] == 0
    return path


def test_construct_matches_golden(rs_file):
    assert json.loads(rs_file.read_text()) == json.loads((GOLDEN / "rs7_5_2.json").read_text())


def test_analyze_human_golden(capsys, rs_file):
    code, out, _ = run(capsys, "analyze", "--code", rs_file, "--format", "human")
    assert code == 0
    assert out == (GOLDEN / "rs7_5_2_human.txt").read_text()


def test_theorem_b_human_golden(capsys):
    code, out, _ = run(capsys, "verify-theorem-b", "--p", 2, "--e", 7, "--exps", "1,2,4",
                       "--check-distance", "--format", "human")
    assert code == 0
    assert out == (GOLDEN / "theorem_b_human.txt").read_text()


def test_analyze_json_deterministic_modulo_timing(capsys, rs_file):
    outs = []
    for workers in (1, 1, 3):
        code, out, _ = run(capsys, "analyze", "--code", rs_file, "--workers", workers)
        assert code == 0
        outs.append(report.strip_timing(json.loads(out)))
    assert outs[0] == outs[1] == outs[2]
    assert outs[0]["d_insdel"] == 2 and outs[0]["schema_version"] == report.SCHEMA_VERSION


def test_csv_headers_fixed(capsys, rs_file):
    code, out, _ = run(capsys, "analyze", "--code", rs_file, "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == report.CSV_FIELDS["distance_report"]
    assert len(rows) == 2
    code, out, _ = run(capsys, "verify-theorem-b", "--p", 2, "--e", 7, "--exps", "1,2,4", "--format", "csv")
    assert next(csv.reader(io.StringIO(out))) == report.CSV_FIELDS["theorem_b_verdict"]


def test_witness_and_normalized_methods(capsys, tmp_path, rs_file):
    code, out, _ = run(capsys, "analyze", "--code", rs_file, "--method", "witness")
    d = json.loads(out)
    assert code == 0 and d["method"] == "witness-only" and d["exact"] is False
    assert d["d_insdel"] <= 6
    # normalized needs an rs2 descriptor
    assert run(capsys, "analyze", "--code", rs_file, "--method", "normalized")[0] == 2
    path = tmp_path / "rs2.json"
    assert run(capsys, "construct", "rs2", "--p", 2, "--e", 4, "--exps", "0,1,2,4", "--output", path)[0] == 0
    code, out, _ = run(capsys, "analyze", "--code", path, "--method", "normalized")
    assert code == 0 and json.loads(out)["d_insdel"] == 4


def test_exit_codes(capsys, tmp_path):
    # budget exceeded -> 2
    big = tmp_path / "big.json"
    assert run(capsys, "construct", "rs", "--p", 2, "--e", 8, "--k", 4, "--locators", "1,2,3,4,5",
               "--output", big)[0] == 0
    code, _, err = run(capsys, "analyze", "--code", big)
    assert code == 2 and "budget" in err
    # bad field / missing file -> 2
    assert run(capsys, "field", "info", "--p", 4)[0] == 2
    assert run(capsys, "analyze", "--code", tmp_path / "missing.json")[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["analyze"])
    assert exc.value.code == 2


def test_exit_one_on_violated_bound(capsys, tmp_path, monkeypatch):
    import insdelcodes.cli as cli

    real = cli.min_insdel_exhaustive

    def broken(code, workers=1):
        r = real(code, workers=workers)
        r.d_insdel = 2 * r.n  # more than any bound allows
        return r

    monkeypatch.setattr(cli, "min_insdel_exhaustive", broken)
    path = tmp_path / "c.json"
    run(capsys, "construct", "rs", "--p", 5, "--k", 2, "--locators", "0,1,2", "--output", path)
    assert run(capsys, "analyze", "--code", path)[0] == 1


def test_corollary_c(capsys):
    code, out, _ = run(capsys, "corollary-c", "--n", 3, "--p", 2)
    d = json.loads(out)
    assert code == 0
    assert d["e"] == 7 and d["exps"] == [1, 2, 4]
    assert d["verdict"]["distance"] == 2 and d["verdict"]["holds"]


def test_simulate_and_field_info(capsys, tmp_path):
    path = tmp_path / "rs2.json"
    run(capsys, "construct", "rs2", "--p", 2, "--e", 4, "--exps", "0,1,2,4", "--output", path)
    code, out, err = run(capsys, "simulate", "--code", path, "--t-del", 1, "--trials", 5, "--seed", 3)
    assert code == 0 and "5/5" in err
    traces = report.parse(out)
    assert len(traces) == 5 and all(t.success for t in traces)
    code, out, _ = run(capsys, "field", "info", "--p", 2, "--e", 3)
    assert json.loads(out)["primitive_element"] == [0, 1, 0]


def test_explore(capsys):
    code, out, _ = run(capsys, "explore-cond1", "--p", 2, "--e", 3, "--n", 3, "--limit", 2)
    assert code == 0 and json.loads(out)["kind"] == "explore_condition1"


def test_json_roundtrip():
    gf7 = make_field(7)
    code = rs_code(gf7, [1, 2, 3, 4, 5], 2)
    for r in (min_insdel_exhaustive(code), witness_report(code)):
        assert report.parse(report.emit(r)) == r
    v = verify_theorem_b((1, 2, 4), make_field(2, 7), check_distance=True)
    assert report.parse(report.emit(v)) == v
    spec = make_field(2, 4)
    traces = simulate(build_rs2(spec, find_primitive(spec), (0, 1, 2, 4)), 1, 1, 4, seed=9)
    assert report.parse(report.emit(traces)) == traces
    rep = LinearCode(make_field(2), [[1, 1, 1]])
    assert report.parse(report.emit(min_insdel_exhaustive(rep))).d_insdel == 6


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "insdelcodes.cli", "field", "info", "--p", "7"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["primitive_encoding"] == 3
