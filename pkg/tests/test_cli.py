import json
import subprocess
import sys

import pytest

from compactpaths import load_graph
from compactpaths.cli import main


def run_cli(capsys, *argv):
    rc = main(list(argv))
    out = capsys.readouterr()
    return rc, out.out, out.err


@pytest.fixture
def graph_file(tmp_path, capsys):
    fp = tmp_path / "g.txt"
    rc, _, _ = main_quiet(capsys, "gen", "--kind", "random", "--n", "40",
                          "--m", "90", "--seed", "3", "--out", str(fp))
    assert rc == 0
    return fp


def main_quiet(capsys, *argv):
    rc = main(list(argv))
    out = capsys.readouterr()
    return rc, out.out, out.err


def test_gen_stdout_parses(capsys):
    rc, out, _ = run_cli(capsys, "gen", "--kind", "path", "--n", "5")
    assert rc == 0
    g = load_graph(out)
    assert g.n == 5 and g.m == 4


def test_gen_deterministic(capsys):
    _, a, _ = run_cli(capsys, "gen", "--n", "30", "--m", "70", "--seed", "9")
    _, b, _ = run_cli(capsys, "gen", "--n", "30", "--m", "70", "--seed", "9")
    assert a == b


def test_cover_report(capsys, graph_file):
    rc, out, _ = run_cli(capsys, "cover", "--input", str(graph_file),
                         "--k", "2", "--rho", "1")
    assert rc == 0
    rep = json.loads(out)
    assert rep["ok"] is True
    assert rep["unpadded"] == 0
    assert rep["max_overlap"] <= rep["overlap_bound"]


def test_cover_randomized(capsys, graph_file):
    rc, out, _ = run_cli(capsys, "cover", "--input", str(graph_file),
                         "--k", "1", "--rho", "2",
                         "--construction", "randomized")
    assert rc == 0
    assert json.loads(out)["ok"] is True


def test_label_info(capsys, graph_file, tmp_path):
    out_fp = tmp_path / "label.json"
    rc, out, _ = run_cli(capsys, "label", "--input", str(graph_file),
                         "--k", "2", "--out", str(out_fp))
    assert rc == 0
    info = json.loads(out)
    assert info["n"] == 40
    assert info["max_label_records"] <= info["record_bound"]
    assert out_fp.exists()


def test_oracle_space_report(capsys, graph_file):
    rc, out, _ = run_cli(capsys, "oracle", "--input", str(graph_file),
                         "--k", "2", "--t", "2", "--p", "2")
    assert rc == 0
    rep = json.loads(out)
    assert rep["total"] > 0 and "ratio" in rep


def test_oracle_eps_entry(capsys, graph_file):
    rc, out, _ = run_cli(capsys, "oracle", "--input", str(graph_file),
                         "--k", "2", "--eps", "0.5")
    assert rc == 0
    assert json.loads(out)["total"] > 0


def test_route_trace(capsys, graph_file):
    rc, out, _ = run_cli(capsys, "route", "--input", str(graph_file),
                         "--k", "1", "--source", "0", "--target", "7")
    assert rc == 0
    lines = out.strip().splitlines()
    tail = json.loads(lines[-1])
    assert tail["delivered"] is True
    assert len(lines) - 1 == tail["hops"]
    # trace rows: step current gid next
    first = lines[0].split()
    assert first[0] == "0" and first[1] == "0"


def test_bench_csv(capsys, graph_file, tmp_path):
    out_fp = tmp_path / "rows.csv"
    rc, out, _ = run_cli(capsys, "bench", "labeling", "--input",
                         str(graph_file), "--queries", "20",
                         "--out", str(out_fp))
    assert rc == 0
    summary = json.loads(out)
    assert summary["bound_satisfied"] is True
    rows = out_fp.read_text().strip().splitlines()
    assert rows[0].startswith("u,v,d_exact")
    assert len(rows) == 21


def test_bench_csv_bytes_stable(capsys, graph_file, tmp_path):
    a_fp, b_fp = tmp_path / "a.csv", tmp_path / "b.csv"
    for fp in (a_fp, b_fp):
        rc, _, _ = main_quiet(capsys, "bench", "oracle", "--input",
                              str(graph_file), "--queries", "15",
                              "--p", "2", "--out", str(fp))
        assert rc == 0
    assert a_fp.read_bytes() == b_fp.read_bytes()


@pytest.mark.parametrize("target", ["cover", "label", "oracle", "route"])
def test_verify_targets(capsys, graph_file, target):
    rc, out, _ = run_cli(capsys, "verify", target, "--input", str(graph_file),
                         "--queries", "25", "--p", "2")
    assert rc == 0
    rep = json.loads(out)
    assert rep["ok"] is True and rep["failures"] == []


def test_export_roundtrip(capsys, graph_file, tmp_path):
    doc_fp = tmp_path / "oracle.json"
    rc, _, _ = main_quiet(capsys, "oracle", "--input", str(graph_file),
                          "--p", "2", "--out", str(doc_fp))
    assert rc == 0
    back = tmp_path / "back.json"
    rc, out, _ = run_cli(capsys, "export", "--input", str(doc_fp),
                         "--out", str(back))
    assert rc == 0
    assert json.loads(out)["ok"] is True
    assert back.read_text().strip() == doc_fp.read_text().strip()


def test_export_corrupt_input(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    rc, _, err = run_cli(capsys, "export", "--input", str(bad))
    assert rc == 1
    assert err.strip() != ""


def test_missing_input_file(capsys):
    rc, _, err = run_cli(capsys, "cover", "--input", "/no/such/file")
    assert rc == 1 and err


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "compactpaths", "gen", "--kind", "cycle",
         "--n", "6"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert load_graph(proc.stdout).m == 6
