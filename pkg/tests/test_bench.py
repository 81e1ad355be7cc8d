import csv
import io
import json

import pytest

from compactpaths import ExperimentConfig, generate_graph, run_bench
from compactpaths.bench import CSV_FIELDS, graph_from_spec, rows_to_csv, summary_to_json


def test_config_validate():
    ExperimentConfig(structure="labeling").validate()
    with pytest.raises(ValueError):
        ExperimentConfig(structure="spanner").validate()
    with pytest.raises(ValueError):
        ExperimentConfig(structure="oracle", t=0).validate()
    with pytest.raises(ValueError):
        ExperimentConfig(structure="labeling", queries=-1).validate()


def test_graph_from_spec_shapes():
    g = graph_from_spec("grid", n=10, m=0, seed=0)
    assert g.n >= 10 and g.is_connected()
    p = graph_from_spec("path", n=6, m=0, seed=0)
    assert p.n == 6 and p.m == 5
    r = graph_from_spec("random", n=30, m=70, seed=1)
    assert r.n == 30 and r.m == 70


@pytest.mark.parametrize("structure", ["labeling", "oracle", "routing"])
def test_run_each_structure(structure):
    cfg = ExperimentConfig(structure=structure, n=50, m=120, queries=40, seed=2)
    rows, summary = run_bench(cfg)
    assert len(rows) == 40
    assert summary["structure"] == structure
    assert summary["bound_satisfied"] is True
    assert summary["n"] == 50 and summary["queries"] == 40
    for row in rows:
        assert row.d_exact <= row.path_length
        assert row.stretch >= 1.0


def test_rows_csv_shape_and_determinism():
    cfg = ExperimentConfig(structure="labeling", n=40, m=90, queries=25, seed=3)
    rows_a, _ = run_bench(cfg)
    rows_b, _ = run_bench(cfg)
    csv_a = rows_to_csv(rows_a)
    csv_b = rows_to_csv(rows_b)
    assert csv_a == csv_b  # query_ns never leaks into the CSV
    reader = csv.reader(io.StringIO(csv_a))
    header = next(reader)
    assert header == CSV_FIELDS
    assert len(list(reader)) == 25


def test_zero_queries():
    cfg = ExperimentConfig(structure="oracle", n=30, m=70, queries=0, seed=4)
    rows, summary = run_bench(cfg)
    assert rows == []
    assert rows_to_csv(rows).strip() == ",".join(CSV_FIELDS)
    assert summary["max_stretch"] is None


def test_summary_json_stable():
    cfg = ExperimentConfig(structure="routing", n=30, m=70, queries=10, seed=5)
    _, summary = run_bench(cfg)
    doc = json.loads(summary_to_json(summary))
    for key in ("structure", "backend", "space_words", "bound_envelope",
                "build_ms", "median_stretch"):
        assert key in doc


def test_explicit_graph_object():
    g = generate_graph("cycle", n=24)
    cfg = ExperimentConfig(structure="labeling", graph=g, queries=15, seed=6)
    rows, summary = run_bench(cfg)
    assert summary["n"] == 24
    assert all(r.stretch >= 1.0 for r in rows)


def test_randomized_construction():
    cfg = ExperimentConfig(
        structure="labeling", n=40, m=100, queries=20, seed=7,
        construction="randomized",
    )
    rows, summary = run_bench(cfg)
    assert summary["bound_satisfied"] is True
    assert len(rows) == 20
