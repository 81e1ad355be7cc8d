"""Stretch, space, and timing experiments over the built structures.

All randomness in a run flows from one config seed through named
sub-streams (graph generation, structure build, pair sampling), so a
config fully reproduces its outputs. CSV rows carry only deterministic
fields; per-query timings are volatile and live in the JSON summary as
aggregates.
"""
from __future__ import annotations

import csv
import io
import json
import math
import statistics
import time
from dataclasses import dataclass, field

from . import _backend
from .errors import UnreachableError
from .graphs import Graph, generate_graph, load_graph
from .labeling import build_labeling, query_distance
from .numutil import INF
from .oracle import build_oracle
from .routing import build_routing, route
from .seeds import derive_seed, stream

__all__ = [
    "ExperimentConfig",
    "graph_from_spec",
    "ExperimentRow",
    "run_bench",
    "rows_to_csv",
    "summary_to_json",
    "CSV_FIELDS",
]

CSV_FIELDS = ["u", "v", "d_exact", "d_reported", "path_length", "stretch"]


@dataclass
class ExperimentConfig:
    structure: str  # labeling | oracle | routing
    graph: Graph = None
    input: str = None
    kind: str = "random"
    n: int = 100
    m: int = 300
    k: int = 2
    t: int = 2
    p: int = 4
    s: int = 1
    eps: float = None
    rho: float = None
    seed: int = 0
    queries: int = 100
    construction: str = "deterministic"
    out: str = None
    summary_out: str = None

    def validate(self):
        if self.structure not in ("labeling", "oracle", "routing"):
            raise ValueError(f"unknown structure {self.structure!r}")
        if self.queries < 0:
            raise ValueError("queries must be >= 0")
        if self.k < 1:
            raise ValueError("k must be >= 1")
        if self.structure == "oracle" and min(self.t, self.p, self.s) < 1:
            raise ValueError("t, p, s must be >= 1")


@dataclass
class ExperimentRow:
    u: int
    v: int
    d_exact: int
    d_reported: int
    path_length: int
    stretch: float
    query_ns: int = field(default=0, compare=False)


def graph_from_spec(kind: str, n: int, m: int, seed: int, wmin: int = 1,
                    wmax: int = 1) -> Graph:
    """Map flat (kind, n, m) flags onto the generators; a grid takes the
    nearest rows x cols factoring with rows*cols >= n."""
    if kind == "grid":
        rows = max(1, math.isqrt(n))
        cols = max(1, -(-n // rows))
        return generate_graph("grid", seed=seed, rows=rows, cols=cols,
                              wmin=wmin, wmax=wmax)
    if kind in ("path", "cycle"):
        return generate_graph(kind, seed=seed, n=n, wmin=wmin, wmax=wmax)
    return generate_graph("random", seed=seed, n=n, m=m, wmin=wmin, wmax=wmax)


def _resolve_graph(cfg: ExperimentConfig) -> Graph:
    if cfg.graph is not None:
        return cfg.graph
    if cfg.input:
        with open(cfg.input) as f:
            return load_graph(f.read())
    return graph_from_spec(cfg.kind, cfg.n, cfg.m, derive_seed(cfg.seed, "graph"))


class _ExactDistances:
    """Per-source shortest-path cache; never computes all pairs."""

    def __init__(self, g: Graph):
        self.g = g
        self._cache = {}

    def dist_row(self, u: int):
        row = self._cache.get(u)
        if row is None:
            indptr, nbrs, wts = self.g.csr()
            row, _, _ = _backend.sssp(
                self.g.n, indptr, nbrs, wts, self.g.unit_weights, u, INF, None
            )
            self._cache[u] = row
        return row

    def __call__(self, u: int, v: int) -> int:
        return int(self.dist_row(u)[v])


def _build(cfg: ExperimentConfig, g: Graph):
    bseed = derive_seed(cfg.seed, "build")
    randomized = cfg.construction == "randomized"
    if cfg.structure == "labeling":
        s = build_labeling(g, cfg.k, randomized, bseed)
        space = sum(lb.record_count for lb in s.labels)
        envelope = f"8*k*n^(2/k)*max(d,1) with k={cfg.k}"
        bound = 8 * cfg.k * g.n ** (2.0 / cfg.k)

        def query(u, v):
            path = s.query_path(u, v)
            return query_distance(s.labels[u], s.labels[v]), path.length

        def ok(d, rep, plen):
            return plen <= bound * max(d, 1) and rep <= 2 * bound * max(d, 1)

        return s, space, envelope, query, ok
    if cfg.structure == "oracle":
        o = build_oracle(g, cfg.k, cfg.p, cfg.t, cfg.s, bseed)
        space = o.space_report()["total"]
        kn = cfg.k * g.n ** (1.0 / cfg.k)
        if cfg.s == 1:
            slope = 100.0 * cfg.t * kn
            envelope = f"100*t*k*n^(1/k)*d + 100*p*k*n^(1/k), t={cfg.t} k={cfg.k} p={cfg.p}"
        else:
            slope = 100.0 * (cfg.t + (3.0 * cfg.p) ** (1.0 / cfg.s)) * kn
            envelope = (
                f"100*(t+(3p)^(1/s))*k*n^(1/k)*d + 100*p*k*n^(1/k), "
                f"t={cfg.t} k={cfg.k} p={cfg.p} s={cfg.s}"
            )
        intercept = 100.0 * cfg.p * kn

        def query(u, v):
            path = o.query_path(u, v)
            return path.length, path.length

        def ok(d, rep, plen):
            return plen <= slope * d + intercept

        return o, space, envelope, query, ok
    r = build_routing(g, cfg.k, randomized, bseed)
    space = sum(t.record_count() for t in r.tables) + sum(
        lb.record_count() for lb in r.labels
    )
    envelope = f"16*k*n^(2/k)*max(d,1) with k={cfg.k}"
    bound = 16 * cfg.k * g.n ** (2.0 / cfg.k)

    def query(u, v):
        res = route(r, u, r.label_of(v))
        if not res.delivered:
            raise UnreachableError(f"no route {u} -> {v}")
        return res.path.length, res.path.length

    def ok(d, rep, plen):
        return plen <= bound * max(d, 1)

    return r, space, envelope, query, ok


def _sample_pairs(g: Graph, q: int, seed: int):
    rng = stream(seed, "pairs")
    comp = g.components()
    pairs = []
    while len(pairs) < q:
        u = rng.randrange(g.n)
        v = rng.randrange(g.n)
        if u == v and g.n > 1:
            continue
        if comp[u] == comp[v]:
            pairs.append((u, v))
    return pairs


def run_bench(cfg: ExperimentConfig):
    """Returns (rows, summary dict)."""
    cfg.validate()
    g = _resolve_graph(cfg)
    t0 = time.perf_counter_ns()
    structure, space, envelope, query, ok = _build(cfg, g)
    build_ms = (time.perf_counter_ns() - t0) / 1e6
    exact = _ExactDistances(g)
    rows = []
    satisfied = True
    for u, v in _sample_pairs(g, cfg.queries, cfg.seed):
        d = exact(u, v)
        q0 = time.perf_counter_ns()
        rep, plen = query(u, v)
        qns = time.perf_counter_ns() - q0
        assert d <= plen, "reported path shorter than the true distance"
        if not ok(d, rep, plen):
            satisfied = False
        rows.append(
            ExperimentRow(
                u=u, v=v, d_exact=d, d_reported=rep, path_length=plen,
                stretch=plen / max(d, 1), query_ns=qns,
            )
        )
    stretches = [r.stretch for r in rows]
    times = [r.query_ns for r in rows]
    summary = {
        "structure": cfg.structure,
        "backend": _backend.BACKEND,
        "n": g.n,
        "m": g.m,
        "k": cfg.k,
        "t": cfg.t,
        "p": cfg.p,
        "s": cfg.s,
        "seed": cfg.seed,
        "queries": cfg.queries,
        "build_ms": build_ms,
        "space_words": space,
        "max_stretch": max(stretches) if stretches else None,
        "median_stretch": statistics.median(stretches) if stretches else None,
        "mean_query_ns": statistics.fmean(times) if times else None,
        "median_query_ns": statistics.median(times) if times else None,
        "bound_envelope": envelope,
        "bound_satisfied": satisfied,
    }
    return rows, summary


def rows_to_csv(rows) -> str:
    """Deterministic CSV: volatile timing stays out of it."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_FIELDS)
    for r in rows:
        w.writerow(
            [r.u, r.v, r.d_exact, r.d_reported, r.path_length, f"{r.stretch:.6f}"]
        )
    return buf.getvalue()


def summary_to_json(summary: dict) -> str:
    return json.dumps(summary, sort_keys=True, indent=2)
