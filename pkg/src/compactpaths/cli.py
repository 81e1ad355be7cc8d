"""Command-line front end.

Subcommands: gen, cover, label, oracle, route, bench, verify, export.
Exit code is 0 only if every built-in check that ran passed.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import _backend
from .bench import ExperimentConfig, graph_from_spec
from .covers import build_cover_deterministic, build_cover_randomized, verify_cover
from .graphs import (
    Graph,
    dump_graph,
    load_graph,
    sssp_distances,
    validate_path,
)
from .labeling import build_labeling
from .oracle import build_oracle, build_oracle_auto
from .routing import build_routing, route
from .seeds import derive_seed, stream
from .serialize import deserialize as load_doc
from .serialize import dump as dump_doc
from .serialize import serialize as make_doc


def _graph_flags(p: argparse.ArgumentParser):
    p.add_argument("--input", help="edge-list file; omit to generate")
    p.add_argument("--kind", default="random",
                   choices=["path", "cycle", "grid", "random"])
    p.add_argument("--n", type=int, default=100)
    p.add_argument("--m", type=int, default=300)
    p.add_argument("--seed", type=int, default=0)


def _resolve_graph(args) -> Graph:
    if args.input:
        with open(args.input) as f:
            return load_graph(f.read())
    return graph_from_spec(args.kind, args.n, args.m,
                           derive_seed(args.seed, "graph"))


def _emit(args, text: str):
    if getattr(args, "out", None):
        with open(args.out, "w") as f:
            f.write(text)
    else:
        print(text, end="" if text.endswith("\n") else "\n")


def _cmd_gen(args):
    g = graph_from_spec(args.kind, args.n, args.m, args.seed,
                        wmin=args.wmin, wmax=args.wmax)
    _emit(args, dump_graph(g))
    return 0


def _cover_report(g, cov):
    st = verify_cover(g, cov)
    ok = (
        st.max_diameter <= cov.beta * float(cov.rho)
        and st.max_overlap <= cov.s
        and st.unpadded_count == 0
    )
    return {
        "ok": ok,
        "n_clusters": st.n_clusters,
        "max_diameter": st.max_diameter,
        "diameter_bound": cov.beta * float(cov.rho),
        "max_overlap": st.max_overlap,
        "overlap_bound": cov.s,
        "unpadded": st.unpadded_count,
    }


def _cmd_cover(args):
    g = _resolve_graph(args)
    if args.construction == "randomized":
        cov = build_cover_randomized(g, args.rho, args.k,
                                     derive_seed(args.seed, "build"))
    else:
        cov = build_cover_deterministic(g, args.rho, args.k)
    report = _cover_report(g, cov)
    if args.out:
        dump_doc(cov, args.out)
    print(json.dumps(report, sort_keys=True, indent=2))
    return 0 if report["ok"] else 1


def _cmd_label(args):
    g = _resolve_graph(args)
    s = build_labeling(g, args.k, args.construction == "randomized",
                       derive_seed(args.seed, "build"))
    if args.out:
        dump_doc(s, args.out)
    info = {
        "backend": _backend.BACKEND,
        "n": s.n,
        "k": s.k,
        "q": s.q,
        "delta": s.scales.delta,
        "max_label_records": max(lb.record_count for lb in s.labels),
        "record_bound": 2 * s.k * (s.q + 1) + (s.q + 1),
    }
    print(json.dumps(info, sort_keys=True, indent=2))
    return 0


def _cmd_oracle(args):
    g = _resolve_graph(args)
    if args.eps is not None:
        o = build_oracle_auto(g, args.k, args.eps, derive_seed(args.seed, "build"))
    else:
        o = build_oracle(g, args.k, args.p, args.t, args.s,
                         derive_seed(args.seed, "build"))
    if args.out:
        dump_doc(o, args.out)
    print(json.dumps(o.space_report(), sort_keys=True, indent=2))
    return 0


def _cmd_route(args):
    g = _resolve_graph(args)
    scheme = build_routing(g, args.k, args.construction == "randomized",
                           derive_seed(args.seed, "build"))
    src = args.source if args.source is not None else 0
    dst = args.target if args.target is not None else g.n - 1
    label = scheme.label_of(dst)
    gid = None
    for i in range(scheme.q + 1):
        cand = label.entries[i][0]
        if scheme.tables[src].by_scale[i].get(cand) is not None:
            gid = cand
            break
    res = route(scheme, src, label)
    for step, (a, b) in enumerate(zip(res.path.vertices, res.path.vertices[1:])):
        print(f"{step} {a} {gid} {b}")
    print(json.dumps(
        {"delivered": res.delivered, "hops": res.hops, "length": res.path.length},
        sort_keys=True,
    ))
    return 0


def _cmd_bench(args):
    from .bench import run_bench, rows_to_csv, summary_to_json

    cfg = ExperimentConfig(
        structure=args.target,
        input=args.input,
        kind=args.kind,
        n=args.n,
        m=args.m,
        k=args.k,
        t=args.t,
        p=args.p,
        s=args.s,
        eps=args.eps,
        seed=args.seed,
        queries=args.queries,
        construction=args.construction,
    )
    rows, summary = run_bench(cfg)
    if args.format == "json":
        payload = [r.__dict__ for r in rows]
        for r in payload:
            r.pop("query_ns", None)
        _emit_rows = json.dumps(payload, sort_keys=True, indent=2)
    else:
        _emit_rows = rows_to_csv(rows)
    if args.out:
        with open(args.out, "w") as f:
            f.write(_emit_rows)
    print(summary_to_json(summary))
    return 0 if summary["bound_satisfied"] else 1


def _cmd_verify(args):
    g = _resolve_graph(args)
    rng = stream(args.seed, "verify-pairs")
    comp = g.components()
    failures = []

    def sample_pairs(q):
        out = []
        while len(out) < q:
            u, v = rng.randrange(g.n), rng.randrange(g.n)
            if comp[u] == comp[v]:
                out.append((u, v))
        return out

    if args.target == "cover":
        cov = (build_cover_randomized(g, args.rho, args.k,
                                      derive_seed(args.seed, "build"))
               if args.construction == "randomized"
               else build_cover_deterministic(g, args.rho, args.k))
        report = _cover_report(g, cov)
        if not report["ok"]:
            failures.append("cover invariants")
    elif args.target == "label":
        s = build_labeling(g, args.k, args.construction == "randomized",
                           derive_seed(args.seed, "build"))
        bound = 8 * args.k * g.n ** (2.0 / args.k)
        for u, v in sample_pairs(args.queries):
            d = int(sssp_distances(g, u)[v])
            path = s.query_path(u, v)
            ln = validate_path(g, path.vertices, u, v)
            if ln != path.length or d > path.length:
                failures.append(f"path invalid for {u},{v}")
            if path.length > bound * max(d, 1):
                failures.append(f"stretch exceeded for {u},{v}")
    elif args.target == "oracle":
        o = build_oracle(g, args.k, args.p, args.t, args.s,
                         derive_seed(args.seed, "build"))
        for u, v in sample_pairs(args.queries):
            d = int(sssp_distances(g, u)[v])
            path = o.query_path(u, v)
            ln = validate_path(g, path.vertices, u, v)
            if ln != path.length or d > path.length:
                failures.append(f"path invalid for {u},{v}")
    else:
        scheme = build_routing(g, args.k, args.construction == "randomized",
                               derive_seed(args.seed, "build"))
        for u, v in sample_pairs(args.queries):
            res = route(scheme, u, scheme.label_of(v))
            if not res.delivered or res.path.vertices[-1] != v:
                failures.append(f"not delivered {u},{v}")
            elif validate_path(g, res.path.vertices, u, v) != res.path.length:
                failures.append(f"hop path invalid {u},{v}")
    print(json.dumps(
        {"target": args.target, "ok": not failures, "failures": failures[:10]},
        sort_keys=True, indent=2,
    ))
    return 0 if not failures else 1


def _cmd_export(args):
    with open(args.input) as f:
        text = f.read()
    obj = load_doc(text)
    again = make_doc(obj)
    stable = make_doc(load_doc(again)) == again
    if args.out:
        with open(args.out, "w") as f:
            f.write(again)
    print(json.dumps(
        {"format": json.loads(again)["format"], "ok": bool(stable)},
        sort_keys=True,
    ))
    return 0 if stable else 1


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(
        prog="compactpaths",
        description="Low-space path-reporting distance structures.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a graph edge list")
    _graph_flags(p)
    p.add_argument("--wmin", type=int, default=1)
    p.add_argument("--wmax", type=int, default=1)
    p.add_argument("--out")
    p.set_defaults(fn=_cmd_gen)

    p = sub.add_parser("cover", help="build and check a sparse cover")
    _graph_flags(p)
    p.add_argument("--rho", type=float, default=4.0)
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--construction", default="deterministic",
                   choices=["deterministic", "randomized"])
    p.add_argument("--out")
    p.set_defaults(fn=_cmd_cover)

    p = sub.add_parser("label", help="build distance labels")
    _graph_flags(p)
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--construction", default="deterministic",
                   choices=["deterministic", "randomized"])
    p.add_argument("--out")
    p.set_defaults(fn=_cmd_label)

    p = sub.add_parser("oracle", help="build a path-reporting oracle")
    _graph_flags(p)
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--t", type=int, default=2)
    p.add_argument("--p", type=int, default=4)
    p.add_argument("--s", type=int, default=1)
    p.add_argument("--eps", type=float)
    p.add_argument("--out")
    p.set_defaults(fn=_cmd_oracle)

    p = sub.add_parser("route", help="route one message and print the trace")
    _graph_flags(p)
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--construction", default="deterministic",
                   choices=["deterministic", "randomized"])
    p.add_argument("--source", type=int)
    p.add_argument("--target", type=int)
    p.set_defaults(fn=_cmd_route)

    p = sub.add_parser("bench", help="stretch/space/time experiment")
    p.add_argument("target", choices=["labeling", "oracle", "routing"])
    _graph_flags(p)
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--t", type=int, default=2)
    p.add_argument("--p", type=int, default=4)
    p.add_argument("--s", type=int, default=1)
    p.add_argument("--eps", type=float)
    p.add_argument("--queries", type=int, default=100)
    p.add_argument("--construction", default="deterministic",
                   choices=["deterministic", "randomized"])
    p.add_argument("--out")
    p.add_argument("--format", default="csv", choices=["csv", "json"])
    p.set_defaults(fn=_cmd_bench)

    p = sub.add_parser("verify", help="build a structure and check invariants")
    p.add_argument("target", choices=["cover", "label", "oracle", "route"])
    _graph_flags(p)
    p.add_argument("--rho", type=float, default=4.0)
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--t", type=int, default=2)
    p.add_argument("--p", type=int, default=4)
    p.add_argument("--s", type=int, default=1)
    p.add_argument("--queries", type=int, default=50)
    p.add_argument("--construction", default="deterministic",
                   choices=["deterministic", "randomized"])
    p.set_defaults(fn=_cmd_verify)

    p = sub.add_parser("export", help="round-trip a serialized structure")
    p.add_argument("--input", required=True)
    p.add_argument("--out")
    p.set_defaults(fn=_cmd_export)

    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except (ValueError, RuntimeError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
