"""Time the pure-Python kernels against the compiled extension.

Runs itself twice as a subprocess (once per backend, selected through
COMPACTPATHS_BACKEND) so each run imports a clean module tree, then
prints a side-by-side table.  Pass --json to get the raw numbers.
"""

import argparse
import json
import os
import subprocess
import sys
import time


def _bench_one_backend():
    import compactpaths as cp
    from compactpaths.bench import graph_from_spec
    from compactpaths.seeds import derive_seed, stream

    out = {"backend": cp.BACKEND, "timings": {}}

    def clock(name, fn, repeat=3):
        best = None
        for _ in range(repeat):
            t0 = time.perf_counter()
            fn()
            dt = time.perf_counter() - t0
            best = dt if best is None else min(best, dt)
        out["timings"][name] = best

    g1 = graph_from_spec("random", n=2000, m=6000, seed=derive_seed(7, "graph"))
    g2 = graph_from_spec("random", n=10000, m=50000, seed=derive_seed(8, "graph"))

    clock("sssp_n2000", lambda: cp.sssp_distances(g1, 0))
    clock("sssp_n10000", lambda: cp.sssp_distances(g2, 0))
    clock("cover_det_n2000_k2", lambda: cp.build_cover_deterministic(g1, 2, 1))
    clock(
        "cover_rand_n2000_k2",
        lambda: cp.build_cover_randomized(g1, 2, 1, seed=3),
    )
    clock("labeling_n2000_k2", lambda: cp.build_labeling(g1, 2, False, seed=3))
    clock(
        "oracle_n10000_k3",
        lambda: cp.build_oracle(g2, 3, 22, 3, seed=3),
        repeat=1,
    )

    orc = cp.build_oracle(g2, 3, 22, 3, seed=3)
    rng = stream(9, "pairs")
    pairs = [(rng.randrange(g2.n), rng.randrange(g2.n)) for _ in range(400)]

    def run_queries():
        for u, v in pairs:
            try:
                orc.query_path(u, v)
            except cp.UnreachableError:
                pass

    clock("oracle_queries_400", run_queries, repeat=1)
    print(json.dumps(out))


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--json", action="store_true", help="print raw JSON")
    ap.add_argument("--run-one", action="store_true", help=argparse.SUPPRESS)
    args = ap.parse_args(argv)

    if args.run_one:
        _bench_one_backend()
        return 0

    results = {}
    for backend in ("pure", "compiled"):
        env = dict(os.environ, COMPACTPATHS_BACKEND=backend)
        proc = subprocess.run(
            [sys.executable, os.path.abspath(__file__), "--run-one"],
            env=env,
            capture_output=True,
            text=True,
        )
        if proc.returncode != 0:
            sys.stderr.write(proc.stderr)
            if backend == "compiled":
                print("compiled backend unavailable, skipping")
                continue
            return 1
        results[backend] = json.loads(proc.stdout.strip().splitlines()[-1])

    if args.json:
        print(json.dumps(results, indent=2, sort_keys=True))
        return 0

    names = list(results.get("pure", {}).get("timings", {}))
    width = max(len(s) for s in names) if names else 10
    header = f"{'case':<{width}}  {'pure (s)':>10}  {'compiled (s)':>12}  {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for name in names:
        tp = results["pure"]["timings"][name]
        line = f"{name:<{width}}  {tp:>10.4f}"
        if "compiled" in results:
            tc = results["compiled"]["timings"][name]
            line += f"  {tc:>12.4f}  {tp / tc:>7.1f}x"
        print(line)
    return 0


if __name__ == "__main__":
    sys.exit(main())
