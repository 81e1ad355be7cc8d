"""Kernel semantics, plus pure-vs-compiled equivalence.

The compiled extension must be bit-identical to the pure module on every
kernel; both are exercised with the same inputs and compared field by
field.  Compiled-only tests skip cleanly when the extension is absent.
"""

import numpy as np
import pytest

from compactpaths import INF, generate_graph
from compactpaths import _kernels_py as pure
from conftest import adjacency, random_connected

try:
    from compactpaths import _kernels as compiled
except ImportError:
    compiled = None

BACKENDS = [pure] if compiled is None else [pure, compiled]
needs_compiled = pytest.mark.skipif(compiled is None, reason="no compiled extension")


def csr(g):
    return g.csr()


@pytest.mark.parametrize("mod", BACKENDS)
def test_sssp_canonical_parent(mod):
    c4 = generate_graph("cycle", n=4)
    indptr, nbrs, wts = csr(c4)
    dist, parent, visited = mod.sssp(4, indptr, nbrs, wts, True, 0, INF, None)
    assert dist.tolist() == [0, 1, 2, 1]
    # vertex 2 is reachable at distance 2 via 1 or 3; smallest id wins
    assert parent[2] == 1
    assert visited.tolist() == [0, 1, 2, 3]


@pytest.mark.parametrize("mod", BACKENDS)
def test_sssp_cap_and_mask(mod):
    p9 = generate_graph("path", n=9)
    indptr, nbrs, wts = csr(p9)
    dist, _, visited = mod.sssp(9, indptr, nbrs, wts, True, 4, 2, None)
    assert sorted(visited.tolist()) == [2, 3, 4, 5, 6]
    assert dist[1] == INF and dist[7] == INF
    mask = np.ones(9, dtype=np.uint8)
    mask[3] = 0
    dist2, _, vis2 = mod.sssp(9, indptr, nbrs, wts, True, 4, INF, mask)
    assert dist2[2] == INF  # blocked by the mask hole
    assert dist2[8] == 4
    assert 3 not in set(vis2.tolist())


@pytest.mark.parametrize("mod", BACKENDS)
def test_multi_source_pivot_tie(mod):
    p3 = generate_graph("path", n=3)
    indptr, nbrs, _ = csr(p3)
    dist, pivot = mod.multi_source_bfs(3, indptr, nbrs, np.array([0, 2], dtype=np.int64))
    assert dist.tolist() == [0, 1, 0]
    assert pivot.tolist() == [0, 0, 2]  # the middle tie goes to source 0


@pytest.mark.parametrize("mod", BACKENDS)
def test_balls_discovery_order(mod):
    p5 = generate_graph("path", n=5)
    indptr, nbrs, wts = csr(p5)
    bind, bverts = mod.balls(5, indptr, nbrs, wts, True, 1, np.arange(5, dtype=np.int64))
    ball2 = bverts[bind[2] : bind[3]].tolist()
    assert ball2 == [2, 1, 3]  # center first, then ascending neighbours
    assert bind.tolist() == [0, 2, 5, 8, 11, 13]


@pytest.mark.parametrize("mod", BACKENDS)
def test_carve_zero_radius(mod):
    p4 = generate_graph("path", n=4)
    indptr, nbrs, wts = csr(p4)
    cell_of, centers = mod.carve(4, indptr, nbrs, wts, True, np.zeros(4, dtype=np.int64))
    assert cell_of.tolist() == [0, 1, 2, 3]
    assert centers.tolist() == [0, 1, 2, 3]


@pytest.mark.parametrize("mod", BACKENDS)
def test_carve_big_radius_single_cell(mod):
    g = random_connected(20, 40, seed=2)
    indptr, nbrs, wts = csr(g)
    cell_of, centers = mod.carve(20, indptr, nbrs, wts, True, np.full(20, 100, dtype=np.int64))
    assert set(cell_of.tolist()) == {0}
    assert centers.tolist() == [0]


@pytest.mark.parametrize("mod", BACKENDS)
def test_induced_diameter_frozen(mod):
    p9 = generate_graph("path", n=9)
    indptr, nbrs, wts = csr(p9)
    members = np.array([2, 3, 4, 5], dtype=np.int64)
    assert mod.induced_diameter(9, indptr, nbrs, wts, True, members) == 3
    # disconnected induced set
    far = np.array([0, 8], dtype=np.int64)
    assert mod.induced_diameter(9, indptr, nbrs, wts, True, far) == INF


def _brute_induced_diameter(g, members):
    allowed = set(int(v) for v in members)
    best = 0
    for s in allowed:
        seen = {s: 0}
        frontier = [s]
        while frontier:
            nxt = []
            for u in frontier:
                for v, w in g.adj[u]:
                    if v in allowed and v not in seen:
                        seen[v] = seen[u] + w
                        nxt.append(v)
            frontier = nxt
        if len(seen) < len(allowed):
            return INF
        best = max(best, max(seen.values()))
    return best


@pytest.mark.parametrize("seed", range(5))
def test_induced_diameter_vs_brute(seed):
    g = random_connected(24, 50, seed=300 + seed)
    indptr, nbrs, wts = csr(g)
    rng = np.random.default_rng(seed)
    members = np.sort(rng.choice(24, size=10, replace=False)).astype(np.int64)
    want = _brute_induced_diameter(g, members)
    for mod in BACKENDS:
        assert mod.induced_diameter(24, indptr, nbrs, wts, True, members) == want


@needs_compiled
@pytest.mark.parametrize("seed", range(8))
def test_backends_identical_traversals(seed):
    wmax = 1 if seed % 2 == 0 else 6
    g = random_connected(40 + 3 * seed, 100 + 5 * seed, seed=400 + seed, wmax=wmax)
    n = g.n
    indptr, nbrs, wts = csr(g)
    unit = g.unit_weights

    a = pure.sssp(n, indptr, nbrs, wts, unit, seed % n, 7, None)
    b = compiled.sssp(n, indptr, nbrs, wts, unit, seed % n, 7, None)
    for x, y in zip(a, b):
        assert np.array_equal(x, y)

    srcs = np.array(sorted({seed % n, (3 * seed) % n, 5 % n}), dtype=np.int64)
    if unit:
        da, pa = pure.multi_source_bfs(n, indptr, nbrs, srcs)
        db, pb = compiled.multi_source_bfs(n, indptr, nbrs, srcs)
        assert np.array_equal(da, db) and np.array_equal(pa, pb)

    centers = np.arange(n, dtype=np.int64)
    ba = pure.balls(n, indptr, nbrs, wts, unit, 3, centers)
    bb = compiled.balls(n, indptr, nbrs, wts, unit, 3, centers)
    assert np.array_equal(ba[0], bb[0]) and np.array_equal(ba[1], bb[1])

    radii = np.abs(np.arange(n, dtype=np.int64) * 7 % 5)
    ca = pure.carve(n, indptr, nbrs, wts, unit, radii)
    cb = compiled.carve(n, indptr, nbrs, wts, unit, radii)
    assert np.array_equal(ca[0], cb[0]) and np.array_equal(ca[1], cb[1])


@needs_compiled
@pytest.mark.parametrize("seed", range(4))
def test_backends_identical_region_grow(seed):
    g = random_connected(50, 120, seed=500 + seed)
    n = g.n
    indptr, nbrs, wts = csr(g)
    centers = np.arange(n, dtype=np.int64)
    bind, bverts = pure.balls(n, indptr, nbrs, wts, True, 2, centers)
    vind, vballs = pure_vertex_ball_index(n, bind, bverts)
    out_a = pure.region_grow(n, bind, bverts, centers, vind, vballs, 1.2)
    out_b = compiled.region_grow(n, bind, bverts, centers, vind, vballs, 1.2)
    for x, y in zip(out_a, out_b):
        assert np.array_equal(np.asarray(x), np.asarray(y))


def pure_vertex_ball_index(n, bind, bverts):
    from compactpaths.covers import _vertex_ball_index

    return _vertex_ball_index(n, bind, bverts, len(bind) - 1)


@needs_compiled
@pytest.mark.parametrize("seed", range(4))
def test_backends_identical_tz_clusters(seed):
    g = random_connected(45, 110, seed=600 + seed)
    n = g.n
    indptr, nbrs, _ = csr(g)
    rng = np.random.default_rng(seed)
    lv = np.zeros(n, dtype=np.int64)
    lv[rng.random(n) < 0.2] = 1
    d1, _ = pure.multi_source_bfs(n, indptr, nbrs, np.nonzero(lv == 1)[0].astype(np.int64))
    bounds = np.vstack([np.zeros(n, dtype=np.int64), d1, np.full(n, INF, dtype=np.int64)])
    out_a = pure.tz_clusters(n, indptr, nbrs, lv, bounds)
    out_b = compiled.tz_clusters(n, indptr, nbrs, lv, bounds)
    for x, y in zip(out_a, out_b):
        assert np.array_equal(np.asarray(x), np.asarray(y))


@needs_compiled
def test_backend_env_selection():
    import subprocess
    import sys

    code = "import compactpaths; print(compactpaths.BACKEND)"
    for want in ("pure", "compiled"):
        out = subprocess.run(
            [sys.executable, "-c", code],
            env={"PATH": "/usr/bin:/bin", "COMPACTPATHS_BACKEND": want},
            capture_output=True,
            text=True,
        )
        assert out.stdout.strip() == want
