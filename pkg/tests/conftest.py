"""Shared fixtures and brute-force reference implementations.

The references here deliberately avoid the package's CSR kernels: plain
dict adjacency plus heapq, so structure answers are checked against an
independent computation.
"""

import heapq
import random

import pytest

from compactpaths import Graph, generate_graph


def adjacency(g: Graph):
    adj = [dict() for _ in range(g.n)]
    for u, v, w in g.edges:
        w = int(w)
        if v not in adj[u] or w < adj[u][v]:
            adj[u][v] = w
            adj[v][u] = w
    return adj


def ref_dijkstra(adj, src):
    """Distance dict from src over dict-of-dicts adjacency."""
    dist = {src: 0}
    heap = [(0, src)]
    while heap:
        d, u = heapq.heappop(heap)
        if d > dist[u]:
            continue
        for v, w in adj[u].items():
            nd = d + w
            if v not in dist or nd < dist[v]:
                dist[v] = nd
                heapq.heappush(heap, (nd, v))
    return dist


def ref_all_dists(g: Graph):
    adj = adjacency(g)
    return [ref_dijkstra(adj, s) for s in range(g.n)]


def ref_path_ok(g: Graph, verts, u, v):
    """Edge-by-edge check that verts is a u..v walk; returns its length."""
    assert verts[0] == u and verts[-1] == v
    adj = adjacency(g)
    total = 0
    for a, b in zip(verts, verts[1:]):
        assert b in adj[a], f"missing edge {a}-{b}"
        total += adj[a][b]
    return total


def random_connected(n, m, seed, wmin=1, wmax=1):
    return generate_graph("random", n=n, m=m, seed=seed, wmin=wmin, wmax=wmax)


@pytest.fixture
def rng():
    return random.Random(0xC0FFEE)


@pytest.fixture(scope="session")
def small_graphs():
    """A fixed bag of small connected graphs reused across tests."""
    gs = [
        generate_graph("path", n=1),
        generate_graph("path", n=2),
        generate_graph("path", n=9),
        generate_graph("cycle", n=12),
        generate_graph("grid", rows=4, cols=5),
    ]
    for sd in range(4):
        gs.append(random_connected(30 + 11 * sd, 60 + 20 * sd, seed=100 + sd))
    return gs
