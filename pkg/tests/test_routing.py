"""Hop-by-hop routing: each step sees one table record, the target
label, and the port intervals of the current tree node."""

import pytest

from compactpaths import (
    DELIVERED,
    Graph,
    UnreachableError,
    build_routing,
    generate_graph,
    route,
    route_step,
)
from conftest import ref_all_dists, ref_path_ok, random_connected


def test_path3_frozen():
    p3 = generate_graph("path", n=3)
    sch = build_routing(p3, 1)
    r = route(sch, 0, sch.label_of(2))
    assert r.delivered and r.path.vertices == [0, 1, 2] and r.hops == 2
    back = route(sch, 2, sch.label_of(0))
    assert back.path.vertices == [2, 1, 0]
    self_r = route(sch, 1, sch.label_of(1))
    assert self_r.delivered and self_r.hops == 0 and self_r.path.vertices == [1]


def test_star_routes_through_center():
    star = Graph(10, [(0, i, 1) for i in range(1, 10)])
    sch = build_routing(star, 1)
    r = route(sch, 3, sch.label_of(8))
    assert r.path.vertices == [3, 0, 8] and r.hops == 2
    down = route(sch, 0, sch.label_of(5))
    assert down.path.vertices == [0, 5]


def test_single_vertex():
    sch = build_routing(generate_graph("path", n=1), 1)
    r = route(sch, 0, sch.label_of(0))
    assert r.delivered and r.path.vertices == [0]


def test_step_interface_delivery():
    p3 = generate_graph("path", n=3)
    sch = build_routing(p3, 1)
    lab = sch.label_of(0)
    assert route_step(sch, 0, lab, lab.entries[0][0]) == DELIVERED


@pytest.mark.parametrize("k", [1, 2])
@pytest.mark.parametrize("randomized", [False, True])
def test_full_delivery_small_graphs(k, randomized):
    g = random_connected(40, 90, seed=1100 + k)
    sch = build_routing(g, k, randomized, seed=4)
    dist = ref_all_dists(g)
    n = g.n
    bound = 16 * k * n ** (2 / k)
    for u in range(n):
        for v in range(n):
            res = route(sch, u, sch.label_of(v))
            assert res.delivered
            plen = ref_path_ok(g, res.path.vertices, u, v)
            assert res.path.length == plen
            assert plen <= bound * max(dist[u][v], 1)


def test_weighted_delivery():
    g = random_connected(30, 70, seed=1105, wmax=6)
    sch = build_routing(g, 2)
    for u in range(0, 30, 5):
        for v in range(30):
            res = route(sch, u, sch.label_of(v))
            assert res.delivered
            ref_path_ok(g, res.path.vertices, u, v)


def test_record_budgets():
    g = random_connected(60, 140, seed=1110)
    for k in (1, 2):
        sch = build_routing(g, k)
        budget = 2 * k * (sch.q + 1) + (sch.q + 1)
        assert max(t.record_count() for t in sch.tables) <= budget
        assert max(l.record_count() for l in sch.labels) <= 2 * (sch.q + 1)


def test_disconnected_target():
    g = Graph(5, [(0, 1, 1), (2, 3, 1), (3, 4, 1)])
    sch = build_routing(g, 1)
    with pytest.raises(UnreachableError):
        route(sch, 0, sch.label_of(4))
    assert route(sch, 2, sch.label_of(4)).delivered


def test_foreign_label_rejected():
    g = generate_graph("path", n=4)
    a = build_routing(g, 1, seed=1)
    b = build_routing(g, 1, seed=2)
    with pytest.raises(ValueError):
        route(a, 0, b.label_of(3))


def test_hop_length_is_tree_distance():
    # on a path every hop moves one edge, so hops == length
    p9 = generate_graph("path", n=9)
    sch = build_routing(p9, 1)
    res = route(sch, 0, sch.label_of(8))
    assert res.hops == res.path.length == 8


def test_deterministic_tables():
    g = random_connected(35, 80, seed=1120)
    a = build_routing(g, 2, seed=6)
    b = build_routing(g, 2, seed=6)
    assert [t.by_scale for t in a.tables] == [t.by_scale for t in b.tables]
    assert [l.entries for l in a.labels] == [l.entries for l in b.labels]
    assert a.scheme_id == b.scheme_id
