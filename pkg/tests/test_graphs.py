import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from compactpaths import (
    Graph,
    GraphFormatError,
    INF,
    InvalidPathError,
    ball,
    diameter_upper_bound,
    dump_graph,
    eccentricity,
    exact_distance,
    generate_graph,
    load_graph,
    shortest_path_tree,
    sssp_distances,
    validate_path,
)
from conftest import adjacency, ref_dijkstra, random_connected


def test_parse_basic():
    g = load_graph("3 2\n0 1 1\n1 2 5\n")
    assert g.n == 3 and g.m == 2
    assert g.edges == [(0, 1, 1), (1, 2, 5)]
    assert not g.unit_weights


def test_parse_skips_blank_lines():
    g = load_graph("\n2 1\n\n0 1 1\n\n")
    assert g.edges == [(0, 1, 1)]
    assert g.unit_weights


@pytest.mark.parametrize(
    "text",
    [
        "",
        "nope",
        "2\n",
        "2 1\n0 1 1\n0 1\nextra",
        "2 2\n0 1 1\n",  # edge count mismatch
        "2 1\n0 2 1\n",  # id out of range
        "2 1\n0 0 1\n",  # self loop
        "2 1\n0 1 0\n",  # weight < 1
        "2 1\n0 1 -3\n",
        "2 1\n0 one 1\n",
        "2 1\n0 1\n",  # missing weight field
    ],
)
def test_parse_rejects(text):
    with pytest.raises(GraphFormatError):
        load_graph(text)


def test_duplicate_edge_keeps_min_weight():
    g = Graph(2, [(0, 1, 7), (1, 0, 3)])
    assert g.edges == [(0, 1, 3)]


def test_dump_load_roundtrip():
    g = random_connected(25, 60, seed=5, wmin=1, wmax=9)
    h = load_graph(dump_graph(g))
    assert h.n == g.n and h.edges == g.edges


@given(st.integers(1, 40))
def test_generate_path_shape(n):
    g = generate_graph("path", n=n)
    assert g.n == n and g.m == n - 1
    assert g.is_connected()


def test_generate_cycle_and_grid():
    c = generate_graph("cycle", n=8)
    assert c.m == 8 and c.is_connected()
    gr = generate_graph("grid", rows=3, cols=4)
    assert gr.n == 12 and gr.m == 17  # 3*(4-1) + 4*(3-1)
    assert gr.is_connected()


def test_generate_random_connected_and_deterministic():
    a = random_connected(50, 110, seed=3)
    b = random_connected(50, 110, seed=3)
    c = random_connected(50, 110, seed=4)
    assert a.edges == b.edges
    assert a.edges != c.edges
    assert a.is_connected()


def test_generate_random_weighted_range():
    g = random_connected(40, 90, seed=1, wmin=2, wmax=6)
    ws = {w for _, _, w in g.edges}
    assert ws <= set(range(2, 7))
    assert not g.unit_weights


def test_generate_unknown_kind():
    with pytest.raises(GraphFormatError):
        generate_graph("torus", n=5)


@pytest.mark.parametrize("seed", range(6))
def test_sssp_matches_reference(seed):
    wmax = 1 if seed % 2 == 0 else 8
    g = random_connected(35, 80, seed=200 + seed, wmax=wmax)
    ref = ref_dijkstra(adjacency(g), 0)
    dist = sssp_distances(g, 0)
    for v in range(g.n):
        assert dist[v] == ref.get(v, INF)


def test_exact_distance_disconnected():
    g = Graph(4, [(0, 1, 1), (2, 3, 1)])
    assert exact_distance(g, 0, 3) == INF
    assert exact_distance(g, 0, 1) == 1


def test_tree_structure_coherent():
    g = random_connected(30, 70, seed=9, wmax=5)
    t = shortest_path_tree(g, 4)
    ref = ref_dijkstra(adjacency(g), 4)
    for v in range(g.n):
        assert (v in t) == (v in ref)
        if v in t:
            assert t.dist_to_root(v) == ref[v]
            p = t.parent_of(v)
            if v == 4:
                assert p == v
            else:
                # parent one edge closer to the root
                assert ref[p] + g.edge_weight(p, v) == ref[v]


def test_canonical_parent_smallest_id():
    # on a 4-cycle the far vertex has two shortest parents; ties go to
    # the smaller id
    c4 = generate_graph("cycle", n=4)
    t = shortest_path_tree(c4, 0)
    assert t.parent_of(2) == 1


def test_ball_frozen():
    p5 = generate_graph("path", n=5)
    assert ball(p5, 2, 1) == {1, 2, 3}
    assert ball(p5, 0, 2) == {0, 1, 2}
    assert ball(p5, 4, 0) == {4}


def test_eccentricity_and_diameter_bound():
    p9 = generate_graph("path", n=9)
    assert eccentricity(p9, 0) == 8
    assert eccentricity(p9, 4) == 4
    assert diameter_upper_bound(p9) >= 8


def test_validate_path_ok_and_length():
    g = load_graph("4 3\n0 1 2\n1 2 3\n2 3 1\n")
    assert validate_path(g, [0, 1, 2, 3], 0, 3) == 6
    assert validate_path(g, [1], 1, 1) == 0


@pytest.mark.parametrize(
    "path,u,v",
    [
        ([0, 2], 0, 2),  # not an edge
        ([0, 1], 0, 2),  # wrong endpoint
        ([1, 0], 0, 1),  # reversed endpoints
        ([], 0, 0),
    ],
)
def test_validate_path_rejects(path, u, v):
    g = load_graph("3 2\n0 1 1\n1 2 1\n")
    with pytest.raises(InvalidPathError):
        validate_path(g, path, u, v)


def test_components_labeling():
    g = Graph(5, [(0, 1, 1), (3, 4, 1)])
    comp = g.components()
    assert comp[0] == comp[1]
    assert comp[3] == comp[4]
    assert comp[0] != comp[3]
    assert not g.is_connected()


def test_fingerprint_sensitivity():
    a = Graph(3, [(0, 1, 1), (1, 2, 1)])
    b = Graph(3, [(0, 1, 1), (1, 2, 1)])
    c = Graph(3, [(0, 1, 1), (1, 2, 2)])
    assert a.fingerprint() == b.fingerprint()
    assert a.fingerprint() != c.fingerprint()


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_dump_load_roundtrip_property(data):
    n = data.draw(st.integers(2, 20))
    m = data.draw(st.integers(n - 1, min(n * (n - 1) // 2, 3 * n)))
    seed = data.draw(st.integers(0, 10_000))
    wmax = data.draw(st.sampled_from([1, 5]))
    try:
        g = random_connected(n, m, seed=seed, wmax=wmax)
    except GraphFormatError:
        return  # generator gave up on a connected draw; fine
    assert load_graph(dump_graph(g)).edges == g.edges
