"""Undirected weighted graphs: construction, generators, shortest paths.

Vertices are 0..n-1. Weights are positive 64-bit integers; a graph with
every weight equal to 1 is flagged unit-weight and traversals use BFS
instead of Dijkstra. Parallel edges collapse to the minimum weight and
self-loops are rejected.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _backend
from .errors import GraphFormatError, InvalidPathError, UnreachableError
from .numutil import INF, radius_floor
from .seeds import stream

__all__ = [
    "Graph",
    "Path",
    "ShortestPathTree",
    "load_graph",
    "dump_graph",
    "generate_graph",
    "shortest_path_tree",
    "sssp_distances",
    "ball",
    "exact_distance",
    "eccentricity",
    "diameter_upper_bound",
    "validate_path",
    "INF",
]


@dataclass
class Path:
    """A walk in G: vertex sequence plus its weighted length."""

    vertices: list
    length: int

    def __len__(self):
        return len(self.vertices)


class Graph:
    """Immutable undirected graph with positive integer weights."""

    def __init__(self, n: int, edges):
        if n < 0:
            raise GraphFormatError("vertex count must be >= 0")
        self.n = n
        dedup = {}
        for u, v, w in edges:
            u, v, w = int(u), int(v), int(w)
            if not (0 <= u < n and 0 <= v < n):
                raise GraphFormatError(f"vertex id out of range: ({u},{v})")
            if u == v:
                raise GraphFormatError(f"self-loop at {u}")
            if w < 1:
                raise GraphFormatError(f"edge ({u},{v}) has weight {w} < 1")
            key = (u, v) if u < v else (v, u)
            old = dedup.get(key)
            if old is None or w < old:
                dedup[key] = w
        self.edges = sorted((u, v, w) for (u, v), w in dedup.items())
        self.m = len(self.edges)
        self.unit_weights = all(w == 1 for _, _, w in self.edges)
        adj = [[] for _ in range(n)]
        for u, v, w in self.edges:
            adj[u].append((v, w))
            adj[v].append((u, w))
        for lst in adj:
            lst.sort()
        self.adj = adj
        self._csr = None
        self._wlookup = None

    def csr(self):
        """(indptr, nbrs, wts) int64 arrays; cached."""
        if self._csr is None:
            indptr = np.zeros(self.n + 1, dtype=np.int64)
            for v in range(self.n):
                indptr[v + 1] = indptr[v] + len(self.adj[v])
            nbrs = np.zeros(indptr[-1], dtype=np.int64)
            wts = np.zeros(indptr[-1], dtype=np.int64)
            pos = 0
            for v in range(self.n):
                for u, w in self.adj[v]:
                    nbrs[pos] = u
                    wts[pos] = w
                    pos += 1
            self._csr = (indptr, nbrs, wts)
        return self._csr

    def edge_weight(self, u: int, v: int):
        """Weight of edge {u,v}, or None."""
        if self._wlookup is None:
            self._wlookup = [dict(lst) for lst in self.adj]
        return self._wlookup[u].get(v)

    def components(self):
        """comp int64[n]: component id in order of smallest member."""
        comp = np.full(self.n, -1, dtype=np.int64)
        cid = 0
        for v in range(self.n):
            if comp[v] != -1:
                continue
            stack = [v]
            comp[v] = cid
            while stack:
                u = stack.pop()
                for x, _ in self.adj[u]:
                    if comp[x] == -1:
                        comp[x] = cid
                        stack.append(x)
            cid += 1
        return comp

    def is_connected(self) -> bool:
        return self.n <= 1 or int(self.components().max()) == 0

    def fingerprint(self) -> int:
        """Stable 64-bit digest of the canonical edge list."""
        import hashlib

        h = hashlib.sha256()
        h.update(f"{self.n} {self.m}".encode())
        arr = np.array(self.edges, dtype=np.int64).reshape(-1)
        h.update(arr.tobytes())
        return int.from_bytes(h.digest()[:8], "big")

    def __repr__(self):
        kind = "unit" if self.unit_weights else "weighted"
        return f"Graph(n={self.n}, m={self.m}, {kind})"


@dataclass
class ShortestPathTree:
    """Shortest-path tree over a vertex subset.

    members is sorted ascending; dist/parent align with members. The
    parent of the root is the root itself.
    """

    root: int
    members: np.ndarray
    dist: np.ndarray
    parent: np.ndarray
    tree_id: int = -1

    def _index(self, v: int) -> int:
        i = int(np.searchsorted(self.members, v))
        if i >= len(self.members) or self.members[i] != v:
            raise KeyError(f"vertex {v} not in tree {self.tree_id}")
        return i

    def __contains__(self, v: int) -> bool:
        i = int(np.searchsorted(self.members, v))
        return i < len(self.members) and self.members[i] == v

    def dist_to_root(self, v: int) -> int:
        return int(self.dist[self._index(v)])

    def parent_of(self, v: int) -> int:
        return int(self.parent[self._index(v)])

    def __len__(self):
        return len(self.members)


def load_graph(text: str) -> Graph:
    """Parse edge-list text: one "n m" header line then m "u v w" lines."""
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise GraphFormatError("empty input")
    head = lines[0].split()
    if len(head) != 2:
        raise GraphFormatError(f"bad header: {lines[0]!r}")
    try:
        n, m = int(head[0]), int(head[1])
    except ValueError as exc:
        raise GraphFormatError(f"bad header: {lines[0]!r}") from exc
    if len(lines) - 1 != m:
        raise GraphFormatError(f"header declares {m} edges, found {len(lines) - 1}")
    edges = []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 3:
            raise GraphFormatError(f"malformed edge line: {ln!r}")
        try:
            u, v, w = int(parts[0]), int(parts[1]), int(parts[2])
        except ValueError as exc:
            raise GraphFormatError(f"malformed edge line: {ln!r}") from exc
        edges.append((u, v, w))
    return Graph(n, edges)


def dump_graph(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"]
    lines.extend(f"{u} {v} {w}" for u, v, w in g.edges)
    return "\n".join(lines) + "\n"


def generate_graph(kind: str, seed: int = 0, **params) -> Graph:
    """Deterministic graph generators: path, cycle, grid, random.

    path/cycle take n; grid takes rows, cols; random takes n, m and draws
    m distinct edges uniformly, rejecting whole draws until connected.
    wmin/wmax (default 1,1) draw integer weights per edge.
    """
    wmin = params.pop("wmin", 1)
    wmax = params.pop("wmax", 1)
    if wmin < 1 or wmax < wmin:
        raise GraphFormatError("need 1 <= wmin <= wmax")
    rng = stream(seed, "gen", kind)
    if kind == "path":
        n = params.pop("n")
        raw = [(i, i + 1) for i in range(n - 1)]
    elif kind == "cycle":
        n = params.pop("n")
        if n < 3:
            raise GraphFormatError("cycle needs n >= 3")
        raw = [(i, (i + 1) % n) for i in range(n)]
    elif kind == "grid":
        rows, cols = params.pop("rows"), params.pop("cols")
        n = rows * cols
        raw = []
        for r in range(rows):
            for c in range(cols):
                v = r * cols + c
                if c + 1 < cols:
                    raw.append((v, v + 1))
                if r + 1 < rows:
                    raw.append((v, v + cols))
    elif kind == "random":
        n, m = params.pop("n"), params.pop("m")
        if n < 1:
            raise GraphFormatError("random needs n >= 1")
        maxm = n * (n - 1) // 2
        if m < n - 1 or m > maxm:
            raise GraphFormatError(f"random n={n} needs n-1 <= m <= {maxm}")
        raw = None
        for _ in range(64):
            chosen = set()
            while len(chosen) < m:
                u = rng.randrange(n)
                v = rng.randrange(n)
                if u == v:
                    continue
                chosen.add((u, v) if u < v else (v, u))
            if _edges_connected(n, chosen):
                raw = sorted(chosen)
                break
        if raw is None:
            raise GraphFormatError(f"no connected draw for n={n}, m={m} after 64 tries")
    else:
        raise GraphFormatError(f"unknown kind {kind!r}")
    if params:
        raise GraphFormatError(f"unused parameters: {sorted(params)}")
    edges = [(u, v, rng.randint(wmin, wmax) if wmax > 1 else 1) for u, v in raw]
    return Graph(n, edges)


def _edges_connected(n, pairs):
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    comps = n
    for u, v in pairs:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
            comps -= 1
    return comps == 1


def _mask_for(g: Graph, restrict):
    if restrict is None:
        return None
    mask = np.zeros(g.n, dtype=np.uint8)
    for v in restrict:
        mask[v] = 1
    return mask


def shortest_path_tree(g: Graph, root: int, restrict=None, tree_id: int = -1,
                       cap: int = INF) -> ShortestPathTree:
    """SPT from root, optionally confined to a vertex subset and radius.

    Ties go to the smallest parent id, so the tree is unique.
    """
    if not (0 <= root < g.n):
        raise GraphFormatError(f"root {root} out of range")
    indptr, nbrs, wts = g.csr()
    mask = _mask_for(g, restrict)
    if mask is not None and not mask[root]:
        raise GraphFormatError("root outside restriction")
    dist, parent, visited = _backend.sssp(
        g.n, indptr, nbrs, wts, g.unit_weights, root, cap, mask
    )
    return ShortestPathTree(
        root=root,
        members=visited,
        dist=dist[visited].copy(),
        parent=parent[visited].copy(),
        tree_id=tree_id,
    )


def sssp_distances(g: Graph, root: int) -> np.ndarray:
    """Distance array from root (INF where unreachable)."""
    indptr, nbrs, wts = g.csr()
    dist, _, _ = _backend.sssp(g.n, indptr, nbrs, wts, g.unit_weights, root, INF, None)
    return dist


def ball(g: Graph, v: int, rho) -> set:
    """B(v, rho) = vertices at distance <= rho; rho may be fractional."""
    cap = radius_floor(rho)
    if cap < 0:
        return set()
    indptr, nbrs, wts = g.csr()
    _, _, visited = _backend.sssp(g.n, indptr, nbrs, wts, g.unit_weights, v, cap, None)
    return set(int(x) for x in visited)


def exact_distance(g: Graph, u: int, v: int) -> int:
    """d_G(u, v); INF if disconnected."""
    return int(sssp_distances(g, u)[v])


def eccentricity(g: Graph, v: int) -> int:
    """Max finite distance from v (its component only)."""
    d = sssp_distances(g, v)
    return int(d[d < INF].max())


def diameter_upper_bound(g: Graph) -> int:
    """2 * eccentricity(vertex 0). Raises on disconnected input."""
    if g.n == 0:
        raise GraphFormatError("empty graph")
    d = sssp_distances(g, 0)
    if int((d < INF).sum()) != g.n:
        raise UnreachableError("graph is disconnected")
    return 2 * int(d.max())


def validate_path(g: Graph, path, u: int, v: int) -> int:
    """Check path is a u-v walk in G and return its weighted length."""
    if not path:
        raise InvalidPathError("empty path")
    if path[0] != u or path[-1] != v:
        raise InvalidPathError(f"endpoints {path[0]}..{path[-1]} != {u}..{v}")
    total = 0
    for a, b in zip(path, path[1:]):
        w = g.edge_weight(a, b)
        if w is None:
            raise InvalidPathError(f"({a},{b}) is not an edge")
        total += w
    return total
