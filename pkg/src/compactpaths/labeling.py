"""Multi-scale distance labels and a label-based path oracle.

One sparse cover per scale i with radius n**(i/k); every vertex stores,
per scale, its padded cluster id and one (parent, dist-to-root) record
for each cover tree containing it. Two labels alone answer a distance
query by binary searching for the first scale whose padded cluster of u
also contains v; both root distances in that tree bound d(u,v) from
above, and the search lands at a scale with radius below n**(1/k) times
the true distance, which gives the stretch envelope.
"""
from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass

from .covers import SparseCover, build_cover_deterministic, build_cover_randomized, tree_path
from .errors import PaddingFailure, UnreachableError
from .graphs import Graph, Path, sssp_distances
from .numutil import INF, scale_cap
from .seeds import derive_seed

__all__ = [
    "ScaleSet",
    "VertexLabel",
    "LabelingScheme",
    "build_labeling",
    "query_distance",
    "RETRY_LIMIT",
]

RETRY_LIMIT = 32


@dataclass
class ScaleSet:
    """Radii n**(i/k) for i in 0..q, with q minimal so the top radius
    reaches delta. caps[i] = floor(n**(i/k)) computed exactly."""

    k: int
    delta: int
    q: int
    radii: list
    caps: list


def make_scales(n: int, k: int, delta: int) -> ScaleSet:
    delta = max(1, int(delta))
    if n <= 1:
        return ScaleSet(k=k, delta=delta, q=0, radii=[1.0], caps=[1])
    q = 0
    target = delta**k
    while n**q < target:
        q += 1
    radii = [float(n) ** (i / k) for i in range(q + 1)]
    caps = [scale_cap(n, i, k) for i in range(q + 1)]
    return ScaleSet(k=k, delta=delta, q=q, radii=radii, caps=caps)


@dataclass
class VertexLabel:
    v: int
    scheme_id: int
    padded: list  # per scale: global tree id of the padded cluster
    trees: dict  # global tree id -> (parent, dist_to_root)

    @property
    def record_count(self) -> int:
        return len(self.trees) + len(self.padded)


@dataclass
class LabelingScheme:
    scheme_id: int
    n: int
    k: int
    scales: ScaleSet
    covers: list  # one SparseCover per scale
    offsets: list  # global tree id base per scale
    labels: list  # VertexLabel per vertex
    construction: str
    seed: int = 0

    @property
    def q(self) -> int:
        return self.scales.q

    def locate(self, gid: int):
        """(scale, Cluster) for a global tree id."""
        i = bisect_right(self.offsets, gid) - 1
        return i, self.covers[i].clusters[gid - self.offsets[i]]

    def query_path(self, u: int, v: int) -> Path:
        if u == v:
            return Path([u], 0)
        j = _scale_search(self.labels[u], self.labels[v], self.q)
        if j is None:
            raise UnreachableError(f"{u} and {v} are in different components")
        _, cluster = self.locate(self.labels[u].padded[j])
        return tree_path(cluster.spt, u, v)


def _component_diameter_bound(g: Graph) -> int:
    """Max over components of twice the first vertex's eccentricity."""
    comp = g.components()
    best = 0
    seen = set()
    for v in range(g.n):
        c = int(comp[v])
        if c in seen:
            continue
        seen.add(c)
        d = sssp_distances(g, v)
        best = max(best, 2 * int(d[d < INF].max()))
    return best


def _build_scale_cover(g, rho, k, cap, randomized, seed, scale) -> SparseCover:
    if not randomized:
        return build_cover_deterministic(g, rho, k, cap=cap)
    last = None
    for attempt in range(RETRY_LIMIT):
        try:
            return build_cover_randomized(
                g, rho, k, derive_seed(seed, "scale", scale, attempt), cap=cap
            )
        except PaddingFailure as exc:
            last = exc
    raise last


def build_labeling(g: Graph, k: int, randomized: bool = False, seed: int = 0) -> LabelingScheme:
    """Build the q+1 covers and per-vertex labels."""
    if k < 1:
        raise ValueError("k must be >= 1")
    n = g.n
    delta = _component_diameter_bound(g) if n else 1
    scales = make_scales(n, k, delta)
    construction = "randomized" if randomized else "deterministic"
    scheme_id = derive_seed(
        g.fingerprint(), "labeling", n, k, construction, seed, scales.q
    )
    covers = []
    offsets = []
    gid = 0
    for i in range(scales.q + 1):
        offsets.append(gid)
        cover = _build_scale_cover(
            g, scales.radii[i], k, scales.caps[i], randomized, seed, i
        )
        covers.append(cover)
        gid += len(cover.clusters)
    labels = [
        VertexLabel(v=v, scheme_id=scheme_id, padded=[0] * (scales.q + 1), trees={})
        for v in range(n)
    ]
    for i, cover in enumerate(covers):
        base = offsets[i]
        for cl in cover.clusters:
            spt = cl.spt
            for pos in range(len(spt.members)):
                v = int(spt.members[pos])
                labels[v].trees[base + cl.id] = (
                    int(spt.parent[pos]),
                    int(spt.dist[pos]),
                )
        for v in range(n):
            labels[v].padded[i] = base + int(cover.padded[v])
    budget = 2 * k * (scales.q + 1) + (scales.q + 1)
    for lab in labels:
        assert lab.record_count <= budget, "label over budget"
        assert all(lab.padded[i] in lab.trees for i in range(scales.q + 1))
    return LabelingScheme(
        scheme_id=scheme_id,
        n=n,
        k=k,
        scales=scales,
        covers=covers,
        offsets=offsets,
        labels=labels,
        construction=construction,
        seed=seed,
    )


def _scale_search(lu: VertexLabel, lv: VertexLabel, q: int):
    """Smallest-known scale j with lu's padded tree containing v:
    j in J and j-1 not in J. None if even the top scale misses
    (different components)."""
    if lu.padded[0] in lv.trees:
        return 0
    if lu.padded[q] not in lv.trees:
        return None
    lo, hi = 0, q
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if lu.padded[mid] in lv.trees:
            hi = mid
        else:
            lo = mid
    return hi


def query_distance(label_u: VertexLabel, label_v: VertexLabel) -> int:
    """Distance estimate from the two labels alone."""
    if label_u.scheme_id != label_v.scheme_id:
        raise ValueError("labels come from different schemes")
    if label_u.v == label_v.v:
        return 0
    q = len(label_u.padded) - 1
    j = _scale_search(label_u, label_v, q)
    if j is None:
        return INF
    gid = label_u.padded[j]
    return label_u.trees[gid][1] + label_v.trees[gid][1]
