"""Sparse covers with bounded radius blow-up and small overlap.

A (beta, s, rho)-cover is a set of connected clusters such that every
cluster's induced diameter is at most beta*rho, every vertex lies in at
most s clusters, and every vertex has a designated "padded" cluster that
contains its whole radius-rho ball.

Two constructions:
  * build_cover_deterministic: region growing over the system of
    radius-rho balls; beta = 8*k*n**(1/k), overlap <= 2k.
  * build_cover_randomized: union of 2k ball-carving partitions with
    exponentially distributed radii; beta = 64*k*n**(1/k), overlap
    exactly 2k, padding holds with high probability and the build raises
    PaddingFailure otherwise so callers can retry with a new seed.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import _backend
from .errors import PaddingFailure
from .graphs import Graph, Path, ShortestPathTree, shortest_path_tree
from .numutil import INF, radius_floor
from .seeds import derive_seed, stream

__all__ = [
    "Cluster",
    "SparseCover",
    "Partition",
    "CoverStats",
    "build_cover_deterministic",
    "padded_partition",
    "build_cover_randomized",
    "verify_cover",
    "tree_path",
]


@dataclass
class Cluster:
    id: int
    root: int
    members: np.ndarray  # sorted ascending
    spt: ShortestPathTree
    _set: set = field(default=None, repr=False, compare=False)

    def vertex_set(self) -> set:
        if self._set is None:
            self._set = set(int(v) for v in self.members)
        return self._set

    def __contains__(self, v: int) -> bool:
        return int(v) in self.vertex_set()

    def __len__(self):
        return len(self.members)


@dataclass
class SparseCover:
    n: int
    rho: object  # int | float | Fraction, as given by the caller
    cap: int  # exact integer ball radius floor(rho) used by the build
    k: int
    beta: float
    s: int
    clusters: list
    membership: list  # vertex -> sorted list of cluster ids
    padded: np.ndarray  # vertex -> cluster id
    construction: str
    seed: int = None
    stats: dict = field(default_factory=dict)

    def cluster_of(self, cid: int) -> Cluster:
        return self.clusters[cid]


@dataclass
class Partition:
    """Disjoint ball-carved cells covering V, each of strong diameter
    at most Delta."""

    n: int
    delta: float
    cell_of: np.ndarray
    centers: np.ndarray

    @property
    def cells(self):
        out = [[] for _ in range(len(self.centers))]
        for v in range(self.n):
            out[int(self.cell_of[v])].append(v)
        return [np.array(c, dtype=np.int64) for c in out]


@dataclass
class CoverStats:
    max_diameter: int
    max_overlap: int
    unpadded_count: int
    n_clusters: int


def _growth_threshold(n: int, k: int) -> float:
    # natural log; n == 1 degenerates to multiplier 1.0 and the grower's
    # boundary==set guard stops the loop
    if n <= 1:
        return 1.0
    return 1.0 + math.log(n) / (k * n ** (1.0 / k))


def _vertex_ball_index(n, bind, bverts, nballs):
    """Inverted index vertex -> balls containing it, CSR."""
    counts = np.bincount(bverts, minlength=n)
    vind = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(counts, out=vind[1:])
    ball_ids = np.repeat(np.arange(nballs, dtype=np.int64), np.diff(bind))
    order = np.argsort(bverts, kind="stable")
    vballs = ball_ids[order]
    return vind, vballs


def build_cover_deterministic(g: Graph, rho, k: int, cap: int = None) -> SparseCover:
    """(8k*n**(1/k), 2k, rho)-cover by deterministic region growing.

    cap overrides floor(rho) when the caller can compute the integer
    radius exactly (e.g. rho = n**(i/k)).
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    n = g.n
    if cap is None:
        cap = radius_floor(rho)
    if cap < 0:
        raise ValueError("rho must be >= 0")
    beta = 8.0 * k * (n ** (1.0 / k) if n else 1.0)
    mult = _growth_threshold(n, k)
    indptr, nbrs, wts = g.csr()
    comp = g.components()
    ncomp = int(comp.max()) + 1 if n else 0
    clusters = []
    padded = np.full(n, -1, dtype=np.int64)
    phases_max = 0
    iters_max = 0
    scratch = np.zeros(n, dtype=np.uint8)
    for c in range(ncomp):
        cverts = np.nonzero(comp == c)[0].astype(np.int64)
        v0 = int(cverts[0])
        dist0, _, _ = _backend.sssp(n, indptr, nbrs, wts, g.unit_weights, v0, INF, None)
        ecc0 = int(dist0[cverts].max())
        if cap >= ecc0:
            # first ball swallows the component: the grower would absorb
            # every ball in one step, so emit that outcome directly
            cid = len(clusters)
            spt = _restricted_spt(g, v0, cverts, scratch, cid)
            clusters.append(Cluster(id=cid, root=v0, members=cverts, spt=spt))
            padded[cverts] = cid
            phases_max = max(phases_max, 1)
            if len(cverts) > 1:
                iters_max = max(iters_max, 1)
            continue
        bind, bverts = _backend.balls(
            n, indptr, nbrs, wts, g.unit_weights, cap, cverts
        )
        vind, vballs = _vertex_ball_index(n, bind, bverts, len(cverts))
        (cl_indptr, cl_members, cl_roots, ball_cluster, phases, iters) = (
            _backend.region_grow(n, bind, bverts, cverts, vind, vballs, mult)
        )
        base = len(clusters)
        for i in range(len(cl_roots)):
            members = cl_members[cl_indptr[i] : cl_indptr[i + 1]]
            cid = base + i
            spt = _restricted_spt(g, int(cl_roots[i]), members, scratch, cid)
            clusters.append(
                Cluster(id=cid, root=int(cl_roots[i]), members=members, spt=spt)
            )
        padded[cverts] = ball_cluster + base
        phases_max = max(phases_max, phases)
        iters_max = max(iters_max, iters)
    assert phases_max <= 2 * k, f"phase count {phases_max} exceeds 2k"
    assert iters_max <= 2 * k * (n ** (1.0 / k) if n else 1.0), "growth iterations over budget"
    membership = _membership_lists(n, clusters)
    cover = SparseCover(
        n=n,
        rho=rho,
        cap=cap,
        k=k,
        beta=beta,
        s=2 * k,
        clusters=clusters,
        membership=membership,
        padded=padded,
        construction="deterministic",
        stats={"phases": phases_max, "max_growth_iterations": iters_max},
    )
    assert n == 0 or padded.min() >= 0
    return cover


def _restricted_spt(g, root, members, scratch, tree_id):
    scratch[members] = 1
    indptr, nbrs, wts = g.csr()
    dist, parent, visited = _backend.sssp(
        g.n, indptr, nbrs, wts, g.unit_weights, root, INF, scratch
    )
    scratch[members] = 0
    return ShortestPathTree(
        root=root,
        members=visited,
        dist=dist[visited].copy(),
        parent=parent[visited].copy(),
        tree_id=tree_id,
    )


def _membership_lists(n, clusters):
    membership = [[] for _ in range(n)]
    for cl in clusters:
        for v in cl.members:
            membership[int(v)].append(cl.id)
    return membership


def padded_partition(g: Graph, delta: float, seed: int) -> Partition:
    """Ball-carving partition with cells of strong diameter <= delta.

    Radii are truncated-exponential on [0, delta/2] with rate
    4*ln(n)/delta; each draw is deterministic given the seed.
    """
    n = g.n
    if delta <= 0:
        raise ValueError("delta must be positive")
    rng = stream(seed, "carve")
    half = delta / 2.0
    lam = 4.0 * math.log(n) / delta if n > 1 else 0.0
    radii = np.zeros(n, dtype=np.int64)
    for v in range(n):
        u = rng.random()
        if lam <= 0.0:
            r = u * half
        else:
            r = -math.log(1.0 - u * (1.0 - math.exp(-lam * half))) / lam
        radii[v] = int(math.floor(r))
    indptr, nbrs, wts = g.csr()
    cell_of, centers = _backend.carve(n, indptr, nbrs, wts, g.unit_weights, radii)
    return Partition(n=n, delta=delta, cell_of=cell_of, centers=centers)


def build_cover_randomized(g: Graph, rho, k: int, seed: int, cap: int = None) -> SparseCover:
    """(64k*n**(1/k), 2k, rho)-cover as a union of 2k carved partitions.

    Overlap is exactly 2k. padded(v) is the first partition whose cell
    contains B(v, rho); raises PaddingFailure when some vertex has none,
    in which case the caller should retry with a different seed.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    n = g.n
    if cap is None:
        cap = radius_floor(rho)
    if cap < 0:
        raise ValueError("rho must be >= 0")
    beta = 64.0 * k * (n ** (1.0 / k) if n else 1.0)
    delta = beta * float(rho) if n else 1.0
    indptr, nbrs, wts = g.csr()
    scratch = np.zeros(n, dtype=np.uint8)
    clusters = []
    cell_cluster_base = []
    parts = []
    for j in range(2 * k):
        part = padded_partition(g, delta, derive_seed(seed, "partition", j))
        parts.append(part)
        cell_cluster_base.append(len(clusters))
        for ci, members in enumerate(part.cells):
            cid = len(clusters)
            root = int(part.centers[ci])
            spt = _restricted_spt(g, root, members, scratch, cid)
            clusters.append(Cluster(id=cid, root=root, members=members, spt=spt))
    bind, bverts = _backend.balls(
        n, indptr, nbrs, wts, g.unit_weights, cap, np.arange(n, dtype=np.int64)
    )
    padded = np.full(n, -1, dtype=np.int64)
    unpadded = []
    for v in range(n):
        bslice = bverts[bind[v] : bind[v + 1]]
        for j in range(2 * k):
            cells = parts[j].cell_of
            if np.all(cells[bslice] == cells[v]):
                padded[v] = cell_cluster_base[j] + int(cells[v])
                break
        else:
            unpadded.append(v)
    if unpadded:
        raise PaddingFailure(unpadded)
    membership = _membership_lists(n, clusters)
    return SparseCover(
        n=n,
        rho=rho,
        cap=cap,
        k=k,
        beta=beta,
        s=2 * k,
        clusters=clusters,
        membership=membership,
        padded=padded,
        construction="randomized",
        seed=seed,
        stats={"partitions": 2 * k},
    )


def verify_cover(g: Graph, cover: SparseCover) -> CoverStats:
    """Recompute diameters, overlap, and padding from scratch."""
    indptr, nbrs, wts = g.csr()
    n = g.n
    max_diam = 0
    counts = np.zeros(n, dtype=np.int64)
    for cl in cover.clusters:
        d = _backend.induced_diameter(n, indptr, nbrs, wts, g.unit_weights, cl.members)
        max_diam = max(max_diam, int(d))
        counts[cl.members] += 1
    bind, bverts = _backend.balls(
        n, indptr, nbrs, wts, g.unit_weights, cover.cap, np.arange(n, dtype=np.int64)
    )
    membership = _membership_lists(n, cover.clusters)
    in_cluster = np.zeros(n, dtype=bool)
    padded_ok = np.zeros(n, dtype=bool)
    for cl in cover.clusters:
        in_cluster[cl.members] = True
        for v in cl.members:
            v = int(v)
            if padded_ok[v]:
                continue
            bslice = bverts[bind[v] : bind[v + 1]]
            if np.all(in_cluster[bslice]):
                padded_ok[v] = True
        in_cluster[cl.members] = False
    return CoverStats(
        max_diameter=max_diam,
        max_overlap=int(counts.max()) if n else 0,
        unpadded_count=int(n - padded_ok.sum()),
        n_clusters=len(cover.clusters),
    )


def tree_path(spt: ShortestPathTree, u: int, v: int) -> Path:
    """Unique tree path between two members, via parent walks that always
    advance the endpoint farther from the root."""
    du = spt.dist_to_root(u)
    dv = spt.dist_to_root(v)
    left = [u]
    right = [v]
    cu, cv, dcu, dcv = u, v, du, dv
    while cu != cv:
        if dcu >= dcv:
            cu = spt.parent_of(cu)
            dcu = spt.dist_to_root(cu)
            left.append(cu)
        else:
            cv = spt.parent_of(cv)
            dcv = spt.dist_to_root(cv)
            right.append(cv)
    verts = left + right[-2::-1]
    return Path(verts, int((du - dcu) + (dv - dcv)))
