"""Low-space path-reporting distance oracle for unweighted graphs.

Construction: a hitting set N for radius-2p balls (BFS-layer residue
classes), landmark levels with bunches and pivots materialized only on
N, shortest-path trees per landmark cluster pruned down to separator
vertices plus N, and a family of s gap covers with radii (3p)**(i/s).

A query walks: representative hops u->u', v->v' into N, a witness
landmark w from the bunch alternation, the skeleton path between u' and
v' inside the pruned tree of w, greedy sparsification to gaps of at
least p, and cover tree paths filling every gap.
"""
from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

import numpy as np

from . import _backend
from .covers import build_cover_deterministic, tree_path
from .errors import GapCoverMissError, UnreachableError
from .graphs import Graph, Path
from .numutil import INF, ceil_root, iroot
from .seeds import derive_seed, stream

__all__ = [
    "HittingSet",
    "TZLevels",
    "BunchStore",
    "TreeView",
    "TZTrees",
    "PrunedTree",
    "PrunedOracle",
    "hitting_set",
    "tree_separator",
    "tz_build",
    "prune_tree",
    "find_witness",
    "skeleton_path",
    "sparsify_skeleton",
    "build_oracle",
    "build_oracle_auto",
]


@dataclass
class HittingSet:
    """N hits every radius-r ball; rep points each vertex at a member
    within distance r along its BFS tree."""

    r: int
    members: np.ndarray
    member_set: set
    rep: np.ndarray
    comp: np.ndarray


@dataclass
class TZLevels:
    t: int
    levels: list  # A_0 .. A_{t-1} as sorted arrays; A_t is empty
    seed: int


@dataclass
class BunchStore:
    t: int
    bunches: dict  # v in N -> {w: d}
    pivots: dict  # v in N -> [(p_i, d_i) for i in 0..t-1]


@dataclass
class TreeView:
    """Array view of one landmark tree (members in BFS order)."""

    root: int
    members: np.ndarray
    dist: np.ndarray
    parent: np.ndarray


class TZTrees:
    """All landmark trees, packed as CSR slices."""

    def __init__(self, cind, cverts, cdist, cparent):
        self.cind = cind
        self.cverts = cverts
        self.cdist = cdist
        self.cparent = cparent

    def tree(self, w: int) -> TreeView:
        a, b = int(self.cind[w]), int(self.cind[w + 1])
        return TreeView(
            root=w,
            members=self.cverts[a:b],
            dist=self.cdist[a:b],
            parent=self.cparent[a:b],
        )

    def total_size(self) -> int:
        return int(self.cind[-1])


@dataclass
class PrunedTree:
    """Members of one landmark tree restricted to separators, N, and the
    root; each member keeps its nearest kept ancestor and distances."""

    root: int
    anc: dict  # v -> (ancestor, dist_to_ancestor, dist_to_root)

    def __contains__(self, v):
        return v in self.anc

    def __len__(self):
        return len(self.anc)


def hitting_set(g: Graph, r: int) -> HittingSet:
    """Small vertex set meeting every radius-r ball, via the cheapest
    BFS-depth residue class mod r per component, plus component roots."""
    if r < 1:
        raise ValueError("r must be >= 1")
    if not g.unit_weights:
        raise ValueError("hitting_set needs unit weights")
    n = g.n
    comp = g.components()
    indptr, nbrs, wts = g.csr()
    rep = np.full(n, -1, dtype=np.int64)
    selected = np.zeros(n, dtype=bool)
    ncomp = int(comp.max()) + 1 if n else 0
    for c in range(ncomp):
        cv = np.nonzero(comp == c)[0]
        root = int(cv[0])
        dist, parent, visited = _backend.sssp(
            n, indptr, nbrs, wts, True, root, INF, None
        )
        depths = dist[cv]
        dmax = int(depths.max())
        if r <= dmax + 1:
            counts = np.bincount(depths % r, minlength=r)
            best = int(np.argmin(counts))
            selected[cv[depths % r == best]] = True
        # else some residue class mod r is empty and argmin would land
        # on it, selecting nothing; the root alone already hits every
        # ball of this radius
        selected[root] = True
        order = cv[np.argsort(depths, kind="stable")]
        for v in order:
            v = int(v)
            rep[v] = v if selected[v] else rep[int(parent[v])]
    members = np.nonzero(selected)[0].astype(np.int64)
    return HittingSet(
        r=r,
        members=members,
        member_set=set(int(v) for v in members),
        rep=rep,
        comp=comp,
    )


def tree_separator(tree, r: int) -> set:
    """Separator by a post-order residual sweep: a vertex whose residual
    subtree reaches ceil(r/2) is taken and its residual reset. Removing
    the result leaves components smaller than ceil(r/2)."""
    members = tree.members
    sz = len(members)
    if sz <= 1:
        return set()
    half = (r + 1) // 2
    pos = {int(v): i for i, v in enumerate(members)}
    residual = [1] * sz
    out = set()
    # members arrive in BFS order (dist nondecreasing), so reverse order
    # is a valid post-order
    for i in range(sz - 1, -1, -1):
        v = int(members[i])
        if residual[i] >= half:
            out.add(v)
            residual[i] = 0
        if v != tree.root:
            residual[pos[int(tree.parent[i])]] += residual[i]
    return out


def _level_sample(n: int, t: int, seed: int):
    levels = [np.arange(n, dtype=np.int64)]
    prob = n ** (-1.0 / t) if n > 0 else 0.0
    for i in range(1, t):
        rng = stream(seed, "level", i)
        prev = levels[-1]
        keep = [int(v) for v in prev if rng.random() < prob]
        levels.append(np.array(keep, dtype=np.int64))
    return levels


def tz_build(g: Graph, t: int, hitters: HittingSet, seed: int):
    """Landmark levels, clusters/trees for every vertex, and bunches and
    pivots materialized only for the hitting set.

    Returns (TZLevels, BunchStore, TZTrees).
    """
    if not g.unit_weights:
        raise ValueError("landmark construction needs unit weights")
    if t < 1:
        raise ValueError("t must be >= 1")
    n = g.n
    indptr, nbrs, _ = g.csr()
    levels = _level_sample(n, t, seed)
    lv = np.zeros(n, dtype=np.int64)
    for i in range(1, t):
        lv[levels[i]] = i
    bounds = np.zeros((t + 1, n), dtype=np.int64)
    pivots_rows = np.zeros((t, n), dtype=np.int64)
    pivots_rows[0] = np.arange(n, dtype=np.int64)
    for i in range(1, t):
        if len(levels[i]) == 0:
            bounds[i] = INF
            pivots_rows[i] = -1
        else:
            d, piv = _backend.multi_source_bfs(n, indptr, nbrs, levels[i])
            bounds[i] = d
            pivots_rows[i] = piv
    bounds[t] = INF
    cind, cverts, cdist, cparent = _backend.tz_clusters(n, indptr, nbrs, lv, bounds)
    trees = TZTrees(cind, cverts, cdist, cparent)
    is_n = np.zeros(n, dtype=bool)
    is_n[hitters.members] = True
    bunches = {int(v): {} for v in hitters.members}
    hit_pos = np.nonzero(is_n[cverts])[0]
    ws = np.searchsorted(cind, hit_pos, side="right") - 1
    for idx, w in zip(hit_pos, ws):
        bunches[int(cverts[idx])][int(w)] = int(cdist[idx])
    pivots = {}
    for v in hitters.members:
        v = int(v)
        pivots[v] = [(int(pivots_rows[i][v]), int(bounds[i][v])) for i in range(t)]
    return (
        TZLevels(t=t, levels=levels, seed=seed),
        BunchStore(t=t, bunches=bunches, pivots=pivots),
        trees,
    )


def prune_tree(tree, hitter_set, p: int) -> PrunedTree:
    """Keep separator vertices, hitting-set members, and the root; link
    each kept vertex to its nearest kept ancestor."""
    members = tree.members
    root = tree.root
    seps = tree_separator(tree, p) if len(members) > 1 else set()
    keep = {root}
    for v in members:
        v = int(v)
        if v in seps or v in hitter_set:
            keep.add(v)
    near = {}
    anc = {}
    for i in range(len(members)):
        v = int(members[i])
        droot = int(tree.dist[i])
        if v == root:
            near[v] = v
            anc[v] = (v, 0, 0)
            continue
        parent_near = near[int(tree.parent[i])]
        if v in keep:
            near[v] = v
            pdist = droot - anc[parent_near][2]
            # gap property: kept vertices on a root path are never more
            # than p apart
            assert pdist <= max(p, 1), "pruned-tree gap exceeded"
            anc[v] = (parent_near, pdist, droot)
        else:
            near[v] = parent_near
    return PrunedTree(root=root, anc=anc)


def find_witness(store: BunchStore, u1: int, v1: int):
    """Common landmark by pivot alternation.

    Returns (w, d(u1,w), d(v1,w)); the sum is at most (2t-1) times the
    true distance. At most t probes; level t-1 always hits.
    """
    pu = store.pivots[u1]
    pv = store.pivots[v1]
    bu = store.bunches[u1]
    bv = store.bunches[v1]
    for i in range(store.t):
        if i % 2 == 0:
            w, dw = pu[i]
            if w in bv:
                return w, dw, bv[w]
        else:
            w, dw = pv[i]
            if w in bu:
                return w, bu[w], dw
    raise AssertionError("level t-1 pivot missed every bunch")


def skeleton_path(ptree: PrunedTree, u1: int, v1: int):
    """Tree path between two kept vertices along pruned-ancestor links.

    Returns (vertices, gaps) where gaps[i] is the tree length of hop i;
    every gap is a distance between consecutive kept vertices, hence
    bounded by the pruning parameter.
    """
    if u1 not in ptree.anc or v1 not in ptree.anc:
        raise KeyError("endpoint not in pruned tree")
    left = [(u1, ptree.anc[u1][2])]
    right = [(v1, ptree.anc[v1][2])]
    lgaps = []
    rgaps = []
    while left[-1][0] != right[-1][0]:
        (cu, du), (cv, dv) = left[-1], right[-1]
        if du >= dv:
            a, step, droot = ptree.anc[cu]
            left.append((a, droot - step))
            lgaps.append(step)
        else:
            a, step, droot = ptree.anc[cv]
            right.append((a, droot - step))
            rgaps.append(step)
    verts = [x for x, _ in left] + [x for x, _ in right[-2::-1]]
    gaps = lgaps + rgaps[::-1]
    return verts, gaps


def sparsify_skeleton(seq, gaps, p: int):
    """Greedy thinning: drop vertices closer than p (in cumulative tree
    length) to the last kept one; always keep both endpoints.

    Returns (kept_seq, kept_gaps). Non-final kept gaps land in [p, 3p]
    when input gaps are <= p; the final gap may be shorter.
    """
    if len(seq) <= 1:
        return list(seq), []
    kept = [seq[0]]
    kept_gaps = []
    acc = 0
    for i in range(1, len(seq)):
        acc += gaps[i - 1]
        last = i == len(seq) - 1
        if acc >= p or last:
            kept.append(seq[i])
            kept_gaps.append(acc)
            acc = 0
    for j, gap in enumerate(kept_gaps):
        if j < len(kept_gaps) - 1:
            assert p <= gap <= 3 * p, "sparsified gap out of range"
        else:
            assert gap <= 3 * p, "final sparsified gap too long"
    return kept, kept_gaps


@dataclass
class PrunedOracle:
    n: int
    k: int
    p: int
    t: int
    s: int
    seed: int
    levels: TZLevels
    store: BunchStore
    hitters: HittingSet
    pruned: dict  # w -> PrunedTree
    covers: list  # s gap covers, radii (3p)**(i/s) for i in 1..s
    g: Graph = field(default=None, repr=False, compare=False)

    def gap_index(self, a: int, b: int) -> int:
        """Smallest-known gap cover index i with b in D_i(a): either
        b in D_1(a), or b in D_i(a) and b not in D_{i-1}(a)."""
        if self._in_padded(0, a, b):
            return 1
        if not self._in_padded(self.s - 1, a, b):
            raise GapCoverMissError(f"{b} outside every gap cover cluster of {a}")
        lo, hi = 1, self.s
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if self._in_padded(mid - 1, a, b):
                hi = mid
            else:
                lo = mid
        return hi

    def _in_padded(self, idx: int, a: int, b: int) -> bool:
        cover = self.covers[idx]
        return b in cover.clusters[int(cover.padded[a])]

    def fill_gap(self, a: int, b: int) -> Path:
        """Short-range path through a gap cover tree; requires
        d(a,b) <= 3p so some cover cluster of a contains b."""
        if a == b:
            return Path([a], 0)
        i = self.gap_index(a, b)
        cover = self.covers[i - 1]
        cluster = cover.clusters[int(cover.padded[a])]
        return tree_path(cluster.spt, a, b)

    def _fill_top(self, a: int, b: int) -> Path:
        # skeleton gaps always use the widest cover
        if a == b:
            return Path([a], 0)
        cover = self.covers[-1]
        cluster = cover.clusters[int(cover.padded[a])]
        if b not in cluster:
            raise GapCoverMissError(f"{b} outside the top gap cover cluster of {a}")
        return tree_path(cluster.spt, a, b)

    def query_path(self, u: int, v: int) -> Path:
        path, _, _ = self.query_path_timed(u, v)
        return path

    def query_path_timed(self, u: int, v: int):
        """(path, witness_ns, assemble_ns): probe time vs time spent on
        path-proportional work."""
        t0 = time.perf_counter_ns()
        if u == v:
            return Path([u], 0), time.perf_counter_ns() - t0, 0
        if self.hitters.comp[u] != self.hitters.comp[v]:
            raise UnreachableError(f"{u} and {v} are in different components")
        top = self.covers[-1]
        cluster = top.clusters[int(top.padded[u])]
        if v in cluster:
            t1 = time.perf_counter_ns()
            path = self.fill_gap(u, v)
            return path, t1 - t0, time.perf_counter_ns() - t1
        u1 = int(self.hitters.rep[u])
        v1 = int(self.hitters.rep[v])
        w, _, _ = find_witness(self.store, u1, v1)
        t1 = time.perf_counter_ns()
        verts, gaps = skeleton_path(self.pruned[w], u1, v1)
        kept, _ = sparsify_skeleton(verts, gaps, self.p)
        segments = [self.fill_gap(u, u1)]
        for a, b in zip(kept, kept[1:]):
            segments.append(self._fill_top(a, b))
        segments.append(self.fill_gap(v1, v))
        out = [u]
        total = 0
        for seg in segments:
            assert seg.vertices[0] == out[-1]
            out.extend(seg.vertices[1:])
            total += seg.length
        return Path(out, total), t1 - t0, time.perf_counter_ns() - t1

    def space_report(self) -> dict:
        """Stored record counts in words (one id or one distance each)."""
        cover_tree = sum(
            3 * len(cl.members) for cov in self.covers for cl in cov.clusters
        )
        cover_ptr = self.s * self.n
        bunch = sum(2 * len(b) for b in self.store.bunches.values())
        pivot = sum(2 * len(pv) for pv in self.store.pivots.values())
        pr_root = pr_n = pr_sep = 0
        nset = self.hitters.member_set
        for w, ptree in self.pruned.items():
            for v in ptree.anc:
                if v == w:
                    pr_root += 4
                elif v in nset:
                    pr_n += 4
                else:
                    pr_sep += 4
        level_words = sum(len(a) for a in self.levels.levels)
        rep_words = self.n
        misc = self.n + len(self.hitters.members)  # comp array + N list
        total = (
            cover_tree + cover_ptr + bunch + pivot + pr_root + pr_n + pr_sep
            + level_words + rep_words + misc
        )
        formula = self.k * self.n + self.t * self.n ** (1.0 + 1.0 / self.t) / self.p
        return {
            "cover_tree_records": cover_tree,
            "cover_pointer_records": cover_ptr,
            "bunch_records": bunch,
            "pivot_records": pivot,
            "pruned_root_records": pr_root,
            "pruned_hitset_records": pr_n,
            "pruned_separator_records": pr_sep,
            "level_records": level_words,
            "rep_records": rep_words,
            "misc_records": misc,
            "total": total,
            "formula": formula,
            "ratio": total / formula if formula else float("inf"),
        }


def build_oracle(g: Graph, k: int, p: int, t: int, s: int = 1, seed: int = 0) -> PrunedOracle:
    """Compose hitting set, landmark structures, pruned trees, and gap
    covers into a queryable oracle."""
    if not g.unit_weights:
        raise ValueError("oracle needs unit weights")
    if min(k, p, t, s) < 1:
        raise ValueError("k, p, t, s must all be >= 1")
    hitters = hitting_set(g, 2 * p)
    levels, store, trees = tz_build(g, t, hitters, derive_seed(seed, "tz"))
    pruned = {}
    for w in range(g.n):
        pruned[w] = prune_tree(trees.tree(w), hitters.member_set, p)
    covers = []
    for i in range(1, s + 1):
        rho = float(3 * p) ** (i / s)
        cap = iroot((3 * p) ** i, s)
        covers.append(build_cover_deterministic(g, rho, k, cap=cap))
    return PrunedOracle(
        n=g.n,
        k=k,
        p=p,
        t=t,
        s=s,
        seed=seed,
        levels=levels,
        store=store,
        hitters=hitters,
        pruned=pruned,
        covers=covers,
        g=g,
    )


def build_oracle_auto(g: Graph, k: int, eps: float, seed: int = 0) -> PrunedOracle:
    """Convenience entry point: t=k, p=ceil(n**(1/k)), s=ceil(1/eps)."""
    if eps <= 0 or eps > 1:
        raise ValueError("eps must be in (0, 1]")
    p = max(1, ceil_root(max(g.n, 1), k))
    s = math.ceil(1.0 / eps)
    return build_oracle(g, k, p, k, s, seed)
