"""Compact labeled routing over the distance-labeling covers.

Each cover tree gets one DFS numbering (children in ascending vertex
id). A vertex's routing table keeps one interval record per containing
tree; its label keeps one record per scale, for the tree it is padded
in. Forwarding is interval routing: climb while the target interval is
outside your own, then descend into the unique child whose interval
contains it.

The forwarding decision reads only the current vertex's own record, the
target's label entry, and the one-record interval labels of the tree
neighbors (the port-label model), so per-vertex state stays small.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .errors import UnreachableError
from .graphs import Graph, Path
from .labeling import LabelingScheme, build_labeling
from .seeds import derive_seed

__all__ = [
    "DELIVERED",
    "TreeRouteInfo",
    "RoutingTable",
    "RoutingLabel",
    "RouteResult",
    "RoutingScheme",
    "build_routing",
    "routing_from_labeling",
    "route_step",
    "route",
]

DELIVERED = "DELIVERED"


@dataclass(frozen=True)
class TreeRouteInfo:
    gid: int
    tin: int
    tout: int
    parent: int  # -1 at the tree root
    dist: int


@dataclass
class RoutingTable:
    v: int
    by_scale: list  # per scale: {gid: TreeRouteInfo}

    def record_count(self) -> int:
        return sum(len(d) for d in self.by_scale)

    def find(self, gid: int):
        for d in self.by_scale:
            if gid in d:
                return d[gid]
        return None


@dataclass
class RoutingLabel:
    v: int
    scheme_id: int
    entries: list  # per scale: (gid, tin, tout, dist_to_root)

    def record_count(self) -> int:
        # one id record plus one interval record per scale
        return 2 * len(self.entries)

    def entry_for(self, gid: int):
        for e in self.entries:
            if e[0] == gid:
                return e
        return None


@dataclass
class RouteResult:
    delivered: bool
    path: Path
    hops: int


class _TreeNav:
    """Full interval knowledge of one tree, held by the simulator so it
    can hand out neighbor port labels; no vertex stores this."""

    def __init__(self, members, tin, tout, parent, dist, index):
        self.members = members
        self.tin = tin
        self.tout = tout
        self.parent = parent
        self.dist = dist
        self.index = index  # vertex -> local position
        self.children = {}
        for i, v in enumerate(members):
            p = parent[i]
            if p >= 0:
                self.children.setdefault(p, []).append(v)

    def __contains__(self, v):
        return v in self.index

    def ports(self, v):
        out = []
        for c in self.children.get(v, ()):
            j = self.index[c]
            out.append((c, self.tin[j], self.tout[j]))
        return out


def _tree_intervals(spt):
    """Preorder DFS numbers with contiguous subtrees; children visited
    in ascending vertex id."""
    members = [int(x) for x in spt.members]
    dist = [int(x) for x in spt.dist]
    parent = [int(x) for x in spt.parent]
    m = len(members)
    index = {v: i for i, v in enumerate(members)}
    root_i = index[spt.root]
    children = [[] for _ in range(m)]
    for i, v in enumerate(members):
        if v != spt.root:
            children[index[parent[i]]].append(i)
    size = [1] * m
    for i in sorted(range(m), key=lambda j: -dist[j]):
        if members[i] != spt.root:
            size[index[parent[i]]] += size[i]
    tin = [0] * m
    stack = [root_i]
    while stack:
        i = stack.pop()
        off = tin[i] + 1
        for c in children[i]:
            tin[c] = off
            off += size[c]
        stack.extend(children[i])
    tout = [tin[i] + size[i] - 1 for i in range(m)]
    par_v = [parent[i] if members[i] != spt.root else -1 for i in range(m)]
    return _TreeNav(members, tin, tout, par_v, dist, index)


@dataclass
class RoutingScheme:
    scheme_id: int
    n: int
    k: int
    q: int
    tables: list
    labels: list
    navs: dict = field(repr=False)
    construction: str = "deterministic"
    seed: int = 0

    def label_of(self, v: int) -> RoutingLabel:
        return self.labels[v]

    def table_of(self, v: int) -> RoutingTable:
        return self.tables[v]


def routing_from_labeling(scheme: LabelingScheme) -> RoutingScheme:
    n, k, q = scheme.n, scheme.k, scheme.q
    navs = {}
    tables = [RoutingTable(v, [dict() for _ in range(q + 1)]) for v in range(n)]
    for i, cover in enumerate(scheme.covers):
        off = scheme.offsets[i]
        for cl in cover.clusters:
            gid = off + cl.id
            nav = _tree_intervals(cl.spt)
            navs[gid] = nav
            for j, v in enumerate(nav.members):
                tables[v].by_scale[i][gid] = TreeRouteInfo(
                    gid, nav.tin[j], nav.tout[j], nav.parent[j], nav.dist[j]
                )
    rid = derive_seed(scheme.scheme_id, "routing")
    labels = []
    for v in range(n):
        entries = []
        for i in range(q + 1):
            gid = scheme.labels[v].padded[i]
            rec = tables[v].by_scale[i][gid]
            entries.append((gid, rec.tin, rec.tout, rec.dist))
        labels.append(RoutingLabel(v, rid, entries))
    bound = 2 * k * (q + 1) + (q + 1)
    for tb in tables:
        assert tb.record_count() <= bound, "routing table too large"
    for lb in labels:
        assert lb.record_count() <= 2 * (q + 1), "routing label too large"
    return RoutingScheme(
        scheme_id=rid,
        n=n,
        k=k,
        q=q,
        tables=tables,
        labels=labels,
        navs=navs,
        construction=scheme.construction,
        seed=scheme.seed,
    )


def build_routing(g: Graph, k: int, randomized: bool = False,
                  seed: int = 0) -> RoutingScheme:
    return routing_from_labeling(build_labeling(g, k, randomized, seed))


def _decide(own, target_tin: int, ports):
    """Forwarding rule. Receives exactly: the current vertex's record
    (tin, tout, parent), the target's DFS number, and neighbor port
    labels (vertex, tin, tout). Nothing else is available."""
    tin, tout, parent = own
    if not (tin <= target_tin <= tout):
        return parent
    for c, ctin, ctout in ports:
        if ctin <= target_tin <= ctout:
            return c
    raise AssertionError("interval routing found no containing child")


def route_step(scheme: RoutingScheme, u: int, target_label: RoutingLabel,
               gid: int):
    """One forwarding decision in the active tree: DELIVERED, or the
    next vertex."""
    nav = scheme.navs.get(gid)
    if nav is None or u not in nav:
        raise ValueError(f"vertex {u} is not in tree {gid}")
    if u == target_label.v:
        return DELIVERED
    entry = target_label.entry_for(gid)
    if entry is None:
        raise ValueError(f"target label has no entry for tree {gid}")
    rec = scheme.tables[u].find(gid)
    return _decide((rec.tin, rec.tout, rec.parent), entry[1], nav.ports(u))


def route(scheme: RoutingScheme, u: int, target_label: RoutingLabel) -> RouteResult:
    """Full delivery simulation: pick the smallest scale whose padded
    tree of the target contains the source, then follow route_step."""
    if target_label.scheme_id != scheme.scheme_id:
        raise ValueError("label does not belong to this scheme")
    v = target_label.v
    gid = None
    for i in range(scheme.q + 1):
        cand = target_label.entries[i][0]
        if scheme.tables[u].by_scale[i].get(cand) is not None:
            gid = cand
            break
    if gid is None:
        raise UnreachableError(f"{u} and {v} share no cover tree")
    nav = scheme.navs[gid]
    hops = [u]
    length = 0
    cur = u
    limit = 2 * len(nav.members) + 2
    while True:
        nxt = route_step(scheme, cur, target_label, gid)
        if nxt == DELIVERED:
            break
        assert len(hops) <= limit, "routing loop"
        length += abs(nav.dist[nav.index[cur]] - nav.dist[nav.index[nxt]])
        hops.append(nxt)
        cur = nxt
    return RouteResult(delivered=True, path=Path(hops, length), hops=len(hops) - 1)
