"""Pure-Python graph kernels (fallback backend).

Mirrors the compiled `compactpaths._kernels` extension: same functions,
same CSR array conventions, identical outputs. Selected by
`compactpaths._backend` when the extension is unavailable or when
COMPACTPATHS_BACKEND=pure.

Conventions:
  * adjacency is CSR: indptr int64[n+1], nbrs/wts int64[2m], neighbor
    lists sorted ascending (the Graph class guarantees this);
  * dist uses the INF sentinel for unreachable vertices;
  * `cap` truncates searches: a vertex is reached iff dist <= cap;
  * parent[v] is the smallest-id neighbor on a shortest path to the root.
"""
from __future__ import annotations

import heapq
from collections import deque

import numpy as np

from .numutil import INF


def sssp(n, indptr, nbrs, wts, unit, root, cap, mask):
    """Truncated single-source shortest paths.

    Returns (dist, parent, visited): full-length int64 arrays plus the
    sorted array of reached vertices. mask (uint8 or None) restricts the
    search to mask[v] != 0; the root must be allowed.
    """
    dist = np.full(n, INF, dtype=np.int64)
    parent = np.full(n, -1, dtype=np.int64)
    dist[root] = 0
    parent[root] = root
    reached = [root]
    if unit:
        q = deque([root])
        while q:
            u = q.popleft()
            du = dist[u]
            if du >= cap:
                continue
            for i in range(indptr[u], indptr[u + 1]):
                v = nbrs[i]
                if mask is not None and not mask[v]:
                    continue
                if dist[v] == INF:
                    dist[v] = du + 1
                    parent[v] = u
                    reached.append(v)
                    q.append(v)
    else:
        h = [(0, root)]
        while h:
            du, u = heapq.heappop(h)
            if du != dist[u]:
                continue
            for i in range(indptr[u], indptr[u + 1]):
                v = nbrs[i]
                if mask is not None and not mask[v]:
                    continue
                nd = du + wts[i]
                if nd > cap:
                    continue
                if nd < dist[v]:
                    if dist[v] == INF:
                        reached.append(v)
                    dist[v] = nd
                    heapq.heappush(h, (nd, v))
    visited = np.array(sorted(reached), dtype=np.int64)
    # canonical tree: smallest-id predecessor among tight neighbors
    for v in visited:
        if v == root:
            continue
        dv = dist[v]
        best = -1
        for i in range(indptr[v], indptr[v + 1]):
            u = nbrs[i]
            w = 1 if unit else wts[i]
            if dist[u] != INF and dist[u] + w == dv:
                if best == -1 or u < best:
                    best = u
        parent[v] = best
    return dist, parent, visited


def multi_source_bfs(n, indptr, nbrs, sources):
    """Unit-weight BFS from a vertex set.

    Returns (dist, pivot) where pivot[v] is the smallest-id nearest
    source (-1 if unreachable).
    """
    dist = np.full(n, INF, dtype=np.int64)
    pivot = np.full(n, -1, dtype=np.int64)
    order = []
    q = deque()
    for s in sorted(int(s) for s in sources):
        dist[s] = 0
        pivot[s] = s
        order.append(s)
        q.append(s)
    while q:
        u = q.popleft()
        du = dist[u]
        for i in range(indptr[u], indptr[u + 1]):
            v = nbrs[i]
            if dist[v] == INF:
                dist[v] = du + 1
                order.append(v)
                q.append(v)
    # discovery order is layer by layer, so predecessors are final here
    for v in order:
        dv = dist[v]
        if dv == 0:
            continue
        best = -1
        for i in range(indptr[v], indptr[v + 1]):
            u = nbrs[i]
            if dist[u] == dv - 1:
                p = pivot[u]
                if best == -1 or p < best:
                    best = p
        pivot[v] = best
    return dist, pivot


def balls(n, indptr, nbrs, wts, unit, cap, centers):
    """Radius-cap balls around each center, as a CSR pair.

    Returns (bind, bverts); ball lists are in discovery order.
    """
    nc = len(centers)
    bind = np.zeros(nc + 1, dtype=np.int64)
    parts = []
    stamp = np.zeros(n, dtype=np.int64)
    dval = np.zeros(n, dtype=np.int64)
    for ci in range(nc):
        c = int(centers[ci])
        tag = ci + 1
        stamp[c] = tag
        dval[c] = 0
        out = [c]
        if unit:
            q = deque([c])
            while q:
                u = q.popleft()
                du = dval[u]
                if du >= cap:
                    continue
                for i in range(indptr[u], indptr[u + 1]):
                    v = nbrs[i]
                    if stamp[v] != tag:
                        stamp[v] = tag
                        dval[v] = du + 1
                        out.append(v)
                        q.append(v)
        else:
            h = [(0, c)]
            while h:
                du, u = heapq.heappop(h)
                if stamp[u] == tag and du != dval[u]:
                    continue
                for i in range(indptr[u], indptr[u + 1]):
                    v = nbrs[i]
                    nd = du + wts[i]
                    if nd > cap:
                        continue
                    if stamp[v] != tag or nd < dval[v]:
                        if stamp[v] != tag:
                            out.append(v)
                        stamp[v] = tag
                        dval[v] = nd
                        heapq.heappush(h, (nd, v))
        parts.append(np.array(out, dtype=np.int64))
        bind[ci + 1] = bind[ci] + len(out)
    bverts = np.concatenate(parts) if parts else np.zeros(0, dtype=np.int64)
    return bind, bverts


def region_grow(n, bind, bverts, centers, vind, vballs, thresh_mult):
    """Grow clusters over a ball system until the boundary stops expanding.

    A phase scans live balls in ascending center order. Each cluster
    starts from the smallest-center live ball and repeatedly absorbs its
    boundary (all live balls meeting the covered set) while the boundary
    is at least thresh_mult times the current set; absorbed balls leave
    the system for good, boundary balls sit out the rest of the phase.

    (vind, vballs) is the inverted index vertex -> balls containing it.
    Returns (cl_indptr, cl_members, cl_roots, ball_cluster, phases,
    max_grow_iters); member lists sorted ascending, roots are seed ball
    centers, ball_cluster[b] is the cluster that absorbed ball b.
    """
    nb = len(centers)
    status = np.zeros(nb, dtype=np.int8)  # 0 live, 1 out this phase, 2 absorbed
    ball_cluster = np.full(nb, -1, dtype=np.int64)
    covered_stamp = np.zeros(n, dtype=np.int64)
    bnd_stamp = np.zeros(nb, dtype=np.int64)
    members_parts = []
    roots = []
    indptr_out = [0]
    in_u = nb
    phases = 0
    max_iters = 0
    serial = 0
    while in_u > 0:
        phases += 1
        for b0 in range(nb):
            if status[b0] != 0:
                continue
            serial += 1
            bnd = [b0]
            bnd_stamp[b0] = serial
            covered = []

            def absorb(b):
                for j in range(bind[b], bind[b + 1]):
                    v = bverts[j]
                    if covered_stamp[v] == serial:
                        continue
                    covered_stamp[v] = serial
                    covered.append(v)
                    for t in range(vind[v], vind[v + 1]):
                        nb2 = vballs[t]
                        if status[nb2] == 0 and bnd_stamp[nb2] != serial:
                            bnd_stamp[nb2] = serial
                            bnd.append(nb2)

            absorb(b0)
            s_count = 1
            iters = 0
            while True:
                b_count = len(bnd)
                if b_count > s_count and b_count >= s_count * thresh_mult:
                    iters += 1
                    for j in range(s_count, b_count):
                        absorb(bnd[j])
                    s_count = b_count
                else:
                    break
            if iters > max_iters:
                max_iters = iters
            cid = len(roots)
            for j in range(s_count):
                status[bnd[j]] = 2
                ball_cluster[bnd[j]] = cid
            for j in range(s_count, len(bnd)):
                status[bnd[j]] = 1
            in_u -= s_count
            roots.append(int(centers[b0]))
            members_parts.append(np.sort(np.array(covered, dtype=np.int64)))
            indptr_out.append(indptr_out[-1] + len(covered))
        status[status == 1] = 0
    cl_members = (
        np.concatenate(members_parts) if members_parts else np.zeros(0, dtype=np.int64)
    )
    return (
        np.array(indptr_out, dtype=np.int64),
        cl_members,
        np.array(roots, dtype=np.int64),
        ball_cluster,
        phases,
        max_iters,
    )


def carve(n, indptr, nbrs, wts, unit, radii):
    """Sequential ball carving: smallest uncovered id becomes a center and
    claims its truncated ball inside the uncovered remainder.

    Returns (cell_of, centers); cell ids follow carve order.
    """
    cell_of = np.full(n, -1, dtype=np.int64)
    centers = []
    dval = np.zeros(n, dtype=np.int64)
    for v in range(n):
        if cell_of[v] != -1:
            continue
        cid = len(centers)
        centers.append(v)
        cap = radii[v]
        cell_of[v] = cid
        dval[v] = 0
        if unit:
            q = deque([v])
            while q:
                u = q.popleft()
                du = dval[u]
                if du >= cap:
                    continue
                for i in range(indptr[u], indptr[u + 1]):
                    x = nbrs[i]
                    if cell_of[x] == -1:
                        cell_of[x] = cid
                        dval[x] = du + 1
                        q.append(x)
        else:
            h = [(0, v)]
            dmap = {v: 0}
            while h:
                du, u = heapq.heappop(h)
                if du != dmap.get(u):
                    continue
                for i in range(indptr[u], indptr[u + 1]):
                    x = nbrs[i]
                    if cell_of[x] != -1 and x != v and cell_of[x] != cid:
                        continue
                    nd = du + wts[i]
                    if nd > cap:
                        continue
                    if cell_of[x] == -1 or (cell_of[x] == cid and nd < dmap.get(x, INF)):
                        cell_of[x] = cid
                        dmap[x] = nd
                        heapq.heappush(h, (nd, x))
    return cell_of, np.array(centers, dtype=np.int64)


def tz_clusters(n, indptr, nbrs, lv, bounds):
    """Landmark clusters for every vertex, with tree structure.

    bounds is a (levels+1, n) int64 matrix of distances to each landmark
    level; the cluster of w expands u exactly while d(w,u) <
    bounds[lv[w]+1][u]. Unit weights only. Returns CSR arrays
    (cind, cverts, cdist, cparent) with members in BFS discovery order.
    """
    stamp = np.zeros(n, dtype=np.int64)
    dval = np.zeros(n, dtype=np.int64)
    cind = np.zeros(n + 1, dtype=np.int64)
    verts_parts = []
    dist_parts = []
    parent_parts = []
    for w in range(n):
        row = bounds[lv[w] + 1]
        tag = w + 1
        stamp[w] = tag
        dval[w] = 0
        out = [w]
        q = deque([w])
        while q:
            u = q.popleft()
            du = dval[u]
            for i in range(indptr[u], indptr[u + 1]):
                v = nbrs[i]
                if stamp[v] == tag:
                    continue
                nd = du + 1
                if nd < row[v]:
                    stamp[v] = tag
                    dval[v] = nd
                    out.append(v)
                    q.append(v)
        pout = [w]
        for v in out[1:]:
            dv = dval[v]
            best = -1
            for i in range(indptr[v], indptr[v + 1]):
                u = nbrs[i]
                if stamp[u] == tag and dval[u] + 1 == dv:
                    if best == -1 or u < best:
                        best = u
            pout.append(best)
        verts_parts.append(np.array(out, dtype=np.int64))
        dist_parts.append(dval[verts_parts[-1]].copy())
        parent_parts.append(np.array(pout, dtype=np.int64))
        cind[w + 1] = cind[w] + len(out)
    empty = np.zeros(0, dtype=np.int64)
    cverts = np.concatenate(verts_parts) if verts_parts else empty
    cdist = np.concatenate(dist_parts) if dist_parts else empty
    cparent = np.concatenate(parent_parts) if parent_parts else empty
    return cind, cverts, cdist, cparent


def _restricted_ecc(n, indptr, nbrs, wts, unit, root, allowed, tag, dval):
    """Eccentricity of root inside the stamped vertex set. Returns
    (ecc, count, dist_snapshot) where dist is valid for stamp==tag2."""
    # allowed[v] == tag marks the subgraph
    dist = {root: 0}
    ecc = 0
    cnt = 1
    if unit:
        q = deque([root])
        while q:
            u = q.popleft()
            du = dist[u]
            for i in range(indptr[u], indptr[u + 1]):
                v = nbrs[i]
                if allowed[v] != tag or v in dist:
                    continue
                dist[v] = du + 1
                if du + 1 > ecc:
                    ecc = du + 1
                cnt += 1
                q.append(v)
    else:
        h = [(0, root)]
        while h:
            du, u = heapq.heappop(h)
            if du != dist.get(u):
                continue
            for i in range(indptr[u], indptr[u + 1]):
                v = nbrs[i]
                if allowed[v] != tag:
                    continue
                nd = du + wts[i]
                if nd < dist.get(v, INF):
                    dist[v] = nd
                    heapq.heappush(h, (nd, v))
        cnt = len(dist)
        ecc = max(dist.values())
    return ecc, cnt, dist


def induced_diameter(n, indptr, nbrs, wts, unit, members):
    """Exact diameter of the subgraph induced by `members`.

    Iterative sweep: eccentricities from the deepest BFS levels first,
    stopping once the lower bound certifies the rest. INF if the induced
    subgraph is disconnected.
    """
    m = len(members)
    if m <= 1:
        return 0
    allowed = np.zeros(n, dtype=np.int64)
    tag = 1
    for v in members:
        allowed[v] = tag
    root = int(members[0])
    ecc0, cnt, dist0 = _restricted_ecc(n, indptr, nbrs, wts, unit, root, allowed, tag, None)
    if cnt != m:
        return INF
    lb = ecc0
    order = sorted(members, key=lambda v: (-dist0[int(v)], int(v)))
    for v in order:
        lvl = dist0[int(v)]
        if lb >= 2 * lvl:
            break
        ecc_v, _, _ = _restricted_ecc(n, indptr, nbrs, wts, unit, int(v), allowed, tag, None)
        if ecc_v > lb:
            lb = ecc_v
    return lb
