# cython: language_level=3
"""Compiled graph kernels.

Must stay output-identical to `compactpaths._kernels_py` (the pure
fallback): same CSR conventions, same traversal orders, same canonical
tie-breaking. Any change here needs the matching change there.
"""

import numpy as np

cimport cython
cimport numpy as cnp
from libc.stdlib cimport free, malloc, realloc

cnp.import_array()

cdef long long INF = <long long>1 << 62

ctypedef cnp.int64_t i64
ctypedef cnp.uint8_t u8


# binary heap over (key, val) pairs with heapq's lexicographic order
cdef struct Heap:
    long long *key
    long long *val
    Py_ssize_t size
    Py_ssize_t cap


cdef inline void heap_init(Heap *h, Py_ssize_t cap):
    h.key = <long long *>malloc(cap * sizeof(long long))
    h.val = <long long *>malloc(cap * sizeof(long long))
    h.size = 0
    h.cap = cap


cdef inline void heap_free(Heap *h):
    free(h.key)
    free(h.val)


cdef inline bint heap_less(Heap *h, Py_ssize_t a, Py_ssize_t b):
    if h.key[a] != h.key[b]:
        return h.key[a] < h.key[b]
    return h.val[a] < h.val[b]


cdef inline void heap_swap(Heap *h, Py_ssize_t a, Py_ssize_t b):
    cdef long long tk = h.key[a]
    cdef long long tv = h.val[a]
    h.key[a] = h.key[b]
    h.val[a] = h.val[b]
    h.key[b] = tk
    h.val[b] = tv


cdef inline void heap_push(Heap *h, long long key, long long val):
    cdef Py_ssize_t i, p
    if h.size == h.cap:
        h.cap *= 2
        h.key = <long long *>realloc(h.key, h.cap * sizeof(long long))
        h.val = <long long *>realloc(h.val, h.cap * sizeof(long long))
    i = h.size
    h.key[i] = key
    h.val[i] = val
    h.size += 1
    while i > 0:
        p = (i - 1) >> 1
        if heap_less(h, i, p):
            heap_swap(h, i, p)
            i = p
        else:
            break


cdef inline void heap_pop(Heap *h, long long *key, long long *val):
    cdef Py_ssize_t i = 0, l, r, sm
    key[0] = h.key[0]
    val[0] = h.val[0]
    h.size -= 1
    if h.size > 0:
        h.key[0] = h.key[h.size]
        h.val[0] = h.val[h.size]
        while True:
            l = 2 * i + 1
            r = l + 1
            sm = i
            if l < h.size and heap_less(h, l, sm):
                sm = l
            if r < h.size and heap_less(h, r, sm):
                sm = r
            if sm == i:
                break
            heap_swap(h, i, sm)
            i = sm


@cython.boundscheck(False)
@cython.wraparound(False)
def sssp(Py_ssize_t n, i64[:] indptr, i64[:] nbrs, i64[:] wts, bint unit,
         Py_ssize_t root, long long cap, mask):
    """Truncated single-source shortest paths; see the pure twin."""
    cdef cnp.ndarray[i64, ndim=1] dist_a = np.full(n, INF, dtype=np.int64)
    cdef cnp.ndarray[i64, ndim=1] parent_a = np.full(n, -1, dtype=np.int64)
    cdef i64[:] dist = dist_a
    cdef i64[:] parent = parent_a
    cdef cnp.ndarray[i64, ndim=1] reach_a = np.empty(n, dtype=np.int64)
    cdef i64[:] reached = reach_a
    cdef Py_ssize_t nreach = 0
    cdef bint use_mask = mask is not None
    cdef u8[:] mk
    if use_mask:
        mk = mask
    else:
        mk = np.empty(0, dtype=np.uint8)
    cdef cnp.ndarray[i64, ndim=1] q_a
    cdef i64[:] q
    cdef Py_ssize_t head, tail, i
    cdef long long u, v, du, nd, w, dv, best
    cdef Heap h

    dist[root] = 0
    parent[root] = root
    reached[nreach] = root
    nreach += 1
    if unit:
        q_a = np.empty(n, dtype=np.int64)
        q = q_a
        head = 0
        tail = 0
        q[tail] = root
        tail += 1
        while head < tail:
            u = q[head]
            head += 1
            du = dist[u]
            if du >= cap:
                continue
            for i in range(indptr[u], indptr[u + 1]):
                v = nbrs[i]
                if use_mask and mk[v] == 0:
                    continue
                if dist[v] == INF:
                    dist[v] = du + 1
                    parent[v] = u
                    reached[nreach] = v
                    nreach += 1
                    q[tail] = v
                    tail += 1
    else:
        heap_init(&h, 64)
        heap_push(&h, 0, root)
        while h.size > 0:
            heap_pop(&h, &du, &u)
            if du != dist[u]:
                continue
            for i in range(indptr[u], indptr[u + 1]):
                v = nbrs[i]
                if use_mask and mk[v] == 0:
                    continue
                nd = du + wts[i]
                if nd > cap:
                    continue
                if nd < dist[v]:
                    if dist[v] == INF:
                        reached[nreach] = v
                        nreach += 1
                    dist[v] = nd
                    heap_push(&h, nd, v)
        heap_free(&h)
    cdef cnp.ndarray[i64, ndim=1] visited = np.sort(reach_a[:nreach])
    cdef i64[:] vis = visited
    cdef Py_ssize_t i2
    for i in range(vis.shape[0]):
        v = vis[i]
        if v == root:
            continue
        dv = dist[v]
        best = -1
        for i2 in range(indptr[v], indptr[v + 1]):
            u = nbrs[i2]
            w = 1 if unit else wts[i2]
            if dist[u] != INF and dist[u] + w == dv:
                if best == -1 or u < best:
                    best = u
        parent[v] = best
    return dist_a, parent_a, visited


@cython.boundscheck(False)
@cython.wraparound(False)
def multi_source_bfs(Py_ssize_t n, i64[:] indptr, i64[:] nbrs, sources):
    """Unit BFS from a set; pivot[v] = smallest-id nearest source."""
    cdef cnp.ndarray[i64, ndim=1] dist_a = np.full(n, INF, dtype=np.int64)
    cdef cnp.ndarray[i64, ndim=1] piv_a = np.full(n, -1, dtype=np.int64)
    cdef i64[:] dist = dist_a
    cdef i64[:] pivot = piv_a
    cdef cnp.ndarray[i64, ndim=1] src = np.sort(np.asarray(sources, dtype=np.int64))
    cdef i64[:] sv = src
    cdef cnp.ndarray[i64, ndim=1] order_a = np.empty(n, dtype=np.int64)
    cdef i64[:] order = order_a
    cdef cnp.ndarray[i64, ndim=1] q_a = np.empty(n, dtype=np.int64)
    cdef i64[:] q = q_a
    cdef Py_ssize_t head = 0, tail = 0, norder = 0, i, j
    cdef long long u, v, du, dv, best, p
    for i in range(sv.shape[0]):
        u = sv[i]
        dist[u] = 0
        pivot[u] = u
        order[norder] = u
        norder += 1
        q[tail] = u
        tail += 1
    while head < tail:
        u = q[head]
        head += 1
        du = dist[u]
        for i in range(indptr[u], indptr[u + 1]):
            v = nbrs[i]
            if dist[v] == INF:
                dist[v] = du + 1
                order[norder] = v
                norder += 1
                q[tail] = v
                tail += 1
    for j in range(norder):
        v = order[j]
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
    return dist_a, piv_a


@cython.boundscheck(False)
@cython.wraparound(False)
def balls(Py_ssize_t n, i64[:] indptr, i64[:] nbrs, i64[:] wts, bint unit,
          long long cap, centers):
    """Radius-cap balls per center, CSR, discovery order."""
    cdef cnp.ndarray[i64, ndim=1] cts = np.asarray(centers, dtype=np.int64)
    cdef i64[:] cv = cts
    cdef Py_ssize_t nc = cv.shape[0]
    cdef cnp.ndarray[i64, ndim=1] bind_a = np.zeros(nc + 1, dtype=np.int64)
    cdef i64[:] bind = bind_a
    cdef cnp.ndarray[i64, ndim=1] stamp_a = np.zeros(n, dtype=np.int64)
    cdef cnp.ndarray[i64, ndim=1] dval_a = np.zeros(n, dtype=np.int64)
    cdef i64[:] stamp = stamp_a
    cdef i64[:] dval = dval_a
    cdef cnp.ndarray[i64, ndim=1] out_a = np.empty(n, dtype=np.int64)
    cdef i64[:] out = out_a
    cdef cnp.ndarray[i64, ndim=1] q_a = np.empty(n, dtype=np.int64)
    cdef i64[:] q = q_a
    cdef list parts = []
    cdef Py_ssize_t ci, head, tail, nout, i
    cdef long long c, tag, u, v, du, nd
    cdef Heap h
    for ci in range(nc):
        c = cv[ci]
        tag = ci + 1
        stamp[c] = tag
        dval[c] = 0
        out[0] = c
        nout = 1
        if unit:
            head = 0
            tail = 0
            q[tail] = c
            tail += 1
            while head < tail:
                u = q[head]
                head += 1
                du = dval[u]
                if du >= cap:
                    continue
                for i in range(indptr[u], indptr[u + 1]):
                    v = nbrs[i]
                    if stamp[v] != tag:
                        stamp[v] = tag
                        dval[v] = du + 1
                        out[nout] = v
                        nout += 1
                        q[tail] = v
                        tail += 1
        else:
            heap_init(&h, 64)
            heap_push(&h, 0, c)
            while h.size > 0:
                heap_pop(&h, &du, &u)
                if stamp[u] == tag and du != dval[u]:
                    continue
                for i in range(indptr[u], indptr[u + 1]):
                    v = nbrs[i]
                    nd = du + wts[i]
                    if nd > cap:
                        continue
                    if stamp[v] != tag or nd < dval[v]:
                        if stamp[v] != tag:
                            out[nout] = v
                            nout += 1
                        stamp[v] = tag
                        dval[v] = nd
                        heap_push(&h, nd, v)
            heap_free(&h)
        parts.append(out_a[:nout].copy())
        bind[ci + 1] = bind[ci] + nout
    if parts:
        bverts = np.concatenate(parts)
    else:
        bverts = np.zeros(0, dtype=np.int64)
    return bind_a, bverts


@cython.boundscheck(False)
@cython.wraparound(False)
def region_grow(Py_ssize_t n, i64[:] bind, i64[:] bverts, i64[:] centers,
                i64[:] vind, i64[:] vballs, double thresh_mult):
    """Grow clusters over a ball system; see the pure twin for the exact
    absorb/boundary contract."""
    cdef Py_ssize_t nb = centers.shape[0]
    cdef cnp.ndarray[cnp.int8_t, ndim=1] status_a = np.zeros(nb, dtype=np.int8)
    cdef cnp.int8_t[:] status = status_a
    cdef cnp.ndarray[i64, ndim=1] bc_a = np.full(nb, -1, dtype=np.int64)
    cdef i64[:] ball_cluster = bc_a
    cdef cnp.ndarray[i64, ndim=1] cstamp_a = np.zeros(n, dtype=np.int64)
    cdef i64[:] covered_stamp = cstamp_a
    cdef cnp.ndarray[i64, ndim=1] bstamp_a = np.zeros(nb, dtype=np.int64)
    cdef i64[:] bnd_stamp = bstamp_a
    cdef cnp.ndarray[i64, ndim=1] bnd_a = np.empty(nb, dtype=np.int64)
    cdef i64[:] bnd = bnd_a
    cdef cnp.ndarray[i64, ndim=1] cov_a = np.empty(n, dtype=np.int64)
    cdef i64[:] covered = cov_a
    cdef list members_parts = []
    cdef list roots = []
    cdef list indptr_out = [0]
    cdef Py_ssize_t in_u = nb
    cdef long long phases = 0, max_iters = 0, serial = 0
    cdef Py_ssize_t b0, j, t, s_count, b_count, iters, cid, ncov, nbnd, absorb_i
    cdef long long b, v, nb2

    while in_u > 0:
        phases += 1
        for b0 in range(nb):
            if status[b0] != 0:
                continue
            serial += 1
            bnd[0] = b0
            nbnd = 1
            bnd_stamp[b0] = serial
            ncov = 0
            # absorb(b0)
            absorb_i = 0
            b = b0
            for j in range(bind[b], bind[b + 1]):
                v = bverts[j]
                if covered_stamp[v] == serial:
                    continue
                covered_stamp[v] = serial
                covered[ncov] = v
                ncov += 1
                for t in range(vind[v], vind[v + 1]):
                    nb2 = vballs[t]
                    if status[nb2] == 0 and bnd_stamp[nb2] != serial:
                        bnd_stamp[nb2] = serial
                        bnd[nbnd] = nb2
                        nbnd += 1
            s_count = 1
            iters = 0
            while True:
                b_count = nbnd
                if b_count > s_count and b_count >= s_count * thresh_mult:
                    iters += 1
                    for absorb_i in range(s_count, b_count):
                        b = bnd[absorb_i]
                        for j in range(bind[b], bind[b + 1]):
                            v = bverts[j]
                            if covered_stamp[v] == serial:
                                continue
                            covered_stamp[v] = serial
                            covered[ncov] = v
                            ncov += 1
                            for t in range(vind[v], vind[v + 1]):
                                nb2 = vballs[t]
                                if status[nb2] == 0 and bnd_stamp[nb2] != serial:
                                    bnd_stamp[nb2] = serial
                                    bnd[nbnd] = nb2
                                    nbnd += 1
                    s_count = b_count
                else:
                    break
            if iters > max_iters:
                max_iters = iters
            cid = len(roots)
            for j in range(s_count):
                status[bnd[j]] = 2
                ball_cluster[bnd[j]] = cid
            for j in range(s_count, nbnd):
                status[bnd[j]] = 1
            in_u -= s_count
            roots.append(int(centers[b0]))
            members_parts.append(np.sort(cov_a[:ncov]))
            indptr_out.append(indptr_out[len(indptr_out) - 1] + ncov)
        for j in range(nb):
            if status[j] == 1:
                status[j] = 0
    if members_parts:
        cl_members = np.concatenate(members_parts)
    else:
        cl_members = np.zeros(0, dtype=np.int64)
    return (
        np.array(indptr_out, dtype=np.int64),
        cl_members,
        np.array(roots, dtype=np.int64),
        bc_a,
        int(phases),
        int(max_iters),
    )


@cython.boundscheck(False)
@cython.wraparound(False)
def carve(Py_ssize_t n, i64[:] indptr, i64[:] nbrs, i64[:] wts, bint unit,
          i64[:] radii):
    """Sequential ball carving into disjoint cells."""
    cdef cnp.ndarray[i64, ndim=1] cell_a = np.full(n, -1, dtype=np.int64)
    cdef i64[:] cell_of = cell_a
    cdef list centers = []
    cdef cnp.ndarray[i64, ndim=1] dval_a = np.zeros(n, dtype=np.int64)
    cdef i64[:] dval = dval_a
    # stamped distance map for the weighted branch
    cdef cnp.ndarray[i64, ndim=1] dstamp_a = np.zeros(n, dtype=np.int64)
    cdef i64[:] dstamp = dstamp_a
    cdef cnp.ndarray[i64, ndim=1] q_a = np.empty(n, dtype=np.int64)
    cdef i64[:] q = q_a
    cdef Py_ssize_t v0, head, tail, i
    cdef long long cid, cap, u, x, du, nd, tag
    cdef Heap h
    for v0 in range(n):
        if cell_of[v0] != -1:
            continue
        cid = len(centers)
        centers.append(v0)
        cap = radii[v0]
        cell_of[v0] = cid
        dval[v0] = 0
        if unit:
            head = 0
            tail = 0
            q[tail] = v0
            tail += 1
            while head < tail:
                u = q[head]
                head += 1
                du = dval[u]
                if du >= cap:
                    continue
                for i in range(indptr[u], indptr[u + 1]):
                    x = nbrs[i]
                    if cell_of[x] == -1:
                        cell_of[x] = cid
                        dval[x] = du + 1
                        q[tail] = x
                        tail += 1
        else:
            tag = cid + 1
            heap_init(&h, 64)
            heap_push(&h, 0, v0)
            dstamp[v0] = tag
            dval[v0] = 0
            while h.size > 0:
                heap_pop(&h, &du, &u)
                if dstamp[u] != tag or du != dval[u]:
                    continue
                for i in range(indptr[u], indptr[u + 1]):
                    x = nbrs[i]
                    if cell_of[x] != -1 and x != v0 and cell_of[x] != cid:
                        continue
                    nd = du + wts[i]
                    if nd > cap:
                        continue
                    if cell_of[x] == -1 or (
                        cell_of[x] == cid and (dstamp[x] != tag or nd < dval[x])
                    ):
                        cell_of[x] = cid
                        dstamp[x] = tag
                        dval[x] = nd
                        heap_push(&h, nd, x)
            heap_free(&h)
    return cell_a, np.array(centers, dtype=np.int64)


@cython.boundscheck(False)
@cython.wraparound(False)
def tz_clusters(Py_ssize_t n, i64[:] indptr, i64[:] nbrs, i64[:] lv,
                i64[:, :] bounds):
    """Landmark clusters with tree structure (unit weights)."""
    cdef cnp.ndarray[i64, ndim=1] stamp_a = np.zeros(n, dtype=np.int64)
    cdef cnp.ndarray[i64, ndim=1] dval_a = np.zeros(n, dtype=np.int64)
    cdef i64[:] stamp = stamp_a
    cdef i64[:] dval = dval_a
    cdef cnp.ndarray[i64, ndim=1] cind_a = np.zeros(n + 1, dtype=np.int64)
    cdef i64[:] cind = cind_a
    cdef cnp.ndarray[i64, ndim=1] out_a = np.empty(n, dtype=np.int64)
    cdef i64[:] out = out_a
    cdef cnp.ndarray[i64, ndim=1] pout_a = np.empty(n, dtype=np.int64)
    cdef i64[:] pout = pout_a
    cdef cnp.ndarray[i64, ndim=1] q_a = np.empty(n, dtype=np.int64)
    cdef i64[:] q = q_a
    cdef list verts_parts = []
    cdef list dist_parts = []
    cdef list parent_parts = []
    cdef Py_ssize_t w, head, tail, nout, i, j
    cdef long long tag, u, v, du, nd, dv, best
    cdef i64[:] row
    for w in range(n):
        row = bounds[lv[w] + 1]
        tag = w + 1
        stamp[w] = tag
        dval[w] = 0
        out[0] = w
        nout = 1
        head = 0
        tail = 0
        q[tail] = w
        tail += 1
        while head < tail:
            u = q[head]
            head += 1
            du = dval[u]
            for i in range(indptr[u], indptr[u + 1]):
                v = nbrs[i]
                if stamp[v] == tag:
                    continue
                nd = du + 1
                if nd < row[v]:
                    stamp[v] = tag
                    dval[v] = nd
                    out[nout] = v
                    nout += 1
                    q[tail] = v
                    tail += 1
        pout[0] = w
        for j in range(1, nout):
            v = out[j]
            dv = dval[v]
            best = -1
            for i in range(indptr[v], indptr[v + 1]):
                u = nbrs[i]
                if stamp[u] == tag and dval[u] + 1 == dv:
                    if best == -1 or u < best:
                        best = u
            pout[j] = best
        verts_parts.append(out_a[:nout].copy())
        dist_parts.append(dval_a[out_a[:nout]])
        parent_parts.append(pout_a[:nout].copy())
        cind[w + 1] = cind[w] + nout
    empty = np.zeros(0, dtype=np.int64)
    cverts = np.concatenate(verts_parts) if verts_parts else empty
    cdist = np.concatenate(dist_parts) if dist_parts else empty
    cparent = np.concatenate(parent_parts) if parent_parts else empty
    return cind_a, cverts, cdist, cparent


@cython.boundscheck(False)
@cython.wraparound(False)
cdef long long _restricted_ecc(Py_ssize_t n, i64[:] indptr, i64[:] nbrs,
                               i64[:] wts, bint unit, long long root,
                               i64[:] allowed, long long tag,
                               i64[:] rstamp, i64[:] rdist, long long rtag,
                               Py_ssize_t *count):
    """Eccentricity of root within the allowed==tag subgraph; rdist is
    valid where rstamp==rtag on return."""
    cdef Py_ssize_t head = 0, tail = 0, i
    cdef long long u, v, du, nd, ecc = 0
    cdef Py_ssize_t cnt = 1
    cdef cnp.ndarray[i64, ndim=1] q_a = np.empty(n, dtype=np.int64)
    cdef i64[:] q = q_a
    cdef Heap h
    rstamp[root] = rtag
    rdist[root] = 0
    if unit:
        q[tail] = root
        tail += 1
        while head < tail:
            u = q[head]
            head += 1
            du = rdist[u]
            for i in range(indptr[u], indptr[u + 1]):
                v = nbrs[i]
                if allowed[v] != tag or rstamp[v] == rtag:
                    continue
                rstamp[v] = rtag
                rdist[v] = du + 1
                if du + 1 > ecc:
                    ecc = du + 1
                cnt += 1
                q[tail] = v
                tail += 1
    else:
        heap_init(&h, 64)
        heap_push(&h, 0, root)
        while h.size > 0:
            heap_pop(&h, &du, &u)
            if rstamp[u] != rtag or du != rdist[u]:
                continue
            for i in range(indptr[u], indptr[u + 1]):
                v = nbrs[i]
                if allowed[v] != tag:
                    continue
                nd = du + wts[i]
                if rstamp[v] != rtag or nd < rdist[v]:
                    if rstamp[v] != rtag:
                        cnt += 1
                    rstamp[v] = rtag
                    rdist[v] = nd
                    heap_push(&h, nd, v)
        heap_free(&h)
        ecc = 0
        for i in range(n):
            if allowed[i] == tag and rstamp[i] == rtag and rdist[i] > ecc:
                ecc = rdist[i]
    count[0] = cnt
    return ecc


@cython.boundscheck(False)
@cython.wraparound(False)
def induced_diameter(Py_ssize_t n, i64[:] indptr, i64[:] nbrs, i64[:] wts,
                     bint unit, members):
    """Exact diameter of the induced subgraph; INF if disconnected."""
    cdef cnp.ndarray[i64, ndim=1] mem = np.asarray(members, dtype=np.int64)
    cdef i64[:] mv = mem
    cdef Py_ssize_t m = mv.shape[0]
    if m <= 1:
        return 0
    cdef cnp.ndarray[i64, ndim=1] allowed_a = np.zeros(n, dtype=np.int64)
    cdef i64[:] allowed = allowed_a
    cdef cnp.ndarray[i64, ndim=1] rstamp_a = np.zeros(n, dtype=np.int64)
    cdef cnp.ndarray[i64, ndim=1] rdist_a = np.zeros(n, dtype=np.int64)
    cdef i64[:] rstamp = rstamp_a
    cdef i64[:] rdist = rdist_a
    cdef Py_ssize_t i
    cdef long long tag = 1, rtag = 1
    for i in range(m):
        allowed[mv[i]] = tag
    cdef long long root = mv[0]
    cdef Py_ssize_t cnt = 0
    cdef long long ecc0 = _restricted_ecc(
        n, indptr, nbrs, wts, unit, root, allowed, tag, rstamp, rdist, rtag, &cnt
    )
    if cnt != m:
        return INF
    cdef long long lb = ecc0
    cdef cnp.ndarray[i64, ndim=1] lvl0 = np.empty(m, dtype=np.int64)
    cdef i64[:] l0 = lvl0
    for i in range(m):
        l0[i] = rdist[mv[i]]
    order = sorted(range(m), key=lambda j: (-int(l0[j]), int(mv[j])))
    cdef long long ecc_v, lvl
    cdef Py_ssize_t oi, j
    for oi in range(m):
        j = order[oi]
        lvl = l0[j]
        if lb >= 2 * lvl:
            break
        rtag += 1
        ecc_v = _restricted_ecc(
            n, indptr, nbrs, wts, unit, mv[j], allowed, tag, rstamp, rdist,
            rtag, &cnt
        )
        if ecc_v > lb:
            lb = ecc_v
    return int(lb)
