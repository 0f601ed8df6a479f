# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twins of the kernels in ``_kernels_py``.

Masks are machine words here (hosts up to 64 vertices, grounds up to 62
elements); the dispatcher in ``kernels`` guarantees the limits.  Tree shape,
candidate order, and node accounting follow the Python reference exactly, so
both backends return byte-identical results.
"""

from libc.stdlib cimport free, malloc
from time import monotonic

cdef unsigned long long _TIME_MASK = 0xFFF

STATUS_COMPLETE = "complete"
STATUS_LIMIT = "limit"
STATUS_BUDGET = "budget"


cdef inline int _bit_index(unsigned long long low):
    cdef int i = 0
    while low > 1:
        low >>= 1
        i += 1
    return i

cdef inline int _popcount(unsigned long long x):
    cdef int c = 0
    while x:
        x &= x - 1
        c += 1
    return c


def embed_search(
    host_adj,
    host_labels,
    order,
    prev_positions,
    cand_masks,
    canonical,
    guest_edges,
    dedup,
    limit,
    vertex_total,
    max_nodes,
    max_seconds,
):
    cdef int g = len(order)
    cdef int h = len(host_adj)
    cdef bint canon = bool(canonical)
    cdef bint do_dedup = bool(dedup)
    cdef long long lim = limit
    cdef long long maxn = max_nodes
    cdef long long nodes = 0
    cdef int depth = 0, x = 0, t = 0, gl = 0, i = 0, j = 0, np = 0
    cdef unsigned long long m, low, used = 0, new, lab

    cdef unsigned long long *adj = <unsigned long long *> malloc(h * sizeof(unsigned long long))
    cdef unsigned long long *labs = <unsigned long long *> malloc((h if canon else 1) * sizeof(unsigned long long))
    cdef unsigned long long *cand = <unsigned long long *> malloc(g * sizeof(unsigned long long))
    cdef unsigned long long *masks = <unsigned long long *> malloc(g * sizeof(unsigned long long))
    cdef int *ordv = <int *> malloc(g * sizeof(int))
    cdef int *glen = <int *> malloc((g + 1) * sizeof(int))
    cdef int *pos_host = <int *> malloc(g * sizeof(int))
    cdef int *assign = <int *> malloc(vertex_total * sizeof(int))
    # prev positions flattened
    cdef int *prev_off = <int *> malloc((g + 1) * sizeof(int))
    cdef int *prev_flat
    cdef list results = []
    cdef set seen = set()
    cdef object deadline = None
    if max_seconds != float("inf"):
        deadline = monotonic() + max_seconds

    np = 0
    for i in range(g):
        np += len(prev_positions[i])
    prev_flat = <int *> malloc((np if np else 1) * sizeof(int))
    np = 0
    for i in range(g):
        prev_off[i] = np
        for j in range(len(prev_positions[i])):
            prev_flat[np] = prev_positions[i][j]
            np += 1
    prev_off[g] = np

    for i in range(h):
        adj[i] = host_adj[i]
        if canon:
            labs[i] = host_labels[i]
    for i in range(g):
        ordv[i] = order[i]
        cand[i] = cand_masks[i]
    for i in range(vertex_total):
        assign[i] = -1

    status = STATUS_COMPLETE
    glen[0] = 0
    m = cand[0]
    for i in range(prev_off[0], prev_off[1]):
        m &= adj[pos_host[prev_flat[i]]]
    masks[0] = m

    try:
        while depth >= 0:
            m = masks[depth]
            if m == 0:
                depth -= 1
                if depth >= 0:
                    used ^= (<unsigned long long> 1) << pos_host[depth]
                    assign[ordv[depth]] = -1
                continue
            low = m & (~m + 1)
            masks[depth] = m ^ low
            x = _bit_index(low)
            nodes += 1
            if nodes > maxn:
                status = STATUS_BUDGET
                break
            if deadline is not None and (nodes & _TIME_MASK) == 0 and monotonic() > deadline:
                status = STATUS_BUDGET
                break
            if canon:
                gl = glen[depth]
                new = labs[x] >> gl << gl
                if new:
                    t = _popcount(new)
                    if new != (((<unsigned long long> 1) << t) - 1) << gl:
                        continue
                    glen[depth + 1] = gl + t
                else:
                    glen[depth + 1] = gl
            assign[ordv[depth]] = x
            pos_host[depth] = x
            used |= (<unsigned long long> 1) << x
            if depth + 1 == g:
                if do_dedup:
                    key = []
                    for u, v in guest_edges:
                        a = assign[<int> u]
                        b = assign[<int> v]
                        key.append((a, b) if a < b else (b, a))
                    key.sort()
                    tkey = tuple(key)
                    if tkey not in seen:
                        seen.add(tkey)
                        results.append(tuple([assign[i] for i in range(vertex_total)]))
                else:
                    results.append(tuple([assign[i] for i in range(vertex_total)]))
                used ^= (<unsigned long long> 1) << x
                assign[ordv[depth]] = -1
                if lim and len(results) >= lim:
                    status = STATUS_LIMIT
                    break
                continue
            depth += 1
            m = cand[depth] & ~used
            for i in range(prev_off[depth], prev_off[depth + 1]):
                m &= adj[pos_host[prev_flat[i]]]
            masks[depth] = m
    finally:
        free(adj)
        free(labs)
        free(cand)
        free(masks)
        free(ordv)
        free(glen)
        free(pos_host)
        free(assign)
        free(prev_off)
        free(prev_flat)

    return results, nodes, status


def potential_search(
    order, prev_positions, c_max, canonical, vertex_total, max_nodes, max_seconds
):
    cdef int g = len(order)
    cdef bint canon = bool(canonical)
    cdef int cm = c_max
    cdef long long maxn = max_nodes
    cdef long long nodes = 0
    cdef int depth, b, gl, i, j, np, width
    cdef unsigned long long m, low, cand, full = ((<unsigned long long> 1) << cm) - 1
    cdef object deadline = None
    if max_seconds != float("inf"):
        deadline = monotonic() + max_seconds

    cdef long long *phi = <long long *> malloc(vertex_total * sizeof(long long))
    cdef unsigned long long *pos_val = <unsigned long long *> malloc(g * sizeof(unsigned long long))
    cdef unsigned long long *rem = <unsigned long long *> malloc(g * sizeof(unsigned long long))
    cdef int *glen = <int *> malloc((g + 1) * sizeof(int))
    cdef int *ordv = <int *> malloc(g * sizeof(int))
    cdef int *prev_off = <int *> malloc((g + 1) * sizeof(int))
    cdef int *prev_flat
    cdef set used = set()

    np = 0
    for i in range(g):
        np += len(prev_positions[i])
    prev_flat = <int *> malloc((np if np else 1) * sizeof(int))
    np = 0
    for i in range(g):
        prev_off[i] = np
        for j in range(len(prev_positions[i])):
            prev_flat[np] = prev_positions[i][j]
            np += 1
    prev_off[g] = np
    for i in range(g):
        ordv[i] = order[i]
    for i in range(vertex_total):
        phi[i] = -1

    try:
        phi[ordv[0]] = 0
        pos_val[0] = 0
        used.add(0)
        if g == 1:
            return tuple([phi[i] for i in range(vertex_total)]), nodes, "found"

        glen[1] = 0
        depth = 1
        rem[1] = 1 if canon else full

        while depth >= 1:
            m = rem[depth]
            if m == 0:
                depth -= 1
                if depth >= 1:
                    used.discard(pos_val[depth])
                    phi[ordv[depth]] = -1
                continue
            low = m & (~m + 1)
            rem[depth] = m ^ low
            b = _bit_index(low)
            nodes += 1
            if nodes > maxn:
                return None, nodes, "budget"
            if deadline is not None and (nodes & _TIME_MASK) == 0 and monotonic() > deadline:
                return None, nodes, "budget"
            cand = pos_val[prev_flat[prev_off[depth]]] ^ ((<unsigned long long> 1) << b)
            if cand in used:
                continue
            ok = True
            for i in range(prev_off[depth] + 1, prev_off[depth + 1]):
                if _popcount(cand ^ pos_val[prev_flat[i]]) != 1:
                    ok = False
                    break
            if not ok:
                continue
            gl = glen[depth]
            glen[depth + 1] = gl + 1 if b == gl else gl
            phi[ordv[depth]] = <long long> cand
            pos_val[depth] = cand
            used.add(cand)
            if depth + 1 == g:
                return tuple([phi[i] for i in range(vertex_total)]), nodes, "found"
            depth += 1
            gl = glen[depth]
            if canon:
                width = gl + 1 if gl < cm else cm
                rem[depth] = (((<unsigned long long> 1) << width) - 1)
            else:
                rem[depth] = full

        return None, nodes, "none"
    finally:
        free(phi)
        free(pos_val)
        free(rem)
        free(glen)
        free(ordv)
        free(prev_off)
        free(prev_flat)


cdef struct BnbState:
    long long best_size
    unsigned long long best_mask
    unsigned long long included
    long long icount
    long long live
    long long nodes
    bint aborted
    long long maxn
    int m
    int gmax


cdef void _bnb(
    int p,
    BnbState *st,
    int *cov_off,
    int *cov_flat,
    int *size,
    long long *incl_cnt,
    long long *excl_cnt,
    object deadline,
):
    cdef int i, ci, done
    cdef long long need
    cdef bint ok
    if st.aborted:
        return
    if p == st.m:
        if st.icount > st.best_size:
            st.best_size = st.icount
            st.best_mask = st.included
        return
    need = (st.live + st.gmax - 1) // st.gmax
    if st.icount + (st.m - p) - need <= st.best_size:
        return
    st.nodes += 1
    if st.nodes > st.maxn:
        st.aborted = True
        return
    if deadline is not None and (st.nodes & <long long> _TIME_MASK) == 0 and monotonic() > deadline:
        st.aborted = True
        return
    done = 0
    ok = True
    for i in range(cov_off[p], cov_off[p + 1]):
        ci = cov_flat[i]
        if excl_cnt[ci] == 0 and incl_cnt[ci] + 1 == size[ci]:
            ok = False
            break
        incl_cnt[ci] += 1
        done += 1
    if ok:
        st.included |= (<unsigned long long> 1) << p
        st.icount += 1
        _bnb(p + 1, st, cov_off, cov_flat, size, incl_cnt, excl_cnt, deadline)
        st.included ^= (<unsigned long long> 1) << p
        st.icount -= 1
        for i in range(cov_off[p], cov_off[p + 1]):
            incl_cnt[cov_flat[i]] -= 1
    else:
        for i in range(cov_off[p], cov_off[p] + done):
            incl_cnt[cov_flat[i]] -= 1
    if st.aborted:
        return
    st.nodes += 1
    if st.nodes > st.maxn:
        st.aborted = True
        return
    if deadline is not None and (st.nodes & <long long> _TIME_MASK) == 0 and monotonic() > deadline:
        st.aborted = True
        return
    for i in range(cov_off[p], cov_off[p + 1]):
        ci = cov_flat[i]
        excl_cnt[ci] += 1
        if excl_cnt[ci] == 1:
            st.live -= 1
    _bnb(p + 1, st, cov_off, cov_flat, size, incl_cnt, excl_cnt, deadline)
    for i in range(cov_off[p], cov_off[p + 1]):
        ci = cov_flat[i]
        excl_cnt[ci] -= 1
        if excl_cnt[ci] == 0:
            st.live += 1


def max_nonhitting(m, copies, max_nodes, max_seconds):
    cdef int em = m
    cdef int ncop = len(copies)
    cdef int i, ci, total
    cdef unsigned long long c, low
    cdef object deadline = None
    if max_seconds != float("inf"):
        deadline = monotonic() + max_seconds

    cdef int *size = <int *> malloc((ncop if ncop else 1) * sizeof(int))
    cdef long long *incl_cnt = <long long *> malloc((ncop if ncop else 1) * sizeof(long long))
    cdef long long *excl_cnt = <long long *> malloc((ncop if ncop else 1) * sizeof(long long))
    cdef int *cov_len = <int *> malloc((em + 1) * sizeof(int))
    cdef int *cov_off = <int *> malloc((em + 1) * sizeof(int))
    cdef int *cov_flat
    cdef int *cursor = <int *> malloc((em + 1) * sizeof(int))
    cdef BnbState st

    for i in range(em + 1):
        cov_len[i] = 0
    total = 0
    for ci in range(ncop):
        c = copies[ci]
        size[ci] = _popcount(c)
        incl_cnt[ci] = 0
        excl_cnt[ci] = 0
        while c:
            low = c & (~c + 1)
            cov_len[_bit_index(low)] += 1
            total += 1
            c ^= low
    cov_off[0] = 0
    for i in range(em):
        cov_off[i + 1] = cov_off[i] + cov_len[i]
    cov_flat = <int *> malloc((total if total else 1) * sizeof(int))
    for i in range(em):
        cursor[i] = cov_off[i]
    for ci in range(ncop):
        c = copies[ci]
        while c:
            low = c & (~c + 1)
            i = _bit_index(low)
            cov_flat[cursor[i]] = ci
            cursor[i] += 1
            c ^= low

    st.best_size = -1
    st.best_mask = 0
    st.included = 0
    st.icount = 0
    st.live = ncop
    st.nodes = 0
    st.aborted = False
    st.maxn = max_nodes
    st.m = em
    st.gmax = 1
    for i in range(em):
        if cov_len[i] > st.gmax:
            st.gmax = cov_len[i]

    try:
        _bnb(0, &st, cov_off, cov_flat, size, incl_cnt, excl_cnt, deadline)
    finally:
        free(size)
        free(incl_cnt)
        free(excl_cnt)
        free(cov_len)
        free(cov_off)
        free(cov_flat)
        free(cursor)

    return st.best_size, st.best_mask, st.nodes, not st.aborted
