"""Pure-Python search kernels.

Three hot loops live here: injective embedding enumeration, hypercube
potential search, and the include-first branch-and-bound for maximum
copy-free subsets.  The compiled twins in ``_ckernels.pyx`` follow this file
statement for statement; both sides must explore identical trees and report
identical node counts, so any change here has to land there too.

All bit masks are plain Python ints.  Candidate iteration is always over set
bits in ascending order, which is what makes every output deterministic.
"""

from __future__ import annotations

from time import monotonic

_TIME_MASK = 0xFFF  # look at the clock once every 4096 nodes

STATUS_COMPLETE = "complete"
STATUS_LIMIT = "limit"
STATUS_BUDGET = "budget"


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
    """Enumerate injective guest-to-host maps realizing every guest edge.

    order lists the guest vertices in assignment order; prev_positions[p]
    holds the earlier positions adjacent to order[p]; cand_masks[p] is the
    static candidate mask for position p.  With canonical=True, host labels
    are ground subsets and a candidate may only introduce new ground elements
    as the next consecutive block of indices, which quotients away ground
    permutations without losing any embedding up to relabeling.

    Returns (assignments, nodes, status): each assignment is a tuple of host
    vertices indexed by guest vertex, in DFS discovery order; with dedup=True
    only the first assignment per induced host edge set is kept.
    """
    g = len(order)
    assign = [-1] * vertex_total
    pos_host = [0] * g
    masks = [0] * g
    glen = [0] * (g + 1)
    used = 0
    results = []
    seen = set()
    nodes = 0
    deadline = monotonic() + max_seconds if max_seconds != float("inf") else None
    status = STATUS_COMPLETE

    depth = 0
    m0 = cand_masks[0]
    for p in prev_positions[0]:
        m0 &= host_adj[pos_host[p]]
    masks[0] = m0

    while depth >= 0:
        m = masks[depth]
        if m == 0:
            depth -= 1
            if depth >= 0:
                used ^= 1 << pos_host[depth]
                assign[order[depth]] = -1
            continue
        low = m & -m
        masks[depth] = m ^ low
        x = low.bit_length() - 1
        nodes += 1
        if nodes > max_nodes:
            status = STATUS_BUDGET
            break
        if deadline is not None and nodes & _TIME_MASK == 0 and monotonic() > deadline:
            status = STATUS_BUDGET
            break
        if canonical:
            gl = glen[depth]
            new = host_labels[x] >> gl << gl
            if new:
                t = new.bit_count()
                if new != ((1 << t) - 1) << gl:
                    continue
                glen[depth + 1] = gl + t
            else:
                glen[depth + 1] = gl
        assign[order[depth]] = x
        pos_host[depth] = x
        used |= 1 << x
        if depth + 1 == g:
            if dedup:
                key = []
                for u, v in guest_edges:
                    a = assign[u]
                    b = assign[v]
                    key.append((a, b) if a < b else (b, a))
                key.sort()
                key = tuple(key)
                if key not in seen:
                    seen.add(key)
                    results.append(tuple(assign))
            else:
                results.append(tuple(assign))
            used ^= 1 << x
            assign[order[depth]] = -1
            if limit and len(results) >= limit:
                status = STATUS_LIMIT
                break
            continue
        depth += 1
        m = cand_masks[depth] & ~used
        for p in prev_positions[depth]:
            m &= host_adj[pos_host[p]]
        masks[depth] = m

    return results, nodes, status


def potential_search(
    order,
    prev_positions,
    c_max,
    canonical,
    vertex_total,
    max_nodes,
    max_seconds,
):
    """Assign ground subsets to guest vertices so adjacent ones differ in one
    element; the root is pinned to the empty set.

    Candidates for a vertex are single-bit flips of its first assigned
    neighbor, filtered against the remaining assigned neighbors and
    injectivity.  With canonical=True a new coordinate may only be the next
    unused index, so the first root neighbors land on unit vectors in order.

    Returns (assignment | None, nodes, status) with status "found", "none",
    or "budget".
    """
    g = len(order)
    phi = [-1] * vertex_total
    pos_val = [0] * g
    rem = [0] * g
    glen = [0] * (g + 1)
    nodes = 0
    deadline = monotonic() + max_seconds if max_seconds != float("inf") else None
    full = (1 << c_max) - 1

    phi[order[0]] = 0
    pos_val[0] = 0
    used = {0}
    if g == 1:
        return tuple(phi), nodes, "found"

    glen[1] = 0
    depth = 1
    rem[1] = (1 << 1) - 1 if canonical else full

    while depth >= 1:
        m = rem[depth]
        if m == 0:
            depth -= 1
            if depth >= 1:
                used.discard(pos_val[depth])
                phi[order[depth]] = -1
            continue
        low = m & -m
        rem[depth] = m ^ low
        b = low.bit_length() - 1
        nodes += 1
        if nodes > max_nodes:
            return None, nodes, "budget"
        if deadline is not None and nodes & _TIME_MASK == 0 and monotonic() > deadline:
            return None, nodes, "budget"
        prev = prev_positions[depth]
        cand = pos_val[prev[0]] ^ (1 << b)
        if cand in used:
            continue
        ok = True
        for i in range(1, len(prev)):
            if (cand ^ pos_val[prev[i]]).bit_count() != 1:
                ok = False
                break
        if not ok:
            continue
        gl = glen[depth]
        glen[depth + 1] = gl + 1 if b == gl else gl
        phi[order[depth]] = cand
        pos_val[depth] = cand
        used.add(cand)
        if depth + 1 == g:
            return tuple(phi), nodes, "found"
        depth += 1
        gl = glen[depth]
        if canonical:
            width = gl + 1 if gl < c_max else c_max
            rem[depth] = (1 << width) - 1
        else:
            rem[depth] = full

    return None, nodes, "none"


def max_nonhitting(m, copies, max_nodes, max_seconds):
    """Largest subset of [m] containing no copy, by include-first B&B.

    copies are bit masks over [m].  Include-first DFS visits subsets in
    lexicographic order of their sorted index tuples, so the first maximum
    found is the lexicographically least one; ties never displace it.  The
    bound charges each still-alive copy at least one future exclusion,
    amortized over the maximum number of copies any single edge can kill.

    Returns (best_size, best_mask, nodes, closed).
    """
    ncop = len(copies)
    size = [c.bit_count() for c in copies]
    cov = [[] for _ in range(m)]
    for ci in range(ncop):
        c = copies[ci]
        while c:
            low = c & -c
            cov[low.bit_length() - 1].append(ci)
            c ^= low
    gmax = 1
    for lst in cov:
        if len(lst) > gmax:
            gmax = len(lst)
    incl_cnt = [0] * ncop
    excl_cnt = [0] * ncop
    deadline = monotonic() + max_seconds if max_seconds != float("inf") else None

    best_size = -1
    best_mask = 0
    included = 0
    icount = 0
    live = ncop
    nodes = 0
    aborted = False

    def rec(p):
        nonlocal best_size, best_mask, included, icount, live, nodes, aborted
        if p == m:
            if icount > best_size:
                best_size = icount
                best_mask = included
            return
        need = (live + gmax - 1) // gmax
        if icount + (m - p) - need <= best_size:
            return
        covp = cov[p]
        nodes += 1
        if nodes > max_nodes:
            aborted = True
            return
        if deadline is not None and nodes & _TIME_MASK == 0 and monotonic() > deadline:
            aborted = True
            return
        done = 0
        ok = True
        for ci in covp:
            if excl_cnt[ci] == 0 and incl_cnt[ci] + 1 == size[ci]:
                ok = False
                break
            incl_cnt[ci] += 1
            done += 1
        if ok:
            included |= 1 << p
            icount += 1
            rec(p + 1)
            included ^= 1 << p
            icount -= 1
            for ci in covp:
                incl_cnt[ci] -= 1
        else:
            for i in range(done):
                incl_cnt[covp[i]] -= 1
        if aborted:
            return
        nodes += 1
        if nodes > max_nodes:
            aborted = True
            return
        if deadline is not None and nodes & _TIME_MASK == 0 and monotonic() > deadline:
            aborted = True
            return
        for ci in covp:
            excl_cnt[ci] += 1
            if excl_cnt[ci] == 1:
                live -= 1
        rec(p + 1)
        for ci in covp:
            excl_cnt[ci] -= 1
            if excl_cnt[ci] == 0:
                live += 1

    rec(0)
    return best_size, best_mask, nodes, not aborted
