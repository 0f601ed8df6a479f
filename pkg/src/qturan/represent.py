"""Layer embeddings with partite certificates.

A graph drawn inside edge layer k of a cube has top vertices (images of size
k) and bottom vertices (size k-1).  Reading the top images as hyperedges of a
k-uniform hypergraph, the representation is partite when that hypergraph
admits a partition into k parts meeting every hyperedge exactly once.  This
module verifies such certificates, searches for them exhaustively, builds the
explicit one for theta graphs, composes certificates across shared vertices
(both the top and the bottom case), scans pole distances, and runs the
per-block predicate.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from time import monotonic

from . import kernels
from .construct import theta
from .graphs import (
    Graph,
    GraphError,
    NotBipartiteError,
    bfs_order,
    bipartition,
    blocks,
    degree_candidate_masks,
    iter_bits,
    layer_subgraph,
    prev_positions,
    subgraph_from_edges,
)
from .search import (
    EXHAUSTED_NONE,
    FOUND,
    INCONCLUSIVE,
    BudgetMeter,
    SearchBudget,
    SearchOutcome,
)

_TIME_MASK = 0xFFF


@dataclass(frozen=True)
class Hypergraph:
    """k-uniform hypergraph on ground set [n]; hyperedges are subset masks."""

    n: int
    k: int
    hyperedges: tuple

    def __post_init__(self):
        full = (1 << self.n) - 1
        seen = set()
        for h in self.hyperedges:
            if h & ~full:
                raise GraphError("hyperedge outside the ground set")
            if h.bit_count() != self.k:
                raise GraphError(f"hyperedge {h:#x} does not have {self.k} elements")
            if h in seen:
                raise GraphError("duplicate hyperedge")
            seen.add(h)

    @staticmethod
    def from_sets(n, k, sets_of_elements):
        """Build from 1-based element collections, e.g. [{1, 2}, {2, 3}]."""
        edges = []
        for s in sets_of_elements:
            m = 0
            for e in s:
                if not 1 <= e <= n:
                    raise GraphError(f"element {e} outside [1, {n}]")
                m |= 1 << (e - 1)
            edges.append(m)
        return Hypergraph(n=n, k=k, hyperedges=tuple(sorted(edges)))


@dataclass(frozen=True)
class Representation:
    """A layer embedding plus the partition certifying its top hypergraph."""

    k: int
    n: int
    images: tuple
    parts: tuple


@dataclass(frozen=True)
class RepCheck:
    ok: bool
    reason: str = ""


def top_vertices(r: Representation):
    return tuple(v for v, img in enumerate(r.images) if img.bit_count() == r.k)


def top_hypergraph(r: Representation) -> Hypergraph:
    tops = sorted(img for img in r.images if img.bit_count() == r.k)
    return Hypergraph(n=r.n, k=r.k, hyperedges=tuple(tops))


def verify_representation(H: Graph, r: Representation) -> RepCheck:
    """Check every invariant; the first violation is named in the result."""
    if r.k < 1:
        return RepCheck(False, "k must be positive")
    if len(r.images) != H.vertex_count:
        return RepCheck(False, "image count differs from the vertex count")
    if len(r.parts) != r.k:
        return RepCheck(False, f"expected {r.k} parts, got {len(r.parts)}")
    full = (1 << r.n) - 1
    for v, img in enumerate(r.images):
        if img & ~full:
            return RepCheck(False, f"image of vertex {v} leaves the ground set")
        if img.bit_count() not in (r.k, r.k - 1):
            return RepCheck(False, f"image of vertex {v} has size {img.bit_count()}")
    if len(set(r.images)) != len(r.images):
        return RepCheck(False, "images are not injective")
    for u, v in H.edges:
        if (r.images[u] ^ r.images[v]).bit_count() != 1:
            return RepCheck(False, f"edge ({u}, {v}) is not a hypercube edge")
    support = 0
    for img in r.images:
        if img.bit_count() == r.k:
            support |= img
    cover = 0
    for i, p in enumerate(r.parts):
        if p & ~full:
            return RepCheck(False, f"part {i} leaves the ground set")
        if p & cover:
            return RepCheck(False, f"part {i} overlaps an earlier part")
        cover |= p
    if support & ~cover:
        return RepCheck(False, "parts do not cover the top support")
    for v, img in enumerate(r.images):
        if img.bit_count() != r.k:
            continue
        for i, p in enumerate(r.parts):
            if (img & p).bit_count() != 1:
                return RepCheck(False, f"top image of vertex {v} misses part {i}")
    return RepCheck(True)


def is_k_partite(h: Hypergraph, k: int, budget=None) -> SearchOutcome:
    """Search for a k-part vertex partition meeting every hyperedge once.

    Equivalent to properly k-coloring the graph whose vertices are the ground
    elements in use and whose edges join elements sharing a hyperedge; part
    indices are introduced canonically so the search space carries no part
    permutations.  The witness is the tuple of part masks.
    """
    if k != h.k:
        raise GraphError(f"hypergraph is {h.k}-uniform, asked for k={k}")
    budget = budget if budget is not None else SearchBudget()
    support = 0
    for e in h.hyperedges:
        support |= e
    elems = list(iter_bits(support))
    idx = {e: i for i, e in enumerate(elems)}
    m = len(elems)
    adjm = [0] * m
    for e in h.hyperedges:
        bits = [idx[b] for b in iter_bits(e)]
        for i in bits:
            for j in bits:
                if i != j:
                    adjm[i] |= 1 << j
    color = [-1] * m
    nodes = 0
    deadline = (
        monotonic() + budget.max_seconds if budget.max_seconds != float("inf") else None
    )

    def rec(i, used):
        nonlocal nodes
        if i == m:
            return True
        limit = min(used + 1, k)
        for c in range(limit):
            nodes += 1
            if nodes > budget.max_nodes:
                return None
            if deadline is not None and nodes & _TIME_MASK == 0 and monotonic() > deadline:
                return None
            ok = True
            for j in iter_bits(adjm[i]):
                if color[j] == c:
                    ok = False
                    break
            if ok:
                color[i] = c
                sub = rec(i + 1, max(used, c + 1))
                if sub is None:
                    return None
                if sub:
                    return True
                color[i] = -1
        return False

    result = rec(0, 0)
    if result is None:
        return SearchOutcome(INCONCLUSIVE, None, nodes)
    if not result:
        return SearchOutcome(EXHAUSTED_NONE, None, nodes)
    parts = [0] * k
    for i, c in enumerate(color):
        parts[c] |= 1 << elems[i]
    return SearchOutcome(FOUND, tuple(parts), nodes)


def theta_representation(q: int) -> Representation:
    """The explicit 2-partite representation of the theta graph with q legs,
    on ground set [q+2]: main poles at the singletons {1} and {2}, middle
    poles at {3}..{q+2}, each subdivision vertex at the pair joining its two
    pole neighbors.  Indexed against construct.theta(q)'s numbering.

    The ground assignment puts the q middle poles on elements 3..q+2; any
    reading that reuses elements 1 or 2 for them would clash with the main
    poles on a ground set of size q+2.
    """
    if q < 2:
        raise GraphError("theta needs at least 2 legs")
    t = theta(q)
    n = q + 2
    images = [0] * t.graph.vertex_count
    images[q] = 1 << 0
    images[q + 1] = 1 << 1
    for i in range(q):
        images[i] = 1 << (2 + i)
    kq2_edges = [(i, q + a) for i in range(q) for a in (0, 1)]
    kq2_edges.sort()
    for e_index, (i, main) in enumerate(kq2_edges):
        images[q + 2 + e_index] = (1 << (main - q)) | (1 << (2 + i))
    parts = (0b11, ((1 << n) - 1) ^ 0b11)
    rep = Representation(k=2, n=n, images=tuple(images), parts=parts)
    check = verify_representation(t.graph, rep)
    if not check.ok:
        raise AssertionError(f"theta representation invalid: {check.reason}")
    return rep


def _layer_candidates(host: Graph, guest: Graph, order, side, top_side: int):
    """Static candidate masks: degree filter plus the side-to-layer match."""
    cand = degree_candidate_masks(host, guest, order)
    top_mask = 0
    bottom_mask = 0
    kk = max(lab.bit_count() for lab in host.labels)
    for x, lab in enumerate(host.labels):
        if lab.bit_count() == kk:
            top_mask |= 1 << x
        else:
            bottom_mask |= 1 << x
    for p, v in enumerate(order):
        cand[p] &= top_mask if side[v] == top_side else bottom_mask
    return cand


def _layer_embeddings(guest, side, top_side, k, n, meter, dedup, limit):
    """Embedding assignments of the guest into layer k of Q_n with the given
    side on top, reduced by ground permutations.  Returns (assignments,
    labels, status)."""
    top_count = sum(1 for s in side if s == top_side)
    bottom_count = len(side) - top_count
    if top_count > comb(n, k) or bottom_count > comb(n, k - 1):
        return [], None, "complete"
    host = layer_subgraph(n, k)
    order = bfs_order(guest)
    prev = prev_positions(guest, order)
    cand = _layer_candidates(host, guest, order, side, top_side)
    raw, nodes, status = kernels.embed_search(
        host.adj,
        host.labels,
        order,
        prev,
        cand,
        True,
        guest.edges,
        dedup,
        limit,
        guest.vertex_count,
        meter.remaining_nodes,
        meter.remaining_seconds,
    )
    meter.spend(nodes)
    return raw, host.labels, status


def find_representation(H: Graph, k: int, n: int, budget=None) -> SearchOutcome:
    """Exhaustive search for a k-partite representation of H inside layer k
    of Q_n, over both choices of which bipartition side sits on top.

    exhausted_none certifies that no (k, n)-representation exists.  H must be
    connected and bipartite: layers are bipartite, so anything else is
    rejected outright.
    """
    if k < 1:
        raise GraphError("k must be positive")
    if n < k:
        raise GraphError(f"layer {k} needs a ground set of at least {k}")
    side = bipartition(H).side  # raises with the obstruction if not bipartite
    meter = BudgetMeter(budget)
    hit_budget = False
    for top_side in (0, 1):
        raw, labels, status = _layer_embeddings(
            H, side, top_side, k, n, meter, dedup=True, limit=0
        )
        if status == "budget":
            hit_budget = True
            continue
        for assignment in raw:
            images = tuple(labels[x] for x in assignment)
            tops = tuple(sorted(img for img in images if img.bit_count() == k))
            outcome = is_k_partite(
                Hypergraph(n=n, k=k, hyperedges=tops),
                k,
                SearchBudget(max_nodes=max(meter.remaining_nodes, 1)),
            )
            meter.spend(outcome.nodes_explored)
            if outcome.status == INCONCLUSIVE:
                hit_budget = True
                continue
            if outcome.found:
                rep = Representation(k=k, n=n, images=images, parts=outcome.witness)
                check = verify_representation(H, rep)
                if not check.ok:
                    raise AssertionError(f"search produced an invalid witness: {check.reason}")
                return SearchOutcome(FOUND, rep, meter.nodes)
    if hit_budget:
        return SearchOutcome(INCONCLUSIVE, None, meter.nodes)
    return SearchOutcome(EXHAUSTED_NONE, None, meter.nodes)


def pad_representation(r: Representation) -> Representation:
    """Add one fresh ground element to every image: a (k+1)-partite
    representation on ground set [n+1], the new element alone in a new part."""
    bit = 1 << r.n
    return Representation(
        k=r.k + 1,
        n=r.n + 1,
        images=tuple(img | bit for img in r.images),
        parts=r.parts + (bit,),
    )


def _relabel_mask(mask: int, perm: dict) -> int:
    out = 0
    for b in iter_bits(mask):
        out |= 1 << perm[b]
    return out


def glue_top(rA: Representation, a: int, rB: Representation, b: int) -> Representation:
    """Glue two k-partite representations at top vertices a and b.

    The second ground set is shifted to be disjoint; every first-side image
    gains b's image, every second-side image gains a's.  The result is a
    2k-partite representation in layer 2k whose vertex order follows
    glue_at_vertex (first graph, then the second minus b).
    """
    if rA.k != rB.k:
        raise GraphError("representations must share the same k")
    k = rA.k
    if not 0 <= a < len(rA.images) or not 0 <= b < len(rB.images):
        raise GraphError("glue vertex out of range")
    if rA.images[a].bit_count() != k or rB.images[b].bit_count() != k:
        raise GraphError("glue vertices must be top vertices")
    shift = rA.n
    u = rA.images[a]
    w = rB.images[b] << shift
    images = [img | w for img in rA.images]
    images.extend(u | (rB.images[y] << shift) for y in range(len(rB.images)) if y != b)
    parts = rA.parts + tuple(p << shift for p in rB.parts)
    return Representation(k=2 * k, n=rA.n + rB.n, images=tuple(images), parts=parts)


def glue_bottom(rA: Representation, a: int, rB: Representation, b: int) -> Representation:
    """Glue two k-partite representations at bottom vertices a and b.

    Both ground sets are relabeled to overlap in exactly the first k-1
    elements, with a and b landing there; the union stays in layer k and the
    parts merge pairwise along the shared elements.
    """
    if rA.k != rB.k:
        raise GraphError("representations must share the same k")
    k = rA.k
    if not 0 <= a < len(rA.images) or not 0 <= b < len(rB.images):
        raise GraphError("glue vertex out of range")
    if rA.images[a].bit_count() != k - 1 or rB.images[b].bit_count() != k - 1:
        raise GraphError("glue vertices must be bottom vertices")

    def permutation(rep, v, offset):
        perm = {}
        nxt = 0
        for bit in iter_bits(rep.images[v]):
            perm[bit] = nxt
            nxt += 1
        nxt = offset
        for bit in range(rep.n):
            if bit not in perm:
                perm[bit] = nxt
                nxt += 1
        return perm

    pa = permutation(rA, a, k - 1)
    pb = permutation(rB, b, rA.n)
    images = [_relabel_mask(img, pa) for img in rA.images]
    images.extend(
        _relabel_mask(rB.images[y], pb) for y in range(len(rB.images)) if y != b
    )
    parts_a = [_relabel_mask(p, pa) for p in rA.parts]
    parts_b = [_relabel_mask(p, pb) for p in rB.parts]
    shared = (1 << (k - 1)) - 1
    cover_a = 0
    for p in parts_a:
        cover_a |= p
    cover_b = 0
    for p in parts_b:
        cover_b |= p
    if shared & ~cover_a or shared & ~cover_b:
        raise GraphError("glue vertex image is not inside the represented support")
    pairing = [-1] * k
    taken = [False] * k
    for e in range(k - 1):
        ia = next(i for i, p in enumerate(parts_a) if p >> e & 1)
        ib = next(i for i, p in enumerate(parts_b) if p >> e & 1)
        if pairing[ia] not in (-1, ib):
            raise GraphError("shared elements pair the parts inconsistently")
        pairing[ia] = ib
        taken[ib] = True
    for ia in range(k):
        if pairing[ia] == -1:
            pairing[ia] = next(i for i in range(k) if not taken[i])
            taken[pairing[ia]] = True
    parts = tuple(parts_a[i] | parts_b[pairing[i]] for i in range(k))
    n = rA.n + rB.n - (k - 1)
    return Representation(k=k, n=n, images=tuple(images), parts=parts)


@dataclass(frozen=True)
class LayerScan:
    k: int
    top_side: int
    embeddings: int


@dataclass(frozen=True)
class PoleScanReport:
    q: int
    n: int
    embeddings: int
    distance_counts: tuple
    all_distance_two: bool
    counterexample: tuple  # (layer, top_side, images) or ()
    layers: tuple
    status: str
    nodes_explored: int


def pole_distance_scan(q: int, n: int, budget=None) -> PoleScanReport:
    """Hamming distances between the two main-pole images over every layer
    embedding of the theta graph with q legs into Q_n (reduced by ground
    permutations, both orientations).

    For q >= 3 every embedding is expected at distance exactly 2; q = 2 is
    accepted too, precisely to show violations occur there.
    """
    if q < 2:
        raise GraphError("the scan needs q >= 2")
    t = theta(q)
    guest = t.graph
    m1, m2 = t.mark("main_poles")
    side = bipartition(guest).side
    meter = BudgetMeter(budget)
    counts = {}
    layers = []
    counterexample = ()
    status = "complete"
    for k in range(1, n + 1):
        for top_side in (0, 1):
            raw, labels, st = _layer_embeddings(
                guest, side, top_side, k, n, meter, dedup=False, limit=0
            )
            if st == "budget":
                status = "inconclusive"
            layers.append(LayerScan(k=k, top_side=top_side, embeddings=len(raw)))
            for assignment in raw:
                d = (labels[assignment[m1]] ^ labels[assignment[m2]]).bit_count()
                counts[d] = counts.get(d, 0) + 1
                if d != 2 and not counterexample:
                    images = tuple(labels[x] for x in assignment)
                    counterexample = (k, top_side, images)
    total = sum(counts.values())
    return PoleScanReport(
        q=q,
        n=n,
        embeddings=total,
        distance_counts=tuple(sorted(counts.items())),
        all_distance_two=bool(counts) and set(counts) == {2},
        counterexample=counterexample,
        layers=tuple(layers),
        status=status,
        nodes_explored=meter.nodes,
    )


@dataclass(frozen=True)
class BlockOutcome:
    index: int
    vertices: int
    edge_count: int
    status: str  # found / exhausted_none / inconclusive / not_bipartite
    k: int = 0
    n: int = 0
    representation: Representation = None
    obstruction: tuple = ()
    nodes_explored: int = 0


@dataclass(frozen=True)
class BlockRepReport:
    outcomes: tuple
    all_represented: bool
    verdict: str
    cut_vertices: tuple


ZERO_DENSITY_VERDICT = "zero Turan density: every block has a partite representation"
NO_VERDICT = "no verdict: some block lacks a representation in the searched range"


def blocks_have_representations(H: Graph, k_max: int, n_max: int, budget=None) -> BlockRepReport:
    """Split H into blocks and search each for a representation with k up to
    k_max and ground sets up to n_max.

    When every block succeeds the zero-density verdict applies to H; a
    non-bipartite block is reported as the obstruction it is.
    """
    if k_max < 1 or n_max < 1:
        raise GraphError("k_max and n_max must be positive")
    dec = blocks(H)
    meter = BudgetMeter(budget)
    outcomes = []
    for index, block_edges in enumerate(dec.blocks):
        sub, _ = subgraph_from_edges(H, block_edges)
        spent_before = meter.nodes
        result = None
        inconclusive = False
        obstruction = ()
        try:
            for k in range(1, k_max + 1):
                for n in range(k, n_max + 1):
                    remaining = max(meter.remaining_nodes, 1)
                    out = find_representation(
                        sub, k, n, SearchBudget(max_nodes=remaining)
                    )
                    meter.spend(out.nodes_explored)
                    if out.found:
                        result = (k, n, out.witness)
                        break
                    if out.status == INCONCLUSIVE:
                        inconclusive = True
                if result:
                    break
            if result:
                k, n, rep = result
                outcomes.append(
                    BlockOutcome(
                        index=index,
                        vertices=sub.vertex_count,
                        edge_count=sub.edge_count,
                        status=FOUND,
                        k=k,
                        n=n,
                        representation=rep,
                        nodes_explored=meter.nodes - spent_before,
                    )
                )
            else:
                outcomes.append(
                    BlockOutcome(
                        index=index,
                        vertices=sub.vertex_count,
                        edge_count=sub.edge_count,
                        status=INCONCLUSIVE if inconclusive else EXHAUSTED_NONE,
                        nodes_explored=meter.nodes - spent_before,
                    )
                )
        except NotBipartiteError as exc:
            outcomes.append(
                BlockOutcome(
                    index=index,
                    vertices=sub.vertex_count,
                    edge_count=sub.edge_count,
                    status="not_bipartite",
                    obstruction=exc.odd_cycle,
                    nodes_explored=meter.nodes - spent_before,
                )
            )
    all_found = bool(outcomes) and all(o.status == FOUND for o in outcomes)
    return BlockRepReport(
        outcomes=tuple(outcomes),
        all_represented=all_found,
        verdict=ZERO_DENSITY_VERDICT if all_found else NO_VERDICT,
        cut_vertices=tuple(sorted(dec.cut_vertices)),
    )
