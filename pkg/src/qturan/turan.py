"""Exact forbidden-subgraph numbers at desk scale, plus the layer counting
identities and the middle-layer mass.

The extremal solvers phrase "largest guest-free edge subset" as maximum
non-hitting subset over the precomputed copy list and hand it to the shared
branch-and-bound kernel.  Results carry a status: exact only when the tree
closed; a blown budget downgrades the status, never the value.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations
from math import comb

from . import kernels
from .graphs import (
    Graph,
    GraphError,
    build_hypercube,
    edge_subgraph,
    enumerate_copies,
    iter_bits,
)
from .represent import Hypergraph
from .search import BudgetMeter, SearchBudget

EXACT = "exact"
LOWER_BOUND = "lower_bound"
INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class ExtremalResult:
    n: int
    guest_id: str
    value: int
    witness_edges: tuple
    status: str
    nodes_explored: int


def _default_guest_id(H: Graph) -> str:
    return f"guest-{H.vertex_count}v-{H.edge_count}e"


def extremal_number(n: int, H: Graph, budget=None, guest_id: str = None) -> ExtremalResult:
    """Largest number of edges of a subgraph of Q_n with no copy of H.

    Copies are enumerated first and indexed by edge; the branch-and-bound
    then maximizes over edge subsets hitting no copy.  The witness is
    re-verified guest-free before being returned, and ties are broken toward
    the lexicographically least edge set.
    """
    if H.edge_count == 0:
        raise GraphError("the forbidden graph needs at least one edge")
    guest_id = guest_id if guest_id is not None else _default_guest_id(H)
    meter = BudgetMeter(budget)
    host = build_hypercube(n)
    m = host.edge_count
    enum = enumerate_copies(
        host,
        H,
        limit=0,
        budget=SearchBudget(
            max_nodes=max(meter.remaining_nodes, 1),
            max_seconds=max(meter.remaining_seconds, 1e-9),
        ),
    )
    meter.spend(enum.nodes_explored)
    if enum.status != "complete":
        return ExtremalResult(
            n=n,
            guest_id=guest_id,
            value=0,
            witness_edges=(),
            status=INCONCLUSIVE,
            nodes_explored=meter.nodes,
        )
    edge_index = {e: i for i, e in enumerate(host.edges)}
    copy_masks = []
    for emb in enum.copies:
        mask = 0
        for e in emb.edge_key():
            mask |= 1 << edge_index[e]
        copy_masks.append(mask)
    if not copy_masks:
        return ExtremalResult(
            n=n,
            guest_id=guest_id,
            value=m,
            witness_edges=host.edges,
            status=EXACT,
            nodes_explored=meter.nodes,
        )
    best_size, best_mask, nodes, closed = kernels.max_nonhitting(
        m,
        copy_masks,
        max(meter.remaining_nodes, 1),
        max(meter.remaining_seconds, 1e-9),
    )
    meter.spend(nodes)
    witness = tuple(host.edges[i] for i in iter_bits(best_mask))
    recheck = enumerate_copies(
        edge_subgraph(host, witness),
        H,
        limit=1,
        budget=SearchBudget(
            max_nodes=max(meter.remaining_nodes, 1),
            max_seconds=max(meter.remaining_seconds, 1e-9),
        ),
    )
    meter.spend(recheck.nodes_explored)
    if recheck.status == "inconclusive":
        return ExtremalResult(
            n=n,
            guest_id=guest_id,
            value=0,
            witness_edges=(),
            status=INCONCLUSIVE,
            nodes_explored=meter.nodes,
        )
    if recheck.copies:
        raise AssertionError("branch-and-bound returned a witness containing the guest")
    return ExtremalResult(
        n=n,
        guest_id=guest_id,
        value=best_size,
        witness_edges=witness,
        status=EXACT if closed else LOWER_BOUND,
        nodes_explored=meter.nodes,
    )


@dataclass(frozen=True)
class DensityPoint:
    n: int
    value: int
    total_edges: int
    ratio: Fraction
    status: str
    nodes_explored: int


@dataclass(frozen=True)
class DensityReport:
    points: tuple
    violations: tuple  # adjacent exact pairs whose ratio increased

    @property
    def monotone_ok(self) -> bool:
        return not self.violations


def density_sequence(H: Graph, n_from: int, n_to: int, budget=None, map_fn=map) -> DensityReport:
    """ex(Q_n, H) / ||Q_n|| for n in [n_from, n_to].

    A ratio increase between two adjacent exact values would falsify the
    implementation, not the theory, so any such pair is flagged.
    """
    if n_from > n_to:
        raise GraphError("empty range")
    if n_from < 1:
        raise GraphError("density starts at n = 1")

    def solve(n):
        return extremal_number(n, H, budget=budget)

    points = []
    for res in map_fn(solve, range(n_from, n_to + 1)):
        total = res.n * (1 << (res.n - 1))
        ratio = Fraction(res.value, total)
        points.append(
            DensityPoint(
                n=res.n,
                value=res.value,
                total_edges=total,
                ratio=ratio,
                status=res.status,
                nodes_explored=res.nodes_explored,
            )
        )
    violations = []
    for a, b in zip(points, points[1:]):
        if a.status == EXACT and b.status == EXACT and b.ratio > a.ratio:
            violations.append((a.n, b.n))
    return DensityReport(points=tuple(points), violations=tuple(violations))


def _layer_membership(G: Graph, k: int):
    """Layer index j of a labeled layer subgraph (labels of sizes j and j-1;
    a single size present is read as the top layer)."""
    if G.labels is None:
        raise GraphError("layer operations need a labeled graph")
    sizes = sorted({lab.bit_count() for lab in G.labels})
    if len(sizes) == 1:
        j = sizes[0]
    elif len(sizes) == 2 and sizes[1] == sizes[0] + 1:
        j = sizes[1]
    else:
        raise GraphError("labels do not sit inside one edge layer")
    return j


def up_set_full_vertices(G: Graph, x: int, k: int) -> int:
    """Number of top vertices y above x whose k downward subsets toward x are
    all neighbors of y in G.

    G must be a labeled subgraph of one edge layer L_j; x must have exactly
    j - k elements.
    """
    if k < 1:
        raise GraphError("k must be positive")
    j = _layer_membership(G, k)
    if x.bit_count() != j - k:
        raise GraphError(f"x must have {j - k} elements for layer {j} and k={k}")
    index = G.label_index()
    count = 0
    for y, lab in enumerate(G.labels):
        if lab.bit_count() != j or (lab & x) != x:
            continue
        ok = True
        for b in iter_bits(lab & ~x):
            z = index.get(lab ^ (1 << b))
            if z is None or not G.adjacent(y, z):
                ok = False
                break
        if ok:
            count += 1
    return count


@dataclass(frozen=True)
class StarCountReport:
    j: int
    k: int
    t: int
    per_x_full_counts: tuple  # ((x_mask, count), ...) ascending by mask


def star_count_identity(G: Graph, j: int, k: int) -> StarCountReport:
    """Count downward k-edge stars centered in the top layer two ways.

    t sums C(deg, k) over top vertices; the per-x counts tally full vertices
    above each x with j-k elements.  In a layer the k leaves of a star meet
    in exactly one such x, so the two counts agree exactly (not merely >=),
    and a mismatch raises.
    """
    if G.labels is None or G.ground_set_size is None:
        raise GraphError("layer operations need a labeled graph")
    jj = _layer_membership(G, k)
    if jj != j:
        raise GraphError(f"graph sits in layer {jj}, not {j}")
    if not 1 <= k <= j:
        raise GraphError(f"k must lie in [1, {j}]")
    t = 0
    for v, lab in enumerate(G.labels):
        if lab.bit_count() == j:
            t += comb(G.degree(v), k)
    n = G.ground_set_size
    per_x = []
    for c in combinations(range(n), j - k):
        x = 0
        for i in c:
            x |= 1 << i
        per_x.append((x, up_set_full_vertices(G, x, k)))
    per_x.sort()
    total = sum(u for _, u in per_x)
    if total != t:
        raise AssertionError(f"star count identity failed: sum={total} t={t}")
    return StarCountReport(j=j, k=k, t=t, per_x_full_counts=tuple(per_x))


def middle_mass(n: int) -> Fraction:
    """Exact fraction of vertices of Q_n farther than n^(2/3) from the middle.

    The comparison |i - n/2| > n^(2/3) is done in integers as
    |2i - n|^3 > 8 n^2, so no floating point enters.
    """
    if n < 1:
        raise GraphError("n must be positive")
    total = 0
    for i in range(n + 1):
        if abs(2 * i - n) ** 3 > 8 * n * n:
            total += comb(n, i)
    return Fraction(total, 1 << n)


def _hypergraph_copies(n: int, forbidden: Hypergraph):
    """Every image hyperedge set of the forbidden hypergraph inside the
    complete k-uniform hypergraph on [n], as sorted mask tuples."""
    support = 0
    for e in forbidden.hyperedges:
        support |= e
    elems = list(iter_bits(support))
    s = len(elems)
    images = set()
    if s > n:
        return []
    for targets in combinations(range(n), s):
        for perm in permutations(targets):
            mapping = {e: perm[i] for i, e in enumerate(elems)}
            img = []
            for h in forbidden.hyperedges:
                m = 0
                for b in iter_bits(h):
                    m |= 1 << mapping[b]
                img.append(m)
            images.add(tuple(sorted(img)))
    return sorted(images)


def hypergraph_extremal(n: int, k: int, forbidden: Hypergraph, budget=None) -> ExtremalResult:
    """Largest number of hyperedges of a k-uniform hypergraph on [n] with no
    copy of the forbidden hypergraph."""
    if forbidden.k != k:
        raise GraphError(f"forbidden hypergraph is {forbidden.k}-uniform, not {k}")
    if not forbidden.hyperedges:
        raise GraphError("the forbidden hypergraph needs at least one hyperedge")
    if n < k:
        raise GraphError("ground set smaller than the uniformity")
    meter = BudgetMeter(budget)
    universe = []
    for c in combinations(range(n), k):
        m = 0
        for i in c:
            m |= 1 << i
        universe.append(m)
    universe.sort()
    uindex = {m: i for i, m in enumerate(universe)}
    copy_masks = []
    for img in _hypergraph_copies(n, forbidden):
        mask = 0
        for h in img:
            mask |= 1 << uindex[h]
        copy_masks.append(mask)
    guest_id = f"hypergraph-{k}u-{len(forbidden.hyperedges)}e"
    if not copy_masks:
        return ExtremalResult(
            n=n,
            guest_id=guest_id,
            value=len(universe),
            witness_edges=tuple(universe),
            status=EXACT,
            nodes_explored=0,
        )
    best_size, best_mask, nodes, closed = kernels.max_nonhitting(
        len(universe),
        copy_masks,
        max(meter.remaining_nodes, 1),
        max(meter.remaining_seconds, 1e-9),
    )
    meter.spend(nodes)
    witness = tuple(universe[i] for i in iter_bits(best_mask))
    chosen = set(witness)
    for img_mask in copy_masks:
        if all(universe[i] in chosen for i in iter_bits(img_mask)):
            raise AssertionError("witness contains a forbidden copy")
    return ExtremalResult(
        n=n,
        guest_id=guest_id,
        value=best_size,
        witness_edges=witness,
        status=EXACT if closed else LOWER_BOUND,
        nodes_explored=meter.nodes,
    )
