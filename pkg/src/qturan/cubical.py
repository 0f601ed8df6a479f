"""Deciding whether a graph embeds in a hypercube.

Two certificate types are supported and converted into each other: an edge
coloring in which every cycle uses each color an even number of times and
every nontrivial path uses some color an odd number of times, and an explicit
embedding.  The coloring criterion collapses to one statement about the
vertex potential phi (xor of edge-color indicator vectors along any path from
a fixed root): phi must be well-defined and injective, and then v -> phi(v)
is an embedding.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import kernels
from .graphs import (
    Embedding,
    Graph,
    GraphError,
    _tree_cycle,
    assignment_order,
    build_hypercube,
    degree_candidate_masks,
    prev_positions,
)
from .search import (
    EXHAUSTED_NONE,
    FOUND,
    INCONCLUSIVE,
    SearchBudget,
    SearchOutcome,
)


@dataclass(frozen=True)
class NiceColoring:
    """Edge coloring; colors is a map from edge (u, v) with u < v to a color
    index below color_count."""

    colors: dict
    color_count: int


@dataclass(frozen=True)
class NiceCheck:
    ok: bool
    reason: str = ""
    cycle: tuple = ()
    pair: tuple = ()


def _check_colored(G: Graph, coloring: NiceColoring):
    keys = set(coloring.colors)
    edges = set(G.edges)
    if keys != edges:
        missing = edges - keys
        if missing:
            raise GraphError(f"uncolored edge {sorted(missing)[0]}")
        raise GraphError(f"color map has a non-edge {sorted(keys - edges)[0]}")
    for e, c in coloring.colors.items():
        if not 0 <= c < coloring.color_count:
            raise GraphError(f"edge {e} has color {c} outside [0, {coloring.color_count})")


def _potential(G: Graph, coloring: NiceColoring):
    """BFS potentials from vertex 0, plus parents and depths of the tree."""
    n = G.vertex_count
    phi = [-1] * n
    parent = [-1] * n
    depth = [0] * n
    phi[0] = 0
    queue = [0]
    qi = 0
    while qi < len(queue):
        v = queue[qi]
        qi += 1
        for u in G.neighbors(v):
            if phi[u] == -1:
                e = (v, u) if v < u else (u, v)
                phi[u] = phi[v] ^ (1 << coloring.colors[e])
                parent[u] = v
                depth[u] = depth[v] + 1
                queue.append(u)
    if len(queue) != n:
        raise GraphError("graph is disconnected")
    return phi, parent, depth


def verify_nice_coloring(G: Graph, coloring: NiceColoring) -> NiceCheck:
    """True iff the induced potential is well-defined and injective.

    Well-definedness is the even-cycle condition checked over a cycle-space
    basis (each non-tree edge); injectivity is the odd-path condition.  On
    failure the violating cycle or vertex pair comes back in the result.
    """
    if G.vertex_count == 0:
        raise GraphError("empty graph")
    _check_colored(G, coloring)
    phi, parent, depth = _potential(G, coloring)
    for u, v in G.edges:
        if phi[u] ^ phi[v] != 1 << coloring.colors[(u, v)]:
            return NiceCheck(ok=False, reason="cycle", cycle=_tree_cycle(parent, depth, u, v))
    seen = {}
    for v, value in enumerate(phi):
        if value in seen:
            return NiceCheck(ok=False, reason="pair", pair=(seen[value], v))
        seen[value] = v
    return NiceCheck(ok=True)


def coloring_to_embedding(G: Graph, coloring: NiceColoring) -> Embedding:
    """The embedding v -> phi(v) into the cube of dimension color_count; the
    root (vertex 0) maps to the empty set."""
    check = verify_nice_coloring(G, coloring)
    if not check.ok:
        raise GraphError(f"coloring is not nice ({check.reason})")
    phi, _, _ = _potential(G, coloring)
    return Embedding(G, images=phi, n=coloring.color_count)


def embedding_to_coloring(G: Graph, emb: Embedding) -> NiceColoring:
    """Color each edge by the ground element in which its endpoint images
    differ; coordinates are compacted to 0..c-1 in ascending order."""
    if emb.images is None:
        raise GraphError("embedding carries no subset images")
    emb.validate()
    if emb.guest is not G and emb.guest != G:
        raise GraphError("embedding belongs to a different guest")
    used = 0
    raw = {}
    for u, v in G.edges:
        d = emb.images[u] ^ emb.images[v]
        if d.bit_count() != 1:
            raise GraphError(f"edge ({u}, {v}) is not a hypercube edge")
        raw[(u, v)] = d.bit_length() - 1
        used |= d
    compact = {}
    for i, b in enumerate(sorted(set(raw.values()))):
        compact[b] = i
    colors = {e: compact[b] for e, b in raw.items()}
    return NiceColoring(colors=colors, color_count=used.bit_count())


def _potential_outcome(G, c_max, witness_builder, raw):
    assignment, nodes, status = raw
    if status == "found":
        return SearchOutcome(FOUND, witness_builder(assignment), nodes)
    if status == "none":
        return SearchOutcome(EXHAUSTED_NONE, None, nodes)
    return SearchOutcome(INCONCLUSIVE, None, nodes)


def find_nice_coloring(G: Graph, c_max: int, budget=None, _canonical=True) -> SearchOutcome:
    """Search for a nice coloring using at most c_max colors.

    The search assigns potentials directly: the root at the empty set, new
    coordinates introduced in index order (so the first root neighbors land
    on unit vectors), candidates ascending.  exhausted_none therefore proves
    the graph embeds in no cube of dimension c_max.
    """
    if c_max < 1:
        raise GraphError("c_max must be positive")
    if G.vertex_count == 0:
        raise GraphError("empty graph")
    if not G.is_connected():
        raise GraphError("graph is disconnected")
    budget = budget if budget is not None else SearchBudget()
    order = assignment_order(G)
    prev = prev_positions(G, order)
    raw = kernels.potential_search(
        order, prev, c_max, _canonical, G.vertex_count, budget.max_nodes, budget.max_seconds
    )

    def build(phi):
        raw_colors = {}
        for u, v in G.edges:
            d = phi[u] ^ phi[v]
            raw_colors[(u, v)] = d.bit_length() - 1
        compact = {b: i for i, b in enumerate(sorted(set(raw_colors.values())))}
        colors = {e: compact[b] for e, b in raw_colors.items()}
        return NiceColoring(colors=colors, color_count=len(compact))

    return _potential_outcome(G, c_max, build, raw)


def embed_in_hypercube(G: Graph, n: int, budget=None, _canonical=True) -> SearchOutcome:
    """Direct backtracking embedding search into the explicit cube Q_n.

    The root is pinned at the empty set (cubes are vertex-transitive) and new
    ground elements are introduced canonically, the same reductions
    find_nice_coloring uses; the two searches must agree on found versus
    exhausted_none.
    """
    budget = budget if budget is not None else SearchBudget()
    host = build_hypercube(n)
    if G.vertex_count == 0:
        return SearchOutcome(FOUND, Embedding(G, host=host, assignment=()), 0)
    if G.vertex_count > host.vertex_count:
        return SearchOutcome(EXHAUSTED_NONE, None, 0)
    order = assignment_order(G)
    prev = prev_positions(G, order)
    cand = degree_candidate_masks(host, G, order)
    if _canonical:
        cand[0] &= 1  # root pinned to the empty set
    raw, nodes, status = kernels.embed_search(
        host.adj,
        host.labels,
        order,
        prev,
        cand,
        _canonical,
        G.edges,
        False,
        1,
        G.vertex_count,
        budget.max_nodes,
        budget.max_seconds,
    )
    if raw:
        return SearchOutcome(FOUND, Embedding(G, host=host, assignment=raw[0]), nodes)
    if status == "complete":
        return SearchOutcome(EXHAUSTED_NONE, None, nodes)
    return SearchOutcome(INCONCLUSIVE, None, nodes)
