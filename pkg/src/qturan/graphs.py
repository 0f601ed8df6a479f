"""Bit-vector graphs, hypercubes and their edge layers, blocks, bipartitions,
and subgraph-copy enumeration.

A vertex subset of the ground set [n] is a plain int bit mask: ground element
i is bit i.  Hypercube vertices are exactly these masks, so the vertex index
of Q_n equals its label.  Every ordering in this module is by ascending mask
or index value, which keeps all output byte-stable across runs.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from . import kernels
from .search import SearchBudget

GROUND_CAP = 30


class GraphError(ValueError):
    """Domain error: malformed graph or argument outside an operation's contract."""


class ResourceLimitError(GraphError):
    """Construction refused because it would exceed the configured caps."""


class NotBipartiteError(GraphError):
    def __init__(self, odd_cycle):
        cycle = tuple(odd_cycle)
        super().__init__(f"graph is not bipartite: odd cycle {list(cycle)}")
        self.odd_cycle = cycle


def iter_bits(mask: int):
    """Yield the set bit indices of mask in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def subset_hex(mask: int) -> str:
    return format(mask, "x")


def parse_subset_hex(text: str) -> int:
    value = int(text, 16)
    if value < 0:
        raise ValueError("subset mask must be nonnegative")
    return value


class Graph:
    """Immutable simple undirected graph with adjacency bit masks.

    When ``labels`` is present the graph lives inside a hypercube: labels[v]
    is the vertex's ground subset and every edge must join two subsets that
    differ in exactly one element.
    """

    __slots__ = ("vertex_count", "edges", "adj", "labels", "ground_set_size", "_label_index")

    def __init__(self, vertex_count, edges, labels=None, ground_set_size=None):
        if vertex_count < 0:
            raise GraphError("vertex_count must be nonnegative")
        seen = set()
        norm = []
        for e in edges:
            u, v = e
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            if not (0 <= u < vertex_count and 0 <= v < vertex_count):
                raise GraphError(f"edge {e} out of range for {vertex_count} vertices")
            if u > v:
                u, v = v, u
            if (u, v) in seen:
                continue
            seen.add((u, v))
            norm.append((u, v))
        norm.sort()
        adj = [0] * vertex_count
        for u, v in norm:
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        if labels is not None:
            labels = tuple(labels)
            if len(labels) != vertex_count:
                raise GraphError("labels must cover every vertex")
            width = max((lab.bit_length() for lab in labels), default=0)
            if ground_set_size is None:
                ground_set_size = width
            elif width > ground_set_size:
                raise GraphError("label exceeds the ground set size")
            if len(set(labels)) != vertex_count:
                raise GraphError("labels must be distinct")
            for u, v in norm:
                if (labels[u] ^ labels[v]).bit_count() != 1:
                    raise GraphError(
                        f"edge ({u}, {v}) joins labels that do not differ in exactly one element"
                    )
        self.vertex_count = vertex_count
        self.edges = tuple(norm)
        self.adj = tuple(adj)
        self.labels = labels
        self.ground_set_size = ground_set_size
        self._label_index = None

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def neighbors(self, v: int):
        return iter_bits(self.adj[v])

    def adjacent(self, u: int, v: int) -> bool:
        return self.adj[u] >> v & 1 == 1

    def label_index(self) -> dict:
        if self.labels is None:
            raise GraphError("graph has no labels")
        if self._label_index is None:
            self._label_index = {lab: v for v, lab in enumerate(self.labels)}
        return self._label_index

    def is_connected(self) -> bool:
        if self.vertex_count <= 1:
            return True
        seen = 1
        stack = [0]
        while stack:
            v = stack.pop()
            fresh = self.adj[v] & ~seen
            seen |= fresh
            stack.extend(iter_bits(fresh))
        return seen == (1 << self.vertex_count) - 1

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return (
            self.vertex_count == other.vertex_count
            and self.edges == other.edges
            and self.labels == other.labels
            and self.ground_set_size == other.ground_set_size
        )

    def __hash__(self):
        return hash((self.vertex_count, self.edges, self.labels, self.ground_set_size))

    def __repr__(self):
        tag = ", labeled" if self.labels is not None else ""
        return f"Graph({self.vertex_count} vertices, {len(self.edges)} edges{tag})"


def subgraph_from_edges(G: Graph, edges):
    """Graph induced by an edge subset, vertices renumbered ascending.

    Returns (subgraph, vertex_map) where vertex_map[i] is the original id of
    the subgraph's vertex i.  Labels are carried over when present.
    """
    verts = sorted({u for e in edges for u in e})
    back = {v: i for i, v in enumerate(verts)}
    sub_edges = [(back[u], back[v]) for u, v in edges]
    labels = tuple(G.labels[v] for v in verts) if G.labels is not None else None
    sub = Graph(len(verts), sub_edges, labels=labels, ground_set_size=G.ground_set_size)
    return sub, tuple(verts)


def edge_subgraph(G: Graph, edges) -> Graph:
    """Spanning subgraph of G keeping only the given edges (all vertices kept)."""
    return Graph(G.vertex_count, edges, labels=G.labels, ground_set_size=G.ground_set_size)


def build_hypercube(n: int, cap: int = GROUND_CAP) -> Graph:
    """The hypercube on all subsets of [n]; vertex index equals subset mask."""
    if n < 0:
        raise GraphError("n must be nonnegative")
    if n > cap:
        raise ResourceLimitError(f"hypercube ground set {n} exceeds the cap {cap}")
    size = 1 << n
    edges = []
    for v in range(size):
        for b in range(n):
            if not v >> b & 1:
                edges.append((v, v | 1 << b))
    return Graph(size, edges, labels=range(size), ground_set_size=n)


def layer_subgraph(n: int, j: int, cap: int = GROUND_CAP) -> Graph:
    """Edge layer j of Q_n: the subgraph induced by the j- and (j-1)-element
    subsets, with labels retained.  Has exactly j * C(n, j) edges."""
    if n < 0 or n > cap:
        raise ResourceLimitError(f"ground set {n} outside [0, {cap}]")
    if not 1 <= j <= n:
        raise GraphError(f"layer index {j} outside [1, {n}]")
    masks = []
    for r in (j - 1, j):
        for c in combinations(range(n), r):
            m = 0
            for i in c:
                m |= 1 << i
            masks.append(m)
    masks.sort()
    index = {m: i for i, m in enumerate(masks)}
    edges = []
    for m in masks:
        if m.bit_count() == j:
            for b in iter_bits(m):
                edges.append((index[m ^ (1 << b)], index[m]))
    return Graph(len(masks), edges, labels=masks, ground_set_size=n)


@dataclass(frozen=True)
class BlockDecomposition:
    blocks: tuple
    cut_vertices: frozenset


def blocks(G: Graph) -> BlockDecomposition:
    """Biconnected components as edge sets, plus the cut vertices.

    Blocks partition the edge set; each is two-connected or a single bridge.
    Output order: each block's edges sorted, blocks sorted by their smallest
    edge.
    """
    n = G.vertex_count
    disc = [-1] * n
    low = [0] * n
    comps = []
    cuts = set()
    timer = 0
    for root in range(n):
        if disc[root] != -1:
            continue
        disc[root] = low[root] = timer
        timer += 1
        root_children = 0
        estack = []
        stack = [(root, -1, iter_bits(G.adj[root]))]
        while stack:
            v, parent, it = stack[-1]
            advanced = False
            for u in it:
                if disc[u] == -1:
                    if v == root:
                        root_children += 1
                    estack.append((v, u))
                    disc[u] = low[u] = timer
                    timer += 1
                    stack.append((u, v, iter_bits(G.adj[u])))
                    advanced = True
                    break
                if u != parent and disc[u] < disc[v]:
                    estack.append((v, u))
                    if disc[u] < low[v]:
                        low[v] = disc[u]
            if advanced:
                continue
            stack.pop()
            if parent == -1:
                continue
            if low[v] < low[parent]:
                low[parent] = low[v]
            if low[v] >= disc[parent]:
                comp = []
                while True:
                    a, b = estack.pop()
                    comp.append((a, b) if a < b else (b, a))
                    if (a, b) == (parent, v):
                        break
                comp.sort()
                comps.append(tuple(comp))
                if parent != root:
                    cuts.add(parent)
        if root_children >= 2:
            cuts.add(root)
    comps.sort()
    return BlockDecomposition(blocks=tuple(comps), cut_vertices=frozenset(cuts))


def _tree_cycle(parent, depth, u, v):
    """Vertex cycle closed by the non-tree edge (u, v), via tree paths to the LCA."""
    pu, pv = [u], [v]
    a, b = u, v
    while depth[a] > depth[b]:
        a = parent[a]
        pu.append(a)
    while depth[b] > depth[a]:
        b = parent[b]
        pv.append(b)
    while a != b:
        a = parent[a]
        b = parent[b]
        pu.append(a)
        pv.append(b)
    pv.pop()  # drop the duplicated LCA
    return tuple(pu[::-1] + pv)  # lca .. u, then v .. (lca-child); edge (u,v) closes it


@dataclass(frozen=True)
class Bipartition:
    side: tuple

    def sides(self):
        zero = tuple(v for v, s in enumerate(self.side) if s == 0)
        one = tuple(v for v, s in enumerate(self.side) if s == 1)
        return zero, one


def bipartition(G: Graph) -> Bipartition:
    """The 2-coloring of a connected bipartite graph, vertex 0 on side 0.

    Raises NotBipartiteError with an odd-cycle witness, or GraphError when G
    is disconnected.
    """
    n = G.vertex_count
    if n == 0:
        return Bipartition(side=())
    side = [-1] * n
    parent = [-1] * n
    depth = [0] * n
    side[0] = 0
    queue = [0]
    qi = 0
    while qi < len(queue):
        v = queue[qi]
        qi += 1
        for u in G.neighbors(v):
            if side[u] == -1:
                side[u] = side[v] ^ 1
                parent[u] = v
                depth[u] = depth[v] + 1
                queue.append(u)
            elif side[u] == side[v]:
                raise NotBipartiteError(_tree_cycle(parent, depth, v, u))
    if len(queue) != n:
        raise GraphError("graph is disconnected")
    return Bipartition(side=tuple(side))


class Embedding:
    """Injective guest-to-host map realizing every guest edge.

    Host-based embeddings carry the host graph and the assignment (host
    vertex per guest vertex); when the host is labeled, or when the embedding
    targets a hypercube directly, ``images`` gives each guest vertex's ground
    subset.
    """

    __slots__ = ("guest", "host", "assignment", "images", "n")

    def __init__(self, guest, host=None, assignment=None, images=None, n=None):
        self.guest = guest
        self.host = host
        if host is not None:
            self.assignment = tuple(assignment)
            if len(self.assignment) != guest.vertex_count:
                raise GraphError("assignment must cover every guest vertex")
            if images is None and host.labels is not None:
                images = tuple(host.labels[x] for x in self.assignment)
            if n is None:
                n = host.ground_set_size
        else:
            if images is None:
                raise GraphError("an embedding needs a host or explicit images")
            self.assignment = None
            images = tuple(images)
            if len(images) != guest.vertex_count:
                raise GraphError("images must cover every guest vertex")
        self.images = tuple(images) if images is not None else None
        self.n = n

    def edge_key(self):
        """Canonical key of the induced host edge set (copy identity)."""
        if self.assignment is None:
            raise GraphError("edge keys need a host-based embedding")
        key = []
        for u, v in self.guest.edges:
            a, b = self.assignment[u], self.assignment[v]
            key.append((a, b) if a < b else (b, a))
        key.sort()
        return tuple(key)

    def validate(self) -> None:
        if self.assignment is not None:
            if len(set(self.assignment)) != len(self.assignment):
                raise GraphError("embedding is not injective")
            for u, v in self.guest.edges:
                if not self.host.adjacent(self.assignment[u], self.assignment[v]):
                    raise GraphError(f"guest edge ({u}, {v}) is not realized")
        else:
            if len(set(self.images)) != len(self.images):
                raise GraphError("embedding is not injective")
            for u, v in self.guest.edges:
                if (self.images[u] ^ self.images[v]).bit_count() != 1:
                    raise GraphError(f"guest edge ({u}, {v}) is not a hypercube edge")
            if self.n is not None:
                full = (1 << self.n) - 1
                for img in self.images:
                    if img & ~full:
                        raise GraphError("image outside the ground set")

    def is_valid(self) -> bool:
        try:
            self.validate()
        except GraphError:
            return False
        return True

    def __repr__(self):
        return f"Embedding({self.guest.vertex_count} vertices, n={self.n})"


@dataclass(frozen=True)
class CopyEnumeration:
    """Distinct copies of a guest inside a host.

    status is "complete" (every copy listed), "limit" (stopped at the
    requested number), or "inconclusive" (node budget ran out; the list is a
    partial result).
    """

    copies: tuple
    status: str
    nodes_explored: int


def assignment_order(G: Graph) -> list:
    """Static search order: repeatedly take the unordered vertex with the most
    already-ordered neighbors, ties to the smallest index."""
    g = G.vertex_count
    placed = [False] * g
    score = [0] * g
    order = []
    for _ in range(g):
        best = -1
        for v in range(g):
            if placed[v]:
                continue
            if best == -1 or score[v] > score[best]:
                best = v
        placed[best] = True
        order.append(best)
        for u in G.neighbors(best):
            score[u] += 1
    return order


def bfs_order(G: Graph, root: int = 0) -> list:
    """Breadth-first order from the root, neighbors ascending; remaining
    components appended from their smallest vertex."""
    g = G.vertex_count
    seen = [False] * g
    order = []
    start = root
    while len(order) < g:
        if seen[start]:
            start = next(v for v in range(g) if not seen[v])
        seen[start] = True
        queue = [start]
        qi = 0
        while qi < len(queue):
            v = queue[qi]
            qi += 1
            order.append(v)
            for u in G.neighbors(v):
                if not seen[u]:
                    seen[u] = True
                    queue.append(u)
        start = 0
    return order


def prev_positions(G: Graph, order) -> list:
    posof = {v: i for i, v in enumerate(order)}
    prev = []
    for i, v in enumerate(order):
        ps = sorted(posof[u] for u in G.neighbors(v) if posof[u] < i)
        prev.append(tuple(ps))
    return prev


def degree_candidate_masks(host: Graph, guest: Graph, order) -> list:
    """Static candidate mask per position: hosts of sufficient degree."""
    degs = sorted(set(guest.degree(v) for v in order))
    by_deg = {}
    for d in degs:
        m = 0
        for x in range(host.vertex_count):
            if host.degree(x) >= d:
                m |= 1 << x
        by_deg[d] = m
    return [by_deg[guest.degree(v)] for v in order]


def enumerate_copies(host: Graph, guest: Graph, limit: int = 0, budget=None) -> CopyEnumeration:
    """All distinct copies of the guest inside the host.

    Two embeddings are the same copy when they induce the same host edge set;
    the representative kept is the first one found, and the final list is
    sorted by that edge set, so the output never depends on scheduling.
    limit=0 means unlimited.
    """
    if limit < 0:
        raise GraphError("limit must be nonnegative")
    budget = budget if budget is not None else SearchBudget()
    if guest.vertex_count > host.vertex_count or guest.edge_count > host.edge_count:
        return CopyEnumeration(copies=(), status="complete", nodes_explored=0)
    if guest.edge_count == 0:
        triv = Embedding(guest, host=host, assignment=tuple(range(guest.vertex_count)))
        copies = (triv,) if (limit == 0 or limit >= 1) else ()
        return CopyEnumeration(copies=copies, status="complete", nodes_explored=0)
    order = assignment_order(guest)
    prev = prev_positions(guest, order)
    cand = degree_candidate_masks(host, guest, order)
    raw, nodes, status = kernels.embed_search(
        host.adj,
        host.labels,
        order,
        prev,
        cand,
        False,
        guest.edges,
        True,
        limit,
        guest.vertex_count,
        budget.max_nodes,
        budget.max_seconds,
    )
    embs = [Embedding(guest, host=host, assignment=a) for a in raw]
    embs.sort(key=Embedding.edge_key)
    out_status = {"complete": "complete", "limit": "limit", "budget": "inconclusive"}[status]
    return CopyEnumeration(copies=tuple(embs), status=out_status, nodes_explored=nodes)
