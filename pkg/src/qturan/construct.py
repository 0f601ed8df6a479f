"""Constructors for the graph families under study, with role bookkeeping.

A MarkedGraph is a graph plus named vertex roles (poles, main poles,
subdivision vertices, shared vertex).  Roles survive gluing so later stages
can find distinguished vertices without re-deriving them.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .graphs import Graph, GraphError

ROLES = ("main_poles", "poles", "subdivision_vertices", "shared_vertex")


@dataclass(frozen=True)
class MarkedGraph:
    graph: Graph
    marks: dict = field(default_factory=dict)

    def __post_init__(self):
        for role, verts in self.marks.items():
            if role not in ROLES:
                raise GraphError(f"unknown mark role {role!r}")
            for v in verts:
                if not 0 <= v < self.graph.vertex_count:
                    raise GraphError(f"marked vertex {v} not in graph")
        mains = self.marks.get("main_poles", ())
        poles = self.marks.get("poles", ())
        if mains and poles and not set(mains) <= set(poles):
            raise GraphError("main poles must be poles")

    def mark(self, role):
        return tuple(self.marks.get(role, ()))


def as_marked(G) -> MarkedGraph:
    if isinstance(G, MarkedGraph):
        return G
    return MarkedGraph(graph=G, marks={})


def cycle(m: int) -> Graph:
    if m < 3:
        raise GraphError("a cycle needs at least 3 vertices")
    return Graph(m, [(i, (i + 1) % m) for i in range(m)])


def path(length: int) -> Graph:
    """Path with the given number of edges."""
    if length < 0:
        raise GraphError("path length must be nonnegative")
    return Graph(length + 1, [(i, i + 1) for i in range(length)])


def complete_bipartite(s: int, t: int) -> Graph:
    """K_{s,t}, first side numbered 0..s-1."""
    if s < 1 or t < 1:
        raise GraphError("both sides must be nonempty")
    return Graph(s + t, [(i, s + j) for i in range(s) for j in range(t)])


def subdivide(G: Graph) -> MarkedGraph:
    """1-subdivision: each edge becomes a path of length 2 through a fresh
    vertex.  Original vertices are the poles, fresh ones the subdivision
    vertices (numbered after the poles, in edge order)."""
    base = G.vertex_count
    edges = []
    for i, (u, v) in enumerate(G.edges):
        w = base + i
        edges.append((u, w))
        edges.append((v, w))
    marks = {
        "poles": tuple(range(base)),
        "subdivision_vertices": tuple(range(base, base + len(G.edges))),
    }
    return MarkedGraph(graph=Graph(base + len(G.edges), edges), marks=marks)


def theta(q: int) -> MarkedGraph:
    """Theta graph with q legs of length 4: the subdivision of K_{q,2}.

    Vertices 0..q-1 are the middle poles, q and q+1 the two main poles, and
    q+2.. the subdivision vertices in K_{q,2} edge order.
    """
    if q < 2:
        raise GraphError("theta needs at least 2 legs")
    sub = subdivide(complete_bipartite(q, 2))
    marks = dict(sub.marks)
    marks["main_poles"] = (q, q + 1)
    return MarkedGraph(graph=sub.graph, marks=marks)


def glue_at_vertex(A, a: int, B, b: int) -> MarkedGraph:
    """Disjoint union with a and b identified.

    A keeps its numbering; B's vertices follow with b removed, order kept.
    Roles from both sides are carried over (B's remapped) and the identified
    vertex is marked shared_vertex.
    """
    A = as_marked(A)
    B = as_marked(B)
    ga, gb = A.graph, B.graph
    if not 0 <= a < ga.vertex_count:
        raise GraphError(f"vertex {a} not in the first graph")
    if not 0 <= b < gb.vertex_count:
        raise GraphError(f"vertex {b} not in the second graph")
    na = ga.vertex_count

    def remap(v):
        if v == b:
            return a
        return na + v - (1 if v > b else 0)

    edges = list(ga.edges) + [(remap(u), remap(v)) for u, v in gb.edges]
    marks = {}
    for role in ROLES:
        merged = []
        for v in A.mark(role):
            if v not in merged:
                merged.append(v)
        for v in B.mark(role):
            w = remap(v)
            if w not in merged:
                merged.append(w)
        if merged:
            marks[role] = tuple(merged)
    marks["shared_vertex"] = (a,)
    return MarkedGraph(graph=Graph(na + gb.vertex_count - 1, edges), marks=marks)


def h_graph(q: int) -> MarkedGraph:
    """Two theta graphs with q legs sharing one vertex: a subdivision vertex
    of the first copy identified with a main pole of the second.

    The identified subdivision vertex is the first one adjacent to the first
    copy's first main pole, so the construction is reproducible; any other
    choice gives an isomorphic graph.
    """
    if q < 3:
        raise GraphError("h_graph needs q >= 3")
    t1 = theta(q)
    t2 = theta(q)
    shared_sub = q + 2  # subdivision vertex of the K_{q,2} edge (0, q)
    if not t1.graph.adjacent(shared_sub, q):
        raise AssertionError("construction invariant broken")
    return glue_at_vertex(t1, shared_sub, t2, q)


def star_of_copies(B, b: int, q: int) -> MarkedGraph:
    """q disjoint copies of B with all copies of b identified.

    Copy 0 keeps B's numbering; each later copy appends its remaining
    vertices in order.
    """
    B = as_marked(B)
    gb = B.graph
    if not 0 <= b < gb.vertex_count:
        raise GraphError(f"vertex {b} not in the graph")
    if q < 1:
        raise GraphError("need at least one copy")
    nb = gb.vertex_count
    others = [v for v in range(nb) if v != b]
    rank = {v: i for i, v in enumerate(others)}

    def remap(i, v):
        if v == b:
            return b
        if i == 0:
            return v
        return nb + (i - 1) * (nb - 1) + rank[v]

    edges = []
    for i in range(q):
        for u, v in gb.edges:
            edges.append((remap(i, u), remap(i, v)))
    marks = {}
    for role in ROLES:
        merged = []
        for i in range(q):
            for v in B.mark(role):
                w = remap(i, v)
                if w not in merged:
                    merged.append(w)
        if merged:
            marks[role] = tuple(merged)
    marks["shared_vertex"] = (b,)
    total = nb + (q - 1) * (nb - 1)
    return MarkedGraph(graph=Graph(total, edges), marks=marks)
