"""Graph family constructors and their role bookkeeping."""

import pytest

from qturan import (
    Graph,
    GraphError,
    bipartition,
    blocks,
    complete_bipartite,
    cycle,
    enumerate_copies,
    glue_at_vertex,
    h_graph,
    star_of_copies,
    subdivide,
    theta,
)


def is_isomorphic(A, B):
    if (A.vertex_count, A.edge_count) != (B.vertex_count, B.edge_count):
        return False
    return bool(enumerate_copies(B, A, limit=1).copies)


class TestSubdivide:
    def test_triangle_becomes_c6(self):
        k3 = Graph(3, [(0, 1), (1, 2), (0, 2)])
        sub = subdivide(k3)
        assert is_isomorphic(sub.graph, cycle(6))

    def test_single_edge(self):
        sub = subdivide(Graph(2, [(0, 1)]))
        assert sub.graph.vertex_count == 3 and sub.graph.edge_count == 2

    def test_k32_is_theta3(self):
        sub = subdivide(complete_bipartite(3, 2))
        assert sub.graph.vertex_count == 11 and sub.graph.edge_count == 12
        assert len(sub.mark("poles")) == 5
        assert len(sub.mark("subdivision_vertices")) == 6

    def test_always_bipartite(self):
        for g in (Graph(3, [(0, 1), (1, 2), (0, 2)]), complete_bipartite(3, 3), cycle(5)):
            sub = subdivide(g)
            bipartition(sub.graph)  # raises if an odd cycle survived


class TestCompleteBipartite:
    def test_single_edge(self):
        g = complete_bipartite(1, 1)
        assert g.edges == ((0, 1),)

    def test_counts(self):
        g = complete_bipartite(3, 2)
        assert g.vertex_count == 5 and g.edge_count == 6

    def test_degree_sequence(self):
        g = complete_bipartite(2, 4)
        assert sorted((g.degree(v) for v in range(6)), reverse=True) == [4, 4, 2, 2, 2, 2]

    def test_rejects_empty_side(self):
        with pytest.raises(GraphError):
            complete_bipartite(0, 3)


class TestTheta:
    def test_q2_is_c8(self):
        assert is_isomorphic(theta(2).graph, cycle(8))

    @pytest.mark.parametrize("q", range(2, 9))
    def test_counts(self, q):
        t = theta(q).graph
        assert t.vertex_count == 3 * q + 2
        assert t.edge_count == 4 * q

    def test_q3_degree_profile(self):
        t = theta(3).graph
        assert sum(1 for v in range(t.vertex_count) if t.degree(v) == 3) == 2

    def test_main_poles_have_degree_q(self):
        for q in (3, 5):
            t = theta(q)
            assert all(t.graph.degree(v) == q for v in t.mark("main_poles"))

    def test_main_poles_on_same_side(self):
        for q in range(2, 6):
            t = theta(q)
            side = bipartition(t.graph).side
            a, b = t.mark("main_poles")
            assert side[a] == side[b]

    def test_legs_have_length_four(self):
        # q internally disjoint paths of length 4 between the main poles
        t = theta(3)
        a, b = t.mark("main_poles")
        mids = [v for v in range(t.graph.vertex_count) if v not in (a, b)]
        legs = 0
        for m in t.mark("poles"):
            if m in (a, b):
                continue
            legs += 1
        assert legs == 3
        for mid in range(3):
            nb = set(t.graph.neighbors(mid))
            assert len(nb) == 2
            assert all(t.graph.adjacent(s, a) or t.graph.adjacent(s, b) for s in nb)


class TestHGraph:
    @pytest.mark.parametrize("q", range(3, 7))
    def test_counts(self, q):
        h = h_graph(q).graph
        assert h.vertex_count == 6 * q + 3
        assert h.edge_count == 8 * q

    def test_shared_vertex_degree(self):
        for q in (3, 4):
            h = h_graph(q)
            (shared,) = h.mark("shared_vertex")
            assert h.graph.degree(shared) == q + 2

    def test_blocks_are_thetas(self):
        h = h_graph(4)
        dec = blocks(h.graph)
        assert len(dec.blocks) == 2
        assert all(len(b) == 16 for b in dec.blocks)

    def test_bipartite_and_connected(self):
        for q in (3, 5):
            g = h_graph(q).graph
            assert g.is_connected()
            bipartition(g)

    def test_rejects_small_q(self):
        with pytest.raises(GraphError):
            h_graph(2)

    def test_any_subdivision_vertex_gives_isomorphic_graph(self):
        # exhaustive check for q=3 that the deterministic gluing choice is
        # harmless: gluing at every subdivision vertex yields the same graph
        reference = h_graph(3).graph
        t = theta(3)
        for s in t.mark("subdivision_vertices"):
            variant = glue_at_vertex(theta(3), s, theta(3), 3).graph
            assert is_isomorphic(variant, reference)


class TestGlue:
    def test_two_edges_make_a_path(self):
        e = Graph(2, [(0, 1)])
        g = glue_at_vertex(e, 1, e, 0)
        assert g.graph.vertex_count == 3 and g.graph.edge_count == 2

    def test_two_c8s(self):
        g = glue_at_vertex(cycle(8), 0, cycle(8), 0)
        assert g.graph.vertex_count == 15 and g.graph.edge_count == 16
        assert blocks(g.graph).cut_vertices == frozenset({0})

    def test_counts_always_add(self):
        a, b = theta(3), cycle(5)
        g = glue_at_vertex(a, 4, b, 2)
        assert g.graph.vertex_count == a.graph.vertex_count + b.vertex_count - 1
        assert g.graph.edge_count == a.graph.edge_count + b.edge_count

    def test_marks_survive(self):
        g = h_graph(3)
        assert len(g.mark("main_poles")) == 4
        assert g.mark("shared_vertex") == (5,)


class TestStarOfCopies:
    def test_star_of_edges(self):
        e = Graph(2, [(0, 1)])
        s = star_of_copies(e, 0, 5)
        g = s.graph
        assert g.vertex_count == 6 and g.edge_count == 5
        assert g.degree(0) == 5

    def test_two_c8s_share_a_vertex(self):
        s = star_of_copies(cycle(8), 0, 2)
        assert s.graph.vertex_count == 15 and s.graph.edge_count == 16

    def test_theta_star(self):
        t = theta(3)
        pole = t.mark("main_poles")[0]
        s = star_of_copies(t, pole, 3)
        assert s.graph.vertex_count == 31 and s.graph.edge_count == 36
        assert s.graph.degree(pole) == 9
