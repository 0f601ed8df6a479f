"""Core graph types, hypercubes, layers, blocks, bipartitions, and copy
enumeration."""

import pytest

from qturan import (
    Graph,
    GraphError,
    NotBipartiteError,
    ResourceLimitError,
    bipartition,
    blocks,
    build_hypercube,
    cycle,
    enumerate_copies,
    h_graph,
    layer_subgraph,
    path,
    theta,
)
from qturan.graphs import subgraph_from_edges
from qturan.search import SearchBudget


def brute_cycle_count(G, length):
    """Oracle: count cycles of the given length by walk enumeration, fixing
    the smallest vertex first and halving for direction."""
    count = 0

    def extend(walk, onpath):
        nonlocal count
        if len(walk) == length:
            if G.adjacent(walk[-1], walk[0]):
                count += 1
            return
        for u in G.neighbors(walk[-1]):
            if not onpath >> u & 1 and u > walk[0]:
                extend(walk + [u], onpath | 1 << u)

    for v in range(G.vertex_count):
        extend([v], 1 << v)
    return count // 2


class TestGraphType:
    def test_normalizes_edges(self):
        g = Graph(3, [(2, 1), (1, 2), (0, 1)])
        assert g.edges == ((0, 1), (1, 2))
        assert g.degree(1) == 2

    def test_rejects_self_loop(self):
        with pytest.raises(GraphError):
            Graph(2, [(1, 1)])

    def test_rejects_out_of_range(self):
        with pytest.raises(GraphError):
            Graph(2, [(0, 2)])

    def test_label_edges_must_be_cube_edges(self):
        with pytest.raises(GraphError):
            Graph(2, [(0, 1)], labels=(0b01, 0b111))

    def test_labels_must_be_distinct(self):
        with pytest.raises(GraphError):
            Graph(2, [], labels=(3, 3))


class TestHypercube:
    def test_empty_ground_set(self):
        q0 = build_hypercube(0)
        assert q0.vertex_count == 1 and q0.edge_count == 0

    def test_q3_counts(self):
        q3 = build_hypercube(3)
        assert q3.vertex_count == 8 and q3.edge_count == 12

    def test_q4_regular(self):
        q4 = build_hypercube(4)
        assert all(q4.degree(v) == 4 for v in range(16))

    def test_edges_are_containments(self):
        q = build_hypercube(4)
        for u, v in q.edges:
            assert (u & v) == min(u, v) and (u ^ v).bit_count() == 1

    def test_cap(self):
        with pytest.raises(ResourceLimitError):
            build_hypercube(31)
        with pytest.raises(ResourceLimitError):
            build_hypercube(12, cap=10)


class TestLayers:
    @pytest.mark.parametrize(
        "n,j,vertices,edges",
        [(3, 2, 6, 6), (4, 1, 5, 4), (5, 3, 20, 30)],
    )
    def test_counts(self, n, j, vertices, edges):
        L = layer_subgraph(n, j)
        assert L.vertex_count == vertices and L.edge_count == edges

    def test_bottom_of_first_layer_is_hub(self):
        L = layer_subgraph(4, 1)
        hub = L.label_index()[0]
        assert L.degree(hub) == 4

    def test_out_of_range(self):
        with pytest.raises(GraphError):
            layer_subgraph(3, 0)
        with pytest.raises(GraphError):
            layer_subgraph(3, 4)

    @pytest.mark.parametrize("n", range(1, 11))
    def test_layers_partition_cube_edges(self, n):
        total = sum(layer_subgraph(n, j).edge_count for j in range(1, n + 1))
        assert total == n * (1 << (n - 1))


class TestBlocks:
    def test_h3_two_theta_blocks(self):
        dec = blocks(h_graph(3).graph)
        assert len(dec.blocks) == 2
        assert all(len(b) == 12 for b in dec.blocks)
        assert len(dec.cut_vertices) == 1

    def test_path_gives_bridges(self):
        dec = blocks(path(3))
        assert dec.blocks == (((0, 1),), ((1, 2),), ((2, 3),))
        assert dec.cut_vertices == frozenset({1, 2})

    def test_q3_is_one_block(self):
        dec = blocks(build_hypercube(3))
        assert len(dec.blocks) == 1 and not dec.cut_vertices

    def test_blocks_partition_edges(self):
        for g in (h_graph(3).graph, path(5), theta(4).graph, build_hypercube(3)):
            dec = blocks(g)
            all_edges = [e for b in dec.blocks for e in b]
            assert sorted(all_edges) == list(g.edges)
            assert len(all_edges) == len(set(all_edges))

    def test_isolated_vertices_stay_out(self):
        g = Graph(4, [(0, 1)])
        dec = blocks(g)
        assert dec.blocks == (((0, 1),),)


class TestBipartition:
    def test_c8_even_sides(self):
        sides = bipartition(cycle(8)).sides()
        assert len(sides[0]) == 4 and len(sides[1]) == 4

    def test_theta3_pole_side(self):
        t = theta(3)
        b = bipartition(t.graph)
        sizes = sorted(len(s) for s in b.sides())
        assert sizes == [5, 6]
        poles = set(t.mark("poles"))
        side_of_pole = {b.side[v] for v in poles}
        assert len(side_of_pole) == 1

    def test_vertex_zero_on_side_zero(self):
        assert bipartition(cycle(6)).side[0] == 0

    def test_triangle_witness(self):
        k3 = Graph(3, [(0, 1), (1, 2), (0, 2)])
        with pytest.raises(NotBipartiteError) as exc:
            bipartition(k3)
        cyc = exc.value.odd_cycle
        assert len(cyc) == 3 and len(set(cyc)) == 3
        for i in range(3):
            assert k3.adjacent(cyc[i], cyc[(i + 1) % 3])

    def test_disconnected_rejected(self):
        with pytest.raises(GraphError):
            bipartition(Graph(4, [(0, 1), (2, 3)]))


class TestEnumerateCopies:
    def test_q2_is_one_c4(self, backend):
        out = enumerate_copies(build_hypercube(2), cycle(4))
        assert len(out.copies) == 1 and out.status == "complete"

    def test_c4_in_q3_one_per_face(self, backend):
        out = enumerate_copies(build_hypercube(3), cycle(4))
        assert len(out.copies) == 6

    def test_c6_in_q3_matches_oracle(self, backend):
        q3 = build_hypercube(3)
        oracle = brute_cycle_count(q3, 6)
        out = enumerate_copies(q3, cycle(6))
        assert oracle == 16
        assert len(out.copies) == oracle

    def test_single_edge_counts_edges(self, backend):
        for host in (build_hypercube(3), theta(3).graph, path(4)):
            out = enumerate_copies(host, path(1))
            assert len(out.copies) == host.edge_count

    def test_all_copies_validate(self, backend):
        out = enumerate_copies(build_hypercube(3), cycle(6))
        for emb in out.copies:
            emb.validate()

    def test_copy_keys_distinct_and_sorted(self):
        out = enumerate_copies(build_hypercube(3), cycle(4))
        keys = [e.edge_key() for e in out.copies]
        assert keys == sorted(keys)
        assert len(set(keys)) == len(keys)

    def test_edgeless_guest(self):
        host = build_hypercube(2)
        out = enumerate_copies(host, Graph(3, []))
        assert len(out.copies) == 1
        out = enumerate_copies(host, Graph(5, []))
        assert len(out.copies) == 0

    def test_limit_stops_early(self):
        out = enumerate_copies(build_hypercube(3), cycle(4), limit=2)
        assert len(out.copies) == 2 and out.status == "limit"

    def test_budget_gives_partial(self):
        out = enumerate_copies(
            build_hypercube(3), cycle(6), budget=SearchBudget(max_nodes=5)
        )
        assert out.status == "inconclusive"

    def test_guest_larger_than_host(self):
        out = enumerate_copies(cycle(4), cycle(6))
        assert out.copies == () and out.status == "complete"


def test_subgraph_from_edges_keeps_labels():
    q3 = build_hypercube(3)
    sub, vmap = subgraph_from_edges(q3, q3.edges[:3])
    assert sub.labels == tuple(q3.labels[v] for v in vmap)
