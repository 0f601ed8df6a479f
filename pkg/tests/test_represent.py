"""Partite representations: verification, search, gluing, scans, blocks."""

import random
from itertools import product

import pytest

from qturan import (
    Graph,
    GraphError,
    Hypergraph,
    NotBipartiteError,
    Representation,
    blocks_have_representations,
    cycle,
    enumerate_copies,
    find_representation,
    glue_at_vertex,
    glue_bottom,
    glue_top,
    h_graph,
    is_k_partite,
    pad_representation,
    path,
    pole_distance_scan,
    theta,
    theta_representation,
    verify_representation,
)
from qturan.graphs import bipartition, iter_bits, layer_subgraph, subgraph_from_edges
from qturan.represent import ZERO_DENSITY_VERDICT, _layer_candidates, top_vertices
from qturan.report import eight_cycle_representation
from qturan.search import SearchBudget
from qturan import kernels

C8 = cycle(8)


class TestVerifyRepresentation:
    def test_eight_cycle_example(self):
        assert verify_representation(C8, eight_cycle_representation()).ok

    def test_swapped_parts_fail(self):
        good = eight_cycle_representation()
        bad = Representation(k=2, n=4, images=good.images, parts=(0b0011, 0b1100))
        chk = verify_representation(C8, bad)
        assert not chk.ok and "part" in chk.reason

    def test_duplicate_images_fail(self):
        good = eight_cycle_representation()
        images = list(good.images)
        images[1] = images[3]
        chk = verify_representation(C8, Representation(k=2, n=4, images=tuple(images), parts=good.parts))
        assert not chk.ok and "injective" in chk.reason

    def test_non_cube_edge_fails(self):
        g = path(1)
        rep = Representation(k=2, n=4, images=(0b0011, 0b1100), parts=(0b0101, 0b1010))
        chk = verify_representation(g, rep)
        assert not chk.ok and "hypercube edge" in chk.reason

    def test_wrong_cardinality_fails(self):
        g = path(1)
        rep = Representation(k=3, n=4, images=(0b0111, 0b0011), parts=(1, 2, 4))
        chk = verify_representation(g, rep)
        assert not chk.ok


def brute_is_k_partite(h, k):
    """Oracle: try every assignment of the support to k parts."""
    support = 0
    for e in h.hyperedges:
        support |= e
    elems = list(iter_bits(support))
    for assign in product(range(k), repeat=len(elems)):
        part_of = dict(zip(elems, assign))
        if all(
            sorted(part_of[b] for b in iter_bits(e)) == list(range(k))
            for e in h.hyperedges
        ):
            return True
    return not h.hyperedges


class TestIsKPartite:
    def test_c4_hypergraph(self):
        h = Hypergraph.from_sets(4, 2, [{1, 2}, {2, 3}, {3, 4}, {1, 4}])
        out = is_k_partite(h, 2)
        assert out.found
        assert set(out.witness) == {0b0101, 0b1010}

    def test_nonpartite_triple(self):
        h = Hypergraph.from_sets(4, 3, [{1, 2, 4}, {2, 3, 4}, {1, 3, 4}])
        assert is_k_partite(h, 3).status == "exhausted_none"

    @pytest.mark.parametrize("k", [1, 2, 3, 4])
    def test_single_edge_trivially_partite(self, k):
        h = Hypergraph.from_sets(k, k, [set(range(1, k + 1))])
        assert is_k_partite(h, k).found

    def test_uniformity_mismatch_rejected(self):
        h = Hypergraph.from_sets(3, 2, [{1, 2}])
        with pytest.raises(GraphError):
            is_k_partite(h, 3)

    def test_budget(self):
        h = Hypergraph.from_sets(6, 3, [{1, 2, 3}, {2, 3, 4}, {3, 4, 5}, {4, 5, 6}])
        out = is_k_partite(h, 3, SearchBudget(max_nodes=1))
        assert out.status == "inconclusive"

    def test_matches_brute_force(self):
        rng = random.Random(7)
        cases = [
            Hypergraph.from_sets(4, 2, [{1, 2}, {2, 3}, {3, 4}, {1, 4}]),
            Hypergraph.from_sets(4, 3, [{1, 2, 4}, {2, 3, 4}, {1, 3, 4}]),
            Hypergraph.from_sets(5, 2, [{1, 2}, {2, 3}, {1, 3}]),
        ]
        for _ in range(20):
            n = rng.randint(3, 8)
            k = rng.randint(2, 3)
            edges = set()
            for _ in range(rng.randint(1, 6)):
                edges.add(frozenset(rng.sample(range(1, n + 1), k)))
            cases.append(Hypergraph.from_sets(n, k, [set(e) for e in edges]))
        for h in cases:
            got = is_k_partite(h, h.k)
            assert got.status != "inconclusive"
            assert got.found == brute_is_k_partite(h, h.k)


class TestThetaRepresentation:
    @pytest.mark.parametrize("q", range(2, 9))
    def test_verifies(self, q):
        rep = theta_representation(q)
        assert verify_representation(theta(q).graph, rep).ok
        assert rep.k == 2 and rep.n == q + 2

    def test_q2_matches_eight_cycle_up_to_relabeling(self):
        rep = theta_representation(2)
        tops = sorted(img for img in rep.images if img.bit_count() == 2)
        assert len(tops) == 4
        # top hypergraph is a 4-cycle on the ground elements
        h = Hypergraph(n=4, k=2, hyperedges=tuple(tops))
        assert is_k_partite(h, 2).found

    def test_q3_top_hypergraph_is_k23(self):
        rep = theta_representation(3)
        tops = [img for img in rep.images if img.bit_count() == 2]
        assert len(tops) == 6
        mains = 0b11
        assert all((t & mains).bit_count() == 1 for t in tops)

    def test_leg_through_first_middle_pole(self):
        rep = theta_representation(3)
        # main {1} - {1,3} - {3} - {2,3} - {2}
        imgs = set(rep.images)
        for img in (0b00001, 0b00101, 0b00100, 0b00110, 0b00010):
            assert img in imgs

    def test_padding_property(self):
        for q in (2, 3, 4):
            rep = theta_representation(q)
            padded = pad_representation(rep)
            assert verify_representation(theta(q).graph, padded).ok
            assert padded.k == rep.k + 1 and padded.n == rep.n + 1


def unreduced_representation_exists(H, k, n):
    """Oracle for find_representation: enumerate every embedding into the
    layer without symmetry reduction and test each top hypergraph."""
    side = bipartition(H).side
    host = layer_subgraph(n, k)
    from qturan.graphs import bfs_order, prev_positions

    for top_side in (0, 1):
        order = bfs_order(H)
        prev = prev_positions(H, order)
        cand = _layer_candidates(host, H, order, side, top_side)
        raw, _, status = kernels.embed_search(
            host.adj, host.labels, order, prev, cand, False,
            H.edges, True, 0, H.vertex_count, 10**8, float("inf"),
        )
        assert status == "complete"
        for assignment in raw:
            images = [host.labels[x] for x in assignment]
            tops = tuple(sorted(img for img in images if img.bit_count() == k))
            if is_k_partite(Hypergraph(n=n, k=k, hyperedges=tops), k).found:
                return True
    return False


class TestFindRepresentation:
    def test_c8_found_at_2_4(self, backend):
        out = find_representation(C8, 2, 4)
        assert out.found
        assert verify_representation(C8, out.witness).ok

    def test_theta3_found_at_2_5(self, backend):
        out = find_representation(theta(3).graph, 2, 5)
        assert out.found
        assert verify_representation(theta(3).graph, out.witness).ok

    @pytest.mark.parametrize("n", range(2, 8))
    def test_h3_exhausted_up_to_7(self, n, backend):
        out = find_representation(h_graph(3).graph, 2, n)
        assert out.status == "exhausted_none"

    def test_rejects_odd_cycle(self):
        with pytest.raises(NotBipartiteError):
            find_representation(Graph(3, [(0, 1), (1, 2), (0, 2)]), 2, 4)

    def test_rejects_disconnected(self):
        with pytest.raises(GraphError):
            find_representation(Graph(4, [(0, 1), (2, 3)]), 1, 2)

    def test_found_graph_is_the_guest(self):
        # the embedded subgraph must be isomorphic to the requested guest
        for guest, k, n in ((C8, 2, 4), (theta(3).graph, 2, 5), (path(2), 1, 2)):
            out = find_representation(guest, k, n)
            assert out.found
            verts = sorted(out.witness.images)
            index = {img: i for i, img in enumerate(verts)}
            edges = [
                (index[a], index[b])
                for i, a in enumerate(verts)
                for b in verts[i + 1 :]
                if (a ^ b).bit_count() == 1 and (a & b) == min(a, b)
            ]
            image_graph = Graph(len(verts), edges)
            hit = enumerate_copies(image_graph, guest, limit=1)
            assert hit.copies

    def test_reduction_matches_unreduced_search(self):
        tiny = [(cycle(4), 2, 3), (cycle(4), 2, 4), (path(2), 1, 2), (cycle(6), 2, 4), (path(3), 2, 3)]
        for guest, k, n in tiny:
            expected = unreduced_representation_exists(guest, k, n)
            got = find_representation(guest, k, n)
            assert got.status != "inconclusive"
            assert got.found == expected, (guest, k, n)

    def test_k1_convention_for_bridges(self):
        out = find_representation(path(1), 1, 1)
        assert out.found
        assert verify_representation(path(1), out.witness).ok


class TestGluing:
    def test_glue_top_c8(self):
        rep = eight_cycle_representation()
        tops = top_vertices(rep)
        glued = glue_top(rep, tops[0], rep, tops[1])
        joined = glue_at_vertex(C8, tops[0], C8, tops[1]).graph
        assert glued.k == 4 and glued.n == 8
        assert verify_representation(joined, glued).ok

    def test_glue_bottom_c8(self):
        rep = eight_cycle_representation()
        bots = [v for v in range(8) if rep.images[v].bit_count() == 1]
        glued = glue_bottom(rep, bots[0], rep, bots[1])
        joined = glue_at_vertex(C8, bots[0], C8, bots[1]).graph
        assert glued.k == 2
        assert verify_representation(joined, glued).ok

    def test_glue_top_thetas_at_subdivision(self):
        rep = theta_representation(3)
        subs = top_vertices(rep)
        glued = glue_top(rep, subs[0], rep, subs[1])
        joined = glue_at_vertex(theta(3), subs[0], theta(3), subs[1]).graph
        assert verify_representation(joined, glued).ok

    def test_glue_bottom_thetas_at_main_poles(self):
        rep = theta_representation(3)
        mains = theta(3).mark("main_poles")
        glued = glue_bottom(rep, mains[0], rep, mains[1])
        joined = glue_at_vertex(theta(3), mains[0], theta(3), mains[1]).graph
        assert glued.k == 2
        assert verify_representation(joined, glued).ok

    def test_glue_top_rejects_bottom_vertex(self):
        rep = eight_cycle_representation()
        with pytest.raises(GraphError):
            glue_top(rep, 0, rep, 1)  # vertex 0 is a bottom vertex

    def test_glue_bottom_rejects_top_vertex(self):
        rep = eight_cycle_representation()
        with pytest.raises(GraphError):
            glue_bottom(rep, 1, rep, 3)

    def test_hundred_randomized_gluings(self):
        rng = random.Random(20240)
        fixtures = [
            (C8, eight_cycle_representation()),
            (theta(3).graph, theta_representation(3)),
            (theta(4).graph, theta_representation(4)),
        ]
        for _ in range(100):
            ga, ra = fixtures[rng.randrange(3)]
            gb, rb = fixtures[rng.randrange(3)]
            if rng.random() < 0.5:
                a = rng.choice(top_vertices(ra))
                b = rng.choice(top_vertices(rb))
                glued = glue_top(ra, a, rb, b)
                assert glued.k == ra.k + rb.k
            else:
                bots_a = [v for v in range(len(ra.images)) if ra.images[v].bit_count() == ra.k - 1]
                bots_b = [v for v in range(len(rb.images)) if rb.images[v].bit_count() == rb.k - 1]
                a, b = rng.choice(bots_a), rng.choice(bots_b)
                glued = glue_bottom(ra, a, rb, b)
                assert glued.k == ra.k
            joined = glue_at_vertex(ga, a, gb, b).graph
            assert verify_representation(joined, glued).ok


class TestPoleScan:
    def test_q3_n5_always_distance_two(self, backend):
        rep = pole_distance_scan(3, 5)
        assert rep.status == "complete"
        assert rep.embeddings > 0 and rep.all_distance_two
        assert rep.distance_counts == ((2, rep.embeddings),)

    def test_q3_n6_always_distance_two(self):
        rep = pole_distance_scan(3, 6)
        assert rep.status == "complete"
        assert rep.embeddings > 0 and rep.all_distance_two

    def test_q2_n4_has_violation(self):
        rep = pole_distance_scan(2, 4)
        assert rep.status == "complete"
        assert not rep.all_distance_two
        assert rep.counterexample
        distances = dict(rep.distance_counts)
        assert any(d != 2 for d in distances)

    def test_budget_marks_inconclusive(self):
        rep = pole_distance_scan(3, 5, SearchBudget(max_nodes=2))
        assert rep.status == "inconclusive"


class TestBlockPredicate:
    def test_h3_verdict(self, backend):
        rep = blocks_have_representations(h_graph(3).graph, 2, 5)
        assert rep.all_represented
        assert rep.verdict == ZERO_DENSITY_VERDICT
        assert len(rep.outcomes) == 2
        for o in rep.outcomes:
            assert o.status == "found" and (o.k, o.n) == (2, 5)

    def test_tree_blocks_are_bridges(self):
        rep = blocks_have_representations(path(3), 2, 3)
        assert rep.all_represented
        assert all(o.k == 1 and o.n == 1 for o in rep.outcomes)

    def test_triangle_block_is_an_obstruction(self):
        g = Graph(4, [(0, 1), (1, 2), (0, 2), (2, 3)])
        rep = blocks_have_representations(g, 2, 4)
        assert not rep.all_represented
        statuses = sorted(o.status for o in rep.outcomes)
        assert statuses == ["found", "not_bipartite"]
        bad = next(o for o in rep.outcomes if o.status == "not_bipartite")
        assert len(bad.obstruction) == 3

    def test_blocks_needing_larger_n_report_exhausted(self):
        rep = blocks_have_representations(theta(3).graph, 2, 4)
        assert not rep.all_represented
        assert rep.outcomes[0].status == "exhausted_none"
