"""The built-in verification suite behind the `report` CLI subcommand.

Each check returns a Row whose name, status, and detail are fully
deterministic (no timings, no machine state), so two runs of the suite can
be compared byte for byte.  Wall-clock per row is measured by the CLI and
sent to stderr instead.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb

from .construct import cycle, h_graph, theta
from .cubical import (
    NiceColoring,
    coloring_to_embedding,
    embedding_to_coloring,
    find_nice_coloring,
    verify_nice_coloring,
)
from .graphs import (
    Graph,
    blocks,
    build_hypercube,
    edge_subgraph,
    enumerate_copies,
    iter_bits,
    layer_subgraph,
    subgraph_from_edges,
)
from .represent import (
    Hypergraph,
    Representation,
    blocks_have_representations,
    find_representation,
    glue_bottom,
    glue_top,
    is_k_partite,
    pole_distance_scan,
    theta_representation,
    top_vertices,
    verify_representation,
)
from .search import EXHAUSTED_NONE, FOUND, INCONCLUSIVE
from .turan import density_sequence, extremal_number, middle_mass, star_count_identity

PASS = "pass"
FAIL = "fail"
INCONCL = "inconclusive"

DEFAULT_SEED = 1729


@dataclass(frozen=True)
class Row:
    name: str
    status: str
    detail: str


def _row(name, ok, detail, inconclusive=False):
    if inconclusive:
        return Row(name=name, status=INCONCL, detail=detail)
    return Row(name=name, status=PASS if ok else FAIL, detail=detail)


def figure_coloring():
    """The nice coloring of the 3-leg theta graph drawn leg by leg: leg i is
    colored (i, 3, 4, i) from one main pole to the other."""
    colors = {}
    for i in range(3):
        s, sp = 5 + 2 * i, 6 + 2 * i
        colors[(min(3, s), max(3, s))] = i
        colors[(min(s, i), max(s, i))] = 3
        colors[(min(sp, i), max(sp, i))] = 4
        colors[(min(sp, 4), max(sp, 4))] = i
    return NiceColoring(colors=colors, color_count=5)


def eight_cycle_representation():
    """The 2-partite representation of the 8-cycle with top images 12, 23,
    34, 14 and parts {1,3} | {2,4}."""
    images = (0b0001, 0b0011, 0b0010, 0b0110, 0b0100, 0b1100, 0b1000, 0b1001)
    return Representation(k=2, n=4, images=images, parts=(0b0101, 0b1010))


def _isomorphic(A: Graph, B: Graph, budget):
    """True/False, or None when the budget ran out before an answer."""
    if A.vertex_count != B.vertex_count or A.edge_count != B.edge_count:
        return False
    got = enumerate_copies(B, A, limit=1, budget=budget)
    if not got.copies and got.status == "inconclusive":
        return None
    return bool(got.copies)


def check_constructions(budget, seed):
    problems = []
    inconclusive = False
    for q in range(2, 9):
        t = theta(q).graph
        if t.vertex_count != 3 * q + 2 or t.edge_count != 4 * q:
            problems.append(f"theta({q}) counts {t.vertex_count}/{t.edge_count}")
    for q in range(3, 7):
        h = h_graph(q).graph
        if h.vertex_count != 6 * q + 3 or h.edge_count != 8 * q:
            problems.append(f"h({q}) counts {h.vertex_count}/{h.edge_count}")
        dec = blocks(h)
        if len(dec.blocks) != 2 or len(dec.cut_vertices) != 1:
            problems.append(f"h({q}) blocks {len(dec.blocks)}/{len(dec.cut_vertices)}")
            continue
        for bl in dec.blocks:
            sub, _ = subgraph_from_edges(h, bl)
            iso = _isomorphic(sub, theta(q).graph, budget)
            if iso is None:
                inconclusive = True
            elif not iso:
                problems.append(f"h({q}) block not a theta graph")
    detail = "; ".join(problems) if problems else "theta q=2..8 and h q=3..6 counts, blocks, and block shapes"
    return _row("constructions", not problems, detail, inconclusive=inconclusive and not problems)


def check_cubicality(budget, seed):
    t3 = theta(3).graph
    fig = figure_coloring()
    ok_fig = verify_nice_coloring(t3, fig).ok
    h3 = h_graph(3).graph
    out_h = find_nice_coloring(h3, 10, budget)
    out_k3 = [
        find_nice_coloring(Graph(3, [(0, 1), (1, 2), (0, 2)]), c, budget)
        for c in range(1, 7)
    ]
    corpus = [cycle(4), cycle(6), cycle(8), t3, h3]
    round_ok = True
    inconclusive = out_h.status == INCONCLUSIVE or any(
        o.status == INCONCLUSIVE for o in out_k3
    )
    for g in corpus:
        out = find_nice_coloring(g, 10, budget)
        if out.status == INCONCLUSIVE:
            inconclusive = True
            continue
        if not out.found:
            round_ok = False
            continue
        emb = coloring_to_embedding(g, out.witness)
        back = embedding_to_coloring(g, emb)
        emb2 = coloring_to_embedding(g, back)
        if emb2.images != emb.images or not verify_nice_coloring(g, back).ok:
            round_ok = False
    ok = (
        ok_fig
        and out_h.found
        and all(o.status == EXHAUSTED_NONE for o in out_k3 if o.status != INCONCLUSIVE)
        and round_ok
    )
    detail = (
        f"figure coloring {'ok' if ok_fig else 'BAD'}; "
        f"h(3) nice coloring {out_h.status} ({out_h.nodes_explored} nodes); "
        f"K3 exhausted for c<=6; round trips {'ok' if round_ok else 'BAD'}"
    )
    return _row("cubicality", ok, detail, inconclusive=inconclusive and ok_fig)


def check_representation_fixtures(budget, seed):
    problems = []
    for q in range(2, 9):
        r = theta_representation(q)
        if not verify_representation(theta(q).graph, r).ok:
            problems.append(f"theta rep q={q}")
    c8 = cycle(8)
    good = eight_cycle_representation()
    if not verify_representation(c8, good).ok:
        problems.append("8-cycle example rejected")
    bad = Representation(k=2, n=4, images=good.images, parts=(0b0011, 0b1100))
    if verify_representation(c8, bad).ok:
        problems.append("swapped parts accepted")
    detail = "; ".join(problems) if problems else "theta reps q=2..8, the 8-cycle example, and its parts swap"
    return _row("representation-fixtures", not problems, detail)


def check_gluing(budget, seed):
    rng = random.Random(seed)
    fixtures = [
        (cycle(8), eight_cycle_representation()),
        (theta(3).graph, theta_representation(3)),
    ]
    failures = 0
    trials = 100
    for _ in range(trials):
        ga, ra = fixtures[rng.randrange(len(fixtures))]
        gb, rb = fixtures[rng.randrange(len(fixtures))]
        mode = rng.choice(("top", "bottom"))
        if mode == "top":
            a = rng.choice(top_vertices(ra))
            b = rng.choice(top_vertices(rb))
            glued = glue_top(ra, a, rb, b)
            want_k = 2 * ra.k
        else:
            bots_a = [v for v in range(len(ra.images)) if ra.images[v].bit_count() == ra.k - 1]
            bots_b = [v for v in range(len(rb.images)) if rb.images[v].bit_count() == rb.k - 1]
            a = rng.choice(bots_a)
            b = rng.choice(bots_b)
            glued = glue_bottom(ra, a, rb, b)
            want_k = ra.k
        from .construct import glue_at_vertex

        joined = glue_at_vertex(ga, a, gb, b).graph
        chk = verify_representation(joined, glued)
        tops = [img.bit_count() for img in glued.images if img.bit_count() == glued.k]
        if not chk.ok or glued.k != want_k or not tops:
            failures += 1
    detail = f"{trials - failures}/{trials} randomized gluings verified (seed {seed})"
    return _row("gluing", failures == 0, detail)


def check_nonpartite_certificate(budget, seed):
    h = Hypergraph.from_sets(4, 3, [{1, 2, 4}, {2, 3, 4}, {1, 3, 4}])
    triple = is_k_partite(h, 3, budget)
    h3 = h_graph(3).graph
    closed_up_to = 0
    inconclusive = triple.status == INCONCLUSIVE
    ok = triple.status == EXHAUSTED_NONE
    for n in range(2, 8):
        out = find_representation(h3, 2, n, budget)
        if out.status == EXHAUSTED_NONE:
            closed_up_to = n
        elif out.status == INCONCLUSIVE:
            inconclusive = True
            break
        else:
            ok = False
            break
    ok = ok and closed_up_to >= 2
    detail = (
        f"triple hypergraph {triple.status}; "
        f"h(3) has no 2-partite representation up to n={closed_up_to} (full closure)"
    )
    return _row("nonpartite-certificate", ok, detail, inconclusive=inconclusive)


def check_pole_distances(budget, seed):
    r5 = pole_distance_scan(3, 5, budget)
    r6 = pole_distance_scan(3, 6, budget)
    r2 = pole_distance_scan(2, 4, budget)
    inconclusive = "inconclusive" in (r5.status, r6.status, r2.status)
    ok = (
        r5.all_distance_two
        and r6.all_distance_two
        and bool(r2.counterexample)
        and r5.embeddings > 0
        and r6.embeddings > 0
    )
    detail = (
        f"q=3: n=5 all at distance 2 over {r5.embeddings} embeddings, "
        f"n=6 over {r6.embeddings}; q=2 at n=4 violates with distances "
        f"{dict(r2.distance_counts)}"
    )
    return _row("pole-distances", ok, detail, inconclusive=inconclusive)


def brute_force_extremal_q3_c4() -> int:
    """Independent oracle: try all 2^12 edge subsets of Q_3 and keep the
    largest one where no two vertices share two common neighbors."""
    host = build_hypercube(3)
    m = host.edge_count
    best = 0
    for mask in range(1 << m):
        size = mask.bit_count()
        if size <= best:
            continue
        adj = [0] * host.vertex_count
        for i in iter_bits(mask):
            u, v = host.edges[i]
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        has_c4 = False
        for u in range(host.vertex_count):
            for v in range(u + 1, host.vertex_count):
                if (adj[u] & adj[v]).bit_count() >= 2:
                    has_c4 = True
                    break
            if has_c4:
                break
        if not has_c4:
            best = size
    return best


def check_extremal(budget, seed):
    c4 = cycle(4)
    r2 = extremal_number(2, c4, budget)
    r3 = extremal_number(3, c4, budget)
    oracle = brute_force_extremal_q3_c4()
    k3 = Graph(3, [(0, 1), (1, 2), (0, 2)])
    k3_ok = True
    inconclusive = INCONCLUSIVE in (r2.status, r3.status)
    for n in range(1, 5):
        rk = extremal_number(n, k3, budget)
        if rk.status == INCONCLUSIVE:
            inconclusive = True
        elif rk.value != n * (1 << (n - 1)) or rk.status != "exact":
            k3_ok = False
    dens = density_sequence(c4, 1, 4, budget)
    if any(p.status == INCONCLUSIVE for p in dens.points):
        inconclusive = True
    ok = (
        r2.value == 3
        and r2.status == "exact"
        and r3.status == "exact"
        and r3.value == oracle
        and k3_ok
        and dens.monotone_ok
    )
    detail = (
        f"ex(Q2,C4)={r2.value}; ex(Q3,C4)={r3.value} vs oracle {oracle}; "
        f"ex(Qn,K3)=n*2^(n-1) for n=1..4; C4 density over n=1..4 "
        f"{'non-increasing' if dens.monotone_ok else 'INCREASED'}"
    )
    return _row("extremal-numbers", ok, detail, inconclusive=inconclusive)


def _direct_star_tally(G, j, k):
    """Oracle for the star identity: enumerate the stars one by one."""
    tally = {}
    total = 0
    for v, lab in enumerate(G.labels):
        if lab.bit_count() != j:
            continue
        down = [u for u in G.neighbors(v)]
        for leaves in combinations(down, k):
            x = lab
            for u in leaves:
                x &= G.labels[u]
            tally[x] = tally.get(x, 0) + 1
            total += 1
    return total, tally


def check_star_identity(budget, seed):
    rng = random.Random(seed)
    problems = []
    for n in range(3, 7):
        for j in range(1, n + 1):
            layer = layer_subgraph(n, j)
            for k in range(1, j + 1):
                rep = star_count_identity(layer, j, k)
                if rep.t != sum(u for _, u in rep.per_x_full_counts):
                    problems.append(f"complete layer n={n} j={j} k={k}")
    full = layer_subgraph(6, 3)
    for trial in range(50):
        kept = [e for e in full.edges if rng.random() < 0.5]
        G = edge_subgraph(full, kept)
        for k in (2, 3):
            rep = star_count_identity(G, 3, k)
            total, tally = _direct_star_tally(G, 3, k)
            if rep.t != total:
                problems.append(f"trial {trial} k={k}: t mismatch")
            for x, u in rep.per_x_full_counts:
                if tally.get(x, 0) != u:
                    problems.append(f"trial {trial} k={k}: per-x mismatch at {x:#x}")
                    break
    detail = (
        "; ".join(problems)
        if problems
        else f"complete layers of Q3..Q6 and 50 random subgraphs of L3(Q6), k in 2,3 (seed {seed})"
    )
    return _row("star-identity", not problems, detail)


def check_middle_mass(budget, seed):
    values = [middle_mass(n) for n in (10, 20, 40, 80)]
    decreasing = all(a > b for a, b in zip(values, values[1:]))
    zero4 = middle_mass(4) == Fraction(0)
    ok = decreasing and zero4
    detail = (
        f"mass(4)={middle_mass(4)}; strictly decreasing along n=10,20,40,80: {decreasing}"
    )
    return _row("middle-mass", ok, detail)


def check_block_predicate(budget, seed):
    h3 = h_graph(3).graph
    rep = blocks_have_representations(h3, 2, 5, budget)
    tri = Graph(4, [(0, 1), (1, 2), (0, 2), (2, 3)])
    rep_tri = blocks_have_representations(tri, 2, 4, budget)
    inconclusive = any(o.status == INCONCLUSIVE for o in rep.outcomes + rep_tri.outcomes)
    obstructed = any(o.status == "not_bipartite" and o.obstruction for o in rep_tri.outcomes)
    ok = rep.all_represented and not rep_tri.all_represented and obstructed
    detail = (
        f"h(3): {rep.verdict}; triangle block reported "
        f"{'with its odd cycle' if obstructed else 'WITHOUT an obstruction'}"
    )
    return _row("block-predicate", ok, detail, inconclusive=inconclusive)


CHECKS = (
    check_constructions,
    check_cubicality,
    check_representation_fixtures,
    check_gluing,
    check_nonpartite_certificate,
    check_pole_distances,
    check_extremal,
    check_star_identity,
    check_middle_mass,
    check_block_predicate,
)


def run_suite(budget=None, seed=DEFAULT_SEED, map_fn=map):
    """Run every check; returns the list of rows in declaration order."""

    def run_one(fn):
        return fn(budget, seed)

    return list(map_fn(run_one, CHECKS))
