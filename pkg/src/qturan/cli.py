"""Command-line front end.

Machine-readable artifacts (edge lists, representation files, embeddings) go
to stdout; status prose goes to stderr, so subcommands compose over pipes.
With --format json each subcommand instead emits line-delimited JSON records
with a fixed field order.

Exit codes: 0 found/true/exact, 1 exhausted_none/false, 2 inconclusive
(budget ran out), 3 and up for usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import math
import random
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from . import FORMAT_VERSION, __version__, report as report_mod
from .construct import (
    complete_bipartite,
    cycle,
    h_graph,
    path,
    star_of_copies,
    subdivide,
    theta,
)
from .cubical import coloring_to_embedding, find_nice_coloring, embed_in_hypercube
from .formats import (
    FormatError,
    emit_edge_list,
    emit_marked,
    emit_representation,
    parse_edge_list,
    parse_representation,
)
from .graphs import (
    GraphError,
    build_hypercube,
    layer_subgraph,
    subset_hex,
    edge_subgraph,
)
from .represent import (
    blocks_have_representations,
    find_representation,
    glue_bottom,
    glue_top,
    pole_distance_scan,
    verify_representation,
)
from .search import EXHAUSTED_NONE, FOUND, INCONCLUSIVE, SearchBudget, default_max_nodes
from .turan import density_sequence, extremal_number, star_count_identity

EXIT_OK = 0
EXIT_NONE = 1
EXIT_INCONCLUSIVE = 2
EXIT_USAGE = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _status_line(text):
    print(text, file=sys.stderr)


def _emit_json(record):
    print(json.dumps(record, separators=(", ", ": ")))


def _budget(args) -> SearchBudget:
    seconds = args.budget_seconds if args.budget_seconds else math.inf
    return SearchBudget(max_nodes=args.budget_nodes, max_seconds=seconds)


def _read_graph(args):
    source = getattr(args, "graph", None)
    if source and source != "-":
        text = Path(source).read_text()
    else:
        text = sys.stdin.read()
    return parse_edge_list(text)


def parallel_map(fn, items, threads):
    items = list(items)
    if threads <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


def _add_common(sub, budget=True, threads=False, seed=False):
    sub.add_argument("--format", choices=("text", "json"), default="text")
    if budget:
        sub.add_argument(
            "--budget-nodes",
            type=int,
            default=default_max_nodes(),
            help="node cap per search (env QTURAN_BUDGET_NODES)",
        )
        sub.add_argument(
            "--budget-seconds",
            type=float,
            default=0.0,
            help="wall-clock cap; off by default because it is machine-dependent",
        )
    if threads:
        sub.add_argument("--threads", type=int, default=1)
    if seed:
        sub.add_argument("--seed", type=int, default=report_mod.DEFAULT_SEED)


def build_parser():
    p = _Parser(prog="qturan", description=__doc__)
    p.add_argument(
        "--version",
        action="version",
        version=f"qturan {__version__} format {FORMAT_VERSION}",
    )
    sub = p.add_subparsers(dest="cmd", required=True)

    c = sub.add_parser("construct", help="emit a named graph family as an edge list")
    c.add_argument("family", choices=(
        "theta", "h", "kst", "cube", "layer", "cycle", "path", "subdivide", "star"
    ))
    c.add_argument("params", nargs="*", type=int)
    _add_common(c, budget=False)

    cc = sub.add_parser("check-cubical", help="decide embeddability into a cube of bounded dimension")
    cc.add_argument("--nmax", type=int, required=True)
    cc.add_argument("--graph", default="-", help="edge-list file, default stdin")
    _add_common(cc)

    fr = sub.add_parser("find-rep", help="search for a k-partite representation in layer k of Q_n")
    fr.add_argument("--k", type=int, required=True)
    fr.add_argument("--n", type=int, required=True)
    fr.add_argument("--graph", default="-")
    _add_common(fr)

    vr = sub.add_parser("verify-rep", help="check a representation file against a graph")
    vr.add_argument("--rep", required=True)
    vr.add_argument("--graph", default="-")
    _add_common(vr, budget=False)

    gl = sub.add_parser("glue", help="compose two representations at a shared vertex")
    gl.add_argument("--mode", choices=("top", "bottom"), required=True)
    gl.add_argument("--rep-a", required=True)
    gl.add_argument("--rep-b", required=True)
    gl.add_argument("--vertex-a", type=int, required=True)
    gl.add_argument("--vertex-b", type=int, required=True)
    _add_common(gl, budget=False)

    sp = sub.add_parser("scan-poles", help="scan main-pole distances over all layer embeddings")
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--n", type=int, required=True)
    _add_common(sp)

    br = sub.add_parser("blocks-rep", help="search every block for a partite representation")
    br.add_argument("--kmax", type=int, required=True)
    br.add_argument("--nmax", type=int, required=True)
    br.add_argument("--graph", default="-")
    _add_common(br)

    ex = sub.add_parser("extremal", help="largest guest-free edge count inside Q_n")
    ex.add_argument("--n", type=int, required=True)
    ex.add_argument("--guest", required=True, help="edge-list file of the forbidden graph")
    _add_common(ex)

    de = sub.add_parser("density", help="extremal densities over a range of n")
    de.add_argument("--guest", required=True)
    de.add_argument("--from", dest="n_from", type=int, required=True)
    de.add_argument("--to", dest="n_to", type=int, required=True)
    _add_common(de, threads=True)

    st = sub.add_parser("starcount", help="randomized star-count identity checks in a layer")
    st.add_argument("--n", type=int, required=True)
    st.add_argument("--j", type=int, required=True)
    st.add_argument("--k", type=int, required=True)
    st.add_argument("--density", type=float, default=0.5)
    st.add_argument("--trials", type=int, default=1)
    _add_common(st, budget=False, threads=True, seed=True)

    rp = sub.add_parser("report", help="run the built-in verification suite")
    rp.add_argument("--fixture-dir", default=None,
                    help="optional directory of extra edge-list fixtures to parse")
    _add_common(rp, threads=True, seed=True)

    return p


def cmd_construct(args):
    fam = args.family
    ps = args.params

    def need(count):
        if len(ps) != count:
            raise GraphError(f"{fam} takes {count} integer parameter(s)")

    marks = {}
    if fam == "theta":
        need(1)
        m = theta(ps[0])
        graph, marks = m.graph, m.marks
    elif fam == "h":
        need(1)
        m = h_graph(ps[0])
        graph, marks = m.graph, m.marks
    elif fam == "kst":
        need(2)
        graph = complete_bipartite(ps[0], ps[1])
    elif fam == "cube":
        need(1)
        graph = build_hypercube(ps[0])
    elif fam == "layer":
        need(2)
        graph = layer_subgraph(ps[0], ps[1])
    elif fam == "cycle":
        need(1)
        graph = cycle(ps[0])
    elif fam == "path":
        need(1)
        graph = path(ps[0])
    elif fam == "subdivide":
        need(0)
        base, _ = parse_edge_list(sys.stdin.read())
        m = subdivide(base)
        graph, marks = m.graph, m.marks
    else:  # star
        need(2)
        base, base_marks = parse_edge_list(sys.stdin.read())
        from .construct import MarkedGraph

        m = star_of_copies(MarkedGraph(graph=base, marks=base_marks), ps[0], ps[1])
        graph, marks = m.graph, m.marks
    if args.format == "json":
        record = {
            "cmd": "construct",
            "family": fam,
            "params": ps,
            "vertices": graph.vertex_count,
            "edges": [list(e) for e in graph.edges],
        }
        if graph.labels is not None:
            record["labels"] = [subset_hex(lab) for lab in graph.labels]
        if marks:
            record["marks"] = {role: list(marks[role]) for role in sorted(marks)}
        _emit_json(record)
    else:
        sys.stdout.write(emit_edge_list(graph, marks))
    return EXIT_OK


def cmd_check_cubical(args):
    G, _ = _read_graph(args)
    budget = _budget(args)
    if G.vertex_count > 0 and G.is_connected():
        out = find_nice_coloring(G, args.nmax, budget)
        embedding = coloring_to_embedding(G, out.witness) if out.found else None
    else:
        out = embed_in_hypercube(G, args.nmax, budget)
        embedding = out.witness
    if args.format == "json":
        record = {
            "cmd": "check-cubical",
            "status": out.status,
            "nmax": args.nmax,
            "nodes": out.nodes_explored,
        }
        if embedding is not None:
            record["n"] = embedding.n
            record["images"] = [subset_hex(img) for img in embedding.images]
        _emit_json(record)
    else:
        _status_line(f"check-cubical: {out.status} ({out.nodes_explored} nodes)")
        if embedding is not None:
            for v, img in enumerate(embedding.images):
                print(f"v {v} {subset_hex(img)}")
    return {FOUND: EXIT_OK, EXHAUSTED_NONE: EXIT_NONE, INCONCLUSIVE: EXIT_INCONCLUSIVE}[out.status]


def cmd_find_rep(args):
    G, _ = _read_graph(args)
    out = find_representation(G, args.k, args.n, _budget(args))
    if args.format == "json":
        record = {
            "cmd": "find-rep",
            "status": out.status,
            "k": args.k,
            "n": args.n,
            "nodes": out.nodes_explored,
        }
        if out.found:
            record["images"] = [subset_hex(img) for img in out.witness.images]
            record["parts"] = [subset_hex(p) for p in out.witness.parts]
        _emit_json(record)
    else:
        _status_line(f"find-rep: {out.status} ({out.nodes_explored} nodes)")
        if out.found:
            sys.stdout.write(emit_representation(out.witness))
    return {FOUND: EXIT_OK, EXHAUSTED_NONE: EXIT_NONE, INCONCLUSIVE: EXIT_INCONCLUSIVE}[out.status]


def cmd_verify_rep(args):
    G, _ = _read_graph(args)
    rep = parse_representation(Path(args.rep).read_text())
    chk = verify_representation(G, rep)
    if args.format == "json":
        _emit_json({"cmd": "verify-rep", "ok": chk.ok, "reason": chk.reason})
    else:
        _status_line(f"verify-rep: {'ok' if chk.ok else 'invalid: ' + chk.reason}")
    return EXIT_OK if chk.ok else EXIT_NONE


def cmd_glue(args):
    ra = parse_representation(Path(args.rep_a).read_text())
    rb = parse_representation(Path(args.rep_b).read_text())
    fn = glue_top if args.mode == "top" else glue_bottom
    glued = fn(ra, args.vertex_a, rb, args.vertex_b)
    if args.format == "json":
        _emit_json(
            {
                "cmd": "glue",
                "mode": args.mode,
                "k": glued.k,
                "n": glued.n,
                "images": [subset_hex(img) for img in glued.images],
                "parts": [subset_hex(p) for p in glued.parts],
            }
        )
    else:
        sys.stdout.write(emit_representation(glued))
    return EXIT_OK


def cmd_scan_poles(args):
    rep = pole_distance_scan(args.q, args.n, _budget(args))
    if args.format == "json":
        _emit_json(
            {
                "cmd": "scan-poles",
                "q": rep.q,
                "n": rep.n,
                "embeddings": rep.embeddings,
                "distances": {str(d): c for d, c in rep.distance_counts},
                "all_distance_two": rep.all_distance_two,
                "status": rep.status,
                "nodes": rep.nodes_explored,
            }
        )
    else:
        print(f"scan-poles q={rep.q} n={rep.n}: {rep.embeddings} embeddings, "
              f"distances {dict(rep.distance_counts)}")
        for layer in rep.layers:
            print(f"  layer {layer.k} top-side {layer.top_side}: {layer.embeddings}")
        if rep.counterexample:
            k, side, images = rep.counterexample
            print(f"  counterexample in layer {k}: {[subset_hex(i) for i in images]}")
    if rep.status == "inconclusive":
        return EXIT_INCONCLUSIVE
    return EXIT_OK if rep.all_distance_two else EXIT_NONE


def cmd_blocks_rep(args):
    G, _ = _read_graph(args)
    rep = blocks_have_representations(G, args.kmax, args.nmax, _budget(args))
    if args.format == "json":
        _emit_json(
            {
                "cmd": "blocks-rep",
                "verdict": rep.verdict,
                "all_represented": rep.all_represented,
                "blocks": [
                    {
                        "index": o.index,
                        "status": o.status,
                        "k": o.k,
                        "n": o.n,
                        "obstruction": list(o.obstruction),
                    }
                    for o in rep.outcomes
                ],
            }
        )
    else:
        print(f"blocks-rep: {rep.verdict}")
        for o in rep.outcomes:
            extra = f" (k={o.k}, n={o.n})" if o.status == FOUND else ""
            if o.obstruction:
                extra = f" (odd cycle {list(o.obstruction)})"
            print(f"  block {o.index}: {o.vertices} vertices, {o.edge_count} edges, {o.status}{extra}")
    if rep.all_represented:
        return EXIT_OK
    if any(o.status == INCONCLUSIVE for o in rep.outcomes):
        return EXIT_INCONCLUSIVE
    return EXIT_NONE


def cmd_extremal(args):
    guest, _ = parse_edge_list(Path(args.guest).read_text())
    res = extremal_number(args.n, guest, _budget(args), guest_id=args.guest)
    if args.format == "json":
        _emit_json(
            {
                "cmd": "extremal",
                "n": res.n,
                "guest": res.guest_id,
                "value": res.value,
                "status": res.status,
                "nodes": res.nodes_explored,
                "witness": [list(e) for e in res.witness_edges],
            }
        )
    else:
        print(f"extremal n={res.n} guest={res.guest_id}: value {res.value} ({res.status})")
        print("witness:", " ".join(f"{u}-{v}" for u, v in res.witness_edges))
    return EXIT_OK if res.status == "exact" else EXIT_INCONCLUSIVE


def cmd_density(args):
    guest, _ = parse_edge_list(Path(args.guest).read_text())
    rep = density_sequence(
        guest,
        args.n_from,
        args.n_to,
        _budget(args),
        map_fn=lambda fn, it: parallel_map(fn, it, args.threads),
    )
    if args.format == "json":
        for p in rep.points:
            _emit_json(
                {
                    "cmd": "density",
                    "n": p.n,
                    "value": p.value,
                    "edges": p.total_edges,
                    "ratio": str(p.ratio),
                    "status": p.status,
                }
            )
        _emit_json({"cmd": "density-summary", "monotone_ok": rep.monotone_ok})
    else:
        for p in rep.points:
            print(f"n={p.n}: {p.value}/{p.total_edges} = {p.ratio} ({p.status})")
        print(f"monotone: {'ok' if rep.monotone_ok else 'VIOLATED at ' + str(rep.violations)}")
    if not rep.monotone_ok:
        return EXIT_NONE
    if any(p.status != "exact" for p in rep.points):
        return EXIT_INCONCLUSIVE
    return EXIT_OK


def cmd_starcount(args):
    layer = layer_subgraph(args.n, args.j)
    rng = random.Random(args.seed)
    subgraphs = []
    for _ in range(args.trials):
        kept = [e for e in layer.edges if rng.random() < args.density]
        subgraphs.append(edge_subgraph(layer, kept))

    def run(item):
        trial, G = item
        rep = star_count_identity(G, args.j, args.k)
        return trial, rep

    results = parallel_map(run, list(enumerate(subgraphs)), args.threads)
    ok = True
    for trial, rep in results:
        total = sum(u for _, u in rep.per_x_full_counts)
        good = total == rep.t
        ok = ok and good
        if args.format == "json":
            _emit_json(
                {
                    "cmd": "starcount",
                    "trial": trial,
                    "j": args.j,
                    "k": args.k,
                    "t": rep.t,
                    "sum": total,
                    "ok": good,
                }
            )
        else:
            print(f"trial {trial}: t={rep.t} sum={total} {'ok' if good else 'MISMATCH'}")
    return EXIT_OK if ok else EXIT_NONE


def cmd_report(args):
    if args.fixture_dir is not None:
        fdir = Path(args.fixture_dir)
        if not fdir.is_dir():
            _status_line(f"report: fixture directory {fdir} not found")
            return EXIT_USAGE
        for f in sorted(fdir.glob("*.el")):
            parse_edge_list(f.read_text())  # raises FormatError on bad fixtures
    budget = _budget(args)
    timings = {}

    def timed(fn):
        t0 = time.perf_counter()
        row = fn(budget, args.seed)
        timings[row.name] = time.perf_counter() - t0
        return row

    rows = parallel_map(timed, report_mod.CHECKS, args.threads)
    width = max(len(r.name) for r in rows)
    for row in rows:
        if args.format == "json":
            _emit_json({"cmd": "report", "name": row.name, "status": row.status, "detail": row.detail})
        else:
            print(f"{row.name:<{width}}  {row.status.upper():<12}  {row.detail}")
    statuses = [r.status for r in rows]
    summary = f"{statuses.count(report_mod.PASS)}/{len(rows)} passed"
    if args.format == "json":
        _emit_json({"cmd": "report-summary", "summary": summary})
    else:
        print(f"summary: {summary}")
    for row in rows:
        _status_line(f"timing {row.name}: {timings[row.name]:.3f}s")
    if report_mod.FAIL in statuses:
        return EXIT_NONE
    if report_mod.INCONCL in statuses:
        return EXIT_INCONCLUSIVE
    return EXIT_OK


_HANDLERS = {
    "construct": cmd_construct,
    "check-cubical": cmd_check_cubical,
    "find-rep": cmd_find_rep,
    "verify-rep": cmd_verify_rep,
    "glue": cmd_glue,
    "scan-poles": cmd_scan_poles,
    "blocks-rep": cmd_blocks_rep,
    "extremal": cmd_extremal,
    "density": cmd_density,
    "starcount": cmd_starcount,
    "report": cmd_report,
}


def run(args) -> int:
    """Dispatch a parsed command; maps input problems to exit code 3."""
    try:
        return _HANDLERS[args.cmd](args)
    except (FormatError, GraphError) as exc:
        _status_line(f"qturan {args.cmd}: {exc}")
        return EXIT_USAGE
    except FileNotFoundError as exc:
        _status_line(f"qturan {args.cmd}: {exc}")
        return EXIT_USAGE
    except ValueError as exc:
        _status_line(f"qturan {args.cmd}: {exc}")
        return EXIT_USAGE


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return run(args)


if __name__ == "__main__":
    sys.exit(main())
