"""Text formats for graphs and representations.

Edge list: a line "p <vertex_count>", then "u v" per edge (0-indexed),
optional label lines "l <vertex> <subset-as-hex>", optional mark lines
"m <role> <vertex...>"; '#' starts a comment.  Ground set size is inferred
from the widest label.

Representation: a header "rep k=<k> n=<n>", lines "v <vertex> <subset-as-hex>"
for every vertex 0..count-1, and "part <index> <subset-as-hex>" for parts
0..k-1.

Both emitters write in canonical order, so emit-parse-emit is byte-stable.
"""

from __future__ import annotations

from .construct import ROLES, MarkedGraph
from .graphs import Graph, GraphError, parse_subset_hex, subset_hex
from .represent import Representation


class FormatError(ValueError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


def _significant_lines(text):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line.split()


def _int_field(tokens, i, lineno, what):
    try:
        return int(tokens[i])
    except (IndexError, ValueError):
        raise FormatError(f"expected an integer {what} (column {i + 1})", lineno) from None


def parse_edge_list(text: str):
    """Parse the edge-list format; returns (Graph, marks dict)."""
    vertex_count = None
    edges = []
    labels = {}
    marks = {}
    for lineno, tokens in _significant_lines(text):
        kind = tokens[0]
        if kind == "p":
            if vertex_count is not None:
                raise FormatError("duplicate 'p' line", lineno)
            vertex_count = _int_field(tokens, 1, lineno, "vertex count")
            if vertex_count < 0:
                raise FormatError("vertex count must be nonnegative", lineno)
            continue
        if vertex_count is None:
            raise FormatError("the first line must be 'p <vertex_count>'", lineno)
        if kind == "l":
            v = _int_field(tokens, 1, lineno, "vertex")
            if len(tokens) != 3:
                raise FormatError("label lines are 'l <vertex> <subset-as-hex>'", lineno)
            try:
                labels[v] = parse_subset_hex(tokens[2])
            except ValueError:
                raise FormatError(f"bad subset {tokens[2]!r} (column 3)", lineno) from None
            if not 0 <= v < vertex_count:
                raise FormatError(f"labeled vertex {v} out of range", lineno)
        elif kind == "m":
            if len(tokens) < 2:
                raise FormatError("mark lines are 'm <role> <vertex...>'", lineno)
            role = tokens[1]
            if role not in ROLES:
                raise FormatError(f"unknown mark role {role!r} (column 2)", lineno)
            verts = [_int_field(tokens, i, lineno, "vertex") for i in range(2, len(tokens))]
            for v in verts:
                if not 0 <= v < vertex_count:
                    raise FormatError(f"marked vertex {v} out of range", lineno)
            marks[role] = tuple(verts)
        else:
            if len(tokens) != 2:
                raise FormatError(f"expected 'u v', got {' '.join(tokens)!r}", lineno)
            u = _int_field(tokens, 0, lineno, "endpoint")
            v = _int_field(tokens, 1, lineno, "endpoint")
            if not (0 <= u < vertex_count and 0 <= v < vertex_count):
                raise FormatError(f"edge ({u}, {v}) out of range", lineno)
            if u == v:
                raise FormatError(f"self-loop at vertex {u}", lineno)
            edges.append((u, v))
    if vertex_count is None:
        raise FormatError("missing 'p <vertex_count>' line")
    label_tuple = None
    if labels:
        missing = [v for v in range(vertex_count) if v not in labels]
        if missing:
            raise FormatError(f"vertex {missing[0]} has no label while others do")
        label_tuple = tuple(labels[v] for v in range(vertex_count))
    try:
        graph = Graph(vertex_count, edges, labels=label_tuple)
    except GraphError as exc:
        raise FormatError(str(exc)) from exc
    return graph, marks


def emit_edge_list(G: Graph, marks=None) -> str:
    lines = [f"p {G.vertex_count}"]
    for u, v in G.edges:
        lines.append(f"{u} {v}")
    if G.labels is not None:
        for v, lab in enumerate(G.labels):
            lines.append(f"l {v} {subset_hex(lab)}")
    if marks:
        for role in sorted(marks):
            verts = " ".join(str(v) for v in marks[role])
            lines.append(f"m {role} {verts}")
    return "\n".join(lines) + "\n"


def emit_marked(M: MarkedGraph) -> str:
    return emit_edge_list(M.graph, M.marks)


def parse_representation(text: str) -> Representation:
    k = n = None
    images = {}
    parts = {}
    for lineno, tokens in _significant_lines(text):
        if tokens[0] == "rep":
            if k is not None:
                raise FormatError("duplicate 'rep' header", lineno)
            fields = dict(
                tok.split("=", 1) for tok in tokens[1:] if "=" in tok
            )
            if set(fields) != {"k", "n"}:
                raise FormatError("header must be 'rep k=<k> n=<n>'", lineno)
            try:
                k = int(fields["k"])
                n = int(fields["n"])
            except ValueError:
                raise FormatError("k and n must be integers", lineno) from None
            continue
        if k is None:
            raise FormatError("the first line must be 'rep k=<k> n=<n>'", lineno)
        if tokens[0] == "v" and len(tokens) == 3:
            v = _int_field(tokens, 1, lineno, "vertex")
            try:
                images[v] = parse_subset_hex(tokens[2])
            except ValueError:
                raise FormatError(f"bad subset {tokens[2]!r} (column 3)", lineno) from None
        elif tokens[0] == "part" and len(tokens) == 3:
            i = _int_field(tokens, 1, lineno, "part index")
            try:
                parts[i] = parse_subset_hex(tokens[2])
            except ValueError:
                raise FormatError(f"bad subset {tokens[2]!r} (column 3)", lineno) from None
        else:
            raise FormatError(f"unrecognized line {' '.join(tokens)!r}", lineno)
    if k is None:
        raise FormatError("missing 'rep k=<k> n=<n>' header")
    count = len(images)
    missing = [v for v in range(count) if v not in images]
    if missing or any(v >= count for v in images):
        raise FormatError("vertex images must cover 0..count-1 without gaps")
    if sorted(parts) != list(range(k)):
        raise FormatError(f"part indices must cover 0..{k - 1}")
    return Representation(
        k=k,
        n=n,
        images=tuple(images[v] for v in range(count)),
        parts=tuple(parts[i] for i in range(k)),
    )


def emit_representation(r: Representation) -> str:
    lines = [f"rep k={r.k} n={r.n}"]
    for v, img in enumerate(r.images):
        lines.append(f"v {v} {subset_hex(img)}")
    for i, p in enumerate(r.parts):
        lines.append(f"part {i} {subset_hex(p)}")
    return "\n".join(lines) + "\n"
