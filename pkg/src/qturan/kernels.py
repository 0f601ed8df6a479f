"""Kernel selection: compiled extension when available, pure Python otherwise.

The compiled kernels require machine-word masks (hosts of at most 64
vertices, budgets below 2^63); anything wider silently routes to the Python
implementations, which accept arbitrary ints.  Set QTURAN_PURE=1 or call
set_backend("python") to force the fallback, e.g. for benchmarking.
"""

from __future__ import annotations

import os

from . import _kernels_py

try:
    from . import _ckernels

    _HAVE_COMPILED = True
except ImportError:
    _ckernels = None
    _HAVE_COMPILED = False

_C_MAX_NODES = (1 << 62) - 1

_backend = "python" if os.environ.get("QTURAN_PURE") == "1" else "auto"


def set_backend(name: str) -> None:
    global _backend
    if name not in ("auto", "python", "compiled"):
        raise ValueError(f"unknown backend {name!r}")
    if name == "compiled" and not _HAVE_COMPILED:
        raise RuntimeError("compiled kernels are not available in this install")
    _backend = name


def active_backend() -> str:
    """Name of the backend the next dispatch would prefer."""
    if _backend == "python" or not _HAVE_COMPILED:
        return "python"
    return "compiled"


def have_compiled() -> bool:
    return _HAVE_COMPILED


def _want_compiled() -> bool:
    return _backend != "python" and _HAVE_COMPILED


def embed_search(
    host_adj,
    host_labels,
    order,
    prev_positions,
    cand_masks,
    canonical,
    guest_edges,
    dedup,
    limit,
    vertex_total,
    max_nodes,
    max_seconds,
):
    if (
        _want_compiled()
        and len(host_adj) <= 64
        and max_nodes <= _C_MAX_NODES
        and (not canonical or max(host_labels, default=0) < 1 << 62)
    ):
        return _ckernels.embed_search(
            host_adj,
            host_labels if host_labels is not None else [],
            order,
            prev_positions,
            cand_masks,
            canonical,
            guest_edges,
            dedup,
            limit,
            vertex_total,
            max_nodes,
            max_seconds,
        )
    return _kernels_py.embed_search(
        host_adj,
        host_labels,
        order,
        prev_positions,
        cand_masks,
        canonical,
        guest_edges,
        dedup,
        limit,
        vertex_total,
        max_nodes,
        max_seconds,
    )


def potential_search(
    order, prev_positions, c_max, canonical, vertex_total, max_nodes, max_seconds
):
    if _want_compiled() and c_max <= 62 and max_nodes <= _C_MAX_NODES:
        return _ckernels.potential_search(
            order, prev_positions, c_max, canonical, vertex_total, max_nodes, max_seconds
        )
    return _kernels_py.potential_search(
        order, prev_positions, c_max, canonical, vertex_total, max_nodes, max_seconds
    )


def max_nonhitting(m, copies, max_nodes, max_seconds):
    if _want_compiled() and m <= 64 and max_nodes <= _C_MAX_NODES:
        return _ckernels.max_nonhitting(m, copies, max_nodes, max_seconds)
    return _kernels_py.max_nonhitting(m, copies, max_nodes, max_seconds)
