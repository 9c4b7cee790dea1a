"""Vertex-disjoint paths via unit-capacity max-flow, and k-improvement."""

from __future__ import annotations

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import maximum_flow

from .graph import ColoredGraph

__all__ = [
    "max_vertex_disjoint_paths",
    "max_disjoint_paths_between_sets",
    "k_improvement",
    "improvement_sweep",
]


def _split_network(g: ColoredGraph, extra_nodes: int = 0, extra_arcs=()):
    """Vertex ``x`` becomes ``x_in = 2x`` and ``x_out = 2x + 1`` joined by a unit arc."""
    n = g.n
    src = [2 * x for x in range(n)]
    dst = [2 * x + 1 for x in range(n)]
    v = g.arc_src
    w = g.indices
    src.extend((2 * v + 1).tolist())
    dst.extend((2 * w).tolist())
    for a, b in extra_arcs:
        src.append(a)
        dst.append(b)
    size = 2 * n + extra_nodes
    cap = np.ones(len(src), dtype=np.int32)
    return csr_matrix((cap, (np.array(src), np.array(dst))), shape=(size, size))


def max_vertex_disjoint_paths(g: ColoredGraph, v: int, w: int, network=None) -> int:
    """Maximum number of internally vertex-disjoint ``v``–``w`` paths.

    An edge ``vw`` counts as one path.
    """
    if v == w:
        raise ValueError("endpoints must differ")
    if not (0 <= v < g.n and 0 <= w < g.n):
        raise ValueError("endpoint outside the vertex range")
    net = _split_network(g) if network is None else network
    return int(maximum_flow(net, 2 * v + 1, 2 * w).flow_value)


def max_disjoint_paths_between_sets(g: ColoredGraph, xs, ys) -> int:
    """Maximum number of fully vertex-disjoint paths from ``xs`` to ``ys``."""
    n = g.n
    s, t = 2 * n, 2 * n + 1
    arcs = [(s, 2 * x) for x in set(xs)] + [(2 * y + 1, t) for y in set(ys)]
    net = _split_network(g, 2, arcs)
    return int(maximum_flow(net, s, t).flow_value)


def improvement_sweep(g: ColoredGraph, k: int, color: int | None = None):
    """One pass of the k-improvement definition.

    Returns ``(graph, added_pairs)``; new edges carry arc color ``color``
    (by default one more than the largest color in use).
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    if color is None:
        color = g.num_arc_colors
    net = _split_network(g)
    deg = g.degrees
    added = []
    for v in range(g.n):
        if deg[v] <= k:
            continue
        for w in range(v + 1, g.n):
            if deg[w] <= k or g.has_edge(v, w):
                continue
            if max_vertex_disjoint_paths(g, v, w, net) > k:
                added.append((v, w))
    if not added:
        return g, []
    arc_colors = g.arc_color_map()
    for v, w in added:
        arc_colors[(v, w)] = color
        arc_colors[(w, v)] = color
    edges = g.edges() + added
    h = ColoredGraph.from_edges(g.n, edges, g.vertex_colors, arc_colors)
    return h, added


def k_improvement(g: ColoredGraph, k: int, iterate: bool = True) -> ColoredGraph:
    """The k-improvement of ``g``; added edges get one fresh arc color.

    With ``iterate`` the sweep repeats until nothing changes.
    """
    color = g.num_arc_colors
    h, added = improvement_sweep(g, k, color)
    while iterate and added:
        h, added = improvement_sweep(h, k, color)
    return h
