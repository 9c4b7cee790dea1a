"""Color Refinement, k-dimensional Weisfeiler-Leman and related invariants.

Two engines compute the Color Refinement partition:

* :func:`color_refine` runs the literal round-by-round iteration and keeps
  every intermediate coloring (the trace).  New colors are named by sorting
  the full keys ``(old color, sorted multiset of neighbor triples)``.
* :func:`refine_stable` computes only the stable coloring with a worklist
  ("all but the largest fragment") partition refinement in the compiled
  kernel.  This is the engine used inside search and the scaling benchmark.

Both name colors canonically, so refining the disjoint union of two graphs
gives colors that can be compared across the two halves.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from . import kernels
from .errors import ResourceLimitError
from .graph import ColoredGraph, Coloring, GraphPair

__all__ = [
    "RefinementTrace",
    "AtomicType",
    "Distinction",
    "initial_coloring",
    "color_refine",
    "cr_step",
    "refine_stable",
    "atomic_type",
    "wl_k",
    "wl_k_joint",
    "distinguishes",
    "hom_count_tree",
    "trace_to_json",
]

MAX_TUPLES = 10 ** 8
MAX_SIGNATURE_ENTRIES = 6 * 10 ** 7


@dataclass
class RefinementTrace:
    """Colorings ``χ_0, ..., χ_{i∞}``; ``stabilized_at`` is ``i∞``."""

    rounds: list
    stabilized_at: int

    @property
    def stable(self) -> Coloring:
        return self.rounds[self.stabilized_at]

    @property
    def arity(self) -> int:
        return self.rounds[0].arity

    def to_json(self) -> str:
        return trace_to_json(self)


def _combine(*label_arrays) -> np.ndarray:
    """Dense ids for the lexicographic tuple of several label arrays."""
    code = None
    for arr in label_arrays:
        arr = np.asarray(arr, dtype=np.int64)
        if code is None:
            code = np.unique(arr, return_inverse=True)[1].reshape(-1)
            continue
        ids = np.unique(arr, return_inverse=True)[1].reshape(-1)
        code = code * (int(ids.max()) + 1 if len(ids) else 1) + ids
        code = np.unique(code, return_inverse=True)[1].reshape(-1)
    return code.astype(np.int64)


def initial_coloring(g: ColoredGraph, initial: Coloring | None = None) -> Coloring:
    """``χ_0``: the vertex colors, refined by ``initial`` when given."""
    if initial is None:
        return Coloring.from_labels(g.vertex_colors)
    if initial.arity != 1 or len(initial) != g.n:
        raise ValueError("initial coloring must be a vertex coloring of g")
    return Coloring(_combine(g.vertex_colors, initial.colors))


def cr_step(g: ColoredGraph, coloring: Coloring) -> Coloring:
    """One Color Refinement round applied to ``coloring``."""
    new, _ = kernels.cr_round(
        g.indptr, g.indices, g.arc_out, g.arc_in, coloring.colors, g.num_arc_colors
    )
    return Coloring(new, round=coloring.round + 1)


def color_refine(g: ColoredGraph, initial: Coloring | None = None) -> RefinementTrace:
    """Round-based Color Refinement; returns every coloring up to the stable one.

    ``χ_i(v) = (χ_{i-1}(v), {{(χ_{i-1}(w), χ_E(v,w), χ_E(w,v)) : w ∈ N(v)}})``.
    The loop stops at the first ``i`` with ``χ_i ≡ χ_{i+1}``.
    """
    chi = initial_coloring(g, initial)
    rounds = [chi]
    while True:
        nxt = cr_step(g, rounds[-1])
        # the new coloring refines the old one, so equal counts mean equivalence
        if nxt.num_colors == rounds[-1].num_colors:
            return RefinementTrace(rounds, len(rounds) - 1)
        rounds.append(nxt)


def _arc_labels(g: ColoredGraph):
    """Label of each arc as seen from its head, as dense ids."""
    if g.is_arc_uncolored:
        return np.zeros(len(g.indices), dtype=np.int64), 1
    a = g.num_arc_colors
    raw = g.arc_in * a + g.arc_out
    ids = np.unique(raw, return_inverse=True)[1].reshape(-1).astype(np.int64)
    return ids, int(ids.max()) + 1


def refine_stable(g: ColoredGraph, initial: Coloring | None = None) -> Coloring:
    """The stable Color Refinement coloring via worklist partition refinement."""
    chi = initial_coloring(g, initial)
    labels, nl = _arc_labels(g)
    out = kernels.equitable(g.indptr, g.indices, labels, nl, chi.colors)
    return Coloring(out)


# -- atomic types -----------------------------------------------------------

@dataclass(frozen=True)
class AtomicType:
    """The labeled isomorphism type of the subgraph induced by a tuple.

    ``adjacency[i][j]`` is ``1 + χ_E(v_i, v_j)`` for an edge and 0 otherwise,
    which packs the per-arc-color boolean matrices into one integer matrix.
    """

    equality: tuple
    adjacency: tuple
    vertex_colors: tuple

    def pattern(self, arc_color: int) -> tuple:
        """Boolean k×k matrix of arcs carrying ``arc_color``."""
        return tuple(tuple(a == arc_color + 1 for a in row) for row in self.adjacency)


def atomic_type(g: ColoredGraph, tup) -> AtomicType:
    k = len(tup)
    eq = tuple(tuple(tup[i] == tup[j] for j in range(k)) for i in range(k))
    adj = tuple(
        tuple(g.arc_color(tup[i], tup[j]) + 1 if g.has_edge(tup[i], tup[j]) else 0 for j in range(k))
        for i in range(k)
    )
    return AtomicType(eq, adj, tuple(int(g.vertex_colors[v]) for v in tup))


def _adjacency_matrix(g: ColoredGraph) -> np.ndarray:
    a = np.zeros((g.n, g.n), dtype=np.int64)
    a[g.arc_src, g.indices] = g.arc_out + 1
    return a


def _tuples(n, k):
    return np.indices((n,) * k, dtype=np.int64).reshape(k, -1).T


def _atp_digits(g, k, tuples, adj):
    cols = [g.vertex_colors[tuples[:, i]] for i in range(k)]
    for i, j in combinations(range(k), 2):
        cols.append((tuples[:, i] == tuples[:, j]).astype(np.int64))
    for i in range(k):
        for j in range(k):
            if i != j:
                cols.append(adj[tuples[:, i], tuples[:, j]])
    if not cols:
        return np.zeros((len(tuples), 1), dtype=np.int64)
    return np.stack(cols, axis=1)


def _rank_rows(mats):
    """Joint lexicographic ranks of the rows of several non-negative int matrices."""
    sizes = [m.shape[0] for m in mats]
    width = max((m.shape[1] for m in mats), default=0)
    if any(m.shape[1] != width for m in mats):
        # pad narrower rows in front with -1 (shifted to stay non-negative)
        mats = [
            np.concatenate([np.full((m.shape[0], width - m.shape[1]), -1, dtype=np.int64), m], axis=1) + 1
            for m in mats
        ]
    allrows = np.concatenate(mats, axis=0) if mats else np.zeros((0, 0), dtype=np.int64)
    if allrows.shape[0] == 0:
        return [np.zeros(0, dtype=np.int64) for _ in mats]
    code = allrows[:, 0].copy()
    limit = 2 ** 62
    for j in range(1, allrows.shape[1]):
        col = allrows[:, j]
        base = int(col.max()) + 1
        if (int(code.max()) + 1) * base >= limit:
            code = np.unique(code, return_inverse=True)[1].reshape(-1).astype(np.int64)
        code = code * base + col
    ranks = np.unique(code, return_inverse=True)[1].reshape(-1).astype(np.int64)
    out, start = [], 0
    for s in sizes:
        out.append(ranks[start:start + s])
        start += s
    return out


class _WLState:
    """Per-graph arrays reused across k-WL rounds."""

    def __init__(self, g, k):
        self.n = n = g.n
        self.k = k
        self.size = n ** k
        self.tuples = _tuples(n, k)
        self.adj = _adjacency_matrix(g)
        self.digits = _atp_digits(g, k, self.tuples, self.adj)
        t = self.tuples
        v = np.arange(n, dtype=np.int64)
        base = np.arange(self.size, dtype=np.int64)[:, None]
        # index of v̄[v/j] for every tuple and every v
        self.subs = [base + (v[None, :] - t[:, j][:, None]) * n ** (k - 1 - j) for j in range(k)]
        # relation of the new vertex v to the tuple: color, equalities, both arc directions
        rel = [np.broadcast_to(g.vertex_colors[None, :], (self.size, n))]
        for i in range(k):
            rel.append((t[:, i][:, None] == v[None, :]).astype(np.int64))
            rel.append(self.adj[t[:, i][:, None], v[None, :]])
            rel.append(self.adj[v[None, :], t[:, i][:, None]])
        self.rel = np.stack([np.asarray(r, dtype=np.int64).reshape(-1) for r in rel], axis=1)


def _check_guard(n, k, max_tuples):
    if n ** k > max_tuples:
        raise ResourceLimitError(f"{k}-WL on {n} vertices needs {n ** k} tuples (guard {max_tuples})")
    if n ** (k + 1) * (k + 1) > MAX_SIGNATURE_ENTRIES:
        raise ResourceLimitError(
            f"{k}-WL on {n} vertices needs {n ** (k + 1) * (k + 1)} signature entries "
            f"(guard {MAX_SIGNATURE_ENTRIES})"
        )


def wl_k_joint(graphs, k: int, max_tuples: int = MAX_TUPLES):
    """k-WL on several graphs at once with a shared color naming.

    Returns ``(traces, colors)`` where ``colors[i]`` holds the shared-name
    stable colors of graph ``i``.

    Each graph is refined on its own ``V^k``; only the naming of colors is
    shared, so colors are directly comparable between the graphs.  All traces
    stop at the first round where no graph's partition changes.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    for g in graphs:
        _check_guard(g.n, k, max_tuples)
    states = [_WLState(g, k) for g in graphs]
    # χ_0: atomic types, named jointly
    atp = _rank_rows([s.digits for s in states])
    colors = atp
    # atp(v̄v) codes are constant across rounds: name them once
    ext_rows = []
    for s, a in zip(states, atp):
        ext_rows.append(np.concatenate([np.repeat(a, s.n)[:, None], s.rel], axis=1))
    ext = _rank_rows(ext_rows)
    traces = [[Coloring(c, s.n, k, 0)] for s, c in zip(states, _split_dense(colors))]
    total = len(np.unique(np.concatenate(colors))) if colors else 0
    while True:
        rows = []
        for s, chi, e in zip(states, colors, ext):
            parts = [e.reshape(s.size, s.n)] + [chi[sub] for sub in s.subs]
            rows.append(np.stack([p.reshape(-1) for p in parts], axis=1))
        codes = _rank_rows(rows)
        keys = []
        for s, chi, c in zip(states, colors, codes):
            sig = np.sort(c.reshape(s.size, s.n), axis=1)
            keys.append(np.concatenate([chi[:, None], sig], axis=1))
        new = _rank_rows(keys)
        new_total = len(np.unique(np.concatenate(new))) if new else 0
        if new_total == total:
            break
        total = new_total
        colors = new
        for tr, s, c in zip(traces, states, _split_dense(colors)):
            tr.append(Coloring(c, s.n, k, len(tr)))
    return [RefinementTrace(tr, len(tr) - 1) for tr in traces], colors


def _split_dense(colors):
    """Densify each graph's shared-name colors separately for its own trace."""
    return [np.unique(c, return_inverse=True)[1].reshape(-1).astype(np.int64) for c in colors]


def wl_k(g: ColoredGraph, k: int, max_tuples: int = MAX_TUPLES) -> RefinementTrace:
    """k-WL by the definition: atomic types, then substitution multisets.

    ``k = 1`` is accepted and gives the k-WL style formulation of Color
    Refinement (multisets over all vertices, with atomic types of pairs).
    """
    traces, _ = wl_k_joint([g], k, max_tuples)
    return traces[0]


@dataclass
class Distinction:
    """Outcome of :func:`distinguishes`; truthy when the graphs are told apart."""

    distinguished: bool
    k: int
    witness: int | None = None
    counts: tuple = field(default=(0, 0))

    def __bool__(self):
        return self.distinguished


def distinguishes(g: ColoredGraph, h: ColoredGraph, k: int = 1) -> Distinction:
    """Whether k-WL (Color Refinement for ``k = 1``) tells ``g`` and ``h`` apart.

    The witness is the smallest shared color id whose class sizes differ.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    if k == 1:
        pair = GraphPair(g, h)
        stable = refine_stable(pair.union)
        a, b = pair.class_counts(stable)
    else:
        _, colors = wl_k_joint([g, h], k)
        c = int(max(int(x.max()) if len(x) else -1 for x in colors)) + 1
        a = np.bincount(colors[0], minlength=c)
        b = np.bincount(colors[1], minlength=c)
    diff = np.flatnonzero(a != b)
    if len(diff):
        w = int(diff[0])
        return Distinction(True, k, w, (int(a[w]), int(b[w])))
    return Distinction(False, k)


# -- homomorphism counts ---------------------------------------------------------

def hom_count_tree(f: ColoredGraph, g: ColoredGraph) -> int:
    """Number of homomorphisms from the tree ``f`` to ``g`` (colors ignored).

    Dynamic programming over ``f`` rooted at vertex 0: the table of a node
    holds, for each target vertex, the number of ways to map its subtree.
    """
    if f.n == 0 or f.m != f.n - 1 or not f.is_connected():
        raise ValueError("f must be a tree")
    fadj = f.adjacency
    gadj = g.adjacency
    order, parent = [0], {0: -1}
    for u in order:
        for w in fadj[u]:
            if w not in parent:
                parent[w] = u
                order.append(w)
    table = {}
    for u in reversed(order):
        vals = [1] * g.n
        for c in fadj[u]:
            if parent.get(c) == u:
                child = table.pop(c)
                for x in range(g.n):
                    if vals[x]:
                        vals[x] *= sum(child[y] for y in gadj[x])
        table[u] = vals
    return sum(table[0])


# -- export ---------------------------------------------------------------------

def trace_to_json(trace: RefinementTrace) -> str:
    """Per-round partitions as sorted lists of classes; tuples as lists."""
    rounds = []
    for chi in trace.rounds:
        if chi.arity == 1:
            rounds.append(chi.partition())
        else:
            rounds.append(sorted(sorted(list(chi.tuple_of(i)) for i in cls) for cls in chi.classes()))
    first = trace.rounds[0]
    obj = {"arity": first.arity, "n": first.n, "stabilized_at": trace.stabilized_at, "rounds": rounds}
    return json.dumps(obj, separators=(",", ":")) + "\n"
