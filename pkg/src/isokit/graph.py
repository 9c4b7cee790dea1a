"""Vertex- and arc-colored graphs, vertex/tuple colorings and graph pairs.

Graphs are stored in CSR form: ``indptr`` and ``indices`` give the sorted
neighbor lists, ``arc_out[e]`` is the color of the arc ``(v, indices[e])`` for
``e`` in row ``v`` and ``arc_in[e]`` is the color of the reverse arc.  All
arrays are read-only so instances can be shared freely between threads.
"""

from __future__ import annotations

from functools import cached_property
from typing import Iterable, Mapping, Sequence

import numpy as np

__all__ = ["ColoredGraph", "Coloring", "GraphPair", "disjoint_union"]


def _frozen(a, dtype=np.int64):
    a = np.ascontiguousarray(a, dtype=dtype)
    a.setflags(write=False)
    return a


def _dense_ids(values):
    """Map arbitrary integer labels to 0..c-1 preserving their order."""
    uniq, inv = np.unique(np.asarray(values, dtype=np.int64), return_inverse=True)
    return inv.astype(np.int64).reshape(-1), len(uniq)


class ColoredGraph:
    """An undirected graph with vertex colors and (directed) arc colors.

    Use :meth:`from_edges` to build one; the constructor expects ready-made
    CSR arrays and trusts them.
    """

    __slots__ = ("n", "indptr", "indices", "vertex_colors", "arc_out", "__dict__")

    def __init__(self, n, indptr, indices, vertex_colors, arc_out):
        self.n = int(n)
        self.indptr = _frozen(indptr)
        self.indices = _frozen(indices)
        self.vertex_colors = _frozen(vertex_colors)
        self.arc_out = _frozen(arc_out)

    # -- construction -------------------------------------------------
    @classmethod
    def from_edges(
        cls,
        n: int,
        edges: Iterable[Sequence[int]],
        vertex_colors: Sequence[int] | None = None,
        arc_colors: Mapping[tuple[int, int], int] | None = None,
    ) -> "ColoredGraph":
        """Build a graph from an edge list.

        ``arc_colors`` maps ordered pairs ``(v, w)`` to colors; arcs missing
        from the mapping get color 0.  Raises ``ValueError`` on self-loops,
        duplicate edges, out-of-range ids or arc colors on non-edges.
        """
        n = int(n)
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        e = np.asarray(list(edges) if not isinstance(edges, np.ndarray) else edges, dtype=np.int64)
        if e.size == 0:
            e = e.reshape(0, 2)
        if e.ndim != 2 or e.shape[1] != 2:
            raise ValueError("edges must be pairs")
        if e.size and (e.min() < 0 or e.max() >= n):
            bad = e[(e < 0).any(axis=1) | (e >= n).any(axis=1)][0]
            raise ValueError(f"edge {tuple(int(x) for x in bad)} has a vertex outside 0..{n - 1}")
        loops = e[:, 0] == e[:, 1]
        if loops.any():
            v = int(e[loops][0, 0])
            raise ValueError(f"self-loop at vertex {v}")
        src = np.concatenate([e[:, 0], e[:, 1]])
        dst = np.concatenate([e[:, 1], e[:, 0]])
        order = np.lexsort((dst, src))
        src, dst = src[order], dst[order]
        if len(src) > 1:
            dup = (src[1:] == src[:-1]) & (dst[1:] == dst[:-1])
            if dup.any():
                i = int(np.flatnonzero(dup)[0])
                a, b = sorted((int(src[i]), int(dst[i])))
                raise ValueError(f"duplicate edge {{{a}, {b}}}")
        indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(np.bincount(src, minlength=n), out=indptr[1:])
        if vertex_colors is None:
            vc = np.zeros(n, dtype=np.int64)
        else:
            vc = np.asarray(vertex_colors, dtype=np.int64)
            if vc.shape != (n,):
                raise ValueError("vertex_colors must have one entry per vertex")
            if n and vc.min() < 0:
                raise ValueError("colors must be non-negative")
        arc = np.zeros(len(dst), dtype=np.int64)
        g = cls(n, indptr, dst, vc, arc.copy())
        if arc_colors:
            for (v, w), c in arc_colors.items():
                pos = g._arc_index(int(v), int(w))
                if pos < 0:
                    raise ValueError(f"arc color given for non-edge ({v}, {w})")
                if c < 0:
                    raise ValueError("colors must be non-negative")
                arc[pos] = c
            g = cls(n, indptr, dst, vc, arc)
        return g

    def _arc_index(self, v, w):
        if not (0 <= v < self.n and 0 <= w < self.n):
            return -1
        lo, hi = self.indptr[v], self.indptr[v + 1]
        pos = lo + int(np.searchsorted(self.indices[lo:hi], w))
        if pos < hi and self.indices[pos] == w:
            return int(pos)
        return -1

    # -- basic queries -------------------------------------------------
    @property
    def m(self) -> int:
        return len(self.indices) // 2

    def neighbors(self, v: int) -> np.ndarray:
        return self.indices[self.indptr[v]:self.indptr[v + 1]]

    def degree(self, v: int) -> int:
        return int(self.indptr[v + 1] - self.indptr[v])

    @cached_property
    def degrees(self) -> np.ndarray:
        return _frozen(np.diff(self.indptr))

    @property
    def max_degree(self) -> int:
        return int(self.degrees.max()) if self.n else 0

    @cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        """Per-vertex sorted neighbor tuples."""
        ind = self.indices.tolist()
        ptr = self.indptr.tolist()
        return tuple(tuple(ind[ptr[v]:ptr[v + 1]]) for v in range(self.n))

    def has_edge(self, v: int, w: int) -> bool:
        return self._arc_index(v, w) >= 0

    def arc_color(self, v: int, w: int) -> int:
        pos = self._arc_index(v, w)
        if pos < 0:
            raise KeyError((v, w))
        return int(self.arc_out[pos])

    @cached_property
    def arc_src(self) -> np.ndarray:
        return _frozen(np.repeat(np.arange(self.n, dtype=np.int64), self.degrees))

    @cached_property
    def reverse_arc(self) -> np.ndarray:
        """``reverse_arc[e]`` is the CSR position of the opposite arc."""
        order = np.lexsort((self.arc_src, self.indices))
        rev = np.empty_like(order)
        rev[order] = np.arange(len(order))
        return _frozen(rev)

    @cached_property
    def arc_in(self) -> np.ndarray:
        return _frozen(self.arc_out[self.reverse_arc])

    def edges(self) -> list[tuple[int, int]]:
        """Edges as ``(v, w)`` with ``v < w`` in lexicographic order."""
        src, dst = self.arc_src, self.indices
        keep = src < dst
        return list(zip(src[keep].tolist(), dst[keep].tolist()))

    @cached_property
    def edge_set(self) -> frozenset:
        return frozenset(self.edges())

    def arc_color_map(self) -> dict[tuple[int, int], int]:
        return {
            (v, w): c
            for v, w, c in zip(self.arc_src.tolist(), self.indices.tolist(), self.arc_out.tolist())
        }

    @property
    def is_vertex_uncolored(self) -> bool:
        return not self.vertex_colors.any()

    @property
    def is_arc_uncolored(self) -> bool:
        return not self.arc_out.any()

    @property
    def num_arc_colors(self) -> int:
        return int(self.arc_out.max()) + 1 if len(self.arc_out) else 1

    # -- derived graphs ------------------------------------------------
    def relabel(self, perm: Sequence[int]) -> "ColoredGraph":
        """Return the image graph under the vertex map ``v -> perm[v]``."""
        p = np.asarray(perm, dtype=np.int64)
        if sorted(p.tolist()) != list(range(self.n)):
            raise ValueError("relabel needs a permutation of the vertices")
        e = np.stack([p[self.arc_src], p[self.indices]], axis=1)
        keep = e[:, 0] < e[:, 1]
        vc = np.empty(self.n, dtype=np.int64)
        vc[p] = self.vertex_colors
        arcs = None
        if not self.is_arc_uncolored:
            arcs = {(int(a), int(b)): int(c) for (a, b), c in zip(e.tolist(), self.arc_out.tolist())}
        return ColoredGraph.from_edges(self.n, e[keep], vc, arcs)

    def with_vertex_colors(self, colors: Sequence[int]) -> "ColoredGraph":
        vc = np.asarray(colors, dtype=np.int64)
        if vc.shape != (self.n,):
            raise ValueError("vertex_colors must have one entry per vertex")
        return ColoredGraph(self.n, self.indptr, self.indices, vc, self.arc_out)

    def induced_subgraph(self, vertices: Iterable[int]) -> "ColoredGraph":
        vs = sorted(set(int(v) for v in vertices))
        idx = {v: i for i, v in enumerate(vs)}
        edges, arcs = [], {}
        for v in vs:
            for w in self.neighbors(v).tolist():
                if w in idx:
                    arcs[(idx[v], idx[w])] = self.arc_color(v, w)
                    if v < w:
                        edges.append((idx[v], idx[w]))
        return ColoredGraph.from_edges(len(vs), edges, self.vertex_colors[vs], arcs)

    def is_connected(self) -> bool:
        if self.n <= 1:
            return True
        seen = np.zeros(self.n, dtype=bool)
        seen[0] = True
        stack = [0]
        adj = self.adjacency
        while stack:
            v = stack.pop()
            for w in adj[v]:
                if not seen[w]:
                    seen[w] = True
                    stack.append(w)
        return bool(seen.all())

    def is_isomorphism(self, other: "ColoredGraph", perm: Sequence[int]) -> bool:
        """Check directly that ``v -> perm[v]`` maps this graph onto ``other``."""
        if self.n != other.n or self.m != other.m or len(perm) != self.n:
            return False
        p = np.asarray(perm, dtype=np.int64)
        if len(set(p.tolist())) != self.n:
            return False
        if not np.array_equal(other.vertex_colors[p], self.vertex_colors):
            return False
        for v, w, c in zip(self.arc_src.tolist(), self.indices.tolist(), self.arc_out.tolist()):
            pos = other._arc_index(int(p[v]), int(p[w]))
            if pos < 0 or other.arc_out[pos] != c:
                return False
        return True

    # -- comparison ----------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, ColoredGraph):
            return NotImplemented
        return (
            self.n == other.n
            and np.array_equal(self.indptr, other.indptr)
            and np.array_equal(self.indices, other.indices)
            and np.array_equal(self.vertex_colors, other.vertex_colors)
            and np.array_equal(self.arc_out, other.arc_out)
        )

    def __hash__(self):
        return hash((self.n, self.indices.tobytes(), self.vertex_colors.tobytes(), self.arc_out.tobytes()))

    def __repr__(self):
        return f"ColoredGraph(n={self.n}, m={self.m})"


class Coloring:
    """A coloring of ``V^arity`` with dense color ids ``0..c-1``.

    Tuples are indexed in row-major order: the tuple ``(v_1, ..., v_k)`` sits
    at ``sum(v_i * n**(k-i))``.
    """

    __slots__ = ("arity", "n", "colors", "round", "__dict__")

    def __init__(self, colors, n: int | None = None, arity: int = 1, round: int = 0):
        c = np.asarray(colors, dtype=np.int64).reshape(-1)
        if n is None:
            n = len(c) if arity == 1 else round_root(len(c), arity)
        if len(c) != n ** arity:
            raise ValueError(f"expected {n ** arity} colors, got {len(c)}")
        if len(c) and (c.min() < 0 or len(np.unique(c)) != int(c.max()) + 1):
            raise ValueError("color ids must be contiguous 0..c-1")
        self.arity = arity
        self.n = n
        self.colors = _frozen(c)
        self.round = round

    @classmethod
    def from_labels(cls, labels, n=None, arity=1, round=0) -> "Coloring":
        """Densify arbitrary integer labels, keeping their relative order."""
        ids, _ = _dense_ids(labels)
        return cls(ids, n, arity, round)

    @classmethod
    def uniform(cls, n: int, arity: int = 1) -> "Coloring":
        return cls(np.zeros(n ** arity, dtype=np.int64), n, arity)

    @property
    def num_colors(self) -> int:
        return int(self.colors.max()) + 1 if len(self.colors) else 0

    @property
    def is_discrete(self) -> bool:
        return self.num_colors == len(self.colors)

    def __getitem__(self, idx):
        return int(self.colors[idx])

    def __len__(self):
        return len(self.colors)

    def tuple_of(self, index: int) -> tuple[int, ...]:
        return tuple(int(x) for x in np.unravel_index(index, (self.n,) * self.arity))

    def classes(self) -> list[list[int]]:
        """Classes as lists of domain indices, listed by color id."""
        order = np.argsort(self.colors, kind="stable")
        bounds = np.cumsum(np.bincount(self.colors, minlength=self.num_colors))[:-1]
        return [part.tolist() for part in np.split(order, bounds)]

    def partition(self) -> list[list[int]]:
        """Classes as sorted lists, themselves sorted: a color-name-free view."""
        return sorted(self.classes())

    def class_sizes(self) -> np.ndarray:
        return np.bincount(self.colors, minlength=self.num_colors)

    def refines(self, other: "Coloring") -> bool:
        """``self ⪯ other``: equal ``self`` colors imply equal ``other`` colors."""
        if len(self) != len(other):
            raise ValueError("colorings live on different domains")
        pairs = self.colors * max(other.num_colors, 1) + other.colors
        return len(np.unique(pairs)) == self.num_colors

    def equivalent(self, other: "Coloring") -> bool:
        return self.refines(other) and other.refines(self)

    def restrict(self, start: int, stop: int) -> "Coloring":
        """Vertex-coloring restricted to a contiguous range, densified."""
        if self.arity != 1:
            raise ValueError("restrict applies to vertex colorings")
        return Coloring.from_labels(self.colors[start:stop], round=self.round)

    def __eq__(self, other):
        if not isinstance(other, Coloring):
            return NotImplemented
        return self.arity == other.arity and np.array_equal(self.colors, other.colors)

    def __hash__(self):
        return hash((self.arity, self.colors.tobytes()))

    def __repr__(self):
        return f"Coloring(arity={self.arity}, n={self.n}, colors={self.num_colors}, round={self.round})"


def round_root(size, k):
    n = int(round(size ** (1.0 / k)))
    for cand in (n - 1, n, n + 1):
        if cand >= 0 and cand ** k == size:
            return cand
    raise ValueError(f"{size} is not a {k}-th power")


def disjoint_union(g: ColoredGraph, h: ColoredGraph) -> ColoredGraph:
    """The disjoint union with ``h`` shifted by ``g.n``; colors are kept as-is."""
    n = g.n + h.n
    indptr = np.concatenate([g.indptr, h.indptr[1:] + g.indptr[-1]])
    indices = np.concatenate([g.indices, h.indices + g.n])
    vc = np.concatenate([g.vertex_colors, h.vertex_colors])
    arc = np.concatenate([g.arc_out, h.arc_out])
    return ColoredGraph(n, indptr, indices, vc, arc)


class GraphPair:
    """Two graphs placed side by side so refinement names colors jointly."""

    __slots__ = ("g", "h", "offset", "union")

    def __init__(self, g: ColoredGraph, h: ColoredGraph):
        self.g = g
        self.h = h
        self.offset = g.n
        self.union = disjoint_union(g, h)

    def split(self, coloring: Coloring) -> tuple[np.ndarray, np.ndarray]:
        """The shared-id colors of the two halves (not re-densified)."""
        return coloring.colors[: self.offset], coloring.colors[self.offset:]

    def class_counts(self, coloring: Coloring) -> tuple[np.ndarray, np.ndarray]:
        a, b = self.split(coloring)
        c = coloring.num_colors
        return np.bincount(a, minlength=c), np.bincount(b, minlength=c)

