"""Graph generators and the fixed fixture corpus."""

from __future__ import annotations

import heapq
from itertools import combinations

import numpy as np

from .graph import ColoredGraph, disjoint_union

__all__ = [
    "gen_path",
    "gen_cycle",
    "gen_complete",
    "gen_complete_bipartite",
    "gen_johnson",
    "gen_shrikhande",
    "gen_rook44",
    "gen_petersen",
    "gen_dodecahedron",
    "gen_icosahedron",
    "gen_prism",
    "random_regular",
    "random_connected_bounded_degree",
    "random_gnm",
    "random_gnp",
    "random_tree",
    "disjoint_union",
    "planar_fixtures",
    "FIXTURES",
]


def gen_path(length: int) -> ColoredGraph:
    """The path with ``length`` edges, so ``length + 1`` vertices."""
    if length < 1:
        raise ValueError("path length must be at least 1")
    return ColoredGraph.from_edges(length + 1, [(i, i + 1) for i in range(length)])


def gen_cycle(n: int) -> ColoredGraph:
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return ColoredGraph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def gen_complete(n: int) -> ColoredGraph:
    if n < 1:
        raise ValueError("n must be positive")
    return ColoredGraph.from_edges(n, list(combinations(range(n), 2)))


def gen_complete_bipartite(a: int, b: int) -> ColoredGraph:
    """K_{a,b} with parts 0..a-1 and a..a+b-1."""
    if a < 1 or b < 1:
        raise ValueError("both parts must be non-empty")
    return ColoredGraph.from_edges(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def gen_johnson(m: int, t: int) -> ColoredGraph:
    """J(m, t): t-subsets of range(m) in lexicographic order, adjacent when |X \\ Y| = 1."""
    if t < 1 or 2 * t > m:
        raise ValueError("gen_johnson needs 1 <= t <= m/2")
    subsets = [frozenset(s) for s in combinations(range(m), t)]
    edges = [
        (i, j)
        for i, j in combinations(range(len(subsets)), 2)
        if len(subsets[i] - subsets[j]) == 1
    ]
    return ColoredGraph.from_edges(len(subsets), edges)


def gen_shrikhande() -> ColoredGraph:
    """Cayley graph of Z4 x Z4 with connection set ±(0,1), ±(1,0), ±(1,1).

    Vertex ``(a, b)`` has index ``4a + b``.
    """
    gens = [(0, 1), (1, 0), (1, 1)]
    edges = set()
    for a in range(4):
        for b in range(4):
            for da, db in gens:
                w = ((a + da) % 4) * 4 + (b + db) % 4
                edges.add(tuple(sorted((4 * a + b, w))))
    return ColoredGraph.from_edges(16, sorted(edges))


def gen_rook44() -> ColoredGraph:
    """Line graph of K_{4,4}: edge ``(i, j)`` becomes vertex ``4i + j``."""
    cells = [(i, j) for i in range(4) for j in range(4)]
    edges = [
        (4 * a[0] + a[1], 4 * b[0] + b[1])
        for a, b in combinations(cells, 2)
        if a[0] == b[0] or a[1] == b[1]
    ]
    return ColoredGraph.from_edges(16, edges)


def _generalized_petersen(k, s):
    edges = []
    for i in range(k):
        edges.append((i, (i + 1) % k))
        edges.append((i, k + i))
        edges.append((k + i, k + (i + s) % k))
    return ColoredGraph.from_edges(2 * k, [tuple(sorted(e)) for e in edges])


def gen_petersen() -> ColoredGraph:
    return _generalized_petersen(5, 2)


def gen_dodecahedron() -> ColoredGraph:
    """The dodecahedron as the generalized Petersen graph GP(10, 2)."""
    return _generalized_petersen(10, 2)


def gen_icosahedron() -> ColoredGraph:
    """Apex 0, upper pentagon 1..5, lower pentagon 6..10, apex 11."""
    edges = []
    for i in range(5):
        up, up_next = 1 + i, 1 + (i + 1) % 5
        lo, lo_next = 6 + i, 6 + (i + 1) % 5
        edges += [(0, up), (up, up_next), (up, lo), (up, lo_next), (lo, lo_next), (lo, 11)]
    return ColoredGraph.from_edges(12, [tuple(sorted(e)) for e in edges])


def gen_prism(k: int) -> ColoredGraph:
    """C_k x K_2: outer cycle 0..k-1, inner cycle k..2k-1."""
    if k < 3:
        raise ValueError("a prism needs k >= 3")
    return _generalized_petersen(k, 1)


def planar_fixtures() -> dict[str, ColoredGraph]:
    """3-connected planar graphs used by the closure tests."""
    fx = {"dodecahedron": gen_dodecahedron(), "icosahedron": gen_icosahedron()}
    for k in range(3, 9):
        fx[f"prism{k}"] = gen_prism(k)
    return fx


FIXTURES = {
    "path6": lambda: gen_path(6),
    "cycle6": lambda: gen_cycle(6),
    "cycle7": lambda: gen_cycle(7),
    "two-triangles": lambda: disjoint_union(gen_cycle(3), gen_cycle(3)),
    "shrikhande": gen_shrikhande,
    "rook44": gen_rook44,
    "petersen": gen_petersen,
    "dodecahedron": gen_dodecahedron,
    "icosahedron": gen_icosahedron,
    "johnson52": lambda: gen_johnson(5, 2),
    "k23": lambda: gen_complete_bipartite(2, 3),
}


# -- random graphs -------------------------------------------------------

def random_regular(n: int, d: int, seed, max_tries: int = 1000) -> ColoredGraph:
    """Uniform-ish random d-regular graph by incremental pairing with restarts."""
    if n < 1 or d < 0 or d >= n or (n * d) % 2:
        raise ValueError(f"no simple {d}-regular graph on {n} vertices")
    rng = np.random.default_rng(seed)
    for _ in range(max_tries):
        points = np.repeat(np.arange(n), d).tolist()
        edges = set()
        stuck = False
        while points:
            for _attempt in range(50):
                i, j = rng.choice(len(points), size=2, replace=False)
                a, b = points[i], points[j]
                key = (min(a, b), max(a, b))
                if a != b and key not in edges:
                    break
            else:
                stuck = True
                break
            edges.add(key)
            for idx in sorted((int(i), int(j)), reverse=True):
                points[idx] = points[-1]
                points.pop()
        if not stuck:
            return ColoredGraph.from_edges(n, sorted(edges))
    raise ValueError(f"could not sample a {d}-regular graph on {n} vertices in {max_tries} tries")


def random_tree(n: int, seed) -> ColoredGraph:
    """Random labeled tree via a Pruefer sequence."""
    if n < 1:
        raise ValueError("n must be positive")
    if n <= 2:
        return ColoredGraph.from_edges(n, [(0, 1)] if n == 2 else [])
    rng = np.random.default_rng(seed)
    seq = rng.integers(0, n, size=n - 2).tolist()
    degree = [1] * n
    for v in seq:
        degree[v] += 1
    leaves = [v for v in range(n) if degree[v] == 1]
    heapq.heapify(leaves)
    edges = []
    for v in seq:
        leaf = heapq.heappop(leaves)
        edges.append((min(leaf, v), max(leaf, v)))
        degree[v] -= 1
        if degree[v] == 1:
            heapq.heappush(leaves, v)
    a, b = heapq.heappop(leaves), heapq.heappop(leaves)
    edges.append((a, b))
    return ColoredGraph.from_edges(n, edges)


def random_connected_bounded_degree(n: int, d: int, seed, max_tries: int = 100) -> ColoredGraph:
    """Connected graph with maximum degree at most ``d``.

    A random spanning tree respecting the degree bound is grown first, then a
    random number of extra edges is added where both endpoints have room.
    """
    if d < 2 and n > 2:
        raise ValueError("a connected graph on more than 2 vertices needs d >= 2")
    if n < 1:
        raise ValueError("n must be positive")
    rng = np.random.default_rng(seed)
    for _ in range(max_tries):
        deg = [0] * n
        edges = set()
        order = rng.permutation(n).tolist()
        ok = True
        for i in range(1, n):
            open_ = [order[j] for j in range(i) if deg[order[j]] < d]
            if not open_:
                ok = False
                break
            u = open_[int(rng.integers(len(open_)))]
            v = order[i]
            edges.add((min(u, v), max(u, v)))
            deg[u] += 1
            deg[v] += 1
        if not ok:
            continue
        extra = int(rng.integers(0, n + 1))
        for _e in range(extra):
            u, v = (int(x) for x in rng.integers(0, n, size=2))
            key = (min(u, v), max(u, v))
            if u != v and key not in edges and deg[u] < d and deg[v] < d:
                edges.add(key)
                deg[u] += 1
                deg[v] += 1
        g = ColoredGraph.from_edges(n, sorted(edges))
        if g.is_connected() and g.max_degree <= d:
            return g
    raise ValueError(f"could not build a connected graph with n={n}, d={d}")


def random_gnm(n: int, m: int, seed) -> ColoredGraph:
    """Uniform random simple graph with exactly ``m`` edges (vectorized)."""
    if m > n * (n - 1) // 2:
        raise ValueError("too many edges requested")
    rng = np.random.default_rng(seed)
    keys = np.empty(0, dtype=np.int64)
    while len(keys) < m:
        need = m - len(keys)
        a = rng.integers(0, n, size=need + need // 10 + 16)
        b = rng.integers(0, n, size=len(a))
        keep = a != b
        lo, hi = np.minimum(a, b)[keep], np.maximum(a, b)[keep]
        new = lo * n + hi
        keys = np.concatenate([keys, new])
        _, first = np.unique(keys, return_index=True)
        keys = keys[np.sort(first)]
    keys = np.sort(keys[:m])
    return ColoredGraph.from_edges(n, np.stack([keys // n, keys % n], axis=1))


def random_gnp(n: int, p: float, seed) -> ColoredGraph:
    rng = np.random.default_rng(seed)
    iu = np.triu_indices(n, 1)
    keep = rng.random(len(iu[0])) < p
    return ColoredGraph.from_edges(n, np.stack([iu[0][keep], iu[1][keep]], axis=1))
