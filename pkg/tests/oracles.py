"""Brute-force reference implementations used as test oracles.

The reference functions never call into the algorithms under test: graphs
are read through their edge lists, groups through their generator tuples.
The random instance builders at the end use the library types only to
package their output.
"""

from __future__ import annotations

import itertools
from collections import Counter

import numpy as np


def adjacency_sets(g):
    adj = [set() for _ in range(g.n)]
    for v, w in g.edges():
        adj[v].add(w)
        adj[w].add(v)
    return adj


def is_iso_map(g, h, pi):
    """``pi`` maps ``g`` onto ``h`` (vertex colors and arc colors included)."""
    if g.n != h.n or g.m != h.m:
        return False
    gc, hc = list(g.vertex_colors), list(h.vertex_colors)
    if any(gc[v] != hc[pi[v]] for v in range(g.n)):
        return False
    ga, ha = g.arc_color_map(), h.arc_color_map()
    return all((pi[v], pi[w]) in ha and ha[(pi[v], pi[w])] == c for (v, w), c in ga.items())


def all_isos(g, h):
    if g.n != h.n:
        return []
    return [p for p in itertools.permutations(range(g.n)) if is_iso_map(g, h, p)]


def aut_order(g):
    return len(all_isos(g, g))


# -- refinement by definition -------------------------------------------------

def cr_rounds(g):
    """Color Refinement rounds as partitions, straight from the definition."""
    adj = adjacency_sets(g)
    colors = list(g.vertex_colors)
    rounds = [_partition(colors)]
    while True:
        sig = [(colors[v], tuple(sorted(Counter(colors[w] for w in adj[v]).items()))) for v in range(g.n)]
        ids = {s: i for i, s in enumerate(sorted(set(sig)))}
        new = [ids[s] for s in sig]
        if len(set(new)) == len(set(colors)):
            return rounds
        colors = new
        rounds.append(_partition(colors))


def wl2_rounds(g):
    """2-WL on ordered pairs, using the definition with atomic types.

    The new color of ``(u, v)`` is the old color with the multiset of
    ``(χ(w, v), χ(u, w))`` over all ``w``.
    """
    adj = adjacency_sets(g)
    n = g.n
    pairs = [(u, v) for u in range(n) for v in range(n)]
    col = {}
    for u, v in pairs:
        col[(u, v)] = (u == v, v in adj[u], g.vertex_colors[u], g.vertex_colors[v])
    ids = {c: i for i, c in enumerate(sorted(set(col.values())))}
    col = {p: ids[c] for p, c in col.items()}
    rounds = [col]
    while True:
        sig = {
            (u, v): (col[(u, v)], tuple(sorted(Counter((col[(w, v)], col[(u, w)]) for w in range(n)).items())))
            for u, v in pairs
        }
        ids = {s: i for i, s in enumerate(sorted(set(sig.values())))}
        new = {p: ids[s] for p, s in sig.items()}
        if len(set(new.values())) == len(set(col.values())):
            return rounds
        col = new
        rounds.append(col)


def _partition(colors):
    classes = {}
    for v, c in enumerate(colors):
        classes.setdefault(c, []).append(v)
    return sorted(classes.values())


def distance_matrix(g):
    adj = adjacency_sets(g)
    inf = float("inf")
    dist = [[inf] * g.n for _ in range(g.n)]
    for s in range(g.n):
        dist[s][s] = 0
        frontier = [s]
        while frontier:
            nxt = []
            for u in frontier:
                for w in adj[u]:
                    if dist[s][w] == inf:
                        dist[s][w] = dist[s][u] + 1
                        nxt.append(w)
            frontier = nxt
    return dist


def srg_parameters(g):
    """``(n, k, λ, μ)`` if ``g`` is strongly regular, else None."""
    adj = adjacency_sets(g)
    degs = {len(a) for a in adj}
    if len(degs) != 1:
        return None
    lam, mu = set(), set()
    for u, v in itertools.combinations(range(g.n), 2):
        common = len(adj[u] & adj[v])
        (lam if v in adj[u] else mu).add(common)
    if len(lam) > 1 or len(mu) > 1:
        return None
    return g.n, degs.pop(), lam.pop() if lam else 0, mu.pop() if mu else 0


def hom_count(f, g):
    """Homomorphisms ``f → g`` by enumerating every vertex map."""
    fe = f.edges()
    gadj = adjacency_sets(g)
    return sum(
        all(m[b] in gadj[m[a]] for a, b in fe)
        for m in itertools.product(range(g.n), repeat=f.n)
    )


# -- groups -----------------------------------------------------------------------

def compose(g, h):
    """Apply ``g`` first, then ``h``."""
    return tuple(h[x] for x in g)


def closure_elements(degree, gens):
    ident = tuple(range(degree))
    seen = {ident}
    frontier = [ident]
    gens = [tuple(s) for s in gens]
    while frontier:
        nxt = []
        for a in frontier:
            for s in gens:
                b = compose(a, s)
                if b not in seen:
                    seen.add(b)
                    nxt.append(b)
        frontier = nxt
    return seen


def orbit_of(elements, point):
    return sorted({g[point] for g in elements})


def stabilizer_of(elements, point):
    return {g for g in elements if g[point] == point}


def set_partitions(items):
    items = list(items)
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in set_partitions(rest):
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1:]
        yield [[first]] + part


def invariant_partitions(degree, gens):
    """Every partition of ``range(degree)`` with equal blocks preserved by ``gens``."""
    out = []
    for part in set_partitions(range(degree)):
        if len({len(b) for b in part}) != 1:
            continue
        blocks = {frozenset(b) for b in part}
        if all(frozenset(s[x] for x in b) in blocks for s in gens for b in blocks):
            out.append(sorted(sorted(b) for b in part))
    return out


def is_primitive_bruteforce(degree, gens):
    nontrivial = [p for p in invariant_partitions(degree, gens) if 1 < len(p) < degree]
    return not nontrivial


# -- string isomorphism ------------------------------------------------------------

def si_coset(x, y, elements, window=None, shift=None):
    """All ``g`` in ``Γγ`` with ``x(a) = y(g(a))`` for ``a`` in the window."""
    n = len(x)
    window = range(n) if window is None else window
    out = []
    for g in elements:
        h = g if shift is None else compose(g, tuple(shift))
        if all(x[a] == y[h[a]] for a in window):
            out.append(h)
    return out


def random_graph(rng, n, max_m=None):
    """Seeded ``G(n, m)`` with ``m`` uniform in ``0..min(max_m, C(n, 2))``."""
    from isokit.generators import random_gnm

    cap = n * (n - 1) // 2
    if max_m is not None:
        cap = min(cap, max_m)
    return random_gnm(n, int(rng.integers(0, cap + 1)), int(rng.integers(1 << 30)))


def random_si_instance(rng, max_order=10**4, max_n=9):
    """A random string isomorphism instance with a mix of group shapes.

    Shapes: random generators, direct products of symmetric groups on parts,
    imprimitive cyclic-by-cyclic groups; all randomly conjugated.  Shifts
    and proper invariant windows are drawn with probability about one half.
    """
    from isokit.perm import Perm, PermGroup
    from isokit.strings import GString, SIInstance, apply_perm

    while True:
        n = int(rng.integers(2, max_n + 1))
        kind = int(rng.integers(3))
        gens = []
        if kind == 0:
            gens = [Perm(rng.permutation(n).tolist()) for _ in range(int(rng.integers(1, 3)))]
        elif kind == 1:
            for part in np.array_split(rng.permutation(n), int(rng.integers(1, 4))):
                if len(part) >= 2:
                    swap = list(range(n))
                    swap[part[0]], swap[part[1]] = int(part[1]), int(part[0])
                    cyc = list(range(n))
                    for i in range(len(part)):
                        cyc[part[i]] = int(part[(i + 1) % len(part)])
                    gens += [Perm(swap), Perm(cyc)]
        else:
            b = 2 if n % 2 == 0 else (3 if n % 3 == 0 else 1)
            if b > 1:
                gens.append(Perm([(i // b) * b + (i % b + 1) % b for i in range(n)]))
            gens.append(Perm([(i + b) % n for i in range(n)]))
        c = Perm(rng.permutation(n).tolist())
        group = PermGroup(n, [~c * g * c for g in gens])
        if group.order() > max_order:
            continue
        s = int(rng.integers(1, 4))
        x = GString.from_values(rng.integers(0, s, n).tolist(), s)
        if rng.random() < 0.6:
            y = apply_perm(x, group.random_element(rng))
        else:
            y = GString.from_values(rng.integers(0, s, n).tolist(), s)
        shift = Perm(rng.permutation(n).tolist()) if rng.random() < 0.5 else None
        orbits = group.orbits()
        window = [a for o in orbits if rng.random() < 0.7 for a in o]
        return SIInstance(x, y, group, shift, tuple(window))


def si_oracle(inst):
    """Exhaustive ``Iso^W_{Γγ}(x, y)`` as a set of image tuples."""
    elems = closure_elements(inst.n, inst.group.generators)
    return set(si_coset(inst.x.values, inst.y.values, elems, inst.window, inst.shift))


# -- paths -----------------------------------------------------------------------

def simple_paths(g, v, w):
    adj = adjacency_sets(g)
    out = []

    def walk(path, seen):
        u = path[-1]
        for x in adj[u]:
            if x == w:
                out.append(path + [w])
            elif x not in seen:
                seen.add(x)
                walk(path + [x], seen)
                seen.remove(x)

    walk([v], {v})
    return out


def max_internally_disjoint(g, v, w):
    """Largest family of ``v``–``w`` paths sharing no inner vertex (exhaustive).

    Paths are compared by their inner vertex sets; the edge ``vw`` (empty
    inner set) appears once after deduplication.
    """
    inner = sorted({frozenset(p[1:-1]) for p in simple_paths(g, v, w)}, key=len)
    best = 0

    def grow(start, used, count):
        nonlocal best
        best = max(best, count)
        for i in range(start, len(inner)):
            if not (inner[i] & used):
                grow(i + 1, used | inner[i], count + 1)

    grow(0, frozenset(), 0)
    return best
