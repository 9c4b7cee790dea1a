"""Individualization-refinement search for automorphisms and isomorphisms.

The search tree of a graph has the stable coloring as its root; a child
individualizes one vertex of the target cell (the smallest non-singleton
class, ties to the smallest color id) and refines again.  Leaves are
discrete colorings.  Automorphisms are collected along the first path in
the usual way: for every level, each vertex of the target cell is either
shown to lie in the orbit of the first-path choice (by finding a leaf that
matches the first leaf) or exhausted.  Automorphisms already found prune
whole orbits.  Node invariants (cell sizes and the quotient degree matrix)
cut subtrees that cannot contain a matching leaf.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .graph import ColoredGraph, Coloring
from .perm import Coset, Perm, PermGroup
from .refinement import _combine, refine_stable

__all__ = ["SearchStats", "IsoResult", "aut", "iso", "automorphism_group"]


@dataclass
class SearchStats:
    nodes: int = 0
    refinements: int = 0
    leaves: int = 0

    def to_obj(self):
        return {"nodes": self.nodes, "refinements": self.refinements, "leaves": self.leaves}


@dataclass
class IsoResult:
    """Verdict plus the coset of all isomorphisms (``Aut(g) · witness``)."""

    isomorphic: bool
    coset: Coset
    stats: SearchStats = field(default_factory=SearchStats)

    @property
    def verdict(self) -> str:
        return "isomorphic" if self.isomorphic else "non-isomorphic"

    @property
    def witness(self) -> Perm | None:
        return self.coset.rep if self.isomorphic else None

    @property
    def group(self) -> PermGroup | None:
        return self.coset.group

    @property
    def aut_order(self) -> int | None:
        return self.coset.group.order() if self.coset.group is not None else None

    def to_obj(self) -> dict:
        out = {"verdict": self.verdict, "aut_order": self.aut_order, "stats": self.stats.to_obj()}
        if self.isomorphic:
            out["witness"] = list(self.witness)
            out["generators"] = [list(g) for g in self.coset.group.generators]
        return out


class _Tree:
    def __init__(self, g: ColoredGraph, stats: SearchStats):
        self.g = g
        self.stats = stats

    def refine(self, colors) -> np.ndarray:
        self.stats.refinements += 1
        return refine_stable(self.g, Coloring(colors)).colors

    def root(self, initial=None) -> np.ndarray:
        base = self.g.vertex_colors if initial is None else _combine(self.g.vertex_colors, initial)
        return self.refine(Coloring.from_labels(base).colors)

    def child(self, colors, v) -> np.ndarray:
        flag = np.zeros(self.g.n, dtype=np.int64)
        flag[v] = 1
        self.stats.nodes += 1
        return self.refine(_combine(colors, flag))

    def invariant(self, colors) -> bytes:
        k = int(colors.max()) + 1 if len(colors) else 0
        sizes = np.bincount(colors, minlength=k)
        reps = np.full(k, -1, dtype=np.int64)
        reps[colors[::-1]] = np.arange(len(colors) - 1, -1, -1)
        g = self.g
        rows = [np.bincount(colors[g.indices[g.indptr[r]:g.indptr[r + 1]]], minlength=k) for r in reps]
        quotient = np.concatenate(rows) if rows else np.zeros(0, dtype=np.int64)
        return sizes.astype(np.int64).tobytes() + b"|" + quotient.astype(np.int64).tobytes()

    @staticmethod
    def target_cell(colors) -> list[int]:
        sizes = np.bincount(colors)
        cand = np.flatnonzero(sizes > 1)
        if len(cand) == 0:
            return []
        c = cand[np.argmin(sizes[cand])]  # argmin picks the smallest id among ties
        return np.flatnonzero(colors == c).tolist()

    def find_leaf(self, colors, level, invs, check):
        """Depth-first search below ``colors`` for a leaf accepted by ``check``."""
        if self.invariant(colors) != invs[level]:
            return None
        cell = self.target_cell(colors)
        if not cell:
            self.stats.leaves += 1
            return check(colors)
        if level + 1 >= len(invs):
            return None
        for u in cell:
            res = self.find_leaf(self.child(colors, u), level + 1, invs, check)
            if res is not None:
                return res
        return None


def _leaf_map(leaf_from, leaf_to) -> Perm:
    """``v ↦ u`` where ``u`` holds in ``leaf_to`` the position ``v`` holds in ``leaf_from``."""
    inv = np.empty_like(leaf_to)
    inv[leaf_to] = np.arange(len(leaf_to))
    return Perm(inv[leaf_from].tolist())


class _Orbits:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def add(self, gamma):
        for a, b in enumerate(gamma):
            ra, rb = self.find(a), self.find(b)
            if ra != rb:
                self.parent[max(ra, rb)] = min(ra, rb)


def _first_path(tree: _Tree, initial=None):
    colors = tree.root(initial)
    path = [colors]
    invs = [tree.invariant(colors)]
    choices = []
    while True:
        cell = tree.target_cell(path[-1])
        if not cell:
            break
        choices.append(cell)
        c = tree.child(path[-1], cell[0])
        path.append(c)
        invs.append(tree.invariant(c))
    tree.stats.leaves += 1
    return path, invs, choices


def automorphism_group(g: ColoredGraph, initial=None, stats: SearchStats | None = None):
    """``(Aut(g), first path, invariants)``; ``initial`` optionally refines the vertex colors."""
    stats = stats or SearchStats()
    tree = _Tree(g, stats)
    path, invs, choices = _first_path(tree, initial)
    leaf0 = path[-1]
    gens: list[Perm] = []

    def check(leaf):
        gamma = _leaf_map(leaf0, leaf)
        return gamma if g.is_isomorphism(g, gamma) else None

    for level in range(len(choices) - 1, -1, -1):
        cell = choices[level]
        v = cell[0]
        orbits = _Orbits(g.n)
        for gamma in gens:
            orbits.add(gamma)
        failed = []
        for w in cell[1:]:
            if orbits.find(w) == orbits.find(v) or any(orbits.find(w) == orbits.find(f) for f in failed):
                continue
            gamma = tree.find_leaf(tree.child(path[level], w), level + 1, invs, check)
            if gamma is None:
                failed.append(w)
            else:
                gens.append(gamma)
                orbits.add(gamma)
    return PermGroup(g.n, gens), path, invs


def aut(g: ColoredGraph) -> IsoResult:
    stats = SearchStats()
    group, _, _ = automorphism_group(g, stats=stats)
    return IsoResult(True, Coset(group, Perm.identity(g.n)), stats)


def iso(g: ColoredGraph, h: ColoredGraph) -> IsoResult:
    """Decide ``g ≅ h``; when isomorphic the coset holds every isomorphism ``g → h``."""
    stats = SearchStats()
    if (
        g.n != h.n
        or g.m != h.m
        or sorted(g.vertex_colors.tolist()) != sorted(h.vertex_colors.tolist())
        or sorted(g.arc_out.tolist()) != sorted(h.arc_out.tolist())
    ):
        return IsoResult(False, Coset.empty(), stats)
    group, path, invs = automorphism_group(g, stats=stats)
    leaf0 = path[-1]
    tree_h = _Tree(h, stats)

    def check(leaf):
        pi = _leaf_map(leaf0, leaf)
        return pi if g.is_isomorphism(h, pi) else None

    found = tree_h.find_leaf(tree_h.root(), 0, invs, check)
    if found is None:
        return IsoResult(False, Coset.empty(), stats)
    return IsoResult(True, Coset(group, found), stats)
