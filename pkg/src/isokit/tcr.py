"""t-CR-stable colorings, t-closure and the group pipeline for t-CR-bounded graphs.

The t-CR sequence alternates Color Refinement with a split step that breaks
every class of size at most ``t`` into singletons.  Split vertices are
named by vertex id within their old class; this is the one place where
colors depend on vertex identities, exactly as the definition demands.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ResourceLimitError
from .graph import ColoredGraph, Coloring
from .hypergraph import SetOfStrings, set_of_strings_iso_bruteforce
from .perm import Perm, PermGroup
from .refinement import _combine, refine_stable
from .strings import GString, SIInstance, apply_perm, luks_string_iso

__all__ = [
    "TcrTrace",
    "individualized_coloring",
    "tcr_stable",
    "is_tcr_bounded",
    "closure",
    "tcr_aut_pipeline",
    "PIPELINE_MAX_ORDER",
]

PIPELINE_MAX_ORDER = 10**7


@dataclass
class TcrTrace:
    """``rounds[0]`` is the start, odd rounds are CR-stable, even rounds (≥ 2) are splits."""

    rounds: list
    t: int

    @property
    def final(self) -> Coloring:
        return self.rounds[-1]

    @property
    def discrete(self) -> bool:
        return self.final.is_discrete

    def singletons(self) -> list[int]:
        sizes = self.final.class_sizes()
        return np.flatnonzero(sizes[self.final.colors] == 1).tolist()


def individualized_coloring(g: ColoredGraph, individualized=()) -> Coloring:
    """Vertex colors with each vertex of ``individualized`` in its own class."""
    flag = np.zeros(g.n, dtype=np.int64)
    for i, v in enumerate(individualized):
        if not 0 <= v < g.n:
            raise ValueError(f"vertex {v} outside the graph")
        flag[v] = i + 1
    return Coloring.from_labels(_combine(g.vertex_colors, flag))


def _split(coloring: Coloring, t: int) -> Coloring:
    colors = coloring.colors
    sizes = coloring.class_sizes()
    small = sizes[colors] <= t
    tag = np.where(small, np.arange(len(colors)), -1)
    return Coloring(_combine(colors, tag))


def tcr_stable(g: ColoredGraph, t: int, individualized=()) -> TcrTrace:
    if t < 1:
        raise ValueError("t must be at least 1")
    rounds = [individualized_coloring(g, individualized)]
    while True:
        stable = refine_stable(g, rounds[-1])
        rounds.append(stable)
        split = _split(stable, t)
        if split.num_colors == stable.num_colors:
            break
        rounds.append(split)
    return TcrTrace(rounds, t)


def is_tcr_bounded(g: ColoredGraph, t: int, individualized=()) -> bool:
    return tcr_stable(g, t, individualized).discrete


def closure(g: ColoredGraph, xs, t: int) -> list[int]:
    """``cl_t(X)``: the singleton classes after individualizing ``X``."""
    xs = list(dict.fromkeys(int(v) for v in xs))
    return tcr_stable(g, t, xs).singletons()


# -- group pipeline ------------------------------------------------------------

def _classes(colors) -> list[tuple[int, ...]]:
    order = {}
    for v, c in enumerate(colors.tolist() if hasattr(colors, "tolist") else colors):
        order.setdefault(c, []).append(v)
    return [tuple(order[c]) for c in sorted(order)]


def _guard(group: PermGroup):
    if group.order() > PIPELINE_MAX_ORDER:
        raise ResourceLimitError(
            f"intermediate group of order {group.order()} exceeds {PIPELINE_MAX_ORDER}"
        )


def _cr_step(g: ColoredGraph, classes, group: PermGroup):
    """One Color Refinement iteration on ``classes`` lifted to the group level."""
    nclass = len(classes)
    cls_of = np.empty(g.n, dtype=np.int64)
    for i, c in enumerate(classes):
        cls_of[list(c)] = i
    raw = {}
    for v in range(g.n):
        counts = np.bincount(cls_of[g.neighbors(v)], minlength=nclass)
        own = int(cls_of[v])
        raw[v] = tuple((int(i == own), int(counts[i])) for i in range(nclass))
    symbols = sorted({s for x in raw.values() for s in x})
    sym_id = {s: i for i, s in enumerate(symbols)}
    strings = {v: GString(tuple(sym_id[s] for s in raw[v]), tuple(symbols)) for v in raw}
    # new classes: vertices with equal strings, ordered by (old class, string)
    by_string = {}
    for v in range(g.n):
        by_string.setdefault(strings[v], []).append(v)
    new_classes = sorted((tuple(vs) for vs in by_string.values()), key=lambda c: (cls_of[c[0]], strings[c[0]].values))
    string_of = [strings[c[0]] for c in new_classes]
    index_of = {s: i for i, s in enumerate(string_of)}
    xs = SetOfStrings(string_of, nclass, tuple(symbols))
    aut = set_of_strings_iso_bruteforce(xs, xs, group).group
    images = [Perm(index_of[apply_perm(s, a)] for s in string_of) for a in aut.generators]
    new_group = PermGroup(len(new_classes), images)
    _guard(new_group)
    # a stable partition can still shrink the group, so both must settle
    changed = len(new_classes) != nclass or new_group.order() != group.order()
    return new_classes, new_group, changed


def _split_step(classes, group: PermGroup, t: int):
    sizes = GString.from_values([len(c) for c in classes])
    stab = luks_string_iso(SIInstance(sizes, sizes, group)).group
    new_classes = []
    pos = []  # pos[i] = indices of the pieces of old class i
    for c in classes:
        if 1 < len(c) <= t:
            pos.append(list(range(len(new_classes), len(new_classes) + len(c))))
            new_classes.extend((v,) for v in c)
        else:
            pos.append([len(new_classes)])
            new_classes.append(c)
    m = len(new_classes)
    gens = []
    for a in stab.generators:
        img = [0] * m
        for i, pieces in enumerate(pos):
            for j, p in enumerate(pieces):
                img[p] = pos[a[i]][j]
        gens.append(Perm(img))
    for pieces in pos:
        if len(pieces) >= 2:
            swap = list(range(m))
            swap[pieces[0]], swap[pieces[1]] = pieces[1], pieces[0]
            gens.append(Perm(swap))
            cyc = list(range(m))
            for j, p in enumerate(pieces):
                cyc[p] = pieces[(j + 1) % len(pieces)]
            gens.append(Perm(cyc))
    new_group = PermGroup(m, gens)
    _guard(new_group)
    return new_classes, new_group


def tcr_aut_pipeline(g: ColoredGraph, t: int, individualized=(), verify: bool = True) -> PermGroup:
    """A group on ``V(g)`` containing the automorphisms that respect ``individualized``.

    Each Color Refinement iteration computes the action on the refined
    partition through a set-of-strings automorphism group, and each split
    step forms the wreath product with symmetric groups on the split
    classes.  Requires ``g`` to be t-CR-bounded (after individualization)
    and arc-uncolored.
    """
    if t < 1:
        raise ValueError("t must be at least 1")
    if not g.is_arc_uncolored:
        raise ValueError("the pipeline handles graphs without arc colors")
    if not is_tcr_bounded(g, t, individualized):
        raise ValueError(f"graph is not {t}-CR-bounded")
    classes = _classes(individualized_coloring(g, individualized).colors)
    group = PermGroup(len(classes))
    while True:
        changed = True
        while changed:
            classes, group, changed = _cr_step(g, classes, group)
        if all(len(c) == 1 for c in classes):
            break
        classes, group = _split_step(classes, group, t)
    # class i is the singleton {classes[i][0]}; move the action onto vertices
    where = [c[0] for c in classes]
    gens = []
    for a in group.generators:
        img = [0] * g.n
        for i, v in enumerate(where):
            img[v] = where[a[i]]
        gens.append(Perm(img))
    result = PermGroup(g.n, gens)
    if verify:
        from .search import automorphism_group

        flag = individualized_coloring(g, individualized).colors
        autg, _, _ = automorphism_group(g, initial=flag)
        for a in autg.generators:
            if not result.contains(a):
                raise AssertionError("pipeline group misses an automorphism")
    return result
