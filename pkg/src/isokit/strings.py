"""String isomorphism: Luks's recursion and the reduction from graphs.

A string is a map ``x: Ω → Σ``; a permutation acts by ``x^γ(α) = x(α^{γ⁻¹})``.
For a coset ``K = Γγ`` and a ``Γ``-invariant window ``W`` the isomorphisms are
``Iso_K^W(x, y) = {κ ∈ K | x(α) = y(α^κ) for all α ∈ W}``; they form either
the empty set or a right coset ``Aut_Γ^W(x) · ρ``.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from itertools import combinations
from math import ceil, log2
from typing import Sequence

from .errors import RecursionGuardError
from .graph import ColoredGraph
from .perm import Coset, Hom, Perm, PermGroup, StabChain

__all__ = [
    "GString",
    "SIInstance",
    "apply_perm",
    "luks_string_iso",
    "pair_domain",
    "pair_action_hom",
    "gi_to_si",
    "graph_isos_via_si",
    "depth_limit",
]

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class GString:
    """A string over ``range(domain_size)`` with dense symbol ids.

    ``alphabet`` holds the display symbols; ``values[i]`` indexes into it.
    """

    values: tuple
    alphabet: tuple

    def __post_init__(self):
        k = len(self.alphabet)
        if any(not 0 <= v < k for v in self.values):
            raise ValueError("string value outside the alphabet")

    @classmethod
    def from_values(cls, values, alphabet_size: int | None = None) -> "GString":
        vals = tuple(int(v) for v in values)
        if alphabet_size is None:
            alphabet_size = max(vals, default=-1) + 1
        return cls(vals, tuple(range(alphabet_size)))

    @classmethod
    def from_text(cls, text: str, alphabet: Sequence | None = None) -> "GString":
        alpha = tuple(sorted(set(text))) if alphabet is None else tuple(alphabet)
        idx = {a: i for i, a in enumerate(alpha)}
        return cls(tuple(idx[c] for c in text), alpha)

    @property
    def domain_size(self) -> int:
        return len(self.values)

    def __len__(self):
        return len(self.values)

    def __getitem__(self, a):
        return self.values[a]

    def __str__(self):
        syms = [self.alphabet[v] for v in self.values]
        if all(isinstance(s, str) for s in syms):
            return "".join(syms)
        return " ".join(map(str, syms))


def apply_perm(x: GString, g: Perm) -> GString:
    """``x^γ`` with ``x^γ(α^γ) = x(α)``."""
    if len(g) != x.domain_size:
        raise ValueError(f"permutation of degree {len(g)} applied to a string of length {x.domain_size}")
    out = [0] * len(g)
    for a, v in enumerate(x.values):
        out[g[a]] = v
    return GString(tuple(out), x.alphabet)


@dataclass(frozen=True)
class SIInstance:
    """An instance of ``Iso_{Γγ}^W(x, y)``.

    ``shift`` defaults to the identity and ``window`` to the whole domain.
    """

    x: GString
    y: GString
    group: PermGroup
    shift: Perm | None = None
    window: tuple | None = None

    def __post_init__(self):
        n = self.x.domain_size
        if self.y.domain_size != n:
            raise ValueError("x and y have different lengths")
        if self.x.alphabet != self.y.alphabet:
            raise ValueError("x and y use different alphabets")
        if self.group.degree != n:
            raise ValueError(f"group of degree {self.group.degree} on a domain of size {n}")
        if self.shift is not None and len(self.shift) != n:
            raise ValueError("shift has the wrong degree")
        w = tuple(range(n)) if self.window is None else tuple(sorted(set(self.window)))
        if any(not 0 <= a < n for a in w):
            raise ValueError("window point outside the domain")
        if not self.group.is_invariant(w):
            raise ValueError("window is not invariant under the group")
        object.__setattr__(self, "window", w)

    @property
    def n(self) -> int:
        return self.x.domain_size

    def to_obj(self) -> dict:
        return {
            "domain": self.n,
            "alphabet": list(self.x.alphabet),
            "x": list(self.x.values),
            "y": list(self.y.values),
            "generators": [list(g) for g in self.group.generators],
            "shift": list(self.shift) if self.shift is not None else None,
            "window": list(self.window),
        }

    @classmethod
    def from_obj(cls, obj: dict) -> "SIInstance":
        n = int(obj["domain"])
        alpha = obj.get("alphabet")
        xs, ys = obj["x"], obj["y"]
        if alpha is None:
            size = max(list(xs) + list(ys), default=-1) + 1
            alpha = list(range(size))
        alpha = tuple(alpha)
        idx = {a: i for i, a in enumerate(alpha)}

        def conv(vals):
            if len(vals) != n:
                raise ValueError("string length differs from domain")
            try:
                return GString(tuple(idx[v] for v in vals), alpha)
            except KeyError as exc:
                raise ValueError(f"symbol {exc.args[0]!r} not in the alphabet") from None

        gens = [Perm.checked(g, n) for g in obj.get("generators", [])]
        shift = obj.get("shift")
        return cls(
            conv(xs),
            conv(ys),
            PermGroup(n, gens),
            Perm.checked(shift, n) if shift is not None else None,
            tuple(obj["window"]) if obj.get("window") is not None else None,
        )

    def to_json(self) -> str:
        return json.dumps(self.to_obj(), separators=(",", ":"))

    @classmethod
    def from_json(cls, text: str) -> "SIInstance":
        return cls.from_obj(json.loads(text))


def depth_limit(n: int) -> int:
    return 10 * max(1, ceil(log2(max(n, 2))))


def _pull(y, g):
    """The string ``y^{g⁻¹}``, i.e. ``β ↦ y(β^g)``."""
    return tuple(y[b] for b in g)


class _Luks:
    def __init__(self, x, n, limit):
        self.x = x
        self.n = n
        self.limit = limit
        self.ident = Perm.identity(n)
        self.calls = 0

    def _block_data(self, group: PermGroup, window):
        key = ("luks-blocks", window)
        data = group._cache.get(key)
        if data is None:
            system = group.minimal_block_system(window)
            hom, _ = group.induced_action(system)
            data = (system, hom, hom.kernel())
            group._cache[key] = data
        return data

    def iso(self, group: PermGroup, window: tuple, y, depth: int) -> Coset:
        self.calls += 1
        if depth > self.limit:
            diag = {
                "depth": depth,
                "window_size": len(window),
                "window_head": list(window[:16]),
                "group_order": group.order(),
                "generators": len(group.generators),
            }
            log.error("string isomorphism recursion guard tripped: %s", diag)
            raise RecursionGuardError(f"recursion depth {depth} exceeds {self.limit}", diag)
        x = self.x
        if not window:
            return Coset(group, self.ident)
        gens = group.generators
        if all(g[a] == a for g in gens for a in window):
            if all(x[a] == y[a] for a in window):
                return Coset(group, self.ident)
            return Coset.empty()

        inside = set(window)
        orbits = [o for o in group.orbits() if o[0] in inside]
        if len(orbits) > 1:
            # orbit by orbit, threading the shrinking coset H·rep
            sub, rep = group, self.ident
            for orb in orbits:
                c = self.iso(sub, tuple(orb), _pull(y, rep), depth + 1)
                if c.is_empty:
                    return c
                sub, rep = c.group, c.rep * rep
            return Coset(sub, rep)

        if sorted(x[a] for a in window) != sorted(y[a] for a in window):
            return Coset.empty()

        system, hom, kernel = self._block_data(group, window)
        bo = system.block_of
        blocks = system.blocks

        def block_image(g):
            return Perm(bo[g[b[0]]] for b in blocks)

        first = None
        acc = img = None
        acc_gens = []
        for t in hom.transversal():
            if first is not None and img.contains(block_image(t) * ~block_image(first)):
                # N·t already meets the known part of Aut·first
                continue
            c = self.iso(kernel, window, _pull(y, t), depth + 1)
            if c.is_empty:
                continue
            s = c.rep * t
            if first is None:
                first = s
                acc_gens = list(c.group.generators)
                acc = StabChain(self.n)
                acc.extend(acc_gens)
                img = StabChain(len(blocks))
                continue
            q = s * ~first
            if not acc.contains(q):
                acc.extend([q])
                acc_gens.append(q)
                img.extend([block_image(q)])
        if first is None:
            return Coset.empty()
        return Coset(PermGroup(self.n, acc_gens, chain=acc), first)


def luks_string_iso(inst: SIInstance, *, limit: int | None = None) -> Coset:
    """``Iso_{Γγ}^W(x, y)`` as a coset, computed by Luks's recursion.

    Shifted instances reduce to unshifted ones through
    ``Iso_{Γγ}^W(x, y) = Iso_Γ^W(x, y^{γ⁻¹}) γ``.
    """
    n = inst.n
    y = inst.y.values
    if inst.shift is not None:
        y = _pull(y, inst.shift)
    solver = _Luks(inst.x.values, n, depth_limit(n) if limit is None else limit)
    c = solver.iso(inst.group, inst.window, y, 0)
    if c.is_empty or inst.shift is None:
        return c
    return Coset(c.group, c.rep * inst.shift)


# -- graphs to strings ------------------------------------------------------

def pair_domain(n: int) -> list[tuple[int, int]]:
    """The 2-subsets of ``range(n)`` in lexicographic order."""
    return list(combinations(range(n), 2))


def pair_action_hom(n: int) -> Hom:
    """The action of ``S_n`` on 2-subsets, as a homomorphism ``S_n → Sym(Ω)``."""
    sym = PermGroup.symmetric(n)
    pairs = pair_domain(n)
    idx = {p: i for i, p in enumerate(pairs)}

    def lift(g):
        return Perm(idx[(min(g[a], g[b]), max(g[a], g[b]))] for a, b in pairs)

    return Hom(sym, len(pairs), [lift(g) for g in sym.generators])


def gi_to_si(g: ColoredGraph, h: ColoredGraph) -> SIInstance:
    """The string isomorphism instance over 2-subsets encoding ``g ≅ h``.

    ``x(vw) = 1`` iff ``vw`` is an edge of ``g``, likewise ``y`` for ``h``;
    the group is the image of ``Sym(V)`` in its action on pairs.
    """
    if g.n != h.n:
        raise ValueError(f"graphs have {g.n} and {h.n} vertices; they are not isomorphic")
    for gr in (g, h):
        if not (gr.is_vertex_uncolored and gr.is_arc_uncolored):
            raise ValueError("the pair encoding covers uncolored graphs only")
    pairs = pair_domain(g.n)
    xs = GString.from_values([int(g.has_edge(a, b)) for a, b in pairs], 2)
    ys = GString.from_values([int(h.has_edge(a, b)) for a, b in pairs], 2)
    return SIInstance(xs, ys, pair_action_hom(g.n).image())


def graph_isos_via_si(g: ColoredGraph, h: ColoredGraph):
    """All isomorphisms ``g → h`` as ``(Aut(g) generators, one isomorphism)`` or None.

    Runs the pair reduction and lifts the resulting coset back to vertex
    permutations through the pair action homomorphism.
    """
    if g.n != h.n:
        return None
    if g.n < 2:
        return [], Perm.identity(g.n)
    inst = gi_to_si(g, h)
    c = luks_string_iso(inst)
    if c.is_empty:
        return None
    hom = pair_action_hom(g.n)
    if g.n == 2:
        # the pair action of S_2 is trivial; every vertex map works
        gens = [Perm((1, 0))]
        return gens, Perm.identity(2)
    rep = hom.preimage(c.rep)
    gens = [hom.preimage(a) for a in c.group.generators]
    return gens, rep
