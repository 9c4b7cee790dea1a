"""Hypergraphs, sets of strings, and the translations between them."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ResourceLimitError
from .perm import Coset, Perm, PermGroup, StabChain
from .strings import GString, apply_perm

__all__ = [
    "Hypergraph",
    "SetOfStrings",
    "hyper_to_sets",
    "sets_to_hyper",
    "set_of_strings_iso_bruteforce",
    "MAX_BRUTEFORCE_ORDER",
]

MAX_BRUTEFORCE_ORDER = 10**7


@dataclass(frozen=True)
class Hypergraph:
    """Vertices ``range(n)`` and a set of hyperedges (stored sorted)."""

    n: int
    edges: tuple

    def __init__(self, n: int, edges=()):
        canon = set()
        for e in edges:
            s = frozenset(int(v) for v in e)
            if any(not 0 <= v < n for v in s):
                raise ValueError(f"hyperedge {sorted(s)} has a vertex outside range({n})")
            canon.add(s)
        object.__setattr__(self, "n", int(n))
        object.__setattr__(self, "edges", tuple(sorted(tuple(sorted(e)) for e in canon)))

    def edge_sets(self) -> frozenset:
        return frozenset(frozenset(e) for e in self.edges)

    def relabel(self, g: Perm) -> "Hypergraph":
        return Hypergraph(self.n, [[g[v] for v in e] for e in self.edges])


@dataclass(frozen=True)
class SetOfStrings:
    """A set of strings over a common domain and alphabet."""

    strings: frozenset
    domain_size: int
    alphabet: tuple

    def __init__(self, strings, domain_size: int | None = None, alphabet=None):
        strings = list(strings)
        if domain_size is None:
            if not strings:
                raise ValueError("domain_size is required for an empty set of strings")
            domain_size = strings[0].domain_size
        if alphabet is None:
            alphabet = strings[0].alphabet if strings else (0, 1)
        for s in strings:
            if s.domain_size != domain_size or s.alphabet != tuple(alphabet):
                raise ValueError("strings must share domain and alphabet")
        object.__setattr__(self, "strings", frozenset(strings))
        object.__setattr__(self, "domain_size", int(domain_size))
        object.__setattr__(self, "alphabet", tuple(alphabet))

    def __len__(self):
        return len(self.strings)

    def apply(self, g: Perm) -> "SetOfStrings":
        return SetOfStrings((apply_perm(s, g) for s in self.strings), self.domain_size, self.alphabet)


def hyper_to_sets(h: Hypergraph) -> SetOfStrings:
    """One 0/1 characteristic string per hyperedge, over the vertex set."""
    strings = []
    for e in h.edges:
        vals = [0] * h.n
        for v in e:
            vals[v] = 1
        strings.append(GString.from_values(vals, 2))
    return SetOfStrings(strings, h.n, (0, 1))


def sets_to_hyper(s: SetOfStrings, group: PermGroup):
    """The hypergraph on ``Ω × Σ`` with one hyperedge ``{(α, x(α))}`` per string.

    Vertex ``(α, a)`` gets index ``α·|Σ| + a``.  The group is lifted by
    acting trivially on the symbol coordinate.
    """
    k = len(s.alphabet)
    n = s.domain_size
    if group.degree != n:
        raise ValueError("group degree differs from the string domain")
    edges = [[a * k + v for a, v in enumerate(x.values)] for x in s.strings]
    lifted = [Perm(g[a] * k + v for a in range(n) for v in range(k)) for g in group.generators]
    return Hypergraph(n * k, edges), PermGroup(n * k, lifted)


def set_of_strings_iso_bruteforce(xs: SetOfStrings, ys: SetOfStrings, group: PermGroup) -> Coset:
    """All ``γ ∈ Γ`` with ``X^γ = Y``, by enumerating the group."""
    if group.order() > MAX_BRUTEFORCE_ORDER:
        raise ResourceLimitError(
            f"group of order {group.order()} exceeds the brute-force limit {MAX_BRUTEFORCE_ORDER}"
        )
    if len(xs) != len(ys) or xs.domain_size != ys.domain_size:
        return Coset.empty()
    target = ys.strings
    first = None
    chain = StabChain(group.degree)
    gens = []
    for g in group.elements():
        if xs.apply(g).strings != target:
            continue
        if first is None:
            first = g
            continue
        q = g * ~first
        if not chain.contains(q):
            chain.extend([q])
            gens.append(q)
    if first is None:
        return Coset.empty()
    return Coset(PermGroup(group.degree, gens, chain=chain if gens else None), first)
