"""Permutations, permutation groups and homomorphisms.

Conventions: a permutation is the tuple of images ``(0^γ, 1^γ, ...)`` and
products compose left to right, so ``α^(γδ) = (α^γ)^δ`` and ``(g * h)[a] ==
h[g[a]]``.

Groups are given by generators; a base and strong generating set is built
lazily by a deterministic Schreier-Sims procedure and cached on the group.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from math import prod
from typing import Iterable, Sequence

__all__ = [
    "Perm",
    "StabChain",
    "PermGroup",
    "Hom",
    "BlockSystem",
    "Coset",
    "minimal_block",
]


_IDENTITIES: dict[int, tuple] = {}


class Perm(tuple):
    """An immutable permutation of ``range(n)`` stored as its image tuple."""

    __slots__ = ()

    def __new__(cls, images: Iterable[int] = ()):
        return tuple.__new__(cls, images)

    @classmethod
    def checked(cls, images, degree: int | None = None) -> "Perm":
        """Validate that ``images`` is a bijection (of the given degree)."""
        p = cls(int(x) for x in images)
        if degree is not None and len(p) != degree:
            raise ValueError(f"permutation has degree {len(p)}, expected {degree}")
        if sorted(p) != list(range(len(p))):
            raise ValueError("images do not form a permutation")
        return p

    @classmethod
    def identity(cls, n: int) -> "Perm":
        return tuple.__new__(cls, range(n))

    @classmethod
    def from_cycles(cls, n: int, *cycles: Sequence[int]) -> "Perm":
        img = list(range(n))
        for cyc in cycles:
            for i, a in enumerate(cyc):
                img[a] = cyc[(i + 1) % len(cyc)]
        return cls.checked(img)

    @property
    def degree(self) -> int:
        return len(self)

    def __mul__(self, other):
        if not isinstance(other, Perm):
            return NotImplemented
        return tuple.__new__(Perm, map(other.__getitem__, self))

    def __invert__(self) -> "Perm":
        inv = [0] * len(self)
        for i, x in enumerate(self):
            inv[x] = i
        return tuple.__new__(Perm, inv)

    inverse = __invert__

    def __pow__(self, k: int) -> "Perm":
        base = self if k >= 0 else ~self
        k = abs(k)
        result = Perm.identity(len(self))
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __call__(self, a: int) -> int:
        return self[a]

    def is_identity(self) -> bool:
        n = len(self)
        ident = _IDENTITIES.get(n)
        if ident is None:
            ident = _IDENTITIES[n] = tuple(range(n))
        return tuple.__eq__(self, ident)

    def support(self) -> list[int]:
        return [i for i, x in enumerate(self) if i != x]

    def first_moved(self) -> int:
        for i, x in enumerate(self):
            if i != x:
                return i
        return -1

    def cycles(self) -> list[tuple[int, ...]]:
        seen = [False] * len(self)
        out = []
        for i in range(len(self)):
            if seen[i] or self[i] == i:
                continue
            cyc = [i]
            seen[i] = True
            j = self[i]
            while j != i:
                cyc.append(j)
                seen[j] = True
                j = self[j]
            out.append(tuple(cyc))
        return out

    def order(self) -> int:
        from math import lcm

        return lcm(*(len(c) for c in self.cycles())) if not self.is_identity() else 1

    def sign(self) -> int:
        return -1 if sum(len(c) - 1 for c in self.cycles()) % 2 else 1

    def conjugate(self, by: "Perm") -> "Perm":
        """``by⁻¹ · self · by``."""
        return ~by * self * by

    def __repr__(self):
        cyc = "".join("(" + " ".join(map(str, c)) + ")" for c in self.cycles()) or "()"
        return f"Perm({cyc}, n={len(self)})"


class StabChain:
    """Base, strong generators and transversals for a stabilizer chain.

    Level ``i`` stores the base point ``base[i]``, the strong generators
    ``gens[i]`` (those fixing ``base[:i]``) and the transversal ``trans[i]``
    mapping each orbit point ``β`` to an element ``u`` with ``base[i]^u = β``.
    """

    def __init__(self, degree: int, base_prefix: Sequence[int] = ()):
        self.degree = degree
        self.base: list[int] = []
        self.gens: list[list[Perm]] = []
        self.trans: list[dict] = []
        self.itrans: list[dict] = []
        self._checked: list[set] = []
        self._ident = Perm.identity(degree)
        for b in base_prefix:
            if b not in self.base:
                self._new_level(b)

    def _new_level(self, b):
        self.base.append(b)
        self.gens.append([])
        self.trans.append({b: self._ident})
        self.itrans.append({b: self._ident})
        self._checked.append(set())

    # -- queries ---------------------------------------------------------
    def sift(self, g: Perm, start: int = 0):
        """Strip ``g`` through the levels from ``start``; returns (residue, level)."""
        for i in range(start, len(self.base)):
            inv = self.itrans[i].get(g[self.base[i]])
            if inv is None:
                return g, i
            g = g * inv
        return g, len(self.base)

    def contains(self, g: Perm) -> bool:
        res, _ = self.sift(g)
        return res.is_identity()

    def order(self) -> int:
        return prod(len(t) for t in self.trans)

    def orbit_sizes(self) -> list[int]:
        return [len(t) for t in self.trans]

    def strong_generators(self) -> list[Perm]:
        seen, out = set(), []
        for lvl in self.gens:
            for g in lvl:
                if g not in seen:
                    seen.add(g)
                    out.append(g)
        return out

    def level_generators(self, i: int) -> list[Perm]:
        return list(self.gens[i]) if i < len(self.gens) else []

    # -- construction ----------------------------------------------------
    def _extend_orbit(self, i):
        trans, itrans, gens = self.trans[i], self.itrans[i], self.gens[i]
        queue = list(trans)
        for pt in queue:
            u = trans[pt]
            for s in gens:
                q = s[pt]
                if q not in trans:
                    w = u * s
                    trans[q] = w
                    itrans[q] = ~w
                    queue.append(q)

    def _insert(self, res: Perm, start: int, level: int) -> int:
        """Add a non-trivial sift residue to levels ``start..level``."""
        if level == len(self.base):
            self._new_level(res.first_moved())
        for lvl in range(start, level + 1):
            self.gens[lvl].append(res)
            self._extend_orbit(lvl)
        return level

    def extend(self, generators: Iterable[Perm]) -> bool:
        """Add generators and restore the strong generating property.

        Returns True when the group grew.
        """
        grew = False
        for g in generators:
            res, lvl = self.sift(g)
            if not res.is_identity():
                self._insert(res, 0, lvl)
                grew = True
        if grew:
            self._complete()
        return grew

    def _complete(self):
        i = len(self.base) - 1
        while i >= 0:
            j = self._check_level(i)
            i = i - 1 if j is None else j

    def _check_level(self, i):
        trans, itrans, gens, checked = self.trans[i], self.itrans[i], self.gens[i], self._checked[i]
        for pt in list(trans):
            u = trans[pt]
            for idx, s in enumerate(gens):
                if (pt, idx) in checked:
                    continue
                checked.add((pt, idx))
                h = u * s * itrans[s[pt]]
                if h.is_identity():
                    continue
                res, lvl = self.sift(h, i + 1)
                if not res.is_identity():
                    return self._insert(res, i + 1, lvl)
        return None

    # -- enumeration -----------------------------------------------------
    def elements(self):
        """All group elements; the image of ``base[0]`` varies slowest."""

        def rec(level):
            if level == len(self.base):
                yield self._ident
                return
            deeper = list(rec(level + 1)) if level + 1 < len(self.base) else [self._ident]
            trans = self.trans[level]
            for pt in sorted(trans):
                u = trans[pt]
                for d in deeper:
                    yield d * u

        if not self.base:
            yield self._ident
            return
        yield from rec(0)

    def random_element(self, rng) -> Perm:
        g = self._ident
        for t in reversed(self.trans):
            keys = list(t)
            g = g * t[keys[int(rng.integers(len(keys)))]]
        return g

    def copy_from_level(self, start: int) -> "StabChain":
        """The chain of the stabilizer of ``base[:start]`` (shares transversal data)."""
        sub = StabChain(self.degree)
        sub.base = self.base[start:]
        sub.gens = [list(g) for g in self.gens[start:]]
        sub.trans = [dict(t) for t in self.trans[start:]]
        sub.itrans = [dict(t) for t in self.itrans[start:]]
        sub._checked = [set(c) for c in self._checked[start:]]
        return sub


def _union_find_orbits(degree, gens, points=None):
    parent = list(range(degree))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in gens:
        for a in (range(degree) if points is None else points):
            ra, rb = find(a), find(g[a])
            if ra != rb:
                if ra < rb:
                    parent[rb] = ra
                else:
                    parent[ra] = rb
    classes = {}
    for a in (range(degree) if points is None else points):
        classes.setdefault(find(a), []).append(a)
    return sorted((sorted(c) for c in classes.values()), key=lambda c: c[0])


def minimal_block(gens, points, seed_points) -> list[list[int]]:
    """The finest block system on ``points`` with ``seed_points`` in one block.

    Atkinson's union-find closure: merging two classes forces their images
    under every generator to be merged as well.
    """
    parent = {p: p for p in points}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    queue = []
    seeds = list(seed_points)
    for s in seeds[1:]:
        a, b = find(seeds[0]), find(s)
        if a != b:
            parent[max(a, b)] = min(a, b)
            queue.append((seeds[0], s))
    while queue:
        x, y = queue.pop()
        for g in gens:
            a, b = find(g[x]), find(g[y])
            if a != b:
                parent[max(a, b)] = min(a, b)
                queue.append((a, b))
    classes = {}
    for p in points:
        classes.setdefault(find(p), []).append(p)
    return sorted((sorted(c) for c in classes.values()), key=lambda c: c[0])


@dataclass(frozen=True)
class BlockSystem:
    """A partition of ``domain`` into equal blocks permuted by the group."""

    blocks: tuple
    domain: tuple

    @classmethod
    def from_lists(cls, blocks, domain=None):
        blocks = tuple(tuple(sorted(b)) for b in sorted(blocks, key=min))
        covered = sorted(x for b in blocks for x in b)
        if domain is None:
            domain = covered
        if covered != sorted(domain):
            raise ValueError("blocks must partition the domain")
        if len({len(b) for b in blocks}) > 1:
            raise ValueError("blocks must have equal size")
        return cls(blocks, tuple(domain))

    @property
    def block_of(self) -> dict:
        return {x: i for i, b in enumerate(self.blocks) for x in b}

    @property
    def block_size(self) -> int:
        return len(self.blocks[0]) if self.blocks else 0

    def __len__(self):
        return len(self.blocks)

    @property
    def is_trivial(self) -> bool:
        return len(self.blocks) <= 1 or self.block_size == 1

    def is_invariant_under(self, gens) -> bool:
        bo = self.block_of
        for g in gens:
            for b in self.blocks:
                target = bo.get(g[b[0]])
                if target is None or any(bo.get(g[x]) != target for x in b):
                    return False
        return True


class PermGroup:
    """A permutation group on ``range(degree)`` given by generators."""

    def __init__(self, degree: int, generators: Iterable = (), *, chain: StabChain | None = None):
        self.degree = int(degree)
        gens, seen = [], set()
        for g in generators:
            p = g if isinstance(g, Perm) else Perm(g)
            if len(p) != self.degree:
                raise ValueError(f"generator of degree {len(p)} in a group of degree {self.degree}")
            if not p.is_identity() and p not in seen:
                seen.add(p)
                gens.append(p)
        self.generators: tuple = tuple(gens)
        self._chain = chain
        self._lock = threading.RLock()
        self._cache: dict = {}

    # -- constructors ----------------------------------------------------
    @classmethod
    def symmetric(cls, n: int) -> "PermGroup":
        gens = []
        if n >= 2:
            gens.append(Perm.from_cycles(n, (0, 1)))
        if n >= 3:
            gens.append(Perm.from_cycles(n, tuple(range(n))))
        return cls(n, gens)

    @classmethod
    def alternating(cls, n: int) -> "PermGroup":
        # the 3-cycles (0 1 i) generate A_n
        return cls(n, [Perm.from_cycles(n, (0, 1, i)) for i in range(2, n)])

    @classmethod
    def cyclic(cls, n: int) -> "PermGroup":
        return cls(n, [Perm.from_cycles(n, tuple(range(n)))] if n >= 2 else [])

    @classmethod
    def dihedral(cls, n: int) -> "PermGroup":
        """Symmetries of the n-gon with vertices 0..n-1 in cyclic order."""
        if n < 3:
            return cls.symmetric(n)
        r = Perm.from_cycles(n, tuple(range(n)))
        s = Perm.checked([(-i) % n for i in range(n)])
        return cls(n, [r, s])

    @classmethod
    def trivial(cls, n: int) -> "PermGroup":
        return cls(n, [])

    # -- stabilizer chain --------------------------------------------------
    @property
    def chain(self) -> StabChain:
        if self._chain is None:
            with self._lock:
                if self._chain is None:
                    c = StabChain(self.degree)
                    c.extend(self.generators)
                    self._chain = c
        return self._chain

    def chain_with_base(self, prefix: Sequence[int]) -> StabChain:
        """A stabilizer chain whose base starts with ``prefix``."""
        key = ("base", tuple(prefix))
        with self._lock:
            c = self._cache.get(key)
            if c is None:
                c = StabChain(self.degree, prefix)
                # the strong generators of the default chain already generate
                c.extend(self.chain.strong_generators() if self._chain is not None else self.generators)
                self._cache[key] = c
        return c

    def order(self) -> int:
        return self.chain.order()

    def __len__(self):
        return self.order()

    def contains(self, g) -> bool:
        p = g if isinstance(g, Perm) else Perm(g)
        if len(p) != self.degree:
            raise ValueError(f"permutation of degree {len(p)} tested against a group of degree {self.degree}")
        return self.chain.contains(p)

    __contains__ = contains

    def is_trivial(self) -> bool:
        return not self.generators

    def identity(self) -> Perm:
        return Perm.identity(self.degree)

    def elements(self):
        return self.chain.elements()

    def random_element(self, rng) -> Perm:
        return self.chain.random_element(rng)

    def verify(self, rng, samples: int = 20) -> bool:
        """Randomized check: random generator words sift to the identity."""
        gens = self.generators
        if not gens:
            return True
        for _ in range(samples):
            g = Perm.identity(self.degree)
            for _ in range(int(rng.integers(1, 2 * len(gens) + 3))):
                g = g * gens[int(rng.integers(len(gens)))]
            if not self.chain.contains(g):
                return False
        return True

    def is_subgroup_of(self, other: "PermGroup") -> bool:
        return all(other.contains(g) for g in self.generators)

    def equals(self, other: "PermGroup") -> bool:
        return (
            self.degree == other.degree
            and self.order() == other.order()
            and self.is_subgroup_of(other)
        )

    def is_abelian(self) -> bool:
        gens = self.generators
        return all(a * b == b * a for i, a in enumerate(gens) for b in gens[i + 1:])

    # -- orbits --------------------------------------------------------------
    def orbits(self) -> list[list[int]]:
        key = "orbits"
        if key not in self._cache:
            self._cache[key] = _union_find_orbits(self.degree, self.generators)
        return self._cache[key]

    def orbit(self, a: int) -> list[int]:
        for o in self.orbits():
            if a in o:
                return o
        raise ValueError(f"point {a} outside the domain")

    def is_invariant(self, points: Iterable[int]) -> bool:
        s = set(points)
        return all(g[a] in s for g in self.generators for a in s)

    def _check_invariant(self, points):
        w = sorted(set(points))
        if any(not 0 <= a < self.degree for a in w):
            raise ValueError("points outside the domain")
        if not self.is_invariant(w):
            raise ValueError("the point set is not invariant under the group")
        return w

    def orbits_on(self, points: Iterable[int]) -> list[list[int]]:
        w = self._check_invariant(points)
        ws = set(w)
        return [o for o in self.orbits() if o[0] in ws]

    def is_transitive(self, points: Iterable[int] | None = None) -> bool:
        w = list(range(self.degree)) if points is None else self._check_invariant(points)
        if len(w) <= 1:
            return True
        return len(self.orbits_on(w)) == 1

    # -- blocks ----------------------------------------------------------------
    def minimal_block_system(self, points: Iterable[int] | None = None) -> BlockSystem:
        """A block system on ``points`` whose block action is primitive.

        Deterministic choice: among the blocks generated by ``{min W, α}``
        take the smallest by (size, sorted contents), then repeatedly coarsen
        to the smallest proper system containing the current block and one
        more point.  Returns the singleton system when the action is
        primitive.
        """
        w = list(range(self.degree)) if points is None else self._check_invariant(points)
        if len(w) < 2:
            raise ValueError("need at least two points")
        if not self.is_transitive(w):
            raise ValueError("group is not transitive on the given points")
        key = ("mbs", tuple(w))
        if key in self._cache:
            return self._cache[key]
        gens = self.generators
        a0 = w[0]
        best = None
        for a in w[1:]:
            blocks = minimal_block(gens, w, [a0, a])
            if len(blocks) == 1:
                continue
            b0 = blocks[0]
            if best is None or (len(b0), b0) < (len(best[0]), best[0]):
                best = blocks
        if best is None:
            result = BlockSystem.from_lists([[x] for x in w], w)
        else:
            while True:
                b0 = best[0]
                inside = set(b0)
                nxt = None
                for a in w:
                    if a in inside:
                        continue
                    blocks = minimal_block(gens, w, list(b0) + [a])
                    if len(blocks) == 1:
                        continue
                    if nxt is None or (len(blocks[0]), blocks[0]) < (len(nxt[0]), nxt[0]):
                        nxt = blocks
                if nxt is None:
                    break
                best = nxt
            result = BlockSystem.from_lists(best, w)
        self._cache[key] = result
        return result

    # -- subgroups and actions -----------------------------------------------------
    def pointwise_stabilizer(self, points: Iterable[int]) -> "PermGroup":
        pts = list(dict.fromkeys(points))
        if not pts:
            return self
        c = self.chain_with_base(pts)
        sub = c.copy_from_level(len(pts))
        return PermGroup(self.degree, sub.strong_generators(), chain=sub)

    def stabilizer(self, a: int) -> "PermGroup":
        return self.pointwise_stabilizer([a])

    def action_hom(self, target_degree: int, images: Sequence) -> "Hom":
        return Hom(self, target_degree, images)

    def restriction_hom(self, points: Iterable[int]) -> "Hom":
        """Homomorphism onto the action on an invariant set (relabeled in order)."""
        w = self._check_invariant(points)
        idx = {a: i for i, a in enumerate(w)}
        images = [Perm(idx[g[a]] for a in w) for g in self.generators]
        return Hom(self, len(w), images)

    def restrict(self, points: Iterable[int]) -> "PermGroup":
        return self.restriction_hom(points).image()

    def induced_action(self, system: BlockSystem):
        """``(hom, image)`` for the action on the blocks of ``system``."""
        if not system.is_invariant_under(self.generators):
            raise ValueError("the block system is not invariant under the group")
        bo = system.block_of
        images = [Perm(bo[g[b[0]]] for b in system.blocks) for g in self.generators]
        hom = Hom(self, len(system.blocks), images)
        return hom, hom.image()

    def __repr__(self):
        return f"PermGroup(degree={self.degree}, generators={len(self.generators)})"


class Hom:
    """A homomorphism from ``source`` to ``Sym(target_degree)``.

    Defined by the images of the source generators.  Kernel, evaluation and
    preimages use the diagonal group ``{(γ, γ^φ)}`` acting on the disjoint
    union of the two domains.
    """

    def __init__(self, source: PermGroup, target_degree: int, images: Sequence):
        if len(images) != len(source.generators):
            raise ValueError("need one image per source generator")
        self.source = source
        self.target_degree = int(target_degree)
        self.images = tuple(p if isinstance(p, Perm) else Perm(p) for p in images)
        for p in self.images:
            if len(p) != self.target_degree:
                raise ValueError("image of the wrong degree")
        self._lock = threading.RLock()
        self._cache: dict = {}

    def _combined(self, g: Perm, h: Perm) -> Perm:
        n = self.source.degree
        return Perm(tuple(g) + tuple(x + n for x in h))

    def _diag_group(self) -> PermGroup:
        with self._lock:
            d = self._cache.get("diag")
            if d is None:
                gens = [self._combined(g, h) for g, h in zip(self.source.generators, self.images)]
                d = PermGroup(self.source.degree + self.target_degree, gens)
                self._cache["diag"] = d
        return d

    def _target_chain(self) -> StabChain:
        n = self.source.degree
        return self._diag_group().chain_with_base(range(n, n + self.target_degree))

    def _source_chain(self) -> StabChain:
        return self._diag_group().chain_with_base(range(self.source.degree))

    def is_well_defined(self) -> bool:
        """True iff the generator images extend to a homomorphism.

        The diagonal group projects onto the source; the map is well defined
        exactly when that projection is injective.
        """
        return self._diag_group().order() == self.source.order()

    def __call__(self, g: Perm) -> Perm:
        n, k = self.source.degree, self.target_degree
        x = self._combined(g, Perm.identity(k))
        res, _ = self._source_chain().sift(x)
        if any(res[i] != i for i in range(n)):
            raise ValueError("element is not in the source group")
        # res = (id, φ(g)^-1) after stripping, so invert the target part
        return ~Perm(x - n for x in res[n:])

    def image(self) -> PermGroup:
        with self._lock:
            if "image" not in self._cache:
                self._cache["image"] = PermGroup(self.target_degree, self.images)
        return self._cache["image"]

    def kernel(self) -> PermGroup:
        with self._lock:
            if "kernel" in self._cache:
                return self._cache["kernel"]
        n, k = self.source.degree, self.target_degree
        c = self._target_chain()
        sub = c.copy_from_level(k)
        gens = [Perm(g[:n]) for g in sub.strong_generators()]
        ker = PermGroup(n, gens)
        with self._lock:
            self._cache["kernel"] = ker
        return ker

    def preimage(self, delta: Perm) -> Perm | None:
        """Some ``γ`` in the source with ``γ^φ = δ``, or None."""
        n, k = self.source.degree, self.target_degree
        if len(delta) != k:
            raise ValueError("delta has the wrong degree")
        c = self._target_chain()
        z = self._combined(Perm.identity(n), delta)
        for i in range(k):
            inv = c.itrans[i].get(z[c.base[i]])
            if inv is None:
                return None
            z = z * inv
        if any(z[n + j] != n + j for j in range(k)):
            return None
        return ~Perm(z[:n])

    def transversal(self):
        """One preimage for every element of the image, lazily."""
        n, k = self.source.degree, self.target_degree
        c = self._target_chain()
        levels = c.trans[:k]

        def rec(level):
            if level < 0:
                yield Perm.identity(n + k)
                return
            for prefix in rec(level - 1):
                t = levels[level]
                for pt in sorted(t):
                    yield t[pt] * prefix

        if not levels:
            yield Perm.identity(n)
            return
        for g in rec(len(levels) - 1):
            yield Perm(g[:n])

    def image_order(self) -> int:
        c = self._target_chain()
        return prod(len(t) for t in c.trans[: self.target_degree])

    def restrict_to(self, subgroup: PermGroup) -> "Hom":
        return Hom(subgroup, self.target_degree, [self(g) for g in subgroup.generators])


@dataclass(frozen=True)
class Coset:
    """The right coset ``group · rep``, or the empty set when ``group`` is None."""

    group: PermGroup | None
    rep: Perm | None

    @classmethod
    def empty(cls) -> "Coset":
        return cls(None, None)

    @property
    def is_empty(self) -> bool:
        return self.group is None

    def __bool__(self):
        return not self.is_empty

    def order(self) -> int:
        return 0 if self.is_empty else self.group.order()

    def __len__(self):
        return self.order()

    def __contains__(self, g) -> bool:
        if self.is_empty:
            return False
        return self.group.contains(Perm(g) * ~self.rep)

    def elements(self):
        if self.is_empty:
            return
        for d in self.group.elements():
            yield d * self.rep

    def shifted(self, g: Perm) -> "Coset":
        """``(group · rep) · g``."""
        if self.is_empty:
            return self
        return Coset(self.group, self.rep * g)
