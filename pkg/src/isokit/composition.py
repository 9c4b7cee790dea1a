"""Composition factors of small permutation groups and the Γ_d membership test.

The factors are found by peeling the group apart along actions whose
kernel and image are again permutation groups (orbits, block systems,
coset actions) and along the derived series.  A perfect primitive group
left at the bottom is tested for simplicity by normal closures of its
conjugacy class representatives and named through a catalog of simple
groups that have a faithful action of degree at most 30.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial

from .errors import ResourceLimitError
from .perm import Hom, Perm, PermGroup, StabChain

__all__ = [
    "Factor",
    "normal_closure",
    "derived_subgroup",
    "is_perfect",
    "composition_factors",
    "in_gamma_d",
    "MAX_DEGREE",
]

MAX_DEGREE = 30
ENUMERATION_LIMIT = 200_000
COSET_ACTION_LIMIT = 10_000


@dataclass(frozen=True)
class Factor:
    """A composition factor: its name, order and least faithful degree."""

    name: str
    order: int
    min_degree: int


def _psl2_order(q):
    return q * (q * q - 1) // (2 if q % 2 else 1)


def _build_catalog():
    cat = {}
    for n in range(5, 31):
        cat.setdefault(factorial(n) // 2, []).append(Factor(f"A{n}", factorial(n) // 2, n))
    special = {7: 7, 11: 11}
    for q in (7, 8, 11, 13, 16, 17, 19, 23, 25, 27, 29):
        o = _psl2_order(q)
        cat.setdefault(o, []).append(Factor(f"PSL(2,{q})", o, special.get(q, q + 1)))
    for name, order, deg in [
        ("PSL(3,3)", 5616, 13),
        ("PSU(3,3)", 6048, 28),
        ("M11", 7920, 11),
        ("PSL(3,4)", 20160, 21),
        ("PSp(4,3)", 25920, 27),
        ("M12", 95040, 12),
        ("M22", 443520, 22),
        ("PSp(6,2)", 1451520, 28),
        ("M23", 10200960, 23),
        ("M24", 244823040, 24),
    ]:
        cat.setdefault(order, []).append(Factor(name, order, deg))
    return cat


# order -> candidate simple groups; only 20160 (A8 and PSL(3,4)) is ambiguous
SIMPLE_CATALOG = _build_catalog()


def _prime_factors(m: int) -> list[int]:
    out, p = [], 2
    while p * p <= m:
        while m % p == 0:
            out.append(p)
            m //= p
        p += 1
    if m > 1:
        out.append(m)
    return out


def normal_closure(group: PermGroup, elements) -> PermGroup:
    """The smallest normal subgroup of ``group`` containing ``elements``."""
    chain = StabChain(group.degree)
    gens = []
    queue = [Perm(e) for e in elements]
    while queue:
        h = queue.pop()
        if chain.contains(h):
            continue
        chain.extend([h])
        gens.append(h)
        queue.extend(h.conjugate(g) for g in group.generators)
    return PermGroup(group.degree, gens, chain=chain if gens else None)


def derived_subgroup(group: PermGroup) -> PermGroup:
    gens = group.generators
    comms = [(~a) * (~b) * a * b for i, a in enumerate(gens) for b in gens[i + 1:]]
    return normal_closure(group, [c for c in comms if not c.is_identity()])


def is_perfect(group: PermGroup) -> bool:
    return derived_subgroup(group).order() == group.order()


def _conjugacy_class_reps(group: PermGroup):
    if group.order() > ENUMERATION_LIMIT:
        raise ResourceLimitError(
            f"group of order {group.order()} is above the enumeration limit {ENUMERATION_LIMIT}"
        )
    seen = set()
    reps = []
    for g in group.elements():
        if g in seen:
            continue
        reps.append(g)
        seen.add(g)
        queue = [g]
        for x in queue:
            for s in group.generators:
                y = (~s) * x * s
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
    return reps


def _coset_action(group: PermGroup, normal: PermGroup) -> PermGroup:
    """The regular action of ``group / normal`` on the right cosets of ``normal``."""
    index = group.order() // normal.order()
    if index > COSET_ACTION_LIMIT:
        raise ResourceLimitError(f"quotient of order {index} too large for a coset action")
    reps = [group.identity()]

    def locate(g):
        for i, r in enumerate(reps):
            if normal.contains(g * ~r):
                return i
        return -1

    for r in reps:
        for s in group.generators:
            x = r * s
            if locate(x) < 0:
                reps.append(x)
    images = []
    for s in group.generators:
        images.append(Perm(locate(r * s) for r in reps))
    return PermGroup(len(reps), images)


def _name_simple(group: PermGroup) -> Factor:
    order = group.order()
    cands = SIMPLE_CATALOG.get(order)
    if not cands:
        raise ResourceLimitError(f"simple group of order {order} is not in the catalog")
    if len(cands) == 1:
        return cands[0]
    # order 20160: A8 has elements of order 15, PSL(3,4) has none
    has15 = any(g.order() == 15 for g in group.elements())
    return next(f for f in cands if (f.name == "A8") == has15)


def _perfect_primitive_factors(group: PermGroup, degree_of_action: int) -> list[Factor]:
    n = degree_of_action
    if n >= 5 and group.order() == factorial(n) // 2:
        return [Factor(f"A{n}", group.order(), n)]
    if group.order() > ENUMERATION_LIMIT:
        cands = SIMPLE_CATALOG.get(group.order())
        if cands and len(cands) == 1:
            return [cands[0]]
        raise ResourceLimitError(
            f"perfect group of order {group.order()} too large to test for simplicity"
        )
    for rep in _conjugacy_class_reps(group):
        if rep.is_identity():
            continue
        ncl = normal_closure(group, [rep])
        if ncl.order() < group.order():
            return composition_factors(ncl) + composition_factors(_coset_action(group, ncl))
    return [_name_simple(group)]


def composition_factors(group: PermGroup) -> list[Factor]:
    """The composition factors of ``group`` with multiplicity (unordered)."""
    if group.order() == 1:
        return []
    moved = [o for o in group.orbits() if len(o) > 1]
    if len(moved) > 1 or sum(len(o) for o in moved) < group.degree:
        hom = group.restriction_hom(moved[0])
        rest = composition_factors(hom.kernel()) if len(moved) > 1 else []
        return rest + composition_factors(hom.image())
    system = group.minimal_block_system()
    if not system.is_trivial:
        hom, image = group.induced_action(system)
        return composition_factors(hom.kernel()) + composition_factors(image)
    # primitive
    if group.is_abelian():
        return [Factor(f"C{p}", p, p) for p in _prime_factors(group.order())]
    d = derived_subgroup(group)
    if d.order() < group.order():
        top = [Factor(f"C{p}", p, p) for p in _prime_factors(group.order() // d.order())]
        return top + composition_factors(d)
    return _perfect_primitive_factors(group, group.degree)


def in_gamma_d(group: PermGroup, d: int) -> bool:
    """True iff every composition factor of ``group`` embeds in ``S_d``."""
    if group.degree > MAX_DEGREE:
        raise ResourceLimitError(f"in_gamma_d supports degree <= {MAX_DEGREE}, got {group.degree}")
    return all(f.min_degree <= d for f in composition_factors(group))
