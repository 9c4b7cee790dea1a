from itertools import combinations
from math import factorial

import pytest

from isokit.certificates import GiantRep, affected_orbits, affected_points, is_giant, local_certificates
from isokit.errors import ResourceLimitError
from isokit.perm import Hom, Perm, PermGroup
from isokit.strings import GString

K = 8
PAIRS = list(combinations(range(K), 2))
PAIR_INDEX = {p: i for i, p in enumerate(PAIRS)}
S8 = PermGroup.symmetric(K)


def pairs_and_points():
    """S8 acting on the 28 pairs and the 8 points (n = 36), φ the point action."""

    def lift(g):
        return Perm([PAIR_INDEX[tuple(sorted((g[a], g[b])))] for a, b in PAIRS] + [28 + g[i] for i in range(K)])

    group = PermGroup(36, [lift(g) for g in S8.generators])
    return group, GiantRep.from_images(group, K, list(S8.generators)), lift


def wreath_c2_s8():
    """C2 wr S8 on 16 points, blocks {2i, 2i+1}; φ the block action."""
    flip = Perm([1, 0] + list(range(2, 16)))
    gens = [flip] + [Perm([2 * g[i // 2] + i % 2 for i in range(16)]) for g in S8.generators]
    images = [Perm.identity(K)] + list(S8.generators)
    group = PermGroup(16, gens)
    return group, GiantRep.from_images(group, K, images)


def s8_times_c3():
    """S8 on points 0..7 times C3 on points 8..10; φ the first factor."""
    gens = [Perm(list(g) + [8, 9, 10]) for g in S8.generators] + [Perm(list(range(8)) + [9, 10, 8])]
    images = list(S8.generators) + [Perm.identity(K)]
    group = PermGroup(11, gens)
    return group, GiantRep.from_images(group, K, images)


def _aut_image_pairs(vals, lift):
    out = []
    for g in S8.elements():
        lg = lift(g)
        if all(vals[a] == vals[lg[a]] for a in range(36)):
            out.append(g)
    return out


def _check(cert, aut_image):
    full = len(aut_image) * 2 >= factorial(K)
    assert cert.full == full
    if full:
        assert cert.group.order() > 0
    else:
        assert not is_giant(cert.group)
        assert all(cert.group.contains(g) for g in aut_image)


def test_is_giant():
    assert is_giant(PermGroup.symmetric(6))
    assert is_giant(PermGroup.alternating(6))
    assert not is_giant(PermGroup.dihedral(6))


def test_giant_rep_validation():
    with pytest.raises(ValueError):
        GiantRep(Hom(PermGroup.cyclic(8), 8, [Perm.from_cycles(8, tuple(range(8)))]))


@pytest.mark.parametrize("trial", range(6))
def test_pairs_and_points_vs_enumeration(trial, rng):
    group, rep, lift = pairs_and_points()
    if trial == 0:
        vals = [0] * 36
    elif trial == 1:
        vals = list(range(36))
    else:
        p = [0.05, 0.5, 0.9, 0.3][trial - 2]
        vals = [int(rng.random() < p) for _ in PAIRS] + [0] * K
        if trial == 5:
            vals[28] = 1
    x = GString.from_values(vals, max(vals) + 1)
    _check(local_certificates(x, group, rep), _aut_image_pairs(vals, lift))


def test_wreath_vs_block_types(rng):
    group, rep = wreath_c2_s8()
    for _ in range(4):
        vals = rng.integers(0, 3, 16).tolist()
        # γ preserves x iff it permutes blocks with the same unordered content
        kinds = [tuple(sorted(vals[2 * i:2 * i + 2])) for i in range(K)]
        aut_image = [g for g in S8.elements() if all(kinds[g[i]] == kinds[i] for i in range(K))]
        x = GString.from_values(vals, 3)
        _check(local_certificates(x, group, rep), aut_image)


def test_product_vs_enumeration(rng):
    group, rep = s8_times_c3()
    c3 = [list(range(8)) + [8 + (i + s) % 3 for i in range(3)] for s in range(3)]
    for _ in range(4):
        vals = rng.integers(0, 2, 11).tolist()
        x = GString.from_values(vals, 2)
        aut_image = [
            g for g in S8.elements()
            if any(all(vals[a] == vals[(list(g) + [8, 9, 10])[c[a]]] for a in range(11)) for c in c3)
        ]
        _check(local_certificates(x, group, rep), aut_image)


@pytest.mark.parametrize("build", [pairs_and_points, wreath_c2_s8, s8_times_c3])
def test_affected_orbit_bound(build):
    group, rep = build()[:2]
    kernel = rep.hom.kernel()
    orbits = affected_orbits(group, rep)
    assert orbits
    for orb in orbits:
        for ko in kernel.orbits_on(orb):
            assert len(ko) * K <= len(orb)


def test_affected_points_examples():
    group, rep = s8_times_c3()
    assert affected_points(group, rep) == list(range(8))
    group, rep = wreath_c2_s8()
    assert affected_points(group, rep) == list(range(16))


def test_input_guards():
    group, rep = s8_times_c3()
    x = GString.from_values([0] * 10, 2)
    with pytest.raises(ValueError):
        local_certificates(x, group, rep)
    small = PermGroup.symmetric(5)
    rep5 = GiantRep.from_images(small, 5, list(small.generators))
    with pytest.raises(ValueError):
        local_certificates(GString.from_values([0] * 5, 2), small, rep5)
    big = PermGroup.symmetric(11)
    rep11 = GiantRep.from_images(big, 11, list(big.generators))
    with pytest.raises(ResourceLimitError):
        local_certificates(GString.from_values([0] * 11, 2), big, rep11)
