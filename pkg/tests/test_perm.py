import itertools
from math import factorial

import numpy as np
import pytest

from isokit.perm import BlockSystem, Coset, Hom, Perm, PermGroup, StabChain

import oracles


def _random_group(rng, max_order=5000):
    """A random subgroup of some S_n (n ≤ 7) with order at most ``max_order``."""
    while True:
        n = int(rng.integers(3, 8))
        gens = [Perm(rng.permutation(n).tolist()) for _ in range(int(rng.integers(1, 4)))]
        elems = oracles.closure_elements(n, gens)
        if len(elems) <= max_order:
            return PermGroup(n, gens), elems


def test_perm_basics():
    p = Perm.from_cycles(5, (0, 1, 2))
    q = Perm.from_cycles(5, (2, 3))
    assert (p * q)[0] == q[p[0]]
    assert (p * ~p).is_identity()
    assert p.order() == 3 and (p ** 3).is_identity()
    assert p ** -1 == ~p
    assert p.cycles() == [(0, 1, 2)]
    assert p.sign() == 1 and q.sign() == -1
    assert p.support() == [0, 1, 2]
    assert p.conjugate(q) == ~q * p * q


def test_checked_rejects_non_permutations():
    with pytest.raises(ValueError):
        Perm.checked([0, 0, 1])
    with pytest.raises(ValueError):
        Perm.checked([1, 0], degree=3)


def test_standard_orders():
    for n in range(1, 8):
        assert PermGroup.symmetric(n).order() == factorial(n)
        if n >= 3:
            assert PermGroup.alternating(n).order() == factorial(n) // 2
            assert PermGroup.dihedral(n).order() == 2 * n
        assert PermGroup.cyclic(n).order() == n


def test_large_symmetric_group_fast():
    assert PermGroup.symmetric(30).order() == factorial(30)


def test_order_and_membership_vs_enumeration(rng):
    for _ in range(50):
        group, elems = _random_group(rng)
        assert group.order() == len(elems)
        assert {tuple(g) for g in group.elements()} == elems
        n = group.degree
        for _ in range(10):
            p = tuple(rng.permutation(n).tolist())
            assert group.contains(Perm(p)) == (p in elems)


def test_orbit_stabilizer(rng):
    for _ in range(50):
        group, elems = _random_group(rng)
        for a in range(group.degree):
            orb = oracles.orbit_of(elems, a)
            assert group.orbit(a) == orb
            stab = group.stabilizer(a)
            assert {tuple(g) for g in stab.elements()} == oracles.stabilizer_of(elems, a)
            assert len(orb) * stab.order() == group.order()


def test_pointwise_stabilizer(rng):
    for _ in range(20):
        group, elems = _random_group(rng)
        pts = [0, 1]
        want = {g for g in elems if g[0] == 0 and g[1] == 1}
        assert {tuple(g) for g in group.pointwise_stabilizer(pts).elements()} == want


def test_minimal_block_systems_are_primitive(rng):
    count = 0
    while count < 30:
        group, elems = _random_group(rng)
        if not group.is_transitive() or group.degree < 2:
            continue
        count += 1
        system = group.minimal_block_system()
        assert system.is_invariant_under(group.generators)
        blocks = [sorted(b) for b in system.blocks]
        assert sorted(blocks) in oracles.invariant_partitions(group.degree, group.generators)
        _, image = group.induced_action(system)
        gens = [tuple(g) for g in image.generators] or [tuple(range(len(blocks)))]
        if len(blocks) > 1:
            assert oracles.is_primitive_bruteforce(len(blocks), gens)


def test_dihedral_hexagon_blocks():
    d6 = PermGroup.dihedral(6)
    system = d6.minimal_block_system()
    assert [sorted(b) for b in system.blocks] == [[0, 3], [1, 4], [2, 5]]
    hom, image = d6.induced_action(system)
    assert image.order() == 6
    assert hom.kernel().order() == 2


def test_primitive_group_gets_trivial_blocks():
    s = PermGroup.symmetric(5).minimal_block_system()
    assert s.is_trivial and s.block_size == 1


def test_block_system_validation():
    with pytest.raises(ValueError):
        BlockSystem.from_lists([[0, 1], [2]])
    b = BlockSystem.from_lists([[0, 1], [2, 3]])
    assert b.block_of[3] == 1
    assert b.is_invariant_under([Perm((1, 0, 3, 2))])
    assert not b.is_invariant_under([Perm((0, 2, 1, 3))])


def test_hom_kernel_image_preimage(rng):
    # S4 acting on the three pairings of {0,1,2,3}: kernel is V4, image S3
    s4 = PermGroup.symmetric(4)
    pairings = [((0, 1), (2, 3)), ((0, 2), (1, 3)), ((0, 3), (1, 2))]
    key = {frozenset(frozenset(p) for p in m): i for i, m in enumerate(pairings)}

    def act(g):
        return Perm(key[frozenset(frozenset((g[a], g[b])) for a, b in m)] for m in pairings)

    hom = Hom(s4, 3, [act(g) for g in s4.generators])
    assert hom.image().order() == 6
    assert hom.kernel().order() == 4
    for g in s4.elements():
        assert hom(g) == act(g)
    for d in PermGroup.symmetric(3).elements():
        pre = hom.preimage(d)
        assert pre is not None and hom(pre) == d
    assert len(list(hom.transversal())) == 6


def test_hom_preimage_outside_image():
    a4 = PermGroup.alternating(4)
    trivial = Hom(a4, 2, [Perm.identity(2)] * len(a4.generators))
    assert trivial.kernel().order() == 12
    assert trivial.preimage(Perm((1, 0))) is None


def test_hom_well_defined():
    c3 = PermGroup.cyclic(3)
    assert not Hom(c3, 2, [Perm((1, 0))]).is_well_defined()  # a 3-cycle cannot go to a transposition
    s3 = PermGroup.symmetric(3)
    sign = Hom(s3, 2, [Perm((1, 0)) if g.sign() < 0 else Perm((0, 1)) for g in s3.generators])
    assert sign.is_well_defined()
    assert sign.kernel().order() == 3


def test_coset_membership(rng):
    group, elems = _random_group(rng)
    n = group.degree
    rep = Perm(rng.permutation(n).tolist())
    c = Coset(group, rep)
    members = {tuple(Perm(g) * rep) for g in elems}
    assert {tuple(x) for x in c.elements()} == members
    for _ in range(20):
        p = Perm(rng.permutation(n).tolist())
        assert (p in c) == (tuple(p) in members)
    assert Coset.empty().order() == 0 and not Coset.empty()


def test_stabchain_random_elements_are_members(rng):
    group, elems = _random_group(rng)
    for _ in range(20):
        assert tuple(group.random_element(rng)) in elems


def test_verify_on_big_group(rng):
    g = PermGroup(12, [Perm.from_cycles(12, tuple(range(12))), Perm.from_cycles(12, (0, 1))])
    assert g.order() == factorial(12)
    assert g.verify(rng)


def test_small_worked_examples():
    assert PermGroup(5, [Perm.from_cycles(5, (0, 1, 2, 3, 4))]).order() == 5
    assert PermGroup.symmetric(8).order() == 40320
    a4 = PermGroup.alternating(4)
    assert a4.contains(Perm.from_cycles(4, (0, 1, 2)))
    assert not a4.contains(Perm.from_cycles(4, (0, 1)))
    assert a4.contains(Perm.identity(4))
    with pytest.raises(ValueError):
        a4.contains(Perm.identity(5))
    g = PermGroup(4, [Perm.from_cycles(4, (0, 1)), Perm.from_cycles(4, (2, 3))])
    assert g.orbits() == [[0, 1], [2, 3]]
    assert PermGroup.trivial(3).orbits() == [[0], [1], [2]]
    assert PermGroup.cyclic(6).is_transitive()


def test_cyclic_four_blocks():
    c4 = PermGroup.cyclic(4)
    assert [list(b) for b in c4.minimal_block_system().blocks] == [[0, 2], [1, 3]]
    assert oracles.invariant_partitions(4, c4.generators) == [[[0, 1, 2, 3]], [[0, 2], [1, 3]], [[0], [1], [2], [3]]]


def test_dihedral_tie_break_by_enumeration():
    # the two minimal systems of D6 are antipodal pairs and the two triangles;
    # the (size, contents) rule picks the pairs
    d6 = PermGroup.dihedral(6)
    found = [p for p in oracles.invariant_partitions(6, d6.generators) if 1 < len(p) < 6]
    assert sorted(found) == [[[0, 2, 4], [1, 3, 5]], [[0, 3], [1, 4], [2, 5]]]


def test_stabilizer_examples():
    assert PermGroup.symmetric(4).stabilizer(0).order() == 6
    assert PermGroup.symmetric(5).pointwise_stabilizer(range(5)).order() == 1
    a5 = PermGroup.alternating(5)
    stab = a5.pointwise_stabilizer([0, 1])
    assert stab.order() == 3
    assert all(g[0] == 0 and g[1] == 1 for g in stab.elements())


def test_identity_hom_and_block_extremes():
    s4 = PermGroup.symmetric(4)
    ident = Hom(s4, 4, list(s4.generators))
    assert ident.kernel().order() == 1
    pre = ident.preimage(Perm.identity(4))
    assert pre is not None and ident(pre).is_identity()
    singles = BlockSystem.from_lists([[i] for i in range(4)])
    assert s4.induced_action(singles)[1].order() == 24
    one = BlockSystem.from_lists([[0, 1, 2, 3]])
    assert s4.induced_action(one)[1].order() == 1


def test_non_invariant_inputs_rejected():
    g = PermGroup(4, [Perm.from_cycles(4, (0, 1))])
    with pytest.raises(ValueError):
        g.restrict([0, 2])
    with pytest.raises(ValueError):
        g.induced_action(BlockSystem.from_lists([[0, 2], [1, 3]]))
    with pytest.raises(ValueError):
        g.minimal_block_system()  # intransitive
