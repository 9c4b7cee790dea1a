import itertools

import pytest

from isokit.errors import ResourceLimitError
from isokit.hypergraph import (
    Hypergraph, SetOfStrings, hyper_to_sets, set_of_strings_iso_bruteforce, sets_to_hyper,
)
from isokit.perm import Perm, PermGroup
from isokit.strings import GString


def _random_hypergraph(rng, n, m):
    return Hypergraph(n, [rng.choice(n, size=int(rng.integers(1, n + 1)), replace=False).tolist() for _ in range(m)])


def _hyper_isos(h1, h2):
    target = h2.edge_sets()
    return {p for p in itertools.permutations(range(h1.n)) if h1.relabel(Perm(p)).edge_sets() == target}


def test_hypergraph_canonical_form():
    h = Hypergraph(4, [[2, 0], [0, 2], [3]])
    assert h.edges == ((0, 2), (3,))
    with pytest.raises(ValueError):
        Hypergraph(3, [[0, 3]])


def test_hyper_to_sets_preserves_isomorphisms(rng):
    s4 = PermGroup.symmetric(5)
    for _ in range(15):
        h1 = _random_hypergraph(rng, 5, 4)
        p = Perm(rng.permutation(5).tolist())
        h2 = h1.relabel(p) if rng.random() < 0.7 else _random_hypergraph(rng, 5, 4)
        coset = set_of_strings_iso_bruteforce(hyper_to_sets(h1), hyper_to_sets(h2), s4)
        assert {tuple(g) for g in coset.elements()} == _hyper_isos(h1, h2)


def test_sets_to_hyper_lifts_isomorphisms(rng):
    group = PermGroup.dihedral(4)
    for _ in range(15):
        xs = SetOfStrings([GString.from_values(rng.integers(0, 3, 4).tolist(), 3) for _ in range(3)], 4, (0, 1, 2))
        ys = xs.apply(group.random_element(rng)) if rng.random() < 0.6 else SetOfStrings(
            [GString.from_values(rng.integers(0, 3, 4).tolist(), 3) for _ in range(3)], 4, (0, 1, 2))
        hx, lifted = sets_to_hyper(xs, group)
        hy, _ = sets_to_hyper(ys, group)
        target = hy.edge_sets()
        for g, lg in zip(group.elements(), lifted.elements()):
            assert (xs.apply(g).strings == ys.strings) == (hx.relabel(lg).edge_sets() == target)


def test_bruteforce_coset_structure():
    x = SetOfStrings([GString.from_values([1, 0, 0], 2), GString.from_values([0, 1, 0], 2)])
    c = set_of_strings_iso_bruteforce(x, x, PermGroup.symmetric(3))
    assert c.order() == 2  # swap of the first two points
    assert set_of_strings_iso_bruteforce(x, SetOfStrings([GString.from_values([1, 1, 0], 2)]), PermGroup.symmetric(3)).is_empty


def test_bruteforce_guard():
    x = SetOfStrings([GString.from_values([0] * 12, 2)])
    with pytest.raises(ResourceLimitError):
        set_of_strings_iso_bruteforce(x, x, PermGroup.symmetric(12))
