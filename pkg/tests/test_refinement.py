import itertools

import numpy as np
import pytest

from isokit.errors import ResourceLimitError
from isokit.generators import (
    disjoint_union, gen_complete, gen_cycle, gen_path, gen_rook44, gen_shrikhande,
    random_gnm, random_tree,
)
from isokit.graph import Coloring
from isokit.refinement import (
    atomic_type, color_refine, distinguishes, hom_count_tree, refine_stable,
    trace_to_json, wl_k,
)

import oracles


def test_path7_matches_golden(golden):
    trace = color_refine(gen_path(6))
    assert trace.stabilized_at == 3
    assert trace.stable.partition() == [[0, 6], [1, 5], [2, 4], [3]]
    assert trace_to_json(trace) == golden("path7_cr.json")


def test_cycle7_wl2_matches_golden(golden):
    assert trace_to_json(wl_k(gen_cycle(7), 2)) == golden("cycle7_wl2.json")


def test_cr_rounds_match_definition(rng):
    for _ in range(30):
        n = int(rng.integers(1, 14))
        g = oracles.random_graph(rng, n)
        got = [c.partition() for c in color_refine(g).rounds]
        assert got == oracles.cr_rounds(g)


def test_refine_stable_equivalent_to_rounds(backend, rng):
    for _ in range(30):
        n = int(rng.integers(1, 40))
        g = oracles.random_graph(rng, n, 2 * n)
        assert refine_stable(g).equivalent(color_refine(g).stable)


def test_refine_stable_is_canonical(rng):
    # relabelled graphs get the same colors on corresponding vertices
    for _ in range(20):
        g = random_gnm(25, 40, int(rng.integers(1 << 30)))
        perm = rng.permutation(25).tolist()
        h = g.relabel(perm)
        cg, ch = refine_stable(g).colors, refine_stable(h).colors
        assert all(cg[v] == ch[perm[v]] for v in range(25))


def test_initial_coloring_is_respected():
    g = gen_cycle(6)
    col = refine_stable(g, Coloring(np.array([1, 0, 0, 0, 0, 0])))
    assert col.partition() == [[0], [1, 5], [2, 4], [3]]


def test_wl2_by_definition(rng):
    for _ in range(8):
        n = int(rng.integers(2, 8))
        g = oracles.random_graph(rng, n)
        trace = wl_k(g, 2)
        ours = trace.stable
        ref = oracles.wl2_rounds(g)[-1]
        pairs = [(u, v) for u in range(n) for v in range(n)]
        idx = {p: i for i, p in enumerate(itertools.product(range(n), repeat=2))}
        for p, q in itertools.combinations(pairs, 2):
            assert (ours[idx[p]] == ours[idx[q]]) == (ref[p] == ref[q])


def test_cycle7_wl2_distance_partition():
    g = gen_cycle(7)
    trace = wl_k(g, 2)
    assert trace.stabilized_at == 1
    col = trace.stable
    assert col.num_colors == 4
    dist = oracles.distance_matrix(g)
    for u, v in itertools.product(range(7), repeat=2):
        assert col[u * 7 + v] == col[v * 7 + u]
        for x, y in itertools.product(range(7), repeat=2):
            assert (col[u * 7 + v] == col[x * 7 + y]) == (dist[u][v] == dist[x][y])


def test_atomic_type():
    g = gen_path(2)
    a = atomic_type(g, (0, 1, 0))
    b = atomic_type(g, (1, 0, 1))
    c = atomic_type(g, (0, 2, 0))
    assert a == b
    assert a != c


def test_regular_pair():
    c6, tri = gen_cycle(6), disjoint_union(gen_cycle(3), gen_cycle(3))
    assert not distinguishes(c6, tri, 1)
    d = distinguishes(c6, tri, 2)
    assert d and d.witness is not None


def test_srg_pair_needs_three():
    sh, rk = gen_shrikhande(), gen_rook44()
    assert not distinguishes(sh, rk, 1)
    assert not distinguishes(sh, rk, 2)
    assert distinguishes(sh, rk, 3)


def test_wl_guard():
    with pytest.raises(ResourceLimitError):
        wl_k(gen_complete(40), 3, max_tuples=1000)


def test_tree_hom_counts(rng):
    for _ in range(15):
        f = random_tree(int(rng.integers(1, 5)), int(rng.integers(1 << 30)))
        g = random_gnm(5, int(rng.integers(0, 11)), int(rng.integers(1 << 30)))
        assert hom_count_tree(f, g) == oracles.hom_count(f, g)


def test_cr_equivalence_matches_tree_homs():
    # 1-WL-equivalent graphs have equal tree homomorphism counts
    c6, tri = gen_cycle(6), disjoint_union(gen_cycle(3), gen_cycle(3))
    for size in range(1, 6):
        t = gen_path(size - 1) if size > 1 else random_tree(1, 0)
        assert hom_count_tree(t, c6) == hom_count_tree(t, tri)
