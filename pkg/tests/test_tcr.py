import pytest

from isokit.errors import ResourceLimitError
from isokit.generators import (
    gen_complete, gen_cycle, gen_dodecahedron, gen_icosahedron, gen_path, gen_prism, random_connected_bounded_degree,
    random_regular,
)
from isokit.graph import ColoredGraph
from isokit.search import automorphism_group
from isokit.tcr import closure, individualized_coloring, is_tcr_bounded, tcr_aut_pipeline, tcr_stable

import oracles


def test_trace_shape():
    trace = tcr_stable(gen_cycle(8), 2, [0])
    assert trace.discrete
    assert len(trace.rounds) % 2 == 0
    # odd rounds are CR-stable, even rounds past the start are splits
    for i in range(2, len(trace.rounds), 2):
        assert trace.rounds[i].num_colors > trace.rounds[i - 1].num_colors


def test_boundedness_examples():
    assert is_tcr_bounded(gen_path(5), 2)
    assert not is_tcr_bounded(gen_cycle(6), 1)
    assert not is_tcr_bounded(gen_cycle(6), 2)  # vertex-transitive: nothing to split
    assert is_tcr_bounded(gen_cycle(6), 2, [0])
    k4 = ColoredGraph.from_edges(4, gen_complete(4).edges(), vertex_colors=[1, 0, 0, 0])
    assert is_tcr_bounded(k4, 3)
    assert not is_tcr_bounded(random_regular(20, 3, 1), 1)


def test_individualized_coloring():
    col = individualized_coloring(gen_path(3), [2, 0])
    assert col.num_colors == 3
    with pytest.raises(ValueError):
        individualized_coloring(gen_path(3), [9])


def test_closure_of_one_vertex_bounded_degree(rng):
    for d in (3, 4, 5):
        for _ in range(10):
            g = random_connected_bounded_degree(int(rng.integers(d + 2, 25)), d, int(rng.integers(1 << 30)))
            v = int(rng.integers(g.n))
            assert closure(g, [v], d) == list(range(g.n))


def test_closure_three_vertices_planar(rng):
    for g in (gen_dodecahedron(), gen_icosahedron(), gen_prism(5)):
        for _ in range(5):
            xs = rng.choice(g.n, 3, replace=False).tolist()
            assert closure(g, xs, 2) == list(range(g.n))


def test_closure_can_be_partial():
    # with t=1 only the antipode of the individualized vertex becomes a singleton
    assert closure(gen_cycle(6), [0], 1) == [0, 3]
    assert closure(gen_cycle(6), [0], 2) == list(range(6))


@pytest.mark.parametrize("make,t,ind", [
    (lambda: gen_path(5), 2, ()),
    (lambda: gen_cycle(8), 2, (0,)),
    (lambda: gen_dodecahedron(), 2, (0, 1, 5)),
    (lambda: gen_prism(4), 2, (0, 1)),
])
def test_pipeline_matches_search(make, t, ind):
    g = make()
    group = tcr_aut_pipeline(g, t, ind)
    flag = individualized_coloring(g, ind).colors
    autg, _, _ = automorphism_group(g, initial=flag)
    assert group.order() == autg.order()


def test_pipeline_small_vs_bruteforce(rng):
    done = 0
    while done < 15:
        n = int(rng.integers(2, 7))
        g = oracles.random_graph(rng, n)
        ind = [int(rng.integers(n))]
        if not is_tcr_bounded(g, 2, ind):
            continue
        done += 1
        group = tcr_aut_pipeline(g, 2, ind)
        colored = g.with_vertex_colors([1 if v == ind[0] else 0 for v in range(n)])
        assert group.order() == oracles.aut_order(colored)


def test_pipeline_rejects_unbounded():
    with pytest.raises(ValueError):
        tcr_aut_pipeline(gen_cycle(6), 1)
