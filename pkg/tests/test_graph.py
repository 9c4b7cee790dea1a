import numpy as np
import pytest

from isokit.graph import ColoredGraph, Coloring, GraphPair, disjoint_union
from isokit.generators import gen_cycle, gen_path


def test_from_edges_basic():
    g = ColoredGraph.from_edges(4, [(0, 1), (1, 2), (2, 3)])
    assert g.n == 4 and g.m == 3
    assert g.has_edge(1, 0) and not g.has_edge(0, 2)
    assert g.degrees.tolist() == [1, 2, 2, 1]
    assert g.edges() == [(0, 1), (1, 2), (2, 3)]


def test_rejects_loops_and_bad_vertices():
    with pytest.raises(ValueError):
        ColoredGraph.from_edges(3, [(0, 0)])
    with pytest.raises(ValueError):
        ColoredGraph.from_edges(3, [(0, 3)])


def test_arc_colors_roundtrip():
    g = ColoredGraph.from_edges(3, [(0, 1), (1, 2)], arc_colors={(0, 1): 2, (1, 0): 1})
    assert g.arc_color(0, 1) == 2
    assert g.arc_color(1, 0) == 1
    assert g.arc_color(1, 2) == 0
    assert not g.is_arc_uncolored


def test_relabel_is_isomorphism():
    g = gen_path(4)
    perm = [4, 2, 0, 1, 3]
    h = g.relabel(perm)
    assert g.is_isomorphism(h, perm)
    assert not g.is_isomorphism(h, list(range(5)))


def test_induced_subgraph_and_connectivity():
    g = gen_cycle(6)
    sub = g.induced_subgraph([0, 1, 2, 4])
    assert sub.n == 4 and sub.m == 2
    assert g.is_connected()
    assert not sub.is_connected()


def test_coloring_partition_and_refines():
    a = Coloring.from_labels([5, 5, 7, 7, 9])
    b = Coloring.from_labels([0, 0, 0, 0, 1])
    assert a.num_colors == 3
    assert a.partition() == [[0, 1], [2, 3], [4]]
    assert a.refines(b) and not b.refines(a)
    assert a.equivalent(Coloring.from_labels([2, 2, 1, 1, 0]))
    assert a.class_sizes().tolist() == [2, 2, 1]


def test_disjoint_union_and_pair_counts():
    g, h = gen_cycle(3), gen_path(2)
    u = disjoint_union(g, h)
    assert u.n == 6 and u.m == 5
    pair = GraphPair(g, h)
    col = Coloring(np.array([0, 0, 0, 1, 2, 1]))
    a, b = pair.class_counts(col)
    assert a.tolist() == [3, 0, 0] and b.tolist() == [0, 2, 1]
