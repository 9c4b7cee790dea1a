"""The compiled and pure-Python kernels must agree exactly."""

import numpy as np
import pytest

from isokit import kernels
from isokit.generators import gen_cycle, random_gnm, random_regular
from isokit.graph import ColoredGraph
from isokit.refinement import color_refine, refine_stable

pytestmark = pytest.mark.skipif(len(kernels.available_backends()) < 2, reason="compiled kernel not built")


def _colored(rng, n, m):
    g = random_gnm(n, min(m, n * (n - 1) // 2), int(rng.integers(1 << 30)))
    arcs = {}
    for v, w in g.edges():
        arcs[(v, w)] = int(rng.integers(3))
        arcs[(w, v)] = int(rng.integers(3))
    return ColoredGraph.from_edges(n, g.edges(), rng.integers(0, 2, n).tolist(), arcs)


def _both(fn):
    out = {}
    prev = kernels.backend_name()
    try:
        for name in kernels.available_backends():
            kernels.use_backend(name)
            out[name] = fn()
    finally:
        kernels.use_backend(prev)
    return list(out.values())


def test_refine_stable_agrees(rng):
    for _ in range(40):
        n = int(rng.integers(1, 60))
        g = _colored(rng, n, int(rng.integers(0, n * 2 + 1)))
        a, b = _both(lambda: refine_stable(g).colors)
        assert np.array_equal(a, b)


def test_cr_rounds_agree(rng):
    for _ in range(20):
        g = _colored(rng, 30, 50)
        a, b = _both(lambda: [c.colors for c in color_refine(g).rounds])
        assert len(a) == len(b)
        assert all(np.array_equal(x, y) for x, y in zip(a, b))


def test_regular_graphs_stay_uniform():
    for g in (gen_cycle(9), random_regular(30, 3, 1)):
        for col in _both(lambda: refine_stable(g).colors):
            assert col.tolist() == [0] * g.n


def test_unknown_backend():
    with pytest.raises(ValueError):
        kernels.use_backend("fortran")
