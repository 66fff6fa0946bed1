from itertools import combinations

import numpy as np
import pytest

from varsphere.counts import matroid_rank, rank_r2
from varsphere.covers import cover_rank, is_thin_cover
from varsphere.errors import CapacityError, ScopeError
from varsphere.generate import random_colouring, random_connected_graph
from varsphere.graphs import ColouredGraph

K4 = list(combinations(range(1, 5), 2))


def test_triangle():
    r = cover_rank(ColouredGraph(3, [(1, 2), (2, 3), (1, 3)]), coloured=False)
    assert r.value == 3 and r.cover == (frozenset({1, 2, 3}),)


def test_double_k4(fig1a):
    g = ColouredGraph(7, sorted(K4 + [(a + 3, b + 3) for a, b in K4]))
    r = cover_rank(g, coloured=False)
    assert r.value == 10 == matroid_rank(g, 2)
    assert set(r.cover) == {frozenset({1, 2, 3, 4}), frozenset({4, 5, 6, 7})}


def test_one_coloured_k4():
    g = ColouredGraph(4, K4, {v: "c" for v in range(1, 5)})
    r = cover_rank(g)
    assert r.value == 6 == matroid_rank(g, 2)
    # X = V with the single piece V attains the optimum too
    assert is_thin_cover(g, [set(g.vertices)], X=set(g.vertices))
    assert (2 * 4 - 3) + 1 == r.value


def test_scope_and_capacity(fig1b):
    with pytest.raises(ScopeError):
        cover_rank(fig1b)
    with pytest.raises(ScopeError):
        cover_rank(ColouredGraph(3, [(1, 2)]), d=1)
    with pytest.raises(CapacityError):
        cover_rank(ColouredGraph(9, [(1, 2)]), coloured=False)


def test_thin_cover_checker():
    g = ColouredGraph(4, K4)
    assert is_thin_cover(g, [{1, 2, 3, 4}])
    assert not is_thin_cover(g, [{1, 2, 3}, {2, 3, 4}])
    assert not is_thin_cover(g, [{1, 2, 3}])
    assert not is_thin_cover(g, [{1, 2, 3, 4}], X={1, 2, 3})


def test_lovasz_yemini_and_coloured_formula_random():
    rng = np.random.default_rng(21)
    for _ in range(80):
        n = int(rng.integers(3, 8))
        m = int(rng.integers(n - 1, min(n * (n - 1) // 2, 2 * n + 1) + 1))
        g = random_connected_graph(rng, n, m)
        un = cover_rank(g, coloured=False)
        assert un.value == rank_r2(g, g.edges)
        assert is_thin_cover(g, un.cover)
        h = g.with_colouring(random_colouring(rng, n, 2))
        co = cover_rank(h)
        assert co.value == matroid_rank(h, 2)
        assert is_thin_cover(h, co.cover, co.restriction)


def test_pruning_does_not_change_value():
    rng = np.random.default_rng(22)
    for _ in range(25):
        n = int(rng.integers(3, 7))
        g = random_connected_graph(rng, n, int(rng.integers(n - 1, min(n * (n - 1) // 2, 10) + 1)))
        g = g.with_colouring(random_colouring(rng, n, 2))
        assert cover_rank(g, prune=True).value == cover_rank(g, prune=False).value
