import numpy as np
import pytest

from varsphere import moves
from varsphere.counts import is_tight
from varsphere.errors import PreconditionError
from varsphere.generate import legal_extensions, apply_extension, random_isostatic
from varsphere.graphs import ColouredGraph
from varsphere.moves import (ColourIsolationError, DegreeRuleError, ExistingEdgeError,
                             find_admissible_one_reduction, one_extension, one_reduction,
                             zero_extension, zero_reduction)

TRI = ColouredGraph(3, [(1, 2), (2, 3), (1, 3)])


def test_zero_extension_of_triangle_d1():
    h = zero_extension(TRI, 1, [1])
    assert (h.n, len(h.edges)) == (4, 4)
    with pytest.raises(DegreeRuleError):
        zero_extension(TRI, 1, [1, 2])


def test_colour_isolated_zero_extension_d2(fig1a):
    h = zero_extension(fig1a, 2, [1, 2, 3], "c1")
    assert (h.n, len(h.edges)) == (8, 14)
    assert h.is_colour_isolated(8)
    with pytest.raises(DegreeRuleError):
        zero_extension(fig1a, 2, [1, 2], "c1")


def test_one_reduction_colour_isolated_d1():
    # g1-tight, vertex 1 is colour-isolated of degree 3
    g = ColouredGraph(4, [(1, 2), (1, 3), (1, 4), (2, 3)], {1: "c"})
    assert is_tight(g, 1)
    h = one_reduction(g, 1, 1, (2, 4))
    assert h.n == 3 and len(h.edges) == len(g.edges) - 2
    assert h.has_edge(1, 3) and h.has_edge(1, 2)


def test_reduction_errors():
    g = ColouredGraph(4, [(1, 2), (1, 3), (1, 4), (2, 3)], {1: "c"})
    with pytest.raises(ColourIsolationError):
        one_reduction(g, 1, 1, (2, 4), isolated=False)
    with pytest.raises(ExistingEdgeError):
        one_reduction(g, 1, 1, (2, 3))
    with pytest.raises(DegreeRuleError):
        zero_reduction(g, 1, 1)
    with pytest.raises(DegreeRuleError):
        one_reduction(g, 1, 1, (2, 2))


def test_round_trips():
    rng = np.random.default_rng(4)
    for d in (1, 2):
        for _ in range(20):
            g = random_isostatic(rng, d, int(rng.integers(d + 2, 7)))
            for mv in legal_extensions(g, d)[:15]:
                h = apply_extension(g, d, mv)
                v = h.n
                if mv["kind"] == "zero":
                    assert zero_reduction(h, d, v) == g
                else:
                    i, j = mv["edge"]
                    assert one_reduction(h, d, v, (i, j)) == g


def test_extension_at_position_shifts_ids():
    h = zero_extension(TRI, 1, [3], at=1)
    assert h.n == 4 and h.has_edge(1, 4) and h.has_edge(2, 3)
    assert zero_reduction(h, 1, 1) == TRI


def test_find_admissible_d1():
    rng = np.random.default_rng(7)
    hits = 0
    for _ in range(40):
        g = random_isostatic(rng, 1, 6)
        for v in g.vertices:
            if g.is_colour_isolated(v) and g.degree(v) == 3:
                assert find_admissible_one_reduction(g, 1, v) is not None
                hits += 1
    assert hits > 5


def test_find_admissible_d2():
    rng = np.random.default_rng(8)
    hits = 0
    for _ in range(30):
        g = random_isostatic(rng, 2, 6, uncoloured=True)
        for v in g.vertices:
            if g.degree(v) == 3:
                assert find_admissible_one_reduction(g, 2, v) is not None
                hits += 1
    assert hits > 5


def test_find_admissible_blocked_by_simplicity():
    # d=1: vertex 3 has degree 2 and its neighbours are adjacent; the 1-reduction rule
    # needs degree d+1 = 2 for a non-isolated vertex
    g = ColouredGraph(3, [(1, 2), (1, 3), (2, 3)], {1: "a", 3: "a"})
    assert is_tight(g, 1)
    assert find_admissible_one_reduction(g, 1, 3) is None


def test_find_admissible_needs_tight_host():
    g = ColouredGraph(4, [(1, 2), (1, 3), (2, 4)], {1: "a", 2: "a"})
    with pytest.raises(PreconditionError):
        find_admissible_one_reduction(g, 1, 1)
