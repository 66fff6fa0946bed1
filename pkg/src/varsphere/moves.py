"""0- and 1-reductions and their inverse extensions.

Degree rules (``d`` is the sphere dimension, ``k`` and ``n`` are counted in
the graph that *contains* the vertex being removed):

* 0-reduction: degree ``d+1`` when ``k >= n-(d+1)``; otherwise degree ``d``
  for an uncoloured or non-colour-isolated vertex and ``d+1`` for a
  colour-isolated one.
* 1-reduction: degree ``d+1`` for an uncoloured or non-colour-isolated
  vertex, ``d+2`` for a colour-isolated one; afterwards one new edge joins
  two former neighbours.
"""
from __future__ import annotations

from itertools import combinations
from typing import Sequence

from .counts import DEFAULT_EDGE_CAP, is_sparse, is_tight
from .errors import PreconditionError
from .graphs import ColouredGraph, UnknownVertexError, normalize_edge


class MoveError(ValueError):
    pass


class DegreeRuleError(MoveError):
    pass


class ColourIsolationError(MoveError):
    pass


class ExistingEdgeError(MoveError):
    pass


def zero_reduction_degree(g: ColouredGraph, d: int, v: int) -> int:
    if g.k >= g.n - (d + 1):
        return d + 1
    return d + 1 if g.is_colour_isolated(v) else d


def one_reduction_degree(g: ColouredGraph, d: int, v: int) -> int:
    return d + 2 if g.is_colour_isolated(v) else d + 1


def _check_vertex(g, v):
    if not 1 <= v <= g.n:
        raise UnknownVertexError(f"vertex {v} not in graph")


def _check_isolation(g, v, isolated):
    if isolated is not None and bool(isolated) != g.is_colour_isolated(v):
        actual = "colour-isolated" if g.is_colour_isolated(v) else "not colour-isolated"
        raise ColourIsolationError(f"vertex {v} was declared otherwise but is {actual}")


def zero_reduction(g: ColouredGraph, d: int, v: int, *, isolated: bool | None = None) -> ColouredGraph:
    _check_vertex(g, v)
    _check_isolation(g, v, isolated)
    need = zero_reduction_degree(g, d, v)
    if g.degree(v) != need:
        raise DegreeRuleError(
            f"0-reduction at {v} needs degree {need} (k={g.k}, n={g.n}, d={d}), found {g.degree(v)}")
    return g.remove_vertex(v)


def one_reduction(g: ColouredGraph, d: int, v: int, pair: Sequence[int], *,
                  isolated: bool | None = None) -> ColouredGraph:
    _check_vertex(g, v)
    _check_isolation(g, v, isolated)
    need = one_reduction_degree(g, d, v)
    if g.degree(v) != need:
        raise DegreeRuleError(
            f"1-reduction at {v} needs degree {need}, found {g.degree(v)}")
    i, j = pair
    nb = g.neighbours(v)
    if i == j or i not in nb or j not in nb:
        raise DegreeRuleError(f"{i}, {j} must be two distinct neighbours of {v}")
    if g.has_edge(i, j):
        raise ExistingEdgeError(f"edge {list(normalize_edge(i, j))} already present")
    h = g.with_edges(add=[(i, j)])
    return h.remove_vertex(v)


def _shift(w: int, at: int) -> int:
    return w if w < at else w + 1


def zero_extension(g: ColouredGraph, d: int, attach: Sequence[int], colour=None, *,
                   at: int | None = None, isolated: bool | None = None) -> ColouredGraph:
    """Add a vertex joined to ``attach``; the inverse of ``zero_reduction``.

    ``at`` fixes the id of the new vertex (default ``n+1``); existing ids at
    or above it move up by one.
    """
    at = g.n + 1 if at is None else at
    attach = list(attach)
    for w in attach:
        _check_vertex(g, w)
    if len(set(attach)) != len(attach):
        raise ExistingEdgeError("repeated attachment vertex")
    h = g.insert_vertex(at, colour)
    h = h.with_edges(add=[(at, _shift(w, at)) for w in attach])
    _check_isolation(h, at, isolated)
    need = zero_reduction_degree(h, d, at)
    if len(attach) != need:
        kind = "colour-isolated" if h.is_colour_isolated(at) else (
            "uncoloured" if h.colour(at) is None else "non-colour-isolated")
        raise DegreeRuleError(
            f"0-extension by a {kind} vertex needs degree {need} "
            f"(k'={h.k}, n'={h.n}, d={d}), got {len(attach)}")
    return h


def one_extension(g: ColouredGraph, d: int, edge: Sequence[int], attach: Sequence[int],
                  colour=None, *, at: int | None = None, isolated: bool | None = None) -> ColouredGraph:
    """Delete ``edge`` and add a vertex joined to ``attach`` (which contains its ends)."""
    i, j = edge
    if not g.has_edge(i, j):
        raise DegreeRuleError(f"edge {[i, j]} is not in the graph")
    attach = list(attach)
    if i not in attach or j not in attach:
        raise DegreeRuleError("the attachment set must contain both ends of the deleted edge")
    for w in attach:
        _check_vertex(g, w)
    if len(set(attach)) != len(attach):
        raise ExistingEdgeError("repeated attachment vertex")
    at = g.n + 1 if at is None else at
    h = g.with_edges(remove=[(i, j)]).insert_vertex(at, colour)
    h = h.with_edges(add=[(at, _shift(w, at)) for w in attach])
    _check_isolation(h, at, isolated)
    need = one_reduction_degree(h, d, at)
    if len(attach) != need:
        raise DegreeRuleError(f"1-extension needs degree {need}, got {len(attach)}")
    return h


def find_admissible_one_reduction(g: ColouredGraph, d: int, v: int, *,
                                  edge_cap: int = DEFAULT_EDGE_CAP) -> tuple[int, int] | None:
    """Lexicographically first neighbour pair whose 1-reduction stays sparse.

    Requires ``g`` to be g1-tight (d=1) or f2-tight (d=2) and ``v`` to meet
    the 1-reduction degree rule.  Pairs that are already adjacent are
    skipped, so ``None`` can also mean that simplicity blocks every pair.
    """
    need = one_reduction_degree(g, d, v)
    if g.degree(v) != need:
        raise DegreeRuleError(f"1-reduction at {v} needs degree {need}, found {g.degree(v)}")
    if not is_tight(g, d, edge_cap=edge_cap):
        raise PreconditionError(f"host must be {'g1' if d == 1 else 'f2'}-tight")
    for i, j in combinations(sorted(g.neighbours(v)), 2):
        if g.has_edge(i, j):
            continue
        h = one_reduction(g, d, v, (i, j))
        if is_sparse(h, d, edge_cap=edge_cap):
            return (i, j)
    return None
