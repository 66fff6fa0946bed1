"""1-thin covers and the cover form of the planar rank formulas.

A cover of ``G`` is a family of vertex sets (each of size at least two)
whose induced edge sets together contain every edge; it is 1-thin when any
two members share at most one vertex.  Members of size two cost one each,
so a cover is described by its members of size at least three ("pieces")
plus one pair per edge the pieces leave uncovered.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .errors import CapacityError, ScopeError
from .graphs import ColouredGraph, colours_of

DEFAULT_COVER_CAP = 8


@dataclass(frozen=True)
class CoverResult:
    value: int
    cover: tuple[frozenset[int], ...]
    restriction: frozenset[int]

    def to_dict(self):
        return {"value": self.value,
                "cover": [sorted(X) for X in self.cover],
                "X": sorted(self.restriction)}


def _pieces(g: ColouredGraph, prune: bool):
    """Candidate pieces: vertex sets of size >= 3 inducing at least one edge.

    With ``prune`` only sets inducing at least ``2|X| - 2`` edges are kept:
    any other piece can be replaced by the pairs of its own edges at no
    extra cost without breaking thinness.
    """
    out = []
    for size in range(3, g.n + 1):
        for X in combinations(g.vertices, size):
            S = set(X)
            ne = sum(1 for u, v in g.edges if u in S and v in S)
            if ne == 0 or (prune and ne < 2 * size - 2):
                continue
            out.append((frozenset(X), frozenset((u, v) for u, v in g.edges if u in S and v in S)))
    return out


def _families(pieces):
    """All families of pairwise 1-thin pieces (as index tuples)."""
    n = len(pieces)

    def rec(start, chosen):
        yield chosen
        for i in range(start, n):
            Xi = pieces[i][0]
            if all(len(Xi & pieces[j][0]) <= 1 for j in chosen):
                yield from rec(i + 1, chosen + (i,))

    yield from rec(0, ())


def cover_rank(g: ColouredGraph, d: int = 2, *, coloured: bool = True,
               cover_cap: int = DEFAULT_COVER_CAP, prune: bool = True) -> CoverResult:
    """Minimum of ``sum(2|X_i| - 3) (+ k(X))`` over (X-restricted) 1-thin covers.

    Uncoloured variant: the minimum over all 1-thin covers.  Coloured
    variant: additionally minimise over ``X``; pieces must lie inside ``X``
    and ``k(X)`` is added.  The optimal ``X`` is the union of the pieces.
    """
    if d != 2:
        raise ScopeError("cover formulas are planar (d = 2) only")
    if g.n > cover_cap:
        raise CapacityError(
            f"{g.n} vertices exceed the cover enumeration cap of {cover_cap}; raise --cover-cap")
    if coloured and g.k > 2:
        raise ScopeError(
            f"k = {g.k} > 2: the coloured cover formula is only valid for at most two colours "
            "(the 3-coloured f2-tight non-isostatic example shows it fails beyond)")
    pieces = _pieces(g, prune)
    edges = set(g.edges)
    best = None
    for fam in _families(pieces):
        covered = set()
        union: set[int] = set()
        cost = 0
        for i in fam:
            X, E = pieces[i]
            covered |= E
            union |= X
            cost += 2 * len(X) - 3
        rest = edges - covered
        value = cost + len(rest)
        if coloured:
            value += len(colours_of(g, union))
        if best is None or value < best[0]:
            cover = tuple(sorted((pieces[i][0] for i in fam), key=sorted)) + tuple(
                frozenset(e) for e in sorted(rest))
            best = (value, cover, frozenset(union))
    value, cover, X = best
    cover = _fold_pairs(g, list(cover), coloured)
    if coloured:
        X = frozenset().union(*(c for c in cover if len(c) >= 3))
    return CoverResult(value, cover, X if coloured else frozenset(g.vertices))


def _fold_pairs(g: ColouredGraph, cover: list, coloured: bool) -> tuple:
    """Merge pairs into larger members wherever the value does not change.

    A set ``Y`` whose induced edges are all covered by pairs and number
    exactly ``2|Y| - 3`` can replace those pairs at equal cost, provided it
    stays 1-thin and (coloured variant) brings no new colour.  Larger sets
    are tried first, so the reported cover has as few members as possible.
    """
    big = [c for c in cover if len(c) >= 3]
    pairs = {tuple(sorted(c)) for c in cover if len(c) == 2}
    cols = colours_of(g, set().union(*big)) if big else set()
    for size in range(g.n, 2, -1):
        for Y in combinations(g.vertices, size):
            S = set(Y)
            inside = [e for e in g.edges if e[0] in S and e[1] in S]
            if len(inside) != 2 * size - 3 or not all(e in pairs for e in inside):
                continue
            if any(len(S & c) > 1 for c in big):
                continue
            if any(len(S & set(p)) > 1 and p not in inside for p in pairs):
                continue
            if coloured and not colours_of(g, S) <= cols:
                continue
            big.append(frozenset(S))
            pairs -= set(inside)
    return tuple(sorted(big, key=sorted)) + tuple(frozenset(p) for p in sorted(pairs))


def is_thin_cover(g: ColouredGraph, cover, X=None) -> bool:
    """Check the cover, 1-thin and (optionally) X-restricted properties."""
    cover = [frozenset(c) for c in cover]
    for u, v in g.edges:
        if not any(u in c and v in c for c in cover):
            return False
    for a, b in combinations(cover, 2):
        if len(a & b) > 1:
            return False
    if X is not None:
        X = frozenset(X)
        if any(len(c) >= 3 and not c <= X for c in cover):
            return False
    return True
