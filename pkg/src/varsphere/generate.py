"""Instance generators: small connected graphs, colourings, random graphs and isostatic seeds."""
from __future__ import annotations

from itertools import combinations
from typing import Iterator

import networkx as nx
import numpy as np
from networkx.algorithms.isomorphism import GraphMatcher

from . import moves
from .graphs import ColouredGraph


def connected_graphs(n_max: int, n_min: int = 1) -> Iterator[ColouredGraph]:
    """Connected simple graphs on ``n_min..n_max`` vertices, one per isomorphism class."""
    if n_max > 7:
        raise ValueError("the graph atlas stops at 7 vertices")
    for G in nx.graph_atlas_g():
        n = G.number_of_nodes()
        if n < n_min or n > n_max or n == 0 or not nx.is_connected(G):
            continue
        yield ColouredGraph(n, [(u + 1, v + 1) for u, v in G.edges()])


def automorphisms(g: ColouredGraph) -> list[tuple[int, ...]]:
    """Vertex automorphisms as tuples ``sigma`` with ``sigma[v-1]`` the image of ``v``."""
    G = nx.Graph()
    G.add_nodes_from(g.vertices)
    G.add_edges_from(g.edges)
    out = []
    for m in GraphMatcher(G, G).isomorphisms_iter():
        out.append(tuple(m[v] for v in g.vertices))
    return out


def restricted_growth(n: int, max_colours: int | None = None) -> Iterator[tuple[int, ...]]:
    """Partial colourings of ``1..n`` up to renaming colours.

    Entry 0 means uncoloured; nonzero entries appear in first-use order, so
    each orbit under colour permutation is produced exactly once.
    """
    cap = n if max_colours is None else max_colours

    def rec(prefix, used):
        if len(prefix) == n:
            yield tuple(prefix)
            return
        for c in range(0, min(used + 1, cap) + 1):
            yield from rec(prefix + [c], max(used, c))

    yield from rec([], 0)


def canonical_colouring(word: tuple[int, ...], perm: tuple[int, ...] | None = None) -> tuple[int, ...]:
    """Relabel ``word`` (after moving vertex v to ``perm[v-1]``) into first-use order."""
    n = len(word)
    moved = list(word)
    if perm is not None:
        moved = [0] * n
        for v in range(n):
            moved[perm[v] - 1] = word[v]
    names: dict[int, int] = {}
    out = []
    for c in moved:
        if c == 0:
            out.append(0)
        else:
            names.setdefault(c, len(names) + 1)
            out.append(names[c])
    return tuple(out)


def colouring_dict(word: tuple[int, ...]) -> dict[int, str]:
    return {v: f"c{c}" for v, c in enumerate(word, start=1) if c}


def colourings_up_to_symmetry(g: ColouredGraph, max_colours: int | None = None,
                              auts: list | None = None) -> list[tuple[int, ...]]:
    """Representatives of colourings modulo colour renaming and graph automorphisms."""
    auts = automorphisms(g) if auts is None else auts
    seen = set()
    out = []
    for w in restricted_growth(g.n, max_colours):
        key = min(canonical_colouring(w, s) for s in auts)
        if key not in seen:
            seen.add(key)
            out.append(w)
    return out


# ---------------------------------------------------------------------------
# random instances

def random_connected_graph(rng: np.random.Generator, n: int, m: int) -> ColouredGraph | None:
    """Uniform random spanning tree skeleton plus random extra edges; None if ``m`` is infeasible."""
    if m < n - 1 or m > n * (n - 1) // 2:
        return None
    order = [int(x) + 1 for x in rng.permutation(n)]
    edges = set()
    for t in range(1, n):
        u = order[t]
        w = order[int(rng.integers(0, t))]
        edges.add((min(u, w), max(u, w)))
    rest = [e for e in combinations(range(1, n + 1), 2) if e not in edges]
    extra = rng.choice(len(rest), size=m - len(edges), replace=False) if m > len(edges) else []
    edges.update(rest[int(i)] for i in extra)
    return ColouredGraph(n, sorted(edges))


def random_colouring(rng: np.random.Generator, n: int, max_colours: int) -> dict[int, str]:
    k = int(rng.integers(0, max_colours + 1))
    if k == 0:
        return {}
    out = {}
    for v in range(1, n + 1):
        c = int(rng.integers(0, k + 1))
        if c:
            out[v] = f"c{c}"
    return out


def random_isostatic(rng: np.random.Generator, d: int, n: int, max_colours: int = 3,
                     uncoloured: bool = False, max_tries: int = 200) -> ColouredGraph:
    """Grow a graph by random legal 0- and 1-extensions from an edge (d=1) or triangle (d=2).

    With ``uncoloured`` every added vertex is uncoloured; otherwise 1-extensions
    add colour-isolated vertices only.
    """
    if d == 1:
        g = ColouredGraph(2, [(1, 2)])
    elif d == 2:
        g = ColouredGraph(3, [(1, 2), (1, 3), (2, 3)])
    else:
        raise ValueError("d must be 1 or 2")
    tries = 0
    while g.n < n:
        tries += 1
        if tries > max_tries:
            raise RuntimeError("could not grow the seed")
        h = random_extension(rng, g, d, max_colours, uncoloured)
        if h is not None:
            g = h
    return g


def _colour_choices(g: ColouredGraph, max_colours: int, uncoloured: bool):
    if uncoloured:
        return [None]
    out = [None] + list(g.colours)
    if g.k < max_colours:
        i = 1
        while f"c{i}" in g.colours:
            i += 1
        out.append(f"c{i}")
    return out


def random_extension(rng: np.random.Generator, g: ColouredGraph, d: int, max_colours: int = 3,
                     uncoloured: bool = False) -> ColouredGraph | None:
    """One random 0- or 1-extension within the isostaticity-preserving families, or None."""
    moves_ = legal_extensions(g, d, max_colours, uncoloured)
    if not moves_:
        return None
    return apply_extension(g, d, moves_[int(rng.integers(0, len(moves_)))])


def legal_extensions(g: ColouredGraph, d: int, max_colours: int = 3, uncoloured: bool = False) -> list[dict]:
    """Every 0-extension passing the degree rule, and every 1-extension whose new vertex
    is colour-isolated or is uncoloured with uncoloured neighbours."""
    out = []
    for c in _colour_choices(g, max_colours, uncoloured):
        h = g.insert_vertex(g.n + 1, c)
        need = moves.zero_reduction_degree(h, d, g.n + 1)
        for att in combinations(g.vertices, need):
            out.append({"kind": "zero", "attach": list(att), "colour": c})
        isolated = c is not None and c not in g.colours
        if not isolated and c is not None:
            continue
        need = moves.one_reduction_degree(h, d, g.n + 1)
        for i, j in g.edges:
            others = [w for w in g.vertices if w not in (i, j)]
            for extra in combinations(others, need - 2):
                attach = [i, j, *extra]
                if c is None and any(g.colour(w) is not None for w in attach):
                    continue
                out.append({"kind": "one", "edge": [i, j], "attach": attach, "colour": c})
    return out


def apply_extension(g: ColouredGraph, d: int, move: dict) -> ColouredGraph:
    if move["kind"] == "zero":
        return moves.zero_extension(g, d, move["attach"], move.get("colour"))
    return moves.one_extension(g, d, move["edge"], move["attach"], move.get("colour"))


def one_dof_instances(rng: np.random.Generator, count: int, d: int = 1, n_range=(4, 8),
                      max_colours: int = 3, max_graphs: int = 100000):
    """Random frameworks ``(f, v)`` meeting the motion-filter preconditions.

    Graphs are drawn with at most ``2n - 1`` edges so that one degree of
    freedom is common; every eligible vertex of a qualifying graph is yielded.
    """
    from .errors import PreconditionError
    from .rigidity import motion_filter_check, sample_framework

    found = 0
    for _ in range(max_graphs):
        n = int(rng.integers(*n_range))
        g = random_connected_graph(rng, n, int(rng.integers(n - 1, min(2 * n, n * (n - 1) // 2 + 1))))
        g = g.with_colouring(random_colouring(rng, n, max_colours))
        f = sample_framework(g, d, rng)
        for v in g.vertices:
            try:
                motion_filter_check(f, v)
            except PreconditionError:
                continue
            yield f, v
            found += 1
            if found >= count:
                return
