"""Coloured graphs and the JSON interchange format.

A coloured graph is a simple graph on the vertices ``1..n`` together with a
partial colouring.  Uncoloured vertices are simply absent from the colouring
map; colours themselves are opaque hashable ids.
"""
from __future__ import annotations

import json
from collections.abc import Hashable, Iterable, Mapping

Edge = tuple[int, int]


class GraphFormatError(ValueError):
    """Base class for malformed graph input."""


class SchemaError(GraphFormatError):
    pass


class LoopEdgeError(GraphFormatError):
    pass


class DuplicateEdgeError(GraphFormatError):
    pass


class UnknownVertexError(GraphFormatError):
    pass


def normalize_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


class ColouredGraph:
    """Simple graph on ``1..n`` with a partial vertex colouring.

    Parameters
    ----------
    n : int
        Number of vertices; vertex ids are ``1..n``.
    edges : iterable of pairs
        Unordered vertex pairs.  Loops and duplicates are rejected.
    colouring : mapping, optional
        ``vertex -> colour``.  Vertices missing from the mapping are
        uncoloured.
    """

    __slots__ = ("n", "edges", "colouring", "_adj", "_colours", "_hash")

    def __init__(self, n: int, edges: Iterable = (), colouring: Mapping | None = None):
        if n < 0:
            raise SchemaError(f"vertex count must be nonnegative, got {n}")
        seen = set()
        for e in edges:
            u, v = e
            for w in (u, v):
                if not isinstance(w, int) or not 1 <= w <= n:
                    raise UnknownVertexError(f"edge {list(e)} references unknown vertex {w}")
            if u == v:
                raise LoopEdgeError(f"loop edge at vertex {u}")
            key = normalize_edge(u, v)
            if key in seen:
                raise DuplicateEdgeError(f"duplicate edge {list(key)}")
            seen.add(key)
        self.n = n
        self.edges: tuple[Edge, ...] = tuple(sorted(seen))
        col = {}
        for v, c in (colouring or {}).items():
            if not isinstance(v, int) or not 1 <= v <= n:
                raise UnknownVertexError(f"colouring references unknown vertex {v}")
            if c is None:
                continue
            if not isinstance(c, Hashable):
                raise SchemaError(f"colour of vertex {v} is not hashable")
            col[v] = c
        self.colouring: dict[int, Hashable] = dict(sorted(col.items()))
        adj: list[set[int]] = [set() for _ in range(n + 1)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        self._adj = adj
        order: dict[Hashable, None] = {}
        for v in sorted(self.colouring):
            order.setdefault(self.colouring[v], None)
        self._colours = tuple(order)
        self._hash = None

    # -- basic structure -------------------------------------------------
    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    @property
    def colours(self) -> tuple:
        """Colours in use, ordered by first appearance along ``1..n``."""
        return self._colours

    @property
    def k(self) -> int:
        return len(self._colours)

    def colour(self, v: int):
        return self.colouring.get(v)

    def colour_class(self, c) -> list[int]:
        return [v for v, cv in self.colouring.items() if cv == c]

    def is_colour_isolated(self, v: int) -> bool:
        c = self.colouring.get(v)
        if c is None:
            return False
        return sum(1 for cv in self.colouring.values() if cv == c) == 1

    def neighbours(self, v: int) -> frozenset[int]:
        return frozenset(self._adj[v])

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adj[u]

    # -- derived graphs ----------------------------------------------------
    def remove_vertex(self, v: int) -> "ColouredGraph":
        """Delete ``v`` and shift higher ids down by one."""
        def f(w):
            return w if w < v else w - 1
        edges = [(f(a), f(b)) for a, b in self.edges if v not in (a, b)]
        col = {f(w): c for w, c in self.colouring.items() if w != v}
        return ColouredGraph(self.n - 1, edges, col)

    def insert_vertex(self, at: int | None = None, colour=None) -> "ColouredGraph":
        """Insert an isolated vertex with id ``at`` (default ``n+1``)."""
        at = self.n + 1 if at is None else at
        if not 1 <= at <= self.n + 1:
            raise UnknownVertexError(f"cannot insert vertex at position {at}")

        def f(w):
            return w if w < at else w + 1
        edges = [(f(a), f(b)) for a, b in self.edges]
        col = {f(w): c for w, c in self.colouring.items()}
        if colour is not None:
            col[at] = colour
        return ColouredGraph(self.n + 1, edges, col)

    def with_edges(self, add=(), remove=()) -> "ColouredGraph":
        rm = {normalize_edge(*e) for e in remove}
        missing = rm.difference(self.edges)
        if missing:
            raise UnknownVertexError(f"edges {sorted(missing)} not in graph")
        edges = [e for e in self.edges if e not in rm]
        edges.extend(add)
        return ColouredGraph(self.n, edges, self.colouring)

    def with_colouring(self, colouring: Mapping) -> "ColouredGraph":
        return ColouredGraph(self.n, self.edges, colouring)

    def uncolour(self, c) -> "ColouredGraph":
        return self.with_colouring({v: cv for v, cv in self.colouring.items() if cv != c})

    def relabel(self, perm: Mapping[int, int]) -> "ColouredGraph":
        """Apply a vertex permutation ``old -> new``."""
        edges = [(perm[u], perm[v]) for u, v in self.edges]
        col = {perm[v]: c for v, c in self.colouring.items()}
        return ColouredGraph(self.n, edges, col)

    # -- dunder ------------------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, ColouredGraph):
            return NotImplemented
        return (self.n, self.edges, self.colouring) == (other.n, other.edges, other.colouring)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n, self.edges, tuple(self.colouring.items())))
        return self._hash

    def __repr__(self):
        return f"ColouredGraph(n={self.n}, edges={list(self.edges)}, colouring={self.colouring})"


# ---------------------------------------------------------------------------
# edge-subset statistics

def edge_subset(g: ColouredGraph, F: Iterable) -> frozenset[Edge]:
    out = frozenset(normalize_edge(*e) for e in F)
    bad = out.difference(g.edges)
    if bad:
        raise UnknownVertexError(f"edges {sorted(bad)} are not edges of the host graph")
    return out


def vertex_span(F: Iterable) -> set[int]:
    """Endpoints of the edges in ``F``."""
    out: set[int] = set()
    for u, v in F:
        out.add(u)
        out.add(v)
    return out


def colour_count(g: ColouredGraph, F: Iterable) -> int:
    """Number of distinct colours on the vertices spanned by ``F``."""
    return len({g.colouring[v] for v in vertex_span(F) if v in g.colouring})


def colours_of(g: ColouredGraph, vertices: Iterable[int]) -> set:
    return {g.colouring[v] for v in vertices if v in g.colouring}


def _components(vertices: Iterable[int], F: Iterable) -> int:
    parent = {v: v for v in vertices}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    count = len(parent)
    for u, v in F:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
            count -= 1
    return count


def component_count(g: ColouredGraph, F: Iterable) -> int:
    """Components of ``(V, F)`` on the full vertex set (isolated vertices count)."""
    return _components(g.vertices, F)


def induced_component_count(F: Iterable) -> int:
    """Components of ``(V(F), F)``, ignoring vertices not touched by ``F``."""
    F = list(F)
    return _components(vertex_span(F), F)


# ---------------------------------------------------------------------------
# JSON

def graph_from_dict(data) -> ColouredGraph:
    if not isinstance(data, dict):
        raise SchemaError("graph document must be a JSON object")
    if "vertices" not in data or "edges" not in data:
        raise SchemaError("graph document needs 'vertices' and 'edges'")
    verts = data["vertices"]
    if not isinstance(verts, list):
        raise SchemaError("'vertices' must be a list")
    ids = []
    colouring = {}
    for item in verts:
        if not isinstance(item, dict) or "id" not in item:
            raise SchemaError(f"vertex entry {item!r} needs an 'id'")
        vid = item["id"]
        if not isinstance(vid, int) or isinstance(vid, bool):
            raise SchemaError(f"vertex id {vid!r} is not an integer")
        extra = set(item) - {"id", "colour"}
        if extra:
            raise SchemaError(f"vertex {vid}: unknown keys {sorted(extra)}")
        ids.append(vid)
        if item.get("colour") is not None:
            c = item["colour"]
            if not isinstance(c, (str, int)) or isinstance(c, bool):
                raise SchemaError(f"vertex {vid}: colour must be a string or integer")
            colouring[vid] = c
    n = len(ids)
    if len(set(ids)) != n:
        raise SchemaError("duplicate vertex ids")
    if sorted(ids) != list(range(1, n + 1)):
        raise SchemaError("vertex ids must be exactly 1..n")
    edges = data["edges"]
    if not isinstance(edges, list):
        raise SchemaError("'edges' must be a list")
    pairs = []
    for e in edges:
        if not isinstance(e, list) or len(e) != 2:
            raise SchemaError(f"edge {e!r} must be a two-element list")
        if not all(isinstance(w, int) and not isinstance(w, bool) for w in e):
            raise SchemaError(f"edge {e!r} must contain integer vertex ids")
        pairs.append((e[0], e[1]))
    return ColouredGraph(n, pairs, colouring)


def graph_to_dict(g: ColouredGraph) -> dict:
    verts = []
    for v in g.vertices:
        item = {"id": v}
        if v in g.colouring:
            item["colour"] = g.colouring[v]
        verts.append(item)
    return {"vertices": verts, "edges": [list(e) for e in g.edges]}


def parse_graph(text: str) -> ColouredGraph:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc}") from exc
    if isinstance(data, dict):
        data = {k: v for k, v in data.items() if k not in ("comment", "name")}
    return graph_from_dict(data)


def serialize_graph(g: ColouredGraph) -> str:
    return json.dumps(graph_to_dict(g))
