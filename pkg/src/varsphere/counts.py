"""Count functions, sparsity oracles and matroid ranks for coloured graphs.

Every oracle here enumerates *all* edge subsets.  The enumeration is done
once per graph on a table indexed by subset bitmasks (``SubsetTable``);
colour-dependent quantities are then cheap vectorised passes over that
table, so one table can serve many colourings of the same graph.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from math import comb
from typing import Iterable, Literal

import numpy as np

from .errors import CapacityError, InvariantViolation, PreconditionError, ProvisoError
from .graphs import ColouredGraph, Edge, colour_count, component_count, edge_subset, vertex_span

DEFAULT_EDGE_CAP = 22

Family = Literal["g", "f"]


# ---------------------------------------------------------------------------
# ranks of single edge sets

def rank_r1(g: ColouredGraph, F: Iterable) -> int:
    """Graphic matroid rank ``n - omega(F)``."""
    F = edge_subset(g, F)
    return g.n - component_count(g, F)


class PebbleGame:
    """(k, l)-pebble game on ``n`` vertices (``0 <= l < 2k``).

    ``add_edge`` returns True when the edge is independent of the edges
    accepted so far in the (k, l)-sparsity matroid.
    """

    def __init__(self, n: int, k: int = 2, l: int = 3):
        if not 0 <= l < 2 * k:
            raise ValueError("pebble game needs 0 <= l < 2k")
        self.k, self.l = k, l
        self.pebbles = [k] * (n + 1)
        self.out: list[list[int]] = [[] for _ in range(n + 1)]
        self.accepted: list[Edge] = []

    def _fetch(self, root: int, block: int) -> bool:
        # move one pebble to root along a directed path avoiding block
        parent = {root: None}
        stack = [root]
        while stack:
            x = stack.pop()
            for y in self.out[x]:
                if y in parent or y == block:
                    continue
                parent[y] = x
                if self.pebbles[y]:
                    self.pebbles[y] -= 1
                    node = y
                    while parent[node] is not None:
                        p = parent[node]
                        self.out[p].remove(node)
                        self.out[node].append(p)
                        node = p
                    self.pebbles[root] += 1
                    return True
                stack.append(y)
        return False

    def add_edge(self, u: int, v: int) -> bool:
        need = self.l + 1
        while self.pebbles[u] + self.pebbles[v] < need:
            if self.pebbles[u] < self.k and self._fetch(u, v):
                continue
            if self.pebbles[v] < self.k and self._fetch(v, u):
                continue
            return False
        if self.pebbles[u]:
            self.pebbles[u] -= 1
            self.out[u].append(v)
        else:
            self.pebbles[v] -= 1
            self.out[v].append(u)
        self.accepted.append((u, v))
        return True


def rank_r2(g: ColouredGraph, F: Iterable) -> int:
    """Generic planar rigidity matroid rank via the (2,3)-pebble game."""
    F = sorted(edge_subset(g, F))
    game = PebbleGame(g.n, 2, 3)
    return sum(game.add_edge(u, v) for u, v in F)


def rank_rd(g: ColouredGraph, F: Iterable, d: int) -> int:
    if d == 1:
        return rank_r1(g, F)
    if d == 2:
        return rank_r2(g, F)
    raise PreconditionError(f"r_d is only implemented for d in (1, 2), got {d}")


def h_d(g: ColouredGraph, F: Iterable, d: int) -> int:
    F = edge_subset(g, F)
    return min(colour_count(g, F), len(vertex_span(F)) - (d + 1))


def g_d(g: ColouredGraph, F: Iterable, d: int) -> int:
    F = edge_subset(g, F)
    if len(vertex_span(F)) < d + 1:
        raise ProvisoError(
            f"g_{d} needs |V(F)| >= {d + 1}; got {len(vertex_span(F))} spanned vertices")
    return rank_rd(g, F, d) + h_d(g, F, d)


def f_d(g: ColouredGraph, F: Iterable, d: int) -> int:
    F = edge_subset(g, F)
    return rank_rd(g, F, d) + colour_count(g, F)


def complete_rank(n: int, d: int) -> int:
    """Rank of the complete graph ``K_n`` in the generic d-dimensional rigidity matroid."""
    if n <= d + 1:
        return comb(n, 2)
    return d * n - comb(d + 1, 2)


def global_count(g: ColouredGraph, d: int, family: Family) -> int:
    """Size of a tight edge set: the family evaluated on the edges of ``K_n``."""
    if family == "g":
        return complete_rank(g.n, d) + min(g.k, g.n - (d + 1))
    return complete_rank(g.n, d) + g.k


# ---------------------------------------------------------------------------
# subset tables

class SubsetTable:
    """All ``2**m`` subsets of a fixed edge list, indexed by bitmask.

    Bit ``i`` of a mask selects ``edges[i]``.  Colour-independent data
    (vertex spans, sizes, matroid ranks) is computed once and cached.
    """

    def __init__(self, n: int, edges: Iterable[Edge], edge_cap: int = DEFAULT_EDGE_CAP):
        self.n = n
        self.edges = tuple(edges)
        m = len(self.edges)
        if m > edge_cap:
            raise CapacityError(
                f"{m} edges exceed the brute-force cap of {edge_cap}; raise it with --edge-cap")
        if n > 62:
            raise CapacityError("subset tables support at most 62 vertices")
        self.m = m
        N = 1 << m
        vmask = np.zeros(N, dtype=np.int64)
        for i, (u, v) in enumerate(self.edges):
            vmask.reshape(-1, 2, 1 << i)[:, 1, :] |= (1 << (u - 1)) | (1 << (v - 1))
        self.vmask = vmask
        self.size = np.bitwise_count(np.arange(N, dtype=np.int64)).astype(np.int64)
        self.nv = np.bitwise_count(vmask).astype(np.int64)
        self._ranks: dict[tuple[int, int], np.ndarray] = {}

    @classmethod
    def for_graph(cls, g: ColouredGraph, edge_cap: int = DEFAULT_EDGE_CAP) -> "SubsetTable":
        return cls(g.n, g.edges, edge_cap)

    def matches(self, g: ColouredGraph) -> bool:
        return self.n == g.n and self.edges == g.edges

    def colour_counts(self, g: ColouredGraph) -> np.ndarray:
        k = np.zeros_like(self.vmask)
        for c in g.colours:
            cm = 0
            for v in g.colour_class(c):
                cm |= 1 << (v - 1)
            k += (self.vmask & cm) != 0
        return k

    def colour_mask(self, g: ColouredGraph, c) -> np.ndarray:
        cm = 0
        for v in g.colour_class(c):
            cm |= 1 << (v - 1)
        return (self.vmask & cm) != 0

    def count_rank(self, a: int, b: int) -> np.ndarray:
        """Rank of every subset in the (a, b)-count matroid ``|F| <= a|V(F)| - b``."""
        key = (a, b)
        if key not in self._ranks:
            ok = self.size <= a * self.nv - b
            ok[0] = True
            self._ranks[key] = induced_rank(ok, self.size, self.m)
        return self._ranks[key]

    def r(self, d: int) -> np.ndarray:
        if d == 1:
            return self.count_rank(1, 1)
        if d == 2:
            return self.count_rank(2, 3)
        raise PreconditionError(f"r_d is only implemented for d in (1, 2), got {d}")

    def mask_edges(self, mask: int) -> tuple[Edge, ...]:
        return tuple(e for i, e in enumerate(self.edges) if mask >> i & 1)

    def mask_of(self, F: Iterable[Edge]) -> int:
        idx = {e: i for i, e in enumerate(self.edges)}
        return sum(1 << idx[e] for e in F)


def zeta_and(a: np.ndarray, m: int) -> np.ndarray:
    """``out[F] = all(a[G] for G subset of F)``."""
    a = a.copy()
    for i in range(m):
        view = a.reshape(-1, 2, 1 << i)
        view[:, 1, :] &= view[:, 0, :]
    return a


def zeta_max(a: np.ndarray, m: int) -> np.ndarray:
    """``out[F] = max(a[G] for G subset of F)``."""
    a = a.copy()
    for i in range(m):
        view = a.reshape(-1, 2, 1 << i)
        np.maximum(view[:, 1, :], view[:, 0, :], out=view[:, 1, :])
    return a


def induced_rank(ok: np.ndarray, size: np.ndarray, m: int) -> np.ndarray:
    """Matroid rank of every subset, given the per-subset count test ``ok``.

    A set is independent when every subset passes ``ok``; its rank is the
    size of a largest independent subset.
    """
    indep = zeta_and(ok, m)
    return zeta_max(np.where(indep, size, 0), m)


def family_bound(table: SubsetTable, g: ColouredGraph, d: int, family: Family):
    """Per-subset bound and a mask of subsets where it is defined."""
    r = table.r(d)
    k = table.colour_counts(g)
    nonempty = table.size > 0
    if family == "f":
        return r + k, nonempty
    if family == "g":
        defined = nonempty & (table.nv >= d + 1)
        return r + np.minimum(k, table.nv - (d + 1)), defined
    raise ValueError(f"unknown count family {family!r}")


# ---------------------------------------------------------------------------
# sparsity

@dataclass
class SparsityVerdict:
    status: Literal["sparse", "tight", "dependent"]
    d: int
    family: Family
    edge_count: int
    global_count: int
    witness: tuple[Edge, ...] | None = None
    witness_bound: int | None = None
    alternative_count: int | None = None
    notes: list[str] = field(default_factory=list)

    @property
    def sparse(self) -> bool:
        return self.status != "dependent"

    @property
    def tight(self) -> bool:
        return self.status == "tight"

    def to_dict(self) -> dict:
        out = {
            "status": self.status,
            "family": f"{self.family}{self.d}",
            "edge_count": self.edge_count,
            "global_count": self.global_count,
        }
        if self.witness is not None:
            out["witness"] = [list(e) for e in self.witness]
            out["witness_size"] = len(self.witness)
            out["witness_bound"] = self.witness_bound
        if self.alternative_count is not None:
            out["alternative_count"] = self.alternative_count
        if self.notes:
            out["notes"] = list(self.notes)
        return out


def _check_family(d: int, family: Family | None) -> Family:
    if family is None:
        family = "g" if d == 1 else "f"
    if (d, family) not in ((1, "g"), (2, "f")):
        raise PreconditionError(f"sparsity oracle supports g1 and f2, not {family}{d}")
    return family


def _lex_first(table: SubsetTable, masks: np.ndarray) -> int:
    def key(mask):
        return [i for i in range(table.m) if mask >> i & 1]
    return min((int(x) for x in masks), key=key)


def sparsity_check(g: ColouredGraph, d: int, family: Family | None = None, *,
                   edge_cap: int = DEFAULT_EDGE_CAP, table: SubsetTable | None = None,
                   induced_only: bool = False) -> SparsityVerdict:
    """Decide g1- or f2-sparsity and tightness by enumerating edge subsets.

    A dependent verdict carries a violating subset of minimum size (ties
    broken lexicographically by edge index).  ``induced_only`` restricts the
    search to vertex-induced edge sets, which decides sparsity correctly but
    may return a larger witness.
    """
    family = _check_family(d, family)
    if table is None or not table.matches(g):
        table = SubsetTable.for_graph(g, edge_cap)
    bound, defined = family_bound(table, g, d, family)
    candidates = defined
    if induced_only:
        induced = np.zeros_like(defined)
        for S in range(1, 1 << g.n):
            mask = sum(1 << i for i, (u, v) in enumerate(table.edges)
                       if S >> (u - 1) & 1 and S >> (v - 1) & 1)
            induced[mask] = True
        candidates = defined & induced
    viol = candidates & (table.size > bound)
    target = global_count(g, d, family)
    notes = []
    alt = None
    if d == 2:
        alt = complete_rank(g.n, 2) + min(g.k, g.n - 3)
        if g.n < g.k + 3:
            notes.append(
                f"|V| = {g.n} < k + 3 = {g.k + 3}: the f2 count {target} and the rigidity count "
                f"{alt} differ; the 2-dimensional characterisation does not cover this regime")
    if d == 1 and g.n < 2:
        notes.append("fewer than two vertices: g1 global count undefined")
    if viol.any():
        idx = np.flatnonzero(viol)
        smin = table.size[idx].min()
        mask = _lex_first(table, idx[table.size[idx] == smin])
        return SparsityVerdict("dependent", d, family, table.m, target,
                               witness=table.mask_edges(mask),
                               witness_bound=int(bound[mask]),
                               alternative_count=alt, notes=notes)
    tight = table.m == target and not (d == 1 and g.n < 2)
    return SparsityVerdict("tight" if tight else "sparse", d, family, table.m, target,
                           alternative_count=alt, notes=notes)


def is_tight(g: ColouredGraph, d: int, *, table: SubsetTable | None = None,
             edge_cap: int = DEFAULT_EDGE_CAP) -> bool:
    """Tightness with the global count tested before enumeration."""
    family = _check_family(d, None)
    if len(g.edges) != global_count(g, d, family):
        return False
    return sparsity_check(g, d, family, edge_cap=edge_cap, table=table).tight


def is_sparse(g: ColouredGraph, d: int, *, table: SubsetTable | None = None,
              edge_cap: int = DEFAULT_EDGE_CAP) -> bool:
    return sparsity_check(g, d, edge_cap=edge_cap, table=table).sparse


# ---------------------------------------------------------------------------
# tight sets and ranks

def c_tight_masks(g: ColouredGraph, d: int, c, table: SubsetTable) -> np.ndarray:
    r = table.r(d)
    k = table.colour_counts(g)
    hit = table.colour_mask(g, c)
    return np.flatnonzero((table.size > 0) & hit & (table.size == r + k))


def minimal_c_tight_sets(g: ColouredGraph, d: int, c, *, table: SubsetTable | None = None,
                         edge_cap: int = DEFAULT_EDGE_CAP) -> list[frozenset[Edge]]:
    """All inclusionwise-minimal (c, d)-tight edge sets (no sparsity assumption)."""
    if table is None or not table.matches(g):
        table = SubsetTable.for_graph(g, edge_cap)
    if c not in g.colours:
        return []
    masks = c_tight_masks(g, d, c, table)
    masks = masks[np.argsort(table.size[masks], kind="stable")]
    minimal: list[int] = []
    for t in (int(x) for x in masks):
        if not any(mm & t == mm for mm in minimal):
            minimal.append(t)
    return [frozenset(table.mask_edges(mm)) for mm in minimal]


def minimal_c_tight_set(g: ColouredGraph, d: int, c, *, table: SubsetTable | None = None,
                        edge_cap: int = DEFAULT_EDGE_CAP) -> frozenset[Edge] | None:
    """The unique minimal (c, d)-tight set of a sparse host, or None.

    Raises ``PreconditionError`` if the host is not g1-sparse (d=1) or
    f2-sparse (d=2), and ``InvariantViolation`` if two minimal sets exist.
    """
    if table is None or not table.matches(g):
        table = SubsetTable.for_graph(g, edge_cap)
    verdict = sparsity_check(g, d, table=table)
    if not verdict.sparse:
        raise PreconditionError(
            f"host is not {verdict.family}{d}-sparse (witness {list(verdict.witness)}); "
            "uniqueness of minimal tight sets needs a sparse host")
    found = minimal_c_tight_sets(g, d, c, table=table)
    if len(found) > 1:
        raise InvariantViolation(
            f"colour {c!r}: {len(found)} distinct minimal tight sets: "
            + "; ".join(str(sorted(s)) for s in found))
    return found[0] if found else None


def matroid_rank(g: ColouredGraph, d: int, *, table: SubsetTable | None = None,
                 edge_cap: int = DEFAULT_EDGE_CAP) -> int:
    """``min |E - F| + f_d(F)`` over all ``F`` contained in ``E``."""
    if d not in (1, 2):
        raise PreconditionError("matroid_rank supports d in (1, 2)")
    if table is None or not table.matches(g):
        table = SubsetTable.for_graph(g, edge_cap)
    values = (table.m - table.size) + table.r(d) + table.colour_counts(g)
    return int(values.min())


def induced_matroid_rank(g: ColouredGraph, d: int, family: Family | None = None, *,
                         table: SubsetTable | None = None,
                         edge_cap: int = DEFAULT_EDGE_CAP) -> int:
    """Rank of ``E`` in the matroid induced by the family, from its independent sets."""
    family = _check_family(d, family) if family is None else family
    if (d, family) == (2, "g"):
        raise PreconditionError("g2 is not positive on single edges and induces no matroid")
    if table is None or not table.matches(g):
        table = SubsetTable.for_graph(g, edge_cap)
    bound, defined = family_bound(table, g, d, family)
    ok = ~defined | (table.size <= bound)
    ok[0] = True
    return int(induced_rank(ok, table.size, table.m)[-1])
