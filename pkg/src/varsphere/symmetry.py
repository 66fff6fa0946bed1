"""Free group actions, quotient gain graphs and symmetric frameworks.

Groups are small and explicit: elements are ``0..N-1`` with ``0`` the
identity, and a multiplication table.  A representation attaches an
orthogonal matrix to each element.  Matrices are exact (``Fraction``) for
the presets whose entries are rational and ``float`` otherwise; every
verdict computed from a float representation is flagged as not certified.
"""
from __future__ import annotations

import json
import math
import re
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from . import exact
from .counts import DEFAULT_EDGE_CAP, SubsetTable, induced_rank
from .errors import CapacityError, PreconditionError, ScopeError
from .exact import ONE, ZERO, RationalMatrix, dot, fraction_str
from .graphs import ColouredGraph, SchemaError
from .rigidity import (Framework, RigidityBundle, Verdict, affinely_spans,
                       build_rigidity_matrix, trivial_motion_basis)


class ActionError(ValueError):
    pass


class LiftError(ValueError):
    pass


Matrix = list  # list of rows


def _mat_mul(A, B):
    return [[sum((A[i][t] * B[t][j] for t in range(len(B))), ZERO * 0) for j in range(len(B[0]))]
            for i in range(len(A))]


def _mat_vec(A, x):
    return tuple(dot(row, x) for row in A)


def _identity(n, exact_mode=True):
    one, zero = (ONE, ZERO) if exact_mode else (1.0, 0.0)
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def _rotation(q: int, a: int):
    """Rotation of the plane by ``2*pi*a/q``; exact when q divides 4."""
    a %= q
    if 4 % q == 0:
        quarter = (a * 4 // q) % 4
        c, s = [(1, 0), (0, 1), (-1, 0), (0, -1)][quarter]
        return [[Fraction(c), Fraction(-s)], [Fraction(s), Fraction(c)]]
    t = 2 * math.pi * a / q
    return [[math.cos(t), -math.sin(t)], [math.sin(t), math.cos(t)]]


# ---------------------------------------------------------------------------
# groups

@dataclass
class GroupRep:
    """A finite group with an orthogonal representation.

    ``kind`` is one of ``"rotation"`` (cyclic rotations of the plane),
    ``"reflection"``, ``"dihedral"`` or ``"axial"`` (cyclic rotations of
    3-space about the z-axis).
    """

    kind: str
    order: int
    table: list[list[int]]
    matrices: list[Matrix]
    generators: dict[str, int]
    spec: dict
    reflection_flags: list[bool] = field(default_factory=list)

    def __post_init__(self):
        N = self.order
        self.inverse = [next(b for b in range(N) if self.table[a][b] == 0) for a in range(N)]
        if not self.reflection_flags:
            self.reflection_flags = [False] * N

    @property
    def dim(self) -> int:
        return len(self.matrices[0])

    @property
    def is_exact(self) -> bool:
        return not any(isinstance(x, float) for M in self.matrices for row in M for x in row)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.inverse[a]

    def tau(self, a: int) -> Matrix:
        return self.matrices[a]

    def act(self, a: int, x: Sequence) -> tuple:
        return _mat_vec(self.matrices[a], x)

    def check(self, tol: float = 1e-12) -> None:
        """Verify the homomorphism property on the whole table and orthogonality."""
        N = self.order
        for a in range(N):
            for b in range(N):
                lhs = self.matrices[self.table[a][b]]
                rhs = _mat_mul(self.matrices[a], self.matrices[b])
                if not _mat_close(lhs, rhs, tol):
                    raise AssertionError(f"tau({a})tau({b}) != tau({a}*{b})")
            M = self.matrices[a]
            MtM = _mat_mul([list(r) for r in zip(*M)], M)
            if not _mat_close(MtM, _identity(self.dim), tol):
                raise AssertionError(f"tau({a}) is not orthogonal")

    # element names ----------------------------------------------------
    def parse_element(self, x) -> int:
        if isinstance(x, bool):
            raise SchemaError(f"bad group element {x!r}")
        if isinstance(x, int):
            if self.kind == "dihedral":
                return self._dihedral_index(x, 0)
            return x % self.order
        if not isinstance(x, str):
            raise SchemaError(f"bad group element {x!r}")
        word = x.replace(" ", "").replace("*", "")
        if word in ("", "e", "id", "1"):
            return 0
        out = 0
        pos = 0
        for m in re.finditer(r"([a-z])(?:\^(-?\d+))?", word):
            if m.start() != pos:
                raise SchemaError(f"cannot parse group word {x!r}")
            pos = m.end()
            name, power = m.group(1), int(m.group(2) or 1)
            if name not in self.generators:
                raise SchemaError(f"unknown generator {name!r} in {x!r}")
            g = self.generators[name]
            if power < 0:
                g, power = self.inv(g), -power
            for _ in range(power):
                out = self.mul(out, g)
        if pos != len(word):
            raise SchemaError(f"cannot parse group word {x!r}")
        return out

    def element_label(self, a: int):
        if self.kind == "dihedral":
            m = self.order // 2
            r, f = a % m, a // m
            word = ("" if r == 0 else "r" if r == 1 else f"r^{r}") + ("s" if f else "")
            return word or "e"
        return a

    def _dihedral_index(self, r: int, f: int) -> int:
        m = self.order // 2
        return (r % m) + m * f

    def subgroup_kind(self, S: Iterable[int]) -> str:
        """``trivial``, ``rotation``, ``reflection`` or ``dihedral`` (by abstract structure)."""
        S = set(S)
        if S == {0}:
            return "trivial"
        has_refl = any(self.reflection_flags[a] for a in S)
        if not has_refl:
            return "rotation"
        return "reflection" if len(S) == 2 else "dihedral"

    def to_spec(self) -> dict:
        return dict(self.spec)


def _mat_close(A, B, tol):
    for ra, rb in zip(A, B):
        for x, y in zip(ra, rb):
            if isinstance(x, float) or isinstance(y, float):
                if abs(float(x) - float(y)) > tol * 10:
                    return False
            elif x != y:
                return False
    return True


def cyclic_group(q: int, dim: int = 2) -> GroupRep:
    """Cyclic group of rotations of the plane (dim 2) or about the z-axis (dim 3)."""
    if q < 1:
        raise SchemaError("group order must be positive")
    if dim not in (2, 3):
        raise SchemaError("cyclic presets live in dimension 2 or 3")
    table = [[(a + b) % q for b in range(q)] for a in range(q)]
    mats = []
    for a in range(q):
        R = _rotation(q, a)
        if dim == 3:
            z = ZERO if isinstance(R[0][0], Fraction) else 0.0
            o = ONE if isinstance(R[0][0], Fraction) else 1.0
            R = [R[0] + [z], R[1] + [z], [z, z, o]]
        mats.append(R)
    kind = "rotation" if dim == 2 else "axial"
    return GroupRep(kind, q, table, mats, {"r": 1 % q}, {"preset": "cyclic", "order": q, "dim": dim})


def reflection_group() -> GroupRep:
    """Z2 acting on the plane by the mirror ``(x, y) -> (x, -y)``."""
    mats = [_identity(2), [[ONE, ZERO], [ZERO, -ONE]]]
    return GroupRep("reflection", 2, [[0, 1], [1, 0]], mats, {"s": 1},
                    {"preset": "reflection", "order": 2, "dim": 2}, [False, True])


def dihedral_group(order: int) -> GroupRep:
    """Dihedral group of the given (even) order acting on the plane.

    Element ``r^a s^f`` has index ``a + m f`` (``m = order/2``) and matrix
    ``R^a F^f`` with ``R`` the rotation by ``2 pi / m`` and ``F`` the mirror
    in the x-axis.
    """
    if order < 2 or order % 2:
        raise SchemaError("dihedral order must be even and at least 2")
    m = order // 2
    F = [[ONE, ZERO], [ZERO, -ONE]]
    table = [[0] * order for _ in range(order)]
    mats = []
    for x in range(order):
        a1, f1 = x % m, x // m
        for y in range(order):
            a2, f2 = y % m, y // m
            table[x][y] = ((a1 + (-1) ** f1 * a2) % m) + m * (f1 ^ f2)
        R = _rotation(m, a1)
        mats.append(_mat_mul(R, F) if f1 else R)
    gens = {"r": 1 % m, "s": m}
    return GroupRep("dihedral", order, table, mats, gens,
                    {"preset": "dihedral", "order": order, "dim": 2},
                    [x >= m for x in range(order)])


def group_from_spec(spec: dict) -> GroupRep:
    if not isinstance(spec, dict) or "preset" not in spec:
        raise SchemaError("group spec needs a 'preset'")
    preset = spec["preset"]
    if preset == "cyclic":
        return cyclic_group(int(spec.get("order", 1)), int(spec.get("dim", 2)))
    if preset == "reflection":
        return reflection_group()
    if preset == "dihedral":
        return dihedral_group(int(spec["order"]))
    if preset == "trivial":
        return cyclic_group(1, int(spec.get("dim", 2)))
    raise SchemaError(f"unknown group preset {preset!r}")


def generated_subgroup(rep: GroupRep, gens: Iterable[int]) -> frozenset[int]:
    gens = [g for g in set(gens) if g != 0]
    seen = {0}
    queue = deque([0])
    while queue:
        a = queue.popleft()
        for g in gens:
            b = rep.mul(a, g)
            if b not in seen:
                seen.add(b)
                queue.append(b)
    return frozenset(seen)


def invariant_dimension(rep: GroupRep, subgroup: Iterable[int]) -> int:
    """Dimension of the vectors fixed by every ``tau(s)``, s in ``subgroup``."""
    D = rep.dim
    rows = []
    for s in subgroup:
        M = rep.tau(s)
        for i in range(D):
            rows.append([M[i][j] - (1 if i == j else 0) for j in range(D)])
    if not rows:
        return D
    if any(isinstance(x, float) for r in rows for x in r):
        return D - exact.float_rank(rows)
    return D - exact.span_rank(rows)


# ---------------------------------------------------------------------------
# gain graphs

GainEdge = tuple  # (from, to, gain)


class GainGraph:
    """Quotient multigraph with gained, oriented edges; vertices ``1..n``."""

    def __init__(self, rep: GroupRep, n: int, edges: Iterable[GainEdge], colouring: dict | None = None):
        self.rep = rep
        self.n = n
        self.edges = [tuple(e) for e in edges]
        self.colouring = {v: c for v, c in (colouring or {}).items() if c is not None}
        for i, j, a in self.edges:
            if not (1 <= i <= n and 1 <= j <= n):
                raise SchemaError(f"gain edge {(i, j)} uses an unknown vertex")
            if not 0 <= a < rep.order:
                raise SchemaError(f"gain {a} is not a group element")
            if i == j and a == 0:
                raise LiftError(f"loop at {i} carries the identity gain")

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    @cached_property
    def colours(self) -> tuple:
        out = []
        for v in self.vertices:
            c = self.colouring.get(v)
            if c is not None and c not in out:
                out.append(c)
        return tuple(out)

    @property
    def k(self) -> int:
        return len(self.colours)

    def colour(self, v):
        return self.colouring.get(v)

    def edge_span(self, F: Iterable[int]) -> set[int]:
        out = set()
        for idx in F:
            i, j, _ = self.edges[idx]
            out.update((i, j))
        return out

    def colour_count(self, F: Iterable[int]) -> int:
        return len({self.colouring[v] for v in self.edge_span(F) if v in self.colouring})

    def _potentials(self, F: Sequence[int], root: int):
        """Spanning-tree potentials on root's component and closed-walk gains."""
        adj: dict[int, list] = {}
        for idx in F:
            i, j, _ = self.edges[idx]
            adj.setdefault(i, []).append(idx)
            adj.setdefault(j, []).append(idx)
        rep = self.rep
        phi = {root: 0}
        tree = set()
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for idx in adj.get(u, []):
                i, j, a = self.edges[idx]
                if i == u and j not in phi:
                    phi[j] = rep.mul(phi[u], a)
                elif j == u and i not in phi:
                    phi[i] = rep.mul(phi[u], rep.inv(a))
                else:
                    continue
                tree.add(idx)
                queue.append(j if i == u else i)
        walks = []
        for idx in F:
            i, j, a = self.edges[idx]
            if i in phi and idx not in tree:
                walks.append(rep.mul(rep.mul(phi[i], a), rep.inv(phi[j])))
        return phi, walks

    def induced_subgroup(self, F: Iterable[int], v: int) -> frozenset[int]:
        F = list(F)
        if v not in self.edge_span(F):
            return frozenset({0})
        _, walks = self._potentials(F, v)
        return generated_subgroup(self.rep, walks)

    def components(self, F: Iterable[int]) -> list[set[int]]:
        F = list(F)
        left = self.edge_span(F)
        out = []
        while left:
            root = min(left)
            phi, _ = self._potentials(F, root)
            comp = set(phi)
            out.append(comp)
            left -= comp
        return out

    def is_balanced(self, F: Iterable[int]) -> bool:
        F = list(F)
        for comp in self.components(F):
            _, walks = self._potentials(F, min(comp))
            if any(w != 0 for w in walks):
                return False
        return True

    # JSON --------------------------------------------------------------
    def to_dict(self) -> dict:
        verts = []
        for v in self.vertices:
            d = {"id": v}
            if v in self.colouring:
                d["colour"] = self.colouring[v]
            verts.append(d)
        return {"group": self.rep.to_spec(), "vertices": verts,
                "edges": [{"from": i, "to": j, "gain": self.rep.element_label(a)}
                          for i, j, a in self.edges]}

    def __repr__(self):
        return f"GainGraph(n={self.n}, edges={self.edges}, colouring={self.colouring})"


def gain_graph_from_dict(data: dict) -> GainGraph:
    if not isinstance(data, dict):
        raise SchemaError("gain graph must be a JSON object")
    for key in ("group", "vertices", "edges"):
        if key not in data:
            raise SchemaError(f"gain graph is missing {key!r}")
    rep = group_from_spec(data["group"])
    ids = []
    colouring = {}
    for v in data["vertices"]:
        if not isinstance(v, dict) or "id" not in v:
            raise SchemaError("each vertex needs an 'id'")
        ids.append(v["id"])
        if v.get("colour") is not None:
            colouring[v["id"]] = v["colour"]
    if sorted(ids) != list(range(1, len(ids) + 1)):
        raise SchemaError("vertex ids must be exactly 1..n")
    edges = []
    for e in data["edges"]:
        try:
            edges.append((int(e["from"]), int(e["to"]), rep.parse_element(e.get("gain", 0))))
        except (KeyError, TypeError) as exc:
            raise SchemaError(f"bad gain edge {e!r}") from exc
    return GainGraph(rep, len(ids), edges, colouring)


def parse_gain_graph(text: str) -> GainGraph:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc}") from exc
    return gain_graph_from_dict(data)


# ---------------------------------------------------------------------------
# actions, quotients and lifts

@dataclass
class Action:
    """Permutation action of ``rep`` on ``1..n``; ``perms[a][v-1]`` is ``a.v``."""

    rep: GroupRep
    perms: list[list[int]]

    def __call__(self, a: int, v: int) -> int:
        return self.perms[a][v - 1]

    def to_dict(self) -> dict:
        return {"group": self.rep.to_spec(),
                "generators": {name: list(self.perms[g]) for name, g in self.rep.generators.items()}}


def action_from_generators(rep: GroupRep, n: int, generators: dict[str, Sequence[int]]) -> Action:
    """Extend generator permutations to the whole group, checking consistency."""
    gens = {}
    for name, perm in generators.items():
        if name not in rep.generators:
            raise ActionError(f"unknown generator {name!r}")
        perm = [int(x) for x in perm]
        if sorted(perm) != list(range(1, n + 1)):
            raise ActionError(f"generator {name!r} is not a permutation of 1..{n}")
        gens[rep.generators[name]] = perm
    missing = set(rep.generators) - set(generators)
    if missing and rep.order > 1:
        raise ActionError(f"missing generator permutations: {sorted(missing)}")
    ident = list(range(1, n + 1))
    perms: dict[int, list[int]] = {0: ident}
    queue = deque([0])
    while queue:
        a = queue.popleft()
        for g, pg in gens.items():
            b = rep.mul(a, g)
            pb = [perms[a][pg[v] - 1] for v in range(n)]
            if b in perms:
                if perms[b] != pb:
                    raise ActionError("generator permutations do not satisfy the group relations")
            else:
                perms[b] = pb
                queue.append(b)
    if len(perms) != rep.order:
        raise ActionError("generators do not reach every group element")
    return Action(rep, [perms[a] for a in range(rep.order)])


def action_from_dict(data: dict, n: int) -> Action:
    if not isinstance(data, dict) or "group" not in data or "generators" not in data:
        raise SchemaError("action needs 'group' and 'generators'")
    rep = group_from_spec(data["group"])
    return action_from_generators(rep, n, data["generators"])


@dataclass
class QuotientResult:
    gain_graph: GainGraph
    representatives: list[int]
    placement: dict[int, tuple[int, int]]  # vertex -> (group element, quotient vertex)


def quotient(g: ColouredGraph, action: Action) -> QuotientResult:
    """Quotient gain graph of a free action by coloured-graph automorphisms.

    The representative of each orbit is its smallest vertex.  The edge orbit
    of ``{a.i, b.j}`` is oriented ``i -> j`` with gain ``a^-1 b``, or the
    reverse with the inverse gain, whichever gives the smaller key.
    """
    rep = action.rep
    edges = set(g.edges)
    for a in range(1, rep.order):
        perm = action.perms[a]
        fixed = [v for v in g.vertices if perm[v - 1] == v]
        if fixed:
            raise ActionError(f"action is not free: element {rep.element_label(a)} fixes vertex {fixed[0]}")
        for u, v in g.edges:
            x, y = perm[u - 1], perm[v - 1]
            if (min(x, y), max(x, y)) not in edges:
                raise ActionError(f"element {rep.element_label(a)} maps edge {[u, v]} to a non-edge")
        for v in g.vertices:
            if g.colour(perm[v - 1]) != g.colour(v):
                raise ActionError(f"colouring is not invariant: vertex {v} vs {perm[v - 1]}")
    placement = {}
    reps = []
    for v in g.vertices:
        if v in placement:
            continue
        reps.append(v)
        i = len(reps)
        for a in range(rep.order):
            placement[action.perms[a][v - 1]] = (a, i)
    keys = set()
    for u, v in g.edges:
        a, i = placement[u]
        b, j = placement[v]
        alpha = rep.mul(rep.inv(a), b)
        keys.add(min((i, j, alpha), (j, i, rep.inv(alpha))))
    colouring = {i: g.colour(r) for i, r in enumerate(reps, start=1) if g.colour(r) is not None}
    gg = GainGraph(rep, len(reps), sorted(keys), colouring)
    return QuotientResult(gg, reps, placement)


def lift_id(rep: GroupRep, a: int, i: int) -> int:
    return (i - 1) * rep.order + a + 1


def lift(gg: GainGraph) -> tuple[ColouredGraph, Action]:
    """The covering graph: vertex ``(a, i)`` gets id ``(i-1)|G| + a + 1``."""
    rep = gg.rep
    N = rep.order
    n = N * gg.n
    owner: dict[tuple[int, int], int] = {}
    for idx, (i, j, alpha) in enumerate(gg.edges):
        produced = set()
        for a in range(N):
            u = lift_id(rep, a, i)
            v = lift_id(rep, rep.mul(a, alpha), j)
            if u == v:
                raise LiftError(f"gain edge {idx} lifts to a loop")
            e = (min(u, v), max(u, v))
            if e in produced:
                continue
            produced.add(e)
            if e in owner:
                raise LiftError(
                    f"gain edges {owner[e]} and {idx} lift to the same edge {list(e)}")
            owner[e] = idx
    colouring = {}
    for i in gg.vertices:
        c = gg.colour(i)
        if c is not None:
            for a in range(N):
                colouring[lift_id(rep, a, i)] = c
    G = ColouredGraph(n, sorted(owner), colouring)
    perms = []
    for b in range(N):
        perm = [0] * n
        for i in gg.vertices:
            for a in range(N):
                perm[lift_id(rep, a, i) - 1] = lift_id(rep, rep.mul(b, a), i)
        perms.append(perm)
    return G, Action(rep, perms)


# ---------------------------------------------------------------------------
# symmetric frameworks

@dataclass
class SymmetricFramework:
    gain_graph: GainGraph
    d: int
    radii: dict
    positions: list[tuple]  # one per quotient vertex

    def __post_init__(self):
        gg = self.gain_graph
        if gg.rep.dim != self.d + 1:
            raise ScopeError(f"group acts on R^{gg.rep.dim} but d+1 = {self.d + 1}")
        if len(self.positions) != gg.n:
            raise PreconditionError("one representative position per quotient vertex required")
        for i in gg.vertices:
            p = self.positions[i - 1]
            c = gg.colour(i)
            r = ONE if c is None else self.radii[c]
            if dot(p, p) != r * r:
                raise PreconditionError(f"quotient vertex {i} is off its sphere")

    @property
    def rep(self) -> GroupRep:
        return self.gain_graph.rep

    @property
    def is_exact(self) -> bool:
        return self.rep.is_exact

    def lifted(self) -> Framework:
        G, _ = lift(self.gain_graph)
        rep = self.rep
        pos = [None] * G.n
        for i in self.gain_graph.vertices:
            for a in range(rep.order):
                pos[lift_id(rep, a, i) - 1] = rep.act(a, self.positions[i - 1])
        return Framework(G, self.d, {c: self.radii[c] for c in G.colours}, pos)

    def lift_vector(self, v: Sequence) -> list:
        """Quotient motion ``(pdot~, rdot)`` to the symmetric full motion."""
        gg = self.gain_graph
        rep = self.rep
        D = self.d + 1
        G, _ = lift(gg)
        out = [None] * (D * G.n)
        for i in gg.vertices:
            block = v[D * (i - 1): D * i]
            for a in range(rep.order):
                w = lift_id(rep, a, i)
                out[D * (w - 1): D * w] = rep.act(a, block)
        tail = list(v[D * gg.n:])
        # lifted colours appear in the same first-appearance order
        return out + tail


def sample_symmetric_framework(gg: GainGraph, d: int, rng: np.random.Generator,
                               bits: int = 32) -> SymmetricFramework:
    radii = {c: exact.sample_radius(rng, bits) for c in gg.colours}
    pos = []
    for i in gg.vertices:
        c = gg.colour(i)
        r = ONE if c is None else radii[c]
        pos.append(exact.sample_sphere_point(d + 1, r, rng, bits))
    return SymmetricFramework(gg, d, radii, pos)


def build_orbit_matrix(sf: SymmetricFramework) -> RigidityBundle:
    gg = sf.gain_graph
    rep = sf.rep
    D = sf.d + 1
    colours = gg.colours
    cidx = {c: t for t, c in enumerate(colours)}
    ncols = D * gg.n + len(colours)
    exact_mode = rep.is_exact
    conv = (lambda x: x) if exact_mode else float
    zero = ZERO if exact_mode else 0.0
    P = [tuple(conv(x) for x in p) for p in sf.positions]
    rows, labels = [], []
    for idx, (i, j, a) in enumerate(gg.edges):
        row = [zero] * ncols
        if i == j:
            ta = rep.act(a, P[i - 1])
            tb = rep.act(rep.inv(a), P[i - 1])
            for s in range(D):
                row[D * (i - 1) + s] = 2 * P[i - 1][s] - ta[s] - tb[s]
        else:
            tj = rep.act(a, P[j - 1])
            ti = rep.act(rep.inv(a), P[i - 1])
            for s in range(D):
                row[D * (i - 1) + s] = P[i - 1][s] - tj[s]
                row[D * (j - 1) + s] = P[j - 1][s] - ti[s]
        rows.append(row)
        labels.append(("edge", i, j, rep.element_label(a)))
    for i in gg.vertices:
        row = [zero] * ncols
        for s in range(D):
            row[D * (i - 1) + s] = P[i - 1][s]
        c = gg.colour(i)
        if c is not None:
            row[D * gg.n + cidx[c]] = -ONE if exact_mode else -1.0
        rows.append(row)
        labels.append(("vertex", i))
    col_labels = [("p", i, s) for i in gg.vertices for s in range(D)] + [("r", c) for c in colours]
    M = RationalMatrix(rows, ncols, labels, col_labels)
    return RigidityBundle(M, D * gg.n, colours, sf)


def _kernel(rows, ncols, exact_mode):
    if not rows:
        return [[ONE if a == b else ZERO for b in range(ncols)] for a in range(ncols)] if exact_mode \
            else [list(r) for r in np.eye(ncols)]
    if exact_mode:
        return exact.kernel_basis(RationalMatrix(rows, ncols))
    return [list(v) for v in exact.float_kernel(np.array(rows, dtype=float))]


def _rank(vectors, exact_mode):
    if not vectors:
        return 0
    return exact.span_rank(vectors) if exact_mode else exact.float_rank(np.array(vectors, dtype=float))


def trivial_symmetric_basis(sf: SymmetricFramework) -> list[list]:
    """Trivial motions of the lifted framework that are symmetric, in quotient coordinates."""
    full = sf.lifted()
    if not affinely_spans(full.positions, sf.d + 1):
        raise PreconditionError(f"lifted positions do not affinely span R^{sf.d + 1}")
    T = trivial_motion_basis(full)
    gg = sf.gain_graph
    rep = sf.rep
    D = sf.d + 1
    exact_mode = rep.is_exact
    if not exact_mode:
        T = [[float(x) for x in t] for t in T]
    # constraint rows L(t) = pdot(a,i) - tau(a) pdot(0,i), one column per basis vector
    cons = []
    for i in gg.vertices:
        base = lift_id(rep, 0, i)
        for a in range(1, rep.order):
            w = lift_id(rep, a, i)
            M = rep.tau(a)
            for s in range(D):
                cons.append([t[D * (w - 1) + s] - dot(M[s], t[D * (base - 1): D * base]) for t in T])
    coeffs = _kernel(cons, len(T), exact_mode) if cons else \
        [[ONE if a == b else ZERO for b in range(len(T))] for a in range(len(T))]
    out = []
    nfull = len(T[0]) if T else 0
    for c in coeffs:
        vec = [sum((c[t] * T[t][x] for t in range(len(T))), ZERO if exact_mode else 0.0)
               for x in range(nfull)]
        q = []
        for i in gg.vertices:
            base = lift_id(rep, 0, i)
            q.extend(vec[D * (base - 1): D * base])
        q.extend(vec[D * full.graph.n:])
        out.append(q)
    return out


@dataclass
class SymmetricAnalysis:
    verdict: Verdict
    framework: SymmetricFramework
    bundle: RigidityBundle
    trivial: list[list]


def symmetric_analyze_frameworks(gg: GainGraph, d: int, trials: int = 3, seed: int = 0,
                                 bits: int = 32) -> SymmetricAnalysis:
    rng = np.random.default_rng(seed)
    best = None
    ranks = []
    for _ in range(max(1, trials)):
        sf = sample_symmetric_framework(gg, d, rng, bits)
        b = build_orbit_matrix(sf)
        ranks.append(b.rank)
        if best is None or b.rank > best[1].rank:
            best = (sf, b)
    sf, b = best
    exact_mode = sf.is_exact
    T = trivial_symmetric_basis(sf)
    for t in T:
        if not b.annihilates(t):
            raise AssertionError("symmetric trivial motion is not in the orbit kernel")
    tdim = _rank(T, exact_mode)
    rows, cols = b.shape
    warnings = []
    if len(set(ranks)) > 1:
        warnings.append(f"trial ranks disagree: {ranks}; reporting the maximum")
    if not exact_mode:
        warnings.append("group representation is irrational: floating-point rank, not certified")
    witness = None
    if cols - b.rank > tdim and exact_mode:
        from .rigidity import nontrivial_witness
        witness = nontrivial_witness(b.kernel, T)
    v = Verdict(independent=b.rank == rows, rigid=cols - b.rank == tdim, rank=b.rank,
                expected_rank=cols - tdim, rows=rows, cols=cols, trivial_dimension=tdim,
                trial_ranks=ranks, witness=witness, certified=exact_mode, warnings=warnings)
    return SymmetricAnalysis(v, sf, b, T)


def symmetric_analyze(gg: GainGraph, d: int, trials: int = 3, seed: int = 0, bits: int = 32) -> Verdict:
    """Gamma-symmetric independence and rigidity from the orbit matrix."""
    return symmetric_analyze_frameworks(gg, d, trials, seed, bits).verdict


# ---------------------------------------------------------------------------
# symmetric counts

@dataclass
class CountReport:
    case: str
    global_ok: bool
    edge_count: int
    global_required: int
    subsets_ok: bool
    witness: list | None = None
    witness_bound: int | None = None
    witness_class: str | None = None
    weak_ok: bool | None = None
    weak_witness: list | None = None
    choice_matters: bool = False
    notes: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.global_ok and self.subsets_ok

    def to_dict(self) -> dict:
        out = {"case": self.case, "ok": self.ok, "global_ok": self.global_ok,
               "edge_count": self.edge_count, "global_required": self.global_required,
               "subsets_ok": self.subsets_ok}
        if self.witness is not None:
            out["witness"] = self.witness
            out["witness_bound"] = self.witness_bound
            out["witness_class"] = self.witness_class
        if self.weak_ok is not None:
            out["weak_ok"] = self.weak_ok
            if self.weak_witness is not None:
                out["weak_witness"] = self.weak_witness
        if self.choice_matters:
            out["base_vertex_choice_matters"] = True
        if self.notes:
            out["notes"] = list(self.notes)
        return out


CASES = {"rotation": "plane rotations", "reflection": "plane reflection",
         "dihedral": "plane dihedral", "axial": "3-space axial rotations"}


def _case(rep: GroupRep, d: int) -> str:
    if d == 1 and rep.kind in ("rotation", "reflection", "dihedral"):
        return rep.kind
    if d == 2 and rep.kind == "axial":
        return "axial"
    raise ScopeError(f"no symmetric count conditions for a {rep.kind} group with d = {d}")


def _gain_table(gg: GainGraph, edge_cap: int):
    m = len(gg.edges)
    if m > edge_cap:
        raise CapacityError(f"{m} gain edges exceed the brute-force cap of {edge_cap}")
    # vertex bookkeeping reuses the subset table; loops are harmless there
    return SubsetTable(gg.n, [(i, j) for i, j, _ in gg.edges], edge_cap)


def _subset_indices(mask: int, m: int) -> list[int]:
    return [t for t in range(m) if mask >> t & 1]


def corollary_counts(gg: GainGraph, d: int, *, edge_cap: int = DEFAULT_EDGE_CAP) -> CountReport:
    """Necessary symmetric counts for Gamma-symmetric isostaticity.

    Every nonempty ``F0`` is classified as balanced or unbalanced (for
    dihedral groups by the type of the induced subgroup) and checked
    against its bound.  Subsets on which a ``min{k, |V(F0)| - t}`` term
    would be negative carry no constraint.
    """
    rep = gg.rep
    case = _case(rep, d)
    table = _gain_table(gg, edge_cap)
    m = table.m
    N = 1 << m
    n0 = gg.n
    k = gg.k
    E0 = len(gg.edges)
    notes = []
    if case == "rotation":
        required = n0 - 1 + k
    elif case == "reflection":
        required = n0 + min(k, n0 - 1)
    elif case == "dihedral":
        required = n0 + k
    else:
        required = 2 * n0 - 1 + min(k, n0 - 1)
    balanced = np.zeros(N, dtype=bool)
    kinds: list[tuple[str, ...]] = [()] * N
    for mask in range(N):
        F = _subset_indices(mask, m)
        if case == "dihedral":
            ks = set()
            for comp in gg.components(F):
                for v in comp:
                    ks.add(rep.subgroup_kind(gg.induced_subgroup(F, v)))
            kinds[mask] = tuple(sorted(ks))
            balanced[mask] = gg.is_balanced(F)
        else:
            balanced[mask] = gg.is_balanced(F)
    kc = table.colour_counts(_as_coloured(gg))
    nv = table.nv
    size = table.size
    rank1 = table.r(1)
    bound = np.full(N, np.iinfo(np.int64).max, dtype=np.int64)
    defined = np.zeros(N, dtype=bool)
    defined[1:] = True
    choice = np.zeros(N, dtype=bool)
    weak_bound = None
    weak_defined = None
    bal_b = rank1 + np.minimum(kc, nv - 2)
    if case in ("rotation", "reflection", "dihedral"):
        if case == "rotation":
            bound = np.where(balanced, bal_b, rank1 + kc)
        elif case == "reflection":
            bound = np.where(balanced, bal_b, nv + np.minimum(kc, nv - 1))
        else:
            per = {"trivial": bal_b, "rotation": rank1 + kc,
                   "reflection": nv + np.minimum(kc, nv - 1), "dihedral": nv + kc}
            for mask in range(1, N):
                vals = [int(per[t][mask]) for t in kinds[mask]]
                bound[mask] = min(vals)
                choice[mask] = len(set(vals)) > 1
            if choice.any():
                notes.append("some subsets have components of different subgroup types; "
                             "the most restrictive bound is used")
    else:
        r2t = _axial_rank(balanced, size, nv, m)
        t_bal = np.minimum(kc, nv - 3)
        t_unb = np.minimum(kc, nv - 1)
        bound = np.where(balanced, r2t + t_bal, r2t + t_unb)
        defined &= np.where(balanced, nv >= 3, nv >= 1)
        weak_bound = np.where(balanced, 2 * nv - 3 + t_bal, 2 * nv - 1 + t_unb)
        weak_defined = defined.copy()
    violations = defined & (size > bound)
    report = CountReport(case, E0 == required, E0, required, not violations.any(), notes=notes)
    if violations.any():
        w = _first(violations, size)
        report.witness = [_edge_json(gg, t) for t in _subset_indices(w, m)]
        report.witness_bound = int(bound[w])
        report.witness_class = kinds[w] and "/".join(kinds[w]) or (
            "balanced" if balanced[w] else "unbalanced")
    report.choice_matters = bool(choice.any())
    if weak_bound is not None:
        weak_viol = weak_defined & (size > weak_bound)
        report.weak_ok = bool(not weak_viol.any())
        if weak_viol.any():
            w = _first(weak_viol, size)
            report.weak_witness = [_edge_json(gg, t) for t in _subset_indices(w, m)]
    return report


def _axial_rank(balanced: np.ndarray, size: np.ndarray, nv: np.ndarray, m: int) -> np.ndarray:
    """Rank in the matroid with 2|V|-3 (balanced) / 2|V|-1 (unbalanced) counts."""
    ok = size <= np.where(balanced, 2 * nv - 3, 2 * nv - 1)
    ok[0] = True
    return induced_rank(ok, size, m)


def _first(mask_arr: np.ndarray, size: np.ndarray) -> int:
    idx = np.flatnonzero(mask_arr)
    sizes = size[idx]
    return int(idx[sizes == sizes.min()].min())


def _edge_json(gg: GainGraph, t: int) -> dict:
    i, j, a = gg.edges[t]
    return {"from": i, "to": j, "gain": gg.rep.element_label(a)}


def _as_coloured(gg: GainGraph) -> ColouredGraph:
    return ColouredGraph(gg.n, [], gg.colouring)
