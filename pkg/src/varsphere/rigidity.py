"""Rigidity matrices of frameworks on concentric spheres with variable radii.

Unknowns are the velocities ``pdot(v)`` (``d+1`` columns per vertex, in
vertex order) followed by one radius rate per colour.  Rows are the edge
constraints ``(p(u)-p(v)).(pdot(u)-pdot(v)) = 0`` followed by the sphere
constraints ``p(v).pdot(v) - rdot(colour(v)) = 0`` (no rate term for an
uncoloured vertex).  With this sign convention the kernel is exactly the
space of infinitesimal motions.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
import math
from math import comb
from typing import Sequence

import numpy as np

from . import exact
from .errors import PreconditionError
from .exact import ONE, ZERO, RationalMatrix, dot, fraction_str
from .graphs import ColouredGraph


class FrameworkError(ValueError):
    pass


@dataclass
class Framework:
    """Coloured graph with exact positions on concentric spheres.

    ``positions[v-1]`` is the position of vertex ``v``; ``radii`` maps each
    colour to its radius.  Uncoloured vertices live on the unit sphere.
    """

    graph: ColouredGraph
    d: int
    radii: dict
    positions: list[tuple]

    def __post_init__(self):
        g = self.graph
        if len(self.positions) != g.n:
            raise FrameworkError("one position per vertex required")
        missing = set(g.colours) - set(self.radii)
        if missing:
            raise FrameworkError(f"no radius for colours {sorted(map(str, missing))}")
        for c, r in self.radii.items():
            if r <= 0:
                raise FrameworkError(f"radius of colour {c!r} must be positive")
        for v in g.vertices:
            p = self.positions[v - 1]
            if len(p) != self.d + 1:
                raise FrameworkError(f"vertex {v}: position must have {self.d + 1} coordinates")
            if not any(p):
                raise FrameworkError(f"vertex {v} sits at the origin")
            c = g.colour(v)
            r = ONE if c is None else self.radii[c]
            nn = dot(p, p)
            if isinstance(nn, float) or isinstance(r, float):
                if abs(nn - r * r) > 1e-9 * max(1.0, float(r * r)):
                    raise FrameworkError(f"vertex {v} is off its sphere")
            elif nn != r * r:
                raise FrameworkError(f"vertex {v} is off its sphere: |p|^2 = {nn}, r^2 = {r * r}")

    def p(self, v: int) -> tuple:
        return self.positions[v - 1]

    def radius(self, v: int):
        c = self.graph.colour(v)
        return ONE if c is None else self.radii[c]

    @property
    def is_exact(self) -> bool:
        return not any(isinstance(x, float) for p in self.positions for x in p)

    def restrict(self, g: ColouredGraph, keep: Sequence[int]) -> "Framework":
        """Framework on ``g`` whose vertex ``i`` is old vertex ``keep[i-1]``."""
        pos = [self.positions[v - 1] for v in keep]
        radii = {c: self.radii[c] for c in g.colours}
        return Framework(g, self.d, radii, pos)

    def projected(self) -> "Framework":
        """Central projection to the unit sphere, all vertices uncoloured."""
        g = ColouredGraph(self.graph.n, self.graph.edges)
        pos = [tuple(x / self.radius(v) for x in self.p(v)) for v in self.graph.vertices]
        return Framework(g, self.d, {}, pos)


def sample_framework(g: ColouredGraph, d: int, rng: np.random.Generator, bits: int = 32,
                     radii: dict | None = None) -> Framework:
    """Random exact framework: radii in (1, 2), points by rational parametrisation."""
    if radii is None:
        radii = {c: exact.sample_radius(rng, bits) for c in g.colours}
    pos = []
    for v in g.vertices:
        c = g.colour(v)
        r = ONE if c is None else radii[c]
        pos.append(exact.sample_sphere_point(d + 1, r, rng, bits))
    return Framework(g, d, dict(radii), pos)


def expected_rank(n: int, k: int, d: int) -> int:
    """Rank of an infinitesimally rigid framework (requires ``n >= d+1``)."""
    return (d + 1) * n - comb(d + 1, 2) + min(k, n - (d + 1))


def expected_trivial_dimension(n: int, k: int, d: int) -> int:
    return comb(d + 1, 2) + max(0, (d + 1) - (n - k))


def skew_basis(dim: int) -> list[list[list]]:
    out = []
    for a in range(dim):
        for b in range(a + 1, dim):
            S = [[ZERO] * dim for _ in range(dim)]
            S[a][b] = ONE
            S[b][a] = -ONE
            out.append(S)
    return out


def _matvec(A, x):
    return tuple(dot(row, x) for row in A)


# ---------------------------------------------------------------------------

@dataclass
class RigidityBundle:
    """Constraint matrix with row/column labels and cached rank and kernel."""

    matrix: RationalMatrix
    n_motion_cols: int
    colours: tuple
    framework: object = field(repr=False, default=None)

    @property
    def shape(self):
        return self.matrix.shape

    @property
    def row_labels(self):
        return self.matrix.row_labels

    @property
    def col_labels(self):
        return self.matrix.col_labels

    @cached_property
    def rank(self) -> int:
        if self.matrix.is_exact:
            return exact.rank(self.matrix)
        return exact.float_rank(self.matrix)

    @cached_property
    def kernel(self) -> list[list]:
        if self.matrix.is_exact:
            return exact.kernel_basis(self.matrix)
        return [list(v) for v in exact.float_kernel(self.matrix)]

    @property
    def kernel_dimension(self) -> int:
        return self.matrix.ncols - self.rank

    def annihilates(self, v: Sequence) -> bool:
        out = self.matrix.matvec(v)
        if self.matrix.is_exact and not any(isinstance(x, float) for x in v):
            return not any(out)
        scale = max(1.0, max(abs(float(x)) for x in v))
        return max((abs(float(x)) for x in out), default=0.0) <= 1e-8 * scale


def build_rigidity_matrix(f: Framework) -> RigidityBundle:
    g = f.graph
    D = f.d + 1
    colours = g.colours
    cidx = {c: i for i, c in enumerate(colours)}
    ncols = D * g.n + len(colours)
    zero = ZERO if f.is_exact else 0.0
    rows = []
    row_labels = []
    for u, v in g.edges:
        row = [zero] * ncols
        pu, pv = f.p(u), f.p(v)
        for a in range(D):
            diff = pu[a] - pv[a]
            row[D * (u - 1) + a] = diff
            row[D * (v - 1) + a] = -diff
        rows.append(row)
        row_labels.append(("edge", u, v))
    for v in g.vertices:
        row = [zero] * ncols
        pv = f.p(v)
        for a in range(D):
            row[D * (v - 1) + a] = pv[a]
        c = g.colour(v)
        if c is not None:
            row[D * g.n + cidx[c]] = -ONE if f.is_exact else -1.0
        rows.append(row)
        row_labels.append(("vertex", v))
    col_labels = [("p", v, a) for v in g.vertices for a in range(D)] + [("r", c) for c in colours]
    M = RationalMatrix(rows, ncols, row_labels, col_labels)
    return RigidityBundle(M, D * g.n, colours, f)


def affinely_spans(points: Sequence[Sequence], dim: int) -> bool:
    if len(points) < dim + 1:
        return False
    base = points[0]
    diffs = [[a - b for a, b in zip(p, base)] for p in points[1:]]
    if any(isinstance(x, float) for r in diffs for x in r):
        return exact.float_rank(diffs) == dim
    return exact.span_rank(diffs) == dim


def trivial_motion_basis(f: Framework, bundle: RigidityBundle | None = None) -> list[list]:
    """Rotations ``pdot = S p`` and the admissible common translations.

    A translation ``pdot(v) = x`` is admissible when ``x`` is orthogonal to
    every uncoloured position and to every difference of two positions of
    the same colour; its rates are ``rdot(c) = p(v_c).x`` for a fixed
    representative ``v_c``.  Every returned vector is checked against the
    kernel of the rigidity matrix.
    """
    g = f.graph
    D = f.d + 1
    if not affinely_spans(f.positions, D):
        raise PreconditionError(f"positions do not affinely span R^{D}")
    if bundle is None:
        bundle = build_rigidity_matrix(f)
    colours = bundle.colours
    zero = ZERO if f.is_exact else 0.0
    out = []
    for S in skew_basis(D):
        vec = []
        for v in g.vertices:
            vec.extend(_matvec(S, f.p(v)))
        vec.extend([zero] * len(colours))
        out.append(vec)
    eqs = []
    reps = {}
    for v in g.vertices:
        c = g.colour(v)
        if c is None:
            eqs.append(list(f.p(v)))
        elif c in reps:
            eqs.append([a - b for a, b in zip(f.p(reps[c]), f.p(v))])
        else:
            reps[c] = v
    if eqs:
        if f.is_exact:
            xs = exact.kernel_basis(eqs)
        else:
            xs = [list(x) for x in exact.float_kernel(eqs)]
    else:
        xs = [[ONE if a == b else ZERO for b in range(D)] for a in range(D)]
    for x in xs:
        vec = list(x) * g.n + [dot(f.p(reps[c]), x) for c in colours]
        out.append(vec)
    for vec in out:
        if not bundle.annihilates(vec):
            raise AssertionError("constructed trivial motion is not in the kernel")
    return out


def _span_rank(vectors, exact_mode: bool) -> int:
    if not vectors:
        return 0
    return exact.span_rank(vectors) if exact_mode else exact.float_rank(vectors)


def trivial_dimension(f: Framework, bundle: RigidityBundle | None = None) -> int:
    return _span_rank(trivial_motion_basis(f, bundle), f.is_exact)


def nontrivial_witness(kernel: list[list], trivial: list[list]) -> list | None:
    """A kernel vector reduced modulo the trivial span, or None if all are trivial."""
    base = exact.span_rank(trivial) if trivial else 0
    for v in kernel:
        if exact.span_rank(trivial + [v]) > base:
            return primitive(exact.reduce_modulo(v, trivial))
    return None


def primitive(v: Sequence[Fraction]) -> list[Fraction]:
    """Scale a nonzero rational vector to coprime integers."""
    den = math.lcm(*(x.denominator for x in v))
    ints = [int(x * den) for x in v]
    g = math.gcd(*ints) or 1
    return [Fraction(x // g) for x in ints]


# ---------------------------------------------------------------------------
# verdicts

@dataclass
class Verdict:
    independent: bool
    rigid: bool
    rank: int
    expected_rank: int
    rows: int
    cols: int
    trivial_dimension: int
    trial_ranks: list[int]
    witness: list | None = None
    certified: bool = True
    warnings: list[str] = field(default_factory=list)

    @property
    def isostatic(self) -> bool:
        return self.independent and self.rigid

    @property
    def kernel_dimension(self) -> int:
        return self.cols - self.rank

    @property
    def nontrivial_motions(self) -> int:
        return self.kernel_dimension - self.trivial_dimension

    def to_dict(self) -> dict:
        out = {
            "independent": self.independent,
            "infinitesimally_rigid": self.rigid,
            "isostatic": self.isostatic,
            "rank": self.rank,
            "expected_rank": self.expected_rank,
            "rows": self.rows,
            "cols": self.cols,
            "kernel_dimension": self.kernel_dimension,
            "trivial_dimension": self.trivial_dimension,
            "nontrivial_motions": self.nontrivial_motions,
            "trial_ranks": list(self.trial_ranks),
            "certified": self.certified,
        }
        if self.witness is not None:
            out["witness"] = [fraction_str(x) for x in self.witness]
        if self.warnings:
            out["warnings"] = list(self.warnings)
        return out


@dataclass
class Analysis:
    """Verdict plus the framework and bundle of the maximal-rank trial."""

    verdict: Verdict
    framework: Framework
    bundle: RigidityBundle


def analyze_frameworks(g: ColouredGraph, d: int, trials: int = 3, seed: int = 0, bits: int = 32,
                       *, witness: bool = True, early_stop: bool = False) -> Analysis:
    """Max-rank analysis over ``trials`` sampled frameworks.

    With ``early_stop`` sampling ends once a trial reaches ``min(rows,
    expected_rank)``, a value no realisation can exceed.
    """
    if g.n < d + 1:
        raise PreconditionError(f"need at least d+1 = {d + 1} vertices, got {g.n}")
    rng = np.random.default_rng(seed)
    expected = expected_rank(g.n, g.k, d)
    rows = len(g.edges) + g.n
    ceiling = min(rows, expected)
    best = None
    ranks = []
    for _ in range(max(1, trials)):
        f = sample_framework(g, d, rng, bits)
        b = build_rigidity_matrix(f)
        ranks.append(b.rank)
        if best is None or b.rank > best[1].rank:
            best = (f, b)
        if early_stop and b.rank >= ceiling:
            break
    f, b = best
    warnings = []
    if len(set(ranks)) > 1:
        warnings.append(f"trial ranks disagree: {ranks}; reporting the maximum")
    if b.rank > expected:
        warnings.append(f"rank {b.rank} exceeds the rigidity rank {expected}")
    w = None
    if affinely_spans(f.positions, d + 1):
        tdim = trivial_dimension(f, b)
        if witness and b.rank < expected:
            w = nontrivial_witness(b.kernel, trivial_motion_basis(f, b))
    else:
        # d+1 points on a sphere never span affinely; fall back to the formula
        tdim = expected_trivial_dimension(g.n, g.k, d)
        warnings.append(f"positions do not affinely span R^{d + 1}: trivial dimension from the formula")
    v = Verdict(independent=b.rank == rows, rigid=b.rank == expected, rank=b.rank,
                expected_rank=expected, rows=rows, cols=b.matrix.ncols,
                trivial_dimension=tdim, trial_ranks=ranks, witness=w, warnings=warnings)
    return Analysis(v, f, b)


def analyze(g: ColouredGraph, d: int, trials: int = 3, seed: int = 0, bits: int = 32,
            **kw) -> Verdict:
    """Independent / rigid / isostatic verdict from exact ranks at sampled points."""
    return analyze_frameworks(g, d, trials, seed, bits, **kw).verdict


def max_rank(g: ColouredGraph, d: int, trials: int = 3, seed: int = 0, bits: int = 32,
             early_stop: bool = True) -> tuple[int, list[int]]:
    """Maximal exact rank over trials, without kernel or witness work."""
    rng = np.random.default_rng(seed)
    ceiling = min(len(g.edges) + g.n, expected_rank(g.n, g.k, d))
    ranks = []
    for _ in range(max(1, trials)):
        r = build_rigidity_matrix(sample_framework(g, d, rng, bits)).rank
        ranks.append(r)
        if early_stop and r >= ceiling:
            break
    return max(ranks), ranks


# ---------------------------------------------------------------------------
# geometric checks on moves and motions

def check_extension_preservation(g: ColouredGraph, d: int, move: dict, trials: int = 3,
                                 seed: int = 0, bits: int = 32) -> dict:
    """Apply a 0- or 1-extension to an isostatic graph and re-analyse.

    ``move`` is ``{"kind": "zero", "attach": [...], "colour": c}`` or
    ``{"kind": "one", "edge": [i, j], "attach": [...], "colour": c}``.
    """
    from . import moves

    before = analyze(g, d, trials, seed, bits, witness=False)
    if not before.isostatic:
        raise PreconditionError("base graph is not isostatic")
    kind = move.get("kind")
    if kind == "zero":
        h = moves.zero_extension(g, d, move["attach"], move.get("colour"))
    elif kind == "one":
        h = moves.one_extension(g, d, move["edge"], move["attach"], move.get("colour"))
    else:
        raise ValueError(f"unknown move kind {kind!r}")
    after = analyze(h, d, trials, seed + 1, bits, witness=False)
    return {"graph": h, "before": before, "after": after, "preserved": after.isostatic}


def motion_filter_check(f: Framework, v: int) -> bool:
    """Is there a nontrivial motion whose rates vanish on v's and v's neighbours' colours?

    Preconditions: ``v`` is not colour-isolated, has degree greater than
    ``d``, and both the framework and the framework with ``v`` deleted have
    exactly one nontrivial degree of freedom, and ``G - v`` has more than
    ``d`` vertices beyond its colour count (otherwise its trivial space
    includes motions with nonzero radial rates).
    """
    g = f.graph
    if g.is_colour_isolated(v):
        raise PreconditionError(f"vertex {v} is colour-isolated")
    if g.degree(v) <= f.d:
        raise PreconditionError(f"vertex {v} has degree {g.degree(v)} <= d = {f.d}")
    gv = g.remove_vertex(v)
    if gv.n - gv.k <= f.d:
        # trivial motions of G - v then carry radial rates and can extend
        # to nontrivial motions of G, so the property need not hold
        raise PreconditionError(
            f"G - {v} has n - k = {gv.n - gv.k} <= d: its trivial motions include radial rates")
    b = build_rigidity_matrix(f)
    T = trivial_motion_basis(f, b)
    dof = b.kernel_dimension - exact.span_rank(T)
    if dof != 1:
        raise PreconditionError(f"framework has {dof} nontrivial degrees of freedom, expected 1")
    keep = [w for w in g.vertices if w != v]
    fv = f.restrict(gv, keep)
    bv = build_rigidity_matrix(fv)
    dof_v = bv.kernel_dimension - trivial_dimension(fv, bv)
    if dof_v != 1:
        raise PreconditionError(f"framework minus {v} has {dof_v} nontrivial degrees of freedom, expected 1")
    cidx = {c: i for i, c in enumerate(b.colours)}
    fixed = {g.colour(w) for w in list(g.neighbours(v)) + [v]} - {None}
    extra = []
    for c in sorted(fixed, key=lambda c: cidx[c]):
        row = [ZERO] * b.matrix.ncols
        row[b.n_motion_cols + cidx[c]] = ONE
        extra.append(row)
    W = exact.kernel_basis(b.matrix.rows + extra)
    base = exact.span_rank(T)
    return any(exact.span_rank(T + [w]) > base for w in W)
