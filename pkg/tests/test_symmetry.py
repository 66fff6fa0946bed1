from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from varsphere import exact
from varsphere.errors import ScopeError
from varsphere.graphs import ColouredGraph
from varsphere.rigidity import analyze, build_rigidity_matrix, nontrivial_witness
from varsphere.symmetry import (ActionError, GainGraph, LiftError, SymmetricFramework,
                                action_from_dict, action_from_generators, build_orbit_matrix,
                                corollary_counts, cyclic_group, dihedral_group, gain_graph_from_dict,
                                generated_subgroup, invariant_dimension, lift, lift_id, quotient,
                                reflection_group, sample_symmetric_framework, symmetric_analyze,
                                symmetric_analyze_frameworks, trivial_symmetric_basis)

from conftest import load_gain, load_graph, load_json


def _z_quotient(name):
    g = load_graph("fig2.json")
    return quotient(g, action_from_dict(load_json(name), g.n))


# ---------------------------------------------------------------------------
# groups

@pytest.mark.parametrize("rep", [cyclic_group(1), cyclic_group(2), cyclic_group(4), cyclic_group(3),
                                 cyclic_group(4, dim=3), reflection_group(), dihedral_group(4),
                                 dihedral_group(8), dihedral_group(6)])
def test_representations_are_homomorphisms(rep):
    rep.check()
    for a in range(rep.order):
        assert rep.mul(a, rep.inv(a)) == 0


def test_exactness_of_presets():
    assert cyclic_group(4).is_exact and dihedral_group(8).is_exact
    assert not cyclic_group(3).is_exact


def test_dihedral_words():
    D = dihedral_group(8)
    r, s = D.parse_element("r"), D.parse_element("s")
    assert D.parse_element("r^2s") == D.mul(D.mul(r, r), s)
    # s r s = r^-1
    assert D.mul(D.mul(s, r), s) == D.inv(r)
    assert D.element_label(D.parse_element("r^3s")) == "r^3s"


def test_invariant_dimension_examples():
    assert invariant_dimension(cyclic_group(2), {0}) == 2
    assert invariant_dimension(cyclic_group(2), {0, 1}) == 0
    assert invariant_dimension(reflection_group(), {0, 1}) == 1
    assert invariant_dimension(cyclic_group(4, dim=3), range(4)) == 1


def test_subgroup_kinds():
    D = dihedral_group(8)
    assert D.subgroup_kind({0}) == "trivial"
    assert D.subgroup_kind(generated_subgroup(D, [D.parse_element("r")])) == "rotation"
    assert D.subgroup_kind(generated_subgroup(D, [D.parse_element("s")])) == "reflection"
    assert D.subgroup_kind(generated_subgroup(D, [D.parse_element("r"), D.parse_element("s")])) == "dihedral"


# ---------------------------------------------------------------------------
# quotient and lift

def test_ring_graph_quotients():
    z2 = _z_quotient("fig2_z2_action.json").gain_graph
    z4 = _z_quotient("fig2_z4_action.json").gain_graph
    assert (z2.n, len(z2.edges)) == (6, 8)
    assert (z4.n, len(z4.edges)) == (3, 4)
    assert z2.k == z4.k == 3


def test_bundled_quotients_match():
    for action, stored in (("fig2_z2_action.json", "fig2_z2_quotient.json"),
                           ("fig2_z4_action.json", "fig2_z4_quotient.json")):
        assert _z_quotient(action).gain_graph.to_dict() == load_gain(stored).to_dict()


def test_trivial_group_quotient(fig1b):
    rep = cyclic_group(1)
    act = action_from_generators(rep, fig1b.n, {})
    gg = quotient(fig1b, act).gain_graph
    assert gg.n == fig1b.n
    assert [(i, j) for i, j, _ in gg.edges] == list(fig1b.edges)
    assert all(a == 0 for _, _, a in gg.edges)


def test_lift_of_z2_quotient():
    G, act = lift(load_gain("fig2_z2_quotient.json"))
    assert (G.n, len(G.edges)) == (12, 16)
    assert G.k == 3


def test_loop_lifts_to_k2():
    gg = GainGraph(cyclic_group(2), 1, [(1, 1, 1)])
    G, _ = lift(gg)
    assert (G.n, G.edges) == (2, ((1, 2),))


def test_identity_loop_rejected():
    with pytest.raises(LiftError):
        GainGraph(cyclic_group(2), 1, [(1, 1, 0)])


def test_parallel_gain_edges_collide():
    with pytest.raises(LiftError):
        lift(GainGraph(cyclic_group(4), 2, [(1, 2, 1), (2, 1, 3)]))


def test_quotient_errors():
    g = ColouredGraph(4, [(1, 2), (3, 4)], {1: "a", 3: "a"})
    rep = cyclic_group(2)
    with pytest.raises(ActionError, match="not free"):
        quotient(g, action_from_generators(rep, 4, {"r": [1, 2, 4, 3]}))
    path = ColouredGraph(4, [(1, 2), (2, 3)])
    with pytest.raises(ActionError, match="non-edge"):
        quotient(path, action_from_generators(rep, 4, {"r": [4, 3, 2, 1]}))
    with pytest.raises(ActionError, match="colouring"):
        quotient(g.with_colouring({1: "a"}), action_from_generators(rep, 4, {"r": [3, 4, 1, 2]}))
    with pytest.raises(ActionError, match="relations"):
        action_from_generators(cyclic_group(2), 3, {"r": [2, 3, 1]})


def _random_gain_graph(rng, rep, n, m, colours=2):
    edges = set()
    for _ in range(m):
        i, j = (int(x) for x in rng.integers(1, n + 1, size=2))
        a = int(rng.integers(0, rep.order))
        if i == j and a == 0:
            continue
        edges.add(min((i, j, a), (j, i, rep.inv(a))))
    col = {v: f"c{int(rng.integers(1, colours + 1))}" for v in range(1, n + 1) if rng.random() < 0.6}
    return GainGraph(rep, n, sorted(edges), col)


REPS = [cyclic_group(2), cyclic_group(3), cyclic_group(4), reflection_group(), dihedral_group(4),
        dihedral_group(8), cyclic_group(4, dim=3)]


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32 - 1), st.sampled_from(range(len(REPS))))
def test_quotient_of_lift_is_identity(seed, r):
    rng = np.random.default_rng(seed)
    rep = REPS[r]
    gg = _random_gain_graph(rng, rep, int(rng.integers(1, 5)), int(rng.integers(0, 7)))
    try:
        G, act = lift(gg)
    except LiftError:
        return
    back = quotient(G, act).gain_graph
    assert back.n == gg.n and back.colouring == gg.colouring
    canon = sorted({min((i, j, a), (j, i, rep.inv(a))) for i, j, a in gg.edges})
    assert sorted(back.edges) == canon


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32 - 1), st.sampled_from(range(len(REPS))))
def test_lift_of_quotient_is_identity(seed, r):
    rng = np.random.default_rng(seed)
    rep = REPS[r]
    gg = _random_gain_graph(rng, rep, int(rng.integers(1, 5)), int(rng.integers(0, 7)))
    try:
        G, act = lift(gg)
    except LiftError:
        return
    # scramble the labels of the symmetric graph
    perm = [int(x) + 1 for x in rng.permutation(G.n)]
    relabel = {v: perm[v - 1] for v in G.vertices}
    H = G.relabel(relabel)
    inv = {b: a for a, b in relabel.items()}
    perms = [[relabel[act.perms[a][inv[v] - 1]] for v in H.vertices] for a in range(rep.order)]
    res = quotient(H, type(act)(rep, perms))
    L, _ = lift(res.gain_graph)
    to_lift = {v: lift_id(rep, *res.placement[v]) for v in H.vertices}
    assert sorted(tuple(sorted((to_lift[u], to_lift[v]))) for u, v in H.edges) == list(L.edges)
    assert all(L.colour(to_lift[v]) == H.colour(v) for v in H.vertices)


# ---------------------------------------------------------------------------
# balance and induced subgroups

def test_forest_is_balanced():
    gg = GainGraph(cyclic_group(4), 4, [(1, 2, 1), (2, 3, 3), (2, 4, 2)])
    assert gg.is_balanced(range(3))
    assert gg.induced_subgroup(range(3), 1) == {0}


def test_single_loop():
    rep = cyclic_group(4)
    gg = GainGraph(rep, 1, [(1, 1, 2)])
    assert not gg.is_balanced([0])
    assert gg.induced_subgroup([0], 1) == {0, 2}
    # vertex outside V(F0): trivial subgroup
    gg = GainGraph(rep, 2, [(1, 1, 2)])
    assert gg.induced_subgroup([0], 2) == {0}


def test_two_triangle_graph_balance():
    gg = load_gain("two_triangles_gain.json")
    tri = [t for t, (i, j, _) in enumerate(gg.edges) if i != j and i <= 3]
    assert gg.is_balanced(tri)
    everything = range(len(gg.edges))
    assert not gg.is_balanced(everything)
    assert gg.induced_subgroup(everything, 1) == frozenset(range(4))
    assert gg.induced_subgroup(everything, 5) == frozenset(range(4))


def _switch(gg, s):
    rep = gg.rep
    edges = [(i, j, rep.mul(rep.mul(rep.inv(s[i - 1]), a), s[j - 1])) for i, j, a in gg.edges]
    return GainGraph(rep, gg.n, edges, gg.colouring)


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 2**32 - 1), st.sampled_from(range(len(REPS))))
def test_balance_invariances(seed, r):
    rng = np.random.default_rng(seed)
    rep = REPS[r]
    gg = _random_gain_graph(rng, rep, int(rng.integers(1, 6)), int(rng.integers(1, 9)))
    m = len(gg.edges)
    F = [t for t in range(m) if rng.random() < 0.7]
    # different edge order means a different spanning tree
    order = [int(x) for x in rng.permutation(m)]
    shuffled = GainGraph(rep, gg.n, [gg.edges[t] for t in order], gg.colouring)
    F2 = [order.index(t) for t in F]
    assert gg.is_balanced(F) == shuffled.is_balanced(F2)
    # switching preserves balance
    s = [int(x) for x in rng.integers(0, rep.order, size=gg.n)]
    sw = _switch(gg, s)
    assert gg.is_balanced(F) == sw.is_balanced(F)
    # induced subgroups within a component are conjugate
    for comp in gg.components(F):
        comp = sorted(comp)
        Su = gg.induced_subgroup(F, comp[0])
        Sv = gg.induced_subgroup(F, comp[-1])
        assert any({rep.mul(rep.mul(g, x), rep.inv(g)) for x in Su} == Sv for g in range(rep.order))


# ---------------------------------------------------------------------------
# orbit matrix

def test_trivial_group_orbit_matrix_is_full_matrix(fig1b):
    rep = cyclic_group(1, dim=3)
    gg = GainGraph(rep, fig1b.n, [(i, j, 0) for i, j in fig1b.edges], fig1b.colouring)
    sf = sample_symmetric_framework(gg, 2, np.random.default_rng(0))
    orbit = build_orbit_matrix(sf)
    full = build_rigidity_matrix(sf.lifted())
    assert orbit.matrix.rows == full.matrix.rows


def test_z2_orbit_matrix_shape():
    gg = load_gain("fig2_z2_quotient.json")
    sf = sample_symmetric_framework(gg, 1, np.random.default_rng(0))
    assert build_orbit_matrix(sf).shape == (14, 15)


def test_orbit_rows():
    rep = cyclic_group(4)
    gg = GainGraph(rep, 2, [(1, 2, 0), (1, 2, 1), (2, 2, 1)])
    sf = sample_symmetric_framework(gg, 1, np.random.default_rng(3))
    M = build_orbit_matrix(sf).matrix.rows
    p1, p2 = sf.positions
    assert M[0][:4] == [p1[0] - p2[0], p1[1] - p2[1], p2[0] - p1[0], p2[1] - p1[1]]
    # gain r: tau p = (-y, x)
    tp2 = (-p2[1], p2[0])
    tinv_p1 = (p1[1], -p1[0])
    assert M[1][:4] == [p1[0] - tp2[0], p1[1] - tp2[1], p2[0] - tinv_p1[0], p2[1] - tinv_p1[1]]
    # loop with a quarter turn: 2p - tau p - tau^-1 p = 2p
    assert M[2][:4] == [0, 0, 2 * p2[0], 2 * p2[1]]


def test_symmetric_framework_off_sphere():
    gg = GainGraph(cyclic_group(2), 1, [(1, 1, 1)])
    with pytest.raises(Exception):
        SymmetricFramework(gg, 1, {}, [(Fraction(2), Fraction(0))])
    with pytest.raises(ScopeError):
        SymmetricFramework(gg, 2, {}, [(Fraction(1), Fraction(0), Fraction(0))])


# ---------------------------------------------------------------------------
# symmetric analysis

def test_z2_symmetric_isostatic():
    v = symmetric_analyze(load_gain("fig2_z2_quotient.json"), 1)
    assert v.independent and v.rigid and v.certified
    assert (v.rank, v.rows, v.cols) == (14, 14, 15)


def test_z4_symmetric_flex():
    a = symmetric_analyze_frameworks(load_gain("fig2_z4_quotient.json"), 1)
    v = a.verdict
    assert not v.rigid and v.nontrivial_motions >= 1
    full = build_rigidity_matrix(a.framework.lifted())
    w = a.framework.lift_vector(v.witness)
    assert not any(full.matrix.matvec(w))
    from varsphere.rigidity import trivial_motion_basis
    T = trivial_motion_basis(a.framework.lifted(), full)
    assert not exact.in_span(w, T)


def test_trivial_group_matches_analyze(fig1a, fig1b):
    for g in (fig1a, fig1b):
        gg = GainGraph(cyclic_group(1, dim=3), g.n, [(i, j, 0) for i, j in g.edges], g.colouring)
        sv = symmetric_analyze(gg, 2)
        v = analyze(g, 2)
        assert (sv.rank, sv.rigid, sv.independent, sv.trivial_dimension) == \
            (v.rank, v.rigid, v.independent, v.trivial_dimension)


@pytest.mark.parametrize("name,d", [("fig2_z2_quotient.json", 1), ("fig2_z4_quotient.json", 1),
                                    ("two_triangles_gain.json", 2)])
def test_orbit_kernel_lifts_into_full_kernel(name, d):
    gg = load_gain(name)
    sf = sample_symmetric_framework(gg, d, np.random.default_rng(4))
    orbit = build_orbit_matrix(sf)
    full = build_rigidity_matrix(sf.lifted())
    for k in orbit.kernel:
        assert not any(full.matrix.matvec(sf.lift_vector(k)))
    for t in trivial_symmetric_basis(sf):
        assert orbit.annihilates(t)


def _projected(sf):
    pos = []
    for i in sf.gain_graph.vertices:
        c = sf.gain_graph.colour(i)
        r = 1 if c is None else sf.radii[c]
        pos.append(tuple(x / r for x in sf.positions[i - 1]))
    gg = sf.gain_graph
    return SymmetricFramework(GainGraph(gg.rep, gg.n, gg.edges, {}), sf.d, {}, pos)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1), st.sampled_from([0, 2, 3, 4, 5, 6]))
def test_orbit_rank_ceiling(seed, r):
    rng = np.random.default_rng(seed)
    rep = REPS[r]
    d = rep.dim - 1
    gg = _random_gain_graph(rng, rep, int(rng.integers(1, 5)), int(rng.integers(1, 9)), colours=3)
    sf = sample_symmetric_framework(gg, d, rng)
    rank = build_orbit_matrix(sf).rank
    fixed = build_orbit_matrix(_projected(sf)).rank
    t = invariant_dimension(rep, range(rep.order))
    assert rank <= fixed + max(0, min(gg.k, gg.n - t))


# ---------------------------------------------------------------------------
# symmetric counts

def test_z2_counts_pass():
    rep = corollary_counts(load_gain("fig2_z2_quotient.json"), 1)
    assert rep.case == "rotation"
    assert (rep.edge_count, rep.global_required) == (8, 8)
    assert rep.ok


def test_z4_counts_fail_globally():
    rep = corollary_counts(load_gain("fig2_z4_quotient.json"), 1)
    assert (rep.edge_count, rep.global_required) == (4, 5)
    assert not rep.global_ok


def test_two_triangles_counterexample():
    gg = load_gain("two_triangles_gain.json")
    rep = corollary_counts(gg, 2)
    assert rep.case == "axial"
    assert rep.weak_ok
    assert not rep.subsets_ok
    assert len(rep.witness) == len(gg.edges)
    assert rep.witness_bound == 11
    assert rep.witness_class == "unbalanced"


def test_counts_scope():
    with pytest.raises(ScopeError):
        corollary_counts(load_gain("fig2_z2_quotient.json"), 2)


def test_reflection_and_dihedral_counts():
    # one vertex with a mirror loop: |E0| = 1 = |V0| + min{k, 0}
    gg = GainGraph(reflection_group(), 1, [(1, 1, 1)])
    rep = corollary_counts(gg, 1)
    assert rep.case == "reflection" and rep.ok
    D = dihedral_group(4)
    gg = gain_graph_from_dict({"group": {"preset": "dihedral", "order": 4},
                               "vertices": [{"id": 1}],
                               "edges": [{"from": 1, "to": 1, "gain": "r"},
                                         {"from": 1, "to": 1, "gain": "s"}]})
    assert gg.rep.order == D.order
    rep = corollary_counts(gg, 1)
    assert rep.case == "dihedral"
    assert (rep.edge_count, rep.global_required) == (2, 1)
    assert not rep.ok


def test_rotation_counts_necessary_on_random_instances():
    # a symmetric isostatic framework always passes the counts
    rng = np.random.default_rng(21)
    seen = 0
    for _ in range(300):
        gg = _random_gain_graph(rng, cyclic_group(2), int(rng.integers(2, 5)), int(rng.integers(2, 8)), 3)
        try:
            lift(gg)
            v = symmetric_analyze(gg, 1, trials=2, seed=int(rng.integers(1 << 30)))
        except Exception:
            continue
        if v.independent and v.rigid:
            seen += 1
            assert corollary_counts(gg, 1).ok
    assert seen >= 5


def test_witness_helper_on_orbit_kernel():
    a = symmetric_analyze_frameworks(load_gain("fig2_z4_quotient.json"), 1)
    w = nontrivial_witness(a.bundle.kernel, a.trivial)
    assert a.bundle.annihilates(w)
