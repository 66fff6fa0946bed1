"""Three concentric rings of four vertices under a half-turn and a quarter-turn.

The quotient gain graphs carry the symmetry; the orbit rigidity matrix
decides symmetric rigidity with one block per orbit.  The half-turn
version is symmetric isostatic.  The quarter-turn version misses the
global count by one and flexes, and the flex lifts to the full graph.
"""
import json
from importlib import resources

from varsphere import exact
from varsphere.graphs import parse_graph
from varsphere.rigidity import build_rigidity_matrix, trivial_motion_basis
from varsphere.symmetry import (action_from_dict, corollary_counts, gain_graph_from_dict, quotient,
                                symmetric_analyze_frameworks)

fix = resources.files("varsphere") / "fixtures"
g = parse_graph((fix / "fig2.json").read_text())
print(f"ring graph: n={g.n} |E|={len(g.edges)} k={g.k}")

for name in ("fig2_z2_action.json", "fig2_z4_action.json"):
    act = action_from_dict(json.loads((fix / name).read_text()), g.n)
    gg = quotient(g, act).gain_graph
    c = corollary_counts(gg, 1)
    a = symmetric_analyze_frameworks(gg, 1)
    v = a.verdict
    print(f"{name}: |V0|={gg.n} |E0|={len(gg.edges)}; global count {c.edge_count} vs {c.global_required}")
    print(f"  orbit matrix {v.rows}x{v.cols}, rank {v.rank}, symmetric trivial {v.trivial_dimension}, "
          f"symmetric isostatic {v.isostatic}, symmetric flexes {v.nontrivial_motions}")
    if v.witness is not None:
        sf = a.framework
        full = build_rigidity_matrix(sf.lifted())
        w = sf.lift_vector(v.witness)
        print("  lifted flex in full kernel:", not any(full.matrix.matvec(w)),
              "| nontrivial:", not exact.in_span(w, trivial_motion_basis(sf.lifted(), full)))

# two triangles with quarter-turn loops around the z-axis, one sphere
tt = json.loads((fix / "two_triangles_gain.json").read_text())
r = corollary_counts(gain_graph_from_dict(tt), 2)
print(f"two triangles: weaker counts pass={r.weak_ok}, axial counts pass={r.subsets_ok}, "
      f"violating set of {len(r.witness)} edges with bound {r.witness_bound}")
