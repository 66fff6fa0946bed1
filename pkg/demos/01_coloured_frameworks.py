"""Two planar frameworks with the same counts and different verdicts.

fig1a is an uncoloured isostatic graph.  fig1b adds a triangle whose
vertices each get their own sphere; its edge count matches the f2 count
exactly, yet the sampled frameworks always keep one nontrivial motion.
"""
from importlib import resources

from varsphere import counts, exact
from varsphere.graphs import parse_graph
from varsphere.rigidity import analyze_frameworks, trivial_motion_basis


def fixture(name):
    return parse_graph((resources.files("varsphere") / "fixtures" / name).read_text())


for name in ("fig1a.json", "fig1b.json"):
    g = fixture(name)
    s = counts.sparsity_check(g, 2)
    a = analyze_frameworks(g, 2, trials=3, seed=1)
    v = a.verdict
    print(f"{name}: n={g.n} |E|={len(g.edges)} k={g.k}")
    print(f"  f2 count: {s.status} (|E| = {s.edge_count}, count {s.global_count})")
    print(f"  rank {v.rank} / rigidity rank {v.expected_rank}, kernel {v.kernel_dimension}, "
          f"trivial {v.trivial_dimension}")
    print(f"  isostatic: {v.isostatic}")

# the flex of fig1b, scaled to integers
g = fixture("fig1b.json")
a = analyze_frameworks(g, 2, trials=3, seed=1)
w = a.verdict.witness
T = trivial_motion_basis(a.framework, a.bundle)
print("witness lies in the kernel:", not any(a.bundle.matrix.matvec(w)))
print("witness is not trivial:", not exact.in_span(w, T))
moving = sorted({lab[1] for lab, x in zip(a.bundle.col_labels, w) if lab[0] == "p" and x != 0})
print("vertices that move:", moving)
rates = {lab[1]: x for lab, x in zip(a.bundle.col_labels, w) if lab[0] == "r"}
print("radius rates nonzero for:", sorted(c for c, x in rates.items() if x != 0))
