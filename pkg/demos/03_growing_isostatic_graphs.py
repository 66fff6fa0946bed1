"""Henneberg-style growth on concentric spheres, and the one-dof motion filter.

Starting from an edge (d=1) or a triangle (d=2), random legal 0- and
1-extensions are applied; each intermediate graph is re-analysed exactly.
A 1-extension is only used when the new vertex gets a fresh colour or is
uncoloured with uncoloured neighbours.
"""
import numpy as np

from varsphere.generate import one_dof_instances, random_extension
from varsphere.graphs import ColouredGraph
from varsphere.rigidity import analyze, motion_filter_check

rng = np.random.default_rng(7)
for d, g in ((1, ColouredGraph(2, [(1, 2)])), (2, ColouredGraph(3, [(1, 2), (1, 3), (2, 3)]))):
    print(f"d={d}")
    for step in range(6):
        g = random_extension(rng, g, d, max_colours=3)
        v = analyze(g, d, witness=False)
        print(f"  n={g.n} |E|={len(g.edges)} k={g.k} isostatic={v.isostatic}")

# a vertex of degree > d that shares its colour: some flex leaves the
# radii of v and its neighbours alone
print("motion filter on random one-dof frameworks:")
for f, v in one_dof_instances(rng, 5):
    g = f.graph
    print(f"  n={g.n} |E|={len(g.edges)} k={g.k} v={v}: {motion_filter_check(f, v)}")
