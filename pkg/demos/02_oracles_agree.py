"""Random coloured graphs: counts, matroid rank, covers and exact rank side by side.

For d=1 g1-tightness decides isostaticity; for d=2 the same holds for
f2-tightness with at most two colours.  The matroid rank (a min over
edge subsets) and the 1-thin cover value should both equal the rank of
the rigidity matrix minus the number of vertices.
"""
import numpy as np

from varsphere import counts, covers
from varsphere.generate import random_colouring, random_connected_graph
from varsphere.rigidity import analyze_frameworks

rng = np.random.default_rng(2024)
rows = []
while len(rows) < 40:
    d = int(rng.integers(1, 3))
    n = int(rng.integers(d + 3, 8))
    col = random_colouring(rng, n, 2)
    k = len(set(col.values()))
    target = counts.complete_rank(n, d) + (min(k, n - 2) if d == 1 else k)
    g = random_connected_graph(rng, n, target + int(rng.integers(-1, 2)))
    if g is None:
        continue
    g = g.with_colouring(col)
    tight = counts.is_tight(g, d)
    v = analyze_frameworks(g, d, trials=3, seed=len(rows), witness=False, early_stop=True).verdict
    mr = counts.matroid_rank(g, d)
    cover = covers.cover_rank(g, 2).value if d == 2 else None
    rows.append((d, n, len(g.edges), k, tight, v.isostatic, mr, v.rank - n, cover))

print(" d  n  |E|  k  tight  isostatic  matroid  rank-n  cover")
for d, n, m, k, t, iso, mr, geo, cov in rows:
    print(f"{d:>2} {n:>2} {m:>4} {k:>2}  {str(t):>5}  {str(iso):>9}  {mr:>7}  {geo:>6}  {'' if cov is None else cov:>5}")
print("tightness = isostaticity everywhere:", all(r[4] == r[5] for r in rows))
print("matroid rank = rank - n everywhere:", all(r[6] == r[7] for r in rows))
print("cover value = matroid rank (d=2):", all(r[8] == r[6] for r in rows if r[8] is not None))
