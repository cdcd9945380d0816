"""
Level decomposition of the MSF weight
=====================================

Count components of the subgraphs ``G_i`` (edges of weight at most
``(1+eps)**i``) and combine the counts.  The result never undershoots the
true MSF weight and overshoots by at most a factor ``1 + eps``.
"""
from dynmsf import LevelScheme, formula_x, kruskal_msf_weight, new_graph
import random

rnd = random.Random(1)
n, W = 60, 16
edges = {}
while len(edges) < 120:
    u, v = rnd.sample(range(n), 2)
    edges[min(u, v), max(u, v)] = rnd.randint(1, W)
g = new_graph(n, [(u, v, w) for (u, v), w in edges.items()], W=W)

M = kruskal_msf_weight(g)
print("exact MSF weight:", M)
for eps in (1.0, 0.5, 0.1, 0.01):
    scheme = LevelScheme(eps, W)
    X = formula_x(g, scheme)
    print(f"eps={eps:<5} levels={scheme.r + 1:4d}  X={X:9.3f}  X/M={X / M:.4f}")
