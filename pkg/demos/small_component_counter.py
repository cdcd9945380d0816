"""
Deterministic small-component counting
======================================

The counter tracks the exact number of components with at most
``floor(1/eps)`` vertices.  Every update is handled with a few truncated
searches, so the cost does not grow with the graph.
"""
from dynmsf import new_graph, static_ncc, exact_ncc
from dynmsf.oracle import exact_small_cc

g = new_graph(12, [(0, 1, 1), (1, 2, 1), (3, 4, 1), (5, 6, 1), (6, 7, 1), (7, 8, 1)])
c = static_ncc(g, eps=0.34, attach=True)        # K = 2
print("K =", c.K, " small components:", c.estimate, " all components:", exact_ncc(g))

g.insert(2, 3, 1.0)      # the pair {3,4} joins the path 0-1-2 and leaves the small class
print("after insert(2,3):", c.estimate, exact_small_cc(g, c.K)[0])
g.delete(0, 1)           # 0 becomes isolated, a new small component
print("after delete(0,1):", c.estimate, exact_small_cc(g, c.K)[0])
g.delete(6, 7)           # 5-6 is now small, 7-8 is small too
print("after delete(6,7):", c.estimate, exact_small_cc(g, c.K)[0])
