"""
Tracking the MSF weight under updates
=====================================

Run both estimators over one random stream and compare them with Kruskal
every few hundred updates.  The deterministic one is always within the
``(1 +- eps)`` envelope; the randomized one is within it with high probability.
"""
from dynmsf import DynamicGraph, MsfEstimator, kruskal_msf_weight
from dynmsf.bench import gen_random_stream, Checkpoint

n, W, eps = 300, 4, 0.5
recs = gen_random_stream(n, W, 2000, 0.55, seed=11)
ops = [r for r in recs[1:] if not isinstance(r, Checkpoint)]

det = MsfEstimator(DynamicGraph(n, W=W), eps, W, "det")
rnd = MsfEstimator(DynamicGraph(n, W=W), eps, W, "rand", p=0.05, seed=11)
print("levels:", det.r + 1, " eps' det/rand:", det.level_eps, rnd.level_eps)
print(f"{'i':>5} {'exact':>8} {'det':>9} {'rand':>9}")
for i, op in enumerate(ops, 1):
    det.update(op)
    rnd.update(op)
    if i % 250 == 0:
        M = kruskal_msf_weight(det.graph)
        print(f"{i:5d} {M:8.1f} {det.estimate:9.2f} {rnd.estimate:9.2f}")
