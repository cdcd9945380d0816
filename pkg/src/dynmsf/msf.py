"""Dynamic (1+eps)-approximation of the minimum spanning forest weight.

With thresholds ``ell[j] = (1 + eps/2)**j`` and ``G_j`` the subgraph of edges
of weight at most ``ell[j]``, the MSF weight is sandwiched by

    X = n - c[r] * ell[r] + sum_{j<r} (ell[j+1] - ell[j]) * c[j],

``c[j]`` being the number of components of ``G_j``.  The estimator keeps one
component-count estimator per level and evaluates ``X`` on the estimates.
"""

from __future__ import annotations

import numpy as np

from .det_cc import static_ncc
from .errors import EdgeNotFound
from .graph import DynamicGraph, Update
from .oracle import LevelScheme, exact_ncc
from .rand_cc import PhaseEstimator

DETERMINISTIC = "det"
RANDOMIZED = "rand"


class MsfEstimator:
    """Maintains :attr:`estimate` under edge updates of the master graph.

    ``mode`` is ``"det"`` (exact small-component counters, error bound holds
    always) or ``"rand"`` (phase estimators, bound holds with probability
    ``1 - p``).  ``p`` defaults to ``n**-2``.

    The master graph passed in is copied; read the live one from
    :attr:`graph`.
    """

    def __init__(self, g0: DynamicGraph, eps: float, W: float, mode: str = DETERMINISTIC,
                 p=None, seed=None, record_t: bool = False):
        if not 0 < eps <= 1:
            raise ValueError(f"eps must lie in (0, 1], got {eps}")
        if mode not in (DETERMINISTIC, RANDOMIZED):
            raise ValueError(f"unknown mode {mode!r}")
        self.eps = eps
        self.W = W
        self.mode = mode
        self.n = n = g0.n
        self.graph = DynamicGraph(n, g0.edges(), W=W)
        self.scheme = scheme = LevelScheme(eps / 2, W)
        r = scheme.r
        nlev = r + 1
        # lowest level of every master edge, for the matching delete
        self._edge_level: dict[tuple[int, int], int] = {}
        level_lists = [[] for _ in range(nlev)]
        for u, v, w in self.graph.edges():
            j = scheme.level_of(w)
            self._edge_level[(u, v)] = j
            for k in range(j, nlev):
                level_lists[k].append((u, v, w))
        loops = mode == RANDOMIZED
        self.levels = [DynamicGraph(n, lst, W=W, allow_self_loops=loops) for lst in level_lists]

        if mode == DETERMINISTIC:
            self.level_eps = eps / (12 * W)
            self.counters = [static_ncc(h, self.level_eps, attach=True) for h in self.levels]
            self.p = None
        else:
            self.level_eps = eps / (24 * W)
            self.p = p if p is not None else max(n, 2) ** -2.0
            level_p = self.p / nlev
            seeds = np.random.SeedSequence(seed).spawn(nlev)
            T0 = self.graph.nis
            self.counters = [
                PhaseEstimator(h, self.level_eps, level_p, T0,
                               rng=np.random.default_rng(ss), record_t=record_t)
                for h, ss in zip(self.levels, seeds)
            ]
        self.updates = 0
        self.estimate = self._combine()

    @property
    def r(self) -> int:
        return self.scheme.r

    def level_estimates(self) -> list[float]:
        return [float(c.estimate) for c in self.counters]

    def _combine(self) -> float:
        return self.n + self.scheme.combine(self.level_estimates())

    def update(self, op: Update) -> None:
        g = self.graph
        u, v = op.u, op.v
        key = (u, v) if u < v else (v, u)
        if op.is_insert:
            g.apply(op)
            j = self.scheme.level_of(float(op.w))
            self._edge_level[key] = j
        else:
            if not g.has_edge(u, v):
                raise EdgeNotFound(f"edge ({u}, {v}) not present")
            g.apply(op)
            j = self._edge_level.pop(key)
        plain = Update(op.kind, u, v, op.w)
        if self.mode == DETERMINISTIC:
            for k in range(j, len(self.levels)):
                self.levels[k].apply(plain)
        else:
            T = g.nis
            # an endpoint isolated in the master graph gains degree from the loop
            t_loop = T + (0 if g.degree(u) > 0 else 1)
            add_loop = Update.insert(u, u)
            drop_loop = Update.delete(u, u)
            for k, est in enumerate(self.counters):
                if k >= j:
                    est.update(plain, T)
                else:
                    est.update(add_loop, t_loop)
                    est.update(drop_loop, T)
        self.updates += 1
        self.estimate = self._combine()

    def insert(self, u: int, v: int, w: float) -> None:
        self.update(Update.insert(u, v, w))

    def delete(self, u: int, v: int) -> None:
        self.update(Update.delete(u, v))

    def check_levels(self) -> None:
        """Assert every level holds exactly the master edges of weight at most
        its threshold, and no self-loop survives."""
        edges = list(self.graph.edges())
        for t, h in zip(self.scheme.ell, self.levels):
            want = {(a, b) for a, b, w in edges if w <= t}
            got = {(a, b) for a, b, _ in h.edges()}
            assert got == want, f"level {t}: {len(got ^ want)} mismatched edges"
            assert not h.loops, "stray self-loop in a level graph"


def msf_new(g0: DynamicGraph, eps: float, W: float, mode: str = DETERMINISTIC, **kw) -> MsfEstimator:
    return MsfEstimator(g0, eps, W, mode, **kw)


def exact_level_counts(est: MsfEstimator) -> list[int]:
    return [exact_ncc(h) for h in est.levels]
