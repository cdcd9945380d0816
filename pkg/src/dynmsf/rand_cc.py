"""Randomized estimation of the number of connected components.

``static_estimate_ncc_nis`` samples non-isolated vertices, runs a truncated
BFS from each and averages ``1/|C(u)|``; scaled by the number of non-isolated
vertices this estimates the component count of the non-isolated part.

:class:`PhaseEstimator` turns the static estimator into a dynamic one.  The
caller supplies, with every update, an integer ``T >= nis`` that moves by at
most 2 per update; the estimate is refreshed at the end of phases of
``ceil(eps * Psi / 4)`` updates, ``Psi`` being ``T`` at the previous phase
end, and is within ``eps * T`` of the truth between refreshes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import EmptySupport, TParamTooSmall, TParamViolation
from .graph import DynamicGraph, Update, explore
from .oracle import exact_ncc


@dataclass(frozen=True)
class StaticEstimateConfig:
    eps: float
    p: float
    c1: float = 2.0
    samples: int = field(init=False)
    truncation: int = field(init=False)

    def __post_init__(self):
        if not 0 < self.eps < 1:
            raise ValueError(f"eps must lie in (0, 1), got {self.eps}")
        if not 0 < self.p < 1:
            raise ValueError(f"p must lie in (0, 1), got {self.p}")
        s = math.ceil(self.c1 * math.log(2.0 / self.p) / self.eps ** 2)
        object.__setattr__(self, "samples", max(1, s))
        object.__setattr__(self, "truncation", max(2, math.ceil(2.0 / self.eps)))


class EstimateJob:
    """A resumable run of the static estimator.

    The sample multiset is drawn when the job is created; :meth:`step`
    then resolves samples in order, each resolved sample being one unit of
    work.  BFS results are shared between samples that land in the same
    component, as long as the graph has not changed in between.
    """

    def __init__(self, g: DynamicGraph, cfg: StaticEstimateConfig, rng):
        self.graph = g
        self.cfg = cfg
        self.nis = g.nis
        if self.nis == 0:
            raise EmptySupport("graph has no non-isolated vertex")
        self._elems, self._counts = g.degrees.sample_counts(rng, cfg.samples)
        self._idx = 0
        self._left = self._counts[0] if self._counts else 0
        self._total = 0.0
        self._memo: dict[int, float] = {}
        self._memo_time = g.time
        self.units_done = 0

    @property
    def done(self) -> bool:
        return self._idx >= len(self._elems)

    @property
    def units_total(self) -> int:
        return self.cfg.samples

    def _beta(self, u):
        g = self.graph
        if g.time != self._memo_time:
            self._memo.clear()
            self._memo_time = g.time
        b = self._memo.get(u)
        if b is None:
            seen, complete = explore(g, u, self.cfg.truncation)
            b = 1.0 / len(seen) if complete else 0.0
            for x in seen:
                self._memo[x] = b
        return b

    def step(self, budget: int) -> bool:
        """Resolve up to ``budget`` samples; returns :attr:`done`."""
        elems, counts = self._elems, self._counts
        while budget > 0 and self._idx < len(elems):
            take = min(budget, self._left)
            self._total += take * self._beta(elems[self._idx])
            self._left -= take
            budget -= take
            self.units_done += take
            if self._left == 0:
                self._idx += 1
                if self._idx < len(elems):
                    self._left = counts[self._idx]
        return self.done

    def run(self) -> float:
        self.step(self.cfg.samples)
        return self.result()

    def result(self) -> float:
        if not self.done:
            raise RuntimeError("estimate requested before the job finished")
        return self.nis * self._total / self.cfg.samples


def static_estimate_ncc_nis(g: DynamicGraph, cfg: StaticEstimateConfig, rng) -> float:
    """Estimate of the component count of ``g``'s non-isolated part, within
    ``cfg.eps * nis`` with probability at least ``1 - cfg.p``.

    Raises :class:`EmptySupport` when ``g`` has no edges.
    """
    return EstimateJob(g, cfg, rng).run()


def phase_length(eps: float, psi: int) -> int:
    return max(1, math.ceil(eps * psi / 4))


class PhaseEstimator:
    """Dynamic component-count estimator with additive error ``eps * T``.

    The estimator owns mutation of ``g``: route every update through
    :meth:`update`.  ``fixed_t`` pins the T-parameter (the ``eps * n`` mode).
    With ``slice_budget`` set, the recomputation started at a phase end is
    spread over the following updates, ``slice_budget`` samples at a time, and
    the estimate is swapped in only once the job completes.
    """

    def __init__(self, g: DynamicGraph, eps: float, p: float, T0: int,
                 rng=None, fixed_t=None, slice_budget=None, record_t=False):
        if not 0 < eps < 1:
            raise ValueError(f"eps must lie in (0, 1), got {eps}")
        if T0 < g.nis:
            raise TParamTooSmall(f"T0={T0} below nis={g.nis}")
        self.graph = g
        self.n = g.n
        self.eps = eps
        self.p = p
        self.cfg = StaticEstimateConfig(eps / 4, p)
        self.rng = rng if rng is not None else np.random.default_rng()
        self.fixed_t = fixed_t
        self.slice_budget = slice_budget
        self.estimate = float(exact_ncc(g))
        self.psi = T0
        self.nis = g.nis
        self.length = phase_length(eps, T0)
        self.i = 0
        self.since = 0
        self.last_t = T0
        self.phases = 0
        self.job = None
        self.t_history = [T0] if record_t else None

    def update(self, op: Update, T=None) -> None:
        if T is None:
            T = self.fixed_t
            if T is None:
                raise TypeError("T-parameter required (no fixed_t configured)")
        g = self.graph
        g.apply(op)
        self.nis = g.nis
        if T < self.nis:
            raise TParamViolation(f"T={T} below nis={self.nis} at update {self.i + 1}")
        if abs(T - self.last_t) > 2:
            raise TParamViolation(f"T moved {self.last_t} -> {T} at update {self.i + 1}")
        self.last_t = T
        if self.t_history is not None:
            self.t_history.append(T)
        self.i += 1
        self.since += 1
        if self.since >= self.length:
            self._end_phase(T)
        if self.slice_budget is not None and self.job is not None:
            self.advance_slice(self.slice_budget)

    def _end_phase(self, T):
        self.phases += 1
        g = self.graph
        if self.slice_budget is None:
            self.estimate = self._fresh_estimate()
        else:
            if self.job is not None:
                self.job.step(self.job.units_total)
                self._swap()
            if g.nis == 0:
                self.estimate = float(self.n)
            else:
                self.job = EstimateJob(g, self.cfg, self.rng)
        self.psi = T
        self.length = phase_length(self.eps, T)
        self.since = 0

    def _fresh_estimate(self) -> float:
        g = self.graph
        if g.nis == 0:
            return float(self.n)
        return EstimateJob(g, self.cfg, self.rng).run() + self.n - g.nis

    def _swap(self):
        job = self.job
        self.estimate = job.result() + self.n - job.nis
        self.job = None

    def advance_slice(self, budget: int) -> None:
        """Push the in-flight recomputation forward by ``budget`` samples."""
        if self.job is None:
            return
        if self.job.step(budget):
            self._swap()

    def value(self) -> float:
        return self.estimate


def phase_new(g: DynamicGraph, eps: float, p: float, T0: int, rng=None, **kw) -> PhaseEstimator:
    return PhaseEstimator(g, eps, p, T0, rng=rng, **kw)


def epsn_estimator(g: DynamicGraph, eps: float, p: float, rng=None, **kw) -> PhaseEstimator:
    """Estimator with error ``eps * n``: the phase estimator with ``T = n``."""
    return PhaseEstimator(g, eps, p, g.n, rng=rng, fixed_t=g.n, **kw)


class ExactCcTracker:
    """Recounts components after every update.  Used where exact recounting
    is cheaper than the sampling estimator."""

    def __init__(self, g: DynamicGraph):
        self.graph = g
        self.estimate = float(exact_ncc(g))

    def update(self, op: Update, T=None) -> None:
        self.graph.apply(op)
        self.estimate = float(exact_ncc(self.graph))


def corollary_error(n: int, eps: float) -> float:
    """``eps * n**(2/3) * ln(n)**(2/3)``."""
    return eps * n ** (2 / 3) * math.log(n) ** (2 / 3)


def corollary_estimator(g: DynamicGraph, eps: float, c: float = 1.0, rng=None):
    """Estimator with error :func:`corollary_error` and failure probability
    ``n**-c``."""
    n = g.n
    if n < 2 or eps < n ** (-2 / 3):
        return ExactCcTracker(g)
    eps_prime = eps * n ** (-1 / 3) * math.log(n) ** (2 / 3)
    return epsn_estimator(g, eps_prime, n ** (-c), rng=rng)
