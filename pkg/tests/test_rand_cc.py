import math
import random

import numpy as np
import pytest

from dynmsf.errors import EmptySupport, TParamTooSmall, TParamViolation
from dynmsf.graph import DynamicGraph, Update, new_graph
from dynmsf.oracle import exact_ncc, exact_ncc_nis
from dynmsf.rand_cc import (
    EstimateJob,
    ExactCcTracker,
    PhaseEstimator,
    StaticEstimateConfig,
    corollary_error,
    corollary_estimator,
    epsn_estimator,
    phase_length,
    phase_new,
    static_estimate_ncc_nis,
)

from conftest import random_edges, replay_random


class FixedDraw:
    """Stand-in generator whose single uniform draw is a chosen slot."""

    def __init__(self, slot):
        self.slot = slot

    def integers(self, low, high=None, size=None):
        return np.array([self.slot] * size)

    def multinomial(self, n, pvals):
        out = np.zeros(len(pvals), dtype=int)
        out[self.slot] = n
        return out


def test_config_arithmetic():
    cfg = StaticEstimateConfig(0.2, 0.05)
    assert cfg.samples == math.ceil(2 * math.log(40) / 0.04)
    assert cfg.truncation == 10
    assert StaticEstimateConfig(0.9, 0.9).samples >= 1
    assert StaticEstimateConfig(0.99, 0.5).truncation >= 2
    with pytest.raises(ValueError):
        StaticEstimateConfig(1.0, 0.1)


def test_single_edge_is_deterministic():
    g = new_graph(10, [(3, 7, 1)])
    for seed in range(5):
        cfg = StaticEstimateConfig(0.3, 0.1)
        assert static_estimate_ncc_nis(g, cfg, np.random.default_rng(seed)) == 1.0


def test_disjoint_edges():
    k = 6
    g = new_graph(2 * k + 3, [(2 * i, 2 * i + 1, 1) for i in range(k)])
    est = static_estimate_ncc_nis(g, StaticEstimateConfig(0.5, 0.2), np.random.default_rng(0))
    assert est == pytest.approx(k, abs=1e-12)


def test_empty_support():
    with pytest.raises(EmptySupport):
        static_estimate_ncc_nis(new_graph(4), StaticEstimateConfig(0.5, 0.2), np.random.default_rng(0))


def test_monte_carlo_envelope():
    eps = 0.2
    cfg = StaticEstimateConfig(eps, 0.05)
    rng = np.random.default_rng(11)
    hits = 0
    runs = 200
    for t in range(runs):
        g = new_graph(100, random_edges(100, 0.05, seed=1000 + t))
        truth = exact_ncc_nis(g)
        if abs(static_estimate_ncc_nis(g, cfg, rng) - truth) <= eps * g.nis:
            hits += 1
    assert hits >= 0.95 * runs


def test_unbiased_single_draw():
    # E[b] over one uniform draw equals the component count of the
    # non-isolated part when no component exceeds the truncation
    g = new_graph(9, [(0, 1, 1), (1, 2, 1), (4, 5, 1), (6, 7, 1), (7, 8, 1), (6, 8, 1)])
    cfg = StaticEstimateConfig(1 / 3.5, 0.5, c1=1e-9)
    assert cfg.samples == 1 and cfg.truncation >= 7
    vals = [static_estimate_ncc_nis(g, cfg, FixedDraw(j)) for j in range(g.nis)]
    assert sum(vals) / g.nis == pytest.approx(exact_ncc_nis(g), rel=1e-12)


def test_truncation_zeroes_large_components():
    g = new_graph(12, [(i, i + 1, 1) for i in range(11)])
    cfg = StaticEstimateConfig(0.5, 0.2)
    assert static_estimate_ncc_nis(g, cfg, np.random.default_rng(0)) == 0.0


def test_phase_new_examples():
    g = new_graph(10)
    e = phase_new(g, 0.2, 0.05, 1, rng=np.random.default_rng(0))
    assert e.estimate == 10 and e.length == 1
    k = 4
    g = new_graph(2 * k, [(2 * i, 2 * i + 1, 1) for i in range(k)])
    e = phase_new(g, 0.2, 0.05, 2 * k)
    assert e.estimate == 2 * k - k
    g = new_graph(30, random_edges(30, 0.1, seed=2))
    assert phase_new(g, 0.2, 0.05, g.nis).estimate == exact_ncc(g)
    with pytest.raises(TParamTooSmall):
        phase_new(g, 0.2, 0.05, g.nis - 1)


def test_phase_length():
    assert phase_length(0.1, 400) == 10
    assert phase_length(0.2, 100) == 5
    assert phase_length(0.01, 3) == 1
    assert phase_length(0.2, 0) == 1


def test_recompute_schedule():
    g = new_graph(450)
    e = PhaseEstimator(g, 0.1, 0.05, 400, rng=np.random.default_rng(0), fixed_t=400)
    for i in range(30):
        e.update(Update.insert(2 * i, 2 * i + 1, 1))
        assert e.phases == (i + 1) // 10


def test_estimate_frozen_between_boundaries():
    g = new_graph(500)
    e = PhaseEstimator(g, 0.1, 0.05, 400, rng=np.random.default_rng(0), fixed_t=400)
    seen = []
    for i in range(25):
        e.update(Update.insert(2 * i, 2 * i + 1, 1))
        seen.append(e.estimate)
    # only updates 10 and 20 may move it
    changes = [i + 1 for i in range(1, 25) if seen[i] != seen[i - 1]]
    assert set(changes) <= {10, 20}
    assert seen[:9] == [500.0] * 9
    assert e.value() == e.value()


def test_t_contract_enforced():
    g = new_graph(10)
    e = PhaseEstimator(g, 0.2, 0.05, 2)
    with pytest.raises(TParamViolation):
        e.update(Update.insert(0, 1, 1), 1)
    g = new_graph(10)
    e = PhaseEstimator(g, 0.2, 0.05, 2)
    with pytest.raises(TParamViolation):
        e.update(Update.insert(0, 1, 1), 5)
    e = PhaseEstimator(new_graph(10), 0.2, 0.05, 2)
    with pytest.raises(TypeError):
        e.update(Update.insert(0, 1, 1))


def test_self_loop_pair():
    g = DynamicGraph(6, [(0, 1, 1)], allow_self_loops=True)
    e = PhaseEstimator(g, 0.2, 0.05, 2, rng=np.random.default_rng(0))
    e.update(Update.insert(4, 4), 3)
    assert g.nis == 3
    e.update(Update.delete(4, 4), 2)
    assert g.nis == 2
    assert exact_ncc(g) == 5
    assert abs(e.estimate - 5) <= 0.2 * 2


def test_toggle_adversary():
    n, eps, p = 60, 0.2, 0.05
    trials, bad_trials = 40, 0
    for t in range(trials):
        g = new_graph(n, random_edges(n, 0.04, seed=t))
        e = PhaseEstimator(g, eps, p, g.nis, rng=np.random.default_rng(t))
        u, v = 0, 1
        if g.has_edge(u, v):
            g.delete(u, v)
            e = PhaseEstimator(g, eps, p, g.nis, rng=np.random.default_rng(t))
        bad = False
        for i in range(200):
            op = Update.insert(u, v, 1) if not g.has_edge(u, v) else Update.delete(u, v)
            e_update_with_nis(e, op)
            if abs(e.estimate - exact_ncc(g)) > eps * g.nis:
                bad = True
        bad_trials += bad
    assert bad_trials <= (p + 0.03) * trials


def e_update_with_nis(e, op):
    """Apply ``op`` with ``T`` equal to the post-update non-isolated count."""
    g = e.graph
    d = 0
    if op.u != op.v:
        for x in (op.u, op.v):
            deg = g.degree(x)
            if op.is_insert and deg == 0:
                d += 1
            elif not op.is_insert and deg == 1:
                d -= 1
    e.update(op, g.nis + d)


def test_seed_determinism():
    def trajectory(seed):
        g = new_graph(40, random_edges(40, 0.05, seed=5))
        e = PhaseEstimator(g, 0.3, 0.1, g.nis, rng=np.random.default_rng(seed))
        out = []
        for kind, u, v, w in replay_random(g, 300, 9):
            e_update_with_nis(e, Update(kind, u, v, w))
            out.append(e.estimate)
        return out

    assert trajectory(1) == trajectory(1)
    assert trajectory(1) != trajectory(2)


def test_no_sample_state_kept_between_phases():
    g = new_graph(40, random_edges(40, 0.1, seed=3))
    e = PhaseEstimator(g, 0.3, 0.1, g.nis, rng=np.random.default_rng(0))
    for kind, u, v, w in replay_random(g, 100, 1):
        e_update_with_nis(e, Update(kind, u, v, w))
        assert e.job is None
        held = [x for x in vars(e).values() if isinstance(x, (list, dict, set)) and x]
        assert held == []


def test_epsn_mode():
    g = new_graph(100)
    e = epsn_estimator(g, 0.2, 0.05, rng=np.random.default_rng(0))
    assert e.length == 5
    rnd = random.Random(0)
    for _ in range(60):
        u, v = rnd.sample(range(100), 2)
        op = Update.delete(u, v) if g.has_edge(u, v) else Update.insert(u, v, 1)
        e.update(op)
    assert abs(e.estimate - exact_ncc(g)) <= 0.2 * 100


def test_epsn_on_empty_stream_stays_at_n():
    g = new_graph(50)
    e = epsn_estimator(g, 0.2, 0.05)
    for _ in range(3):
        e.update(Update.insert(0, 1, 1))
        e.update(Update.delete(0, 1))
        assert abs(e.estimate - 50) <= 0.2 * 50


def test_corollary_parameters():
    n = 1000
    assert corollary_error(n, 0.1) == pytest.approx(0.1 * 100 * math.log(1000) ** (2 / 3))
    e = corollary_estimator(new_graph(n), 0.1)
    assert isinstance(e, PhaseEstimator)
    assert e.eps == pytest.approx(0.1 * n ** (-1 / 3) * math.log(n) ** (2 / 3))
    assert e.p == pytest.approx(1 / n)
    assert isinstance(corollary_estimator(new_graph(n), 0.001), ExactCcTracker)


def test_exact_tracker():
    g = new_graph(5)
    t = ExactCcTracker(g)
    t.update(Update.insert(0, 1, 1))
    assert t.estimate == 4


# -- sliced (worst-case) mode --------------------------------------------


def _stream(seed, n=60, steps=200):
    g = new_graph(n, random_edges(n, 0.05, seed=seed))
    scratch = g.copy()
    ops = []
    for r in replay_random(scratch, steps, seed):
        ops.append(Update(*r))
        scratch.apply(ops[-1])
    return g, ops


def test_large_budget_matches_amortized():
    g1, ops = _stream(4)
    g2 = g1.copy()
    a = PhaseEstimator(g1, 0.3, 0.1, g1.nis, rng=np.random.default_rng(7))
    b = PhaseEstimator(g2, 0.3, 0.1, g2.nis, rng=np.random.default_rng(7),
                       slice_budget=10**9)
    for op in ops:
        e_update_with_nis(a, op)
        e_update_with_nis(b, op)
        assert a.estimate == b.estimate


def test_budget_finishes_within_a_phase():
    g, ops = _stream(5)
    e = PhaseEstimator(g, 0.3, 0.1, g.nis, rng=np.random.default_rng(1))
    cfg = e.cfg
    finished = 0
    for op in ops:
        e.slice_budget = math.ceil(cfg.samples * cfg.truncation ** 2 / e.length)
        e_update_with_nis(e, op)
        if e.job is None:
            finished += 1
        else:
            # a job is only ever in flight during its own phase
            assert e.since < e.length
    assert finished > 0


def test_sliced_estimate_swaps_atomically():
    g, ops = _stream(6, n=80, steps=300)
    e = PhaseEstimator(g, 0.3, 0.1, g.nis, rng=np.random.default_rng(2), slice_budget=50)
    swaps = []
    real_swap = e._swap

    def counting_swap():
        assert e.job.done
        swaps.append(e.i)
        real_swap()

    e._swap = counting_swap
    changed = 0
    for op in ops:
        before = e.estimate
        e_update_with_nis(e, op)
        if e.estimate != before:
            changed += 1
            assert swaps and swaps[-1] == e.i
        if e.job is not None:
            assert e.job.units_done < e.job.units_total
    assert changed > 0


def test_job_units():
    g = new_graph(30, random_edges(30, 0.1, seed=1))
    cfg = StaticEstimateConfig(0.3, 0.1)
    job = EstimateJob(g, cfg, np.random.default_rng(0))
    steps = 0
    while not job.step(7):
        steps += 1
    assert job.units_done == cfg.samples
    assert steps == math.ceil(cfg.samples / 7) - 1
    ref = EstimateJob(g, cfg, np.random.default_rng(0)).run()
    assert job.result() == pytest.approx(ref)
