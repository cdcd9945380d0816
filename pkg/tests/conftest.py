import itertools
import random

import networkx as nx
import pytest

from dynmsf.graph import DynamicGraph


def random_edges(n, p, W=1.0, seed=None, adversarial=False):
    """G(n, p) with weights uniform in [1, W], or drawn from the level
    boundaries and their neighbours when ``adversarial``."""
    rnd = random.Random(seed)
    picks = [1.0, float(W), (1.0 + W) / 2]
    out = []
    for u in range(n):
        for v in range(u + 1, n):
            if rnd.random() < p:
                if adversarial:
                    w = rnd.choice(picks + [min(W, 1.0 + rnd.random() * 1e-9)])
                else:
                    w = rnd.uniform(1.0, W)
                out.append((u, v, w))
    return out


def to_nx(g):
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_weighted_edges_from(g.edges())
    return h


def nx_msf_weight(g):
    return sum(d["weight"] for _, _, d in nx.minimum_spanning_edges(to_nx(g), data=True))


def nx_ncc(g):
    return nx.number_connected_components(to_nx(g))


def brute_msf_weight(n, edges):
    """Minimum over all maximal forests, by enumerating edge subsets."""
    h = nx.Graph()
    h.add_nodes_from(range(n))
    h.add_weighted_edges_from(edges)
    k = n - nx.number_connected_components(h)
    best = None
    for sub in itertools.combinations(edges, k):
        f = nx.Graph()
        f.add_nodes_from(range(n))
        f.add_weighted_edges_from(sub)
        if nx.is_forest(f):
            w = sum(e[2] for e in sub)
            best = w if best is None else min(best, w)
    return 0.0 if best is None else best


def replay_random(g, steps, seed, weight=lambda r: 1.0, insert_bias=0.5):
    """Yield random valid updates (applied by the caller) as (kind, u, v, w)."""
    rnd = random.Random(seed)
    present = {(u, v) for u, v, _ in g.edges()}
    present = list(present)
    n = g.n
    for _ in range(steps):
        if present and (rnd.random() >= insert_bias or len(present) == n * (n - 1) // 2):
            i = rnd.randrange(len(present))
            e = present[i]
            present[i] = present[-1]
            present.pop()
            yield "D", e[0], e[1], None
        else:
            while True:
                u, v = rnd.randrange(n), rnd.randrange(n)
                if u != v and not g.has_edge(u, v):
                    break
            e = (min(u, v), max(u, v))
            present.append(e)
            yield "I", e[0], e[1], weight(rnd)


@pytest.fixture
def path3():
    return DynamicGraph(3, [(0, 1, 1.0), (1, 2, 1.0)])


# -- acceptance reporting ----------------------------------------------------

_CRITERIA = {}


@pytest.fixture
def criterion():
    """Record ``(number, title, passed, detail)`` for the summary, then assert."""

    def record(number, title, passed, detail):
        _CRITERIA[number] = (title, bool(passed), detail)
        assert passed, f"criterion {number} ({title}) failed: {detail}"

    return record


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        title, passed, detail = _CRITERIA[number]
        terminalreporter.write_line(
            f"criterion {number:2d} {'PASS' if passed else 'FAIL'}  {title}: {detail}")
