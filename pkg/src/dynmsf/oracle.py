"""Exact ground truth: Kruskal MSF weight, component counts, and the
level-decomposition formula that ties the two together."""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass

from .graph import DynamicGraph


class DisjointSet:
    """Union-find with union by size and path halving."""

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.size = [1] * n
        self.count = n

    def find(self, x: int) -> int:
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]
        self.count -= 1
        return True


class LevelScheme:
    """Geometric weight thresholds ``ell[i] = (1+eps)**i`` for ``0 <= i <= r``,
    where ``r`` is the smallest integer with ``ell[r] >= W``.

    Thresholds are built by repeated multiplication, and ``lam[i]`` is defined
    as ``ell[i+1] - ell[i]`` so the two arrays telescope exactly.
    """

    def __init__(self, eps: float, W: float):
        if eps <= 0:
            raise ValueError("eps must be positive")
        if W < 1:
            raise ValueError("W must be >= 1")
        self.eps = eps
        self.W = W
        base = 1.0 + eps
        ell = [1.0]
        while ell[-1] < W:
            ell.append(ell[-1] * base)
        self.ell = ell
        self.r = len(ell) - 1
        self.lam = [ell[i + 1] - ell[i] for i in range(self.r)]

    @property
    def base(self) -> float:
        return 1.0 + self.eps

    def level_of(self, w: float) -> int:
        """Smallest level ``j`` with ``w <= ell[j]``; the edge belongs to
        levels ``j..r``."""
        for j, t in enumerate(self.ell):
            if w <= t:
                return j
        raise ValueError(f"weight {w} exceeds top threshold {self.ell[-1]}")

    def combine(self, counts) -> float:
        """``n - c[r]*ell[r] + sum(lam[i]*c[i])`` without the ``n`` term."""
        r = self.r
        total = -counts[r] * self.ell[r]
        for i in range(r):
            total += self.lam[i] * counts[i]
        return total

    def __repr__(self):
        return f"LevelScheme(eps={self.eps}, W={self.W}, r={self.r})"


@dataclass
class ExactSnapshot:
    msf: float
    level_ncc: list
    ncc: int
    nis: int


def _edge_list(g):
    return list(g.edges())


def kruskal_msf_weight(g: DynamicGraph) -> float:
    edges = sorted(_edge_list(g), key=lambda e: e[2])
    ds = DisjointSet(g.n)
    total = 0.0
    for u, v, w in edges:
        if ds.union(u, v):
            total += w
    return total


def component_sizes(g: DynamicGraph) -> list[int]:
    ds = DisjointSet(g.n)
    for u, v, _ in g.edges():
        ds.union(u, v)
    return list(Counter(ds.find(x) for x in range(g.n)).values())


def exact_ncc(g: DynamicGraph) -> int:
    ds = DisjointSet(g.n)
    for u, v, _ in g.edges():
        ds.union(u, v)
    return ds.count


def exact_ncc_nis(g: DynamicGraph) -> int:
    """Components of the subgraph induced by non-isolated vertices."""
    return exact_ncc(g) - (g.n - g.nis)


def exact_small_cc(g: DynamicGraph, K: int):
    """``(count, hist)``: number of components with at most ``K`` vertices and
    ``hist[l]`` = number of components of size exactly ``l`` (``1 <= l <= K``)."""
    if K < 1:
        raise ValueError("K must be >= 1")
    hist = [0] * (K + 1)
    for s in component_sizes(g):
        if s <= K:
            hist[s] += 1
    return sum(hist), hist


def level_ncc(g: DynamicGraph, scheme: LevelScheme) -> list[int]:
    """``c[i]`` = number of components of the subgraph with edges of weight
    at most ``ell[i]``, for every level."""
    edges = sorted(_edge_list(g), key=lambda e: e[2])
    ds = DisjointSet(g.n)
    out = []
    k = 0
    for t in scheme.ell:
        while k < len(edges) and edges[k][2] <= t:
            ds.union(edges[k][0], edges[k][1])
            k += 1
        out.append(ds.count)
    if k != len(edges):
        raise ValueError("graph has edges heavier than the top threshold")
    return out


def formula_x(g: DynamicGraph, scheme: LevelScheme) -> float:
    return g.n + scheme.combine(level_ncc(g, scheme))


def snapshot(g: DynamicGraph, scheme: LevelScheme) -> ExactSnapshot:
    return ExactSnapshot(
        msf=kruskal_msf_weight(g),
        level_ncc=level_ncc(g, scheme),
        ncc=exact_ncc(g),
        nis=g.nis,
    )


def small_cc_threshold(eps: float) -> int:
    """``floor(1/eps)``, guarded against ``1/eps`` landing just below an
    integer in floating point."""
    if not 0 < eps <= 1:
        raise ValueError(f"eps must lie in (0, 1], got {eps}")
    return max(1, math.floor(1.0 / eps + 1e-9))
