"""Dynamic simple weighted graph on a fixed vertex set.

The graph tracks per-vertex degrees through a :class:`NonZeroSampler`, which
gives the non-isolated vertex count and uniform sampling of non-isolated
vertices for free.  Estimators either wrap the graph (and drive mutations
themselves) or subscribe to it and get ``before_update``/``after_update``
callbacks around every :meth:`DynamicGraph.apply`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional

from .errors import (
    DuplicateEdge,
    EdgeAlreadyPresent,
    EdgeNotFound,
    ReplayError,
    SelfLoopForbidden,
    WeightOutOfRange,
)
from .sampler import NonZeroSampler

INSERT = "I"
DELETE = "D"


@dataclass(frozen=True)
class Update:
    """One edge update.  ``w`` is ignored for deletions."""

    kind: str
    u: int
    v: int
    w: Optional[float] = None
    timestamp: Optional[int] = None

    @classmethod
    def insert(cls, u, v, w=1.0, timestamp=None):
        return cls(INSERT, u, v, float(w), timestamp)

    @classmethod
    def delete(cls, u, v, timestamp=None):
        return cls(DELETE, u, v, None, timestamp)

    @property
    def is_insert(self) -> bool:
        return self.kind == INSERT


class DynamicGraph:
    """Simple undirected graph with weights in ``[1, W]`` on vertices ``0..n-1``.

    Self-loops are rejected unless ``allow_self_loops`` is set; that flag is
    meant for the level subgraphs of the randomized MSF estimator.  A loop is
    stored outside the adjacency maps, adds 1 to its endpoint's degree, and is
    invisible to traversals.
    """

    def __init__(self, n: int, edges: Iterable = (), W: float = math.inf,
                 allow_self_loops: bool = False):
        if n < 0:
            raise ValueError("n must be non-negative")
        self.n = n
        self.W = W
        self.allow_self_loops = allow_self_loops
        self.adj: list[dict[int, float]] = [{} for _ in range(n)]
        self.loops: set[int] = set()
        self.degrees = NonZeroSampler(n)
        self.m = 0
        self.time = 0
        self.bfs_work = 0
        self._listeners: list = []
        for e in edges:
            u, v, w = e
            if u == v:
                raise SelfLoopForbidden(f"initial edge ({u}, {u}) is a self-loop")
            if v in self.adj[self._vertex(u)]:
                raise DuplicateEdge(f"initial edges repeat the pair {{{u}, {v}}}")
            self._link(u, v, self._check_weight(w))
        self.m_seen_min = self.m

    # -- queries -----------------------------------------------------------

    @property
    def nis(self) -> int:
        """Number of non-isolated vertices."""
        return self.degrees.nonzero_count()

    def degree(self, v: int) -> int:
        return self.degrees.value(v)

    def has_edge(self, u: int, v: int) -> bool:
        if u == v:
            return u in self.loops
        return v in self.adj[u]

    def weight(self, u: int, v: int) -> float:
        try:
            return self.adj[u][v]
        except KeyError:
            raise EdgeNotFound(f"edge ({u}, {v}) not present") from None

    def neighbors(self, v: int):
        return self.adj[v].keys()

    def edges(self) -> Iterator[tuple[int, int, float]]:
        """Non-loop edges as ``(u, v, w)`` with ``u < v``."""
        for u, nbrs in enumerate(self.adj):
            for v, w in nbrs.items():
                if u < v:
                    yield u, v, w

    def copy(self) -> "DynamicGraph":
        g = DynamicGraph(self.n, self.edges(), W=self.W, allow_self_loops=self.allow_self_loops)
        for u in self.loops:
            g._add_loop(u)
        g.m_seen_min = self.m_seen_min
        return g

    def __repr__(self):
        return f"DynamicGraph(n={self.n}, m={self.m}, nis={self.nis})"

    # -- mutation ----------------------------------------------------------

    def subscribe(self, listener) -> None:
        """Register an object with ``before_update(g, op)`` and
        ``after_update(g, op)`` methods."""
        self._listeners.append(listener)

    def unsubscribe(self, listener) -> None:
        self._listeners.remove(listener)

    def insert(self, u: int, v: int, w: float = 1.0) -> None:
        self.apply(Update.insert(u, v, w))

    def delete(self, u: int, v: int) -> float:
        """Remove edge ``{u, v}`` and return its weight (1.0 for a loop)."""
        w = 1.0 if u == v else self.adj[self._vertex(u)].get(v)
        self.apply(Update.delete(u, v))
        return w

    def apply(self, op: Update) -> None:
        u, v = self._vertex(op.u), self._vertex(op.v)
        if op.timestamp is not None:
            if op.timestamp <= self.time:
                raise ReplayError(op.timestamp, f"timestamp not after {self.time}")
        if op.kind == INSERT:
            if u == v:
                if not self.allow_self_loops:
                    raise SelfLoopForbidden(f"self-loop ({u}, {u})")
                if u in self.loops:
                    raise EdgeAlreadyPresent(f"self-loop ({u}, {u}) already present")
                w = 1.0
            else:
                if v in self.adj[u]:
                    raise EdgeAlreadyPresent(f"edge ({u}, {v}) already present")
                w = self._check_weight(op.w)
            for lst in self._listeners:
                lst.before_update(self, op)
            if u == v:
                self._add_loop(u)
            else:
                self._link(u, v, w)
        elif op.kind == DELETE:
            if not self.has_edge(u, v):
                raise EdgeNotFound(f"edge ({u}, {v}) not present")
            for lst in self._listeners:
                lst.before_update(self, op)
            if u == v:
                self.loops.discard(u)
                self.degrees.update(u, -1)
            else:
                self._unlink(u, v)
        else:
            raise ValueError(f"unknown update kind {op.kind!r}")
        self.time = op.timestamp if op.timestamp is not None else self.time + 1
        if self.m < self.m_seen_min:
            self.m_seen_min = self.m
        for lst in self._listeners:
            lst.after_update(self, op)

    # -- internals ---------------------------------------------------------

    def _vertex(self, v) -> int:
        if not 0 <= v < self.n:
            raise IndexError(f"vertex {v} outside [0, {self.n})")
        return v

    def _check_weight(self, w) -> float:
        if w is None:
            raise WeightOutOfRange("insertion without a weight")
        w = float(w)
        if not 1.0 <= w <= self.W:
            raise WeightOutOfRange(f"weight {w} outside [1, {self.W}]")
        return w

    def _link(self, u, v, w):
        self._vertex(v)
        self.adj[u][v] = w
        self.adj[v][u] = w
        self.degrees.update(u, 1)
        self.degrees.update(v, 1)
        self.m += 1

    def _unlink(self, u, v):
        del self.adj[u][v]
        del self.adj[v][u]
        self.degrees.update(u, -1)
        self.degrees.update(v, -1)
        self.m -= 1

    def _add_loop(self, u):
        self.loops.add(u)
        self.degrees.update(u, 1)


def new_graph(n: int, initial_edges: Iterable = (), W: float = math.inf) -> DynamicGraph:
    return DynamicGraph(n, initial_edges, W=W)


def explore(g: DynamicGraph, start: int, cap: int):
    """Truncated BFS from ``start``.

    Returns ``(visited, complete)``.  When ``complete`` is true, ``visited`` is
    the whole component of ``start`` and has at most ``cap`` vertices.
    Otherwise the component has more than ``cap`` vertices and ``visited`` is
    some connected part of it.  At most ``cap + 1`` neighbours are scanned per
    visited vertex: a vertex with more than ``cap`` neighbours ends the search
    at once.
    """
    adj = g.adj
    seen = {start}
    if len(adj[start]) > cap:
        g.bfs_work += 1
        return seen, False
    frontier = [start]
    work = 1
    while frontier:
        nxt = []
        for x in frontier:
            for y in adj[x]:
                work += 1
                if y not in seen:
                    if len(seen) == cap or len(adj[y]) > cap:
                        seen.add(y)
                        g.bfs_work += work
                        return seen, False
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    g.bfs_work += work
    return seen, True


def bounded_bfs(g: DynamicGraph, start: int, cap: int) -> Optional[set]:
    """Vertex set of ``start``'s component if it has at most ``cap``
    vertices, else ``None``."""
    if cap < 1:
        raise ValueError("cap must be >= 1")
    seen, complete = explore(g, start, cap)
    return seen if complete else None


def density_bound_holds(g: DynamicGraph) -> bool:
    """``nis > sqrt(2 m)`` for any simple graph with ``m >= 1`` (vacuous
    otherwise)."""
    m = g.m
    return m == 0 or g.nis * g.nis > 2 * m
