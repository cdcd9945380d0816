"""Deterministic dynamic count of small connected components.

The counter holds the exact number of components with at most
``K = floor(1/eps)`` vertices.  Components larger than ``K`` number at most
``eps * nis``, so the count is an estimate of the total component count with
additive error ``eps * nis``.  Each update costs three truncated BFS runs of
at most ``(K + 1)**2`` neighbour scans each.
"""

from __future__ import annotations

from .errors import EdgeAlreadyPresent, EdgeNotFound
from .graph import DynamicGraph, Update, explore
from .oracle import small_cc_threshold


def _small(g, v, K):
    seen, complete = explore(g, v, K)
    return seen if complete else None


class SmallCcCounter:
    """Maintains ``estimate`` = number of components of size ``<= K``.

    Attach to a graph with :meth:`attach` (or build with :func:`static_ncc`),
    after which every :meth:`DynamicGraph.apply` keeps the count current.
    """

    def __init__(self, eps: float, K: int, count: int, hist=None):
        self.eps = eps
        self.K = K
        self.count = count
        self.hist = hist
        self.graph = None
        self._pending = None

    @property
    def estimate(self) -> int:
        return self.count

    def attach(self, g: DynamicGraph) -> "SmallCcCounter":
        self.graph = g
        g.subscribe(self)
        return self

    def detach(self) -> None:
        if self.graph is not None:
            self.graph.unsubscribe(self)
            self.graph = None

    # listener protocol
    def before_update(self, g: DynamicGraph, op: Update) -> None:
        if op.u == op.v:
            self._pending = None
            return
        K = self.K
        if op.is_insert:
            self._pending = (_small(g, op.u, K), _small(g, op.v, K))
        else:
            self._pending = _small(g, op.u, K)

    def after_update(self, g: DynamicGraph, op: Update) -> None:
        if op.u == op.v:
            # loops never change connectivity
            return
        before = self._pending
        self._pending = None
        if op.is_insert:
            self._after_insert(g, op.u, op.v, *before)
        else:
            self._after_delete(g, op.u, op.v, before)

    def _after_insert(self, g, u, v, su0, sv0):
        if su0 is None and sv0 is None:
            return
        if su0 is None or sv0 is None:
            # a small component merged into a large one
            self.count -= 1
            return
        if v in su0:
            # already one component; the new edge closes a cycle
            return
        su1 = _small(g, u, self.K)
        self.count -= 2 if su1 is None else 1

    def _after_delete(self, g, u, v, su0):
        K = self.K
        su1 = _small(g, u, K)
        sv1 = _small(g, v, K)
        if su1 is None and sv1 is None:
            return
        if su1 is None or sv1 is None:
            # a large component shed one small piece
            self.count += 1
            return
        if v in su1:
            return
        self.count += 2 if su0 is None else 1

    # explicit entry points for callers that drive the graph themselves

    def on_insert(self, g: DynamicGraph, u: int, v: int, w: float = 1.0) -> None:
        """Insert ``(u, v, w)`` into ``g`` and update the count."""
        if g.has_edge(u, v):
            raise EdgeAlreadyPresent(f"edge ({u}, {v}) already present")
        self._drive(g, Update.insert(u, v, w))

    def on_delete(self, g: DynamicGraph, u: int, v: int) -> None:
        """Delete ``(u, v)`` from ``g`` and update the count."""
        if not g.has_edge(u, v):
            raise EdgeNotFound(f"edge ({u}, {v}) not present")
        self._drive(g, Update.delete(u, v))

    def _drive(self, g, op):
        if self.graph is g:
            g.apply(op)
            return
        self.before_update(g, op)
        g.apply(op)
        self.after_update(g, op)


def static_ncc(g: DynamicGraph, eps: float, attach: bool = False) -> SmallCcCounter:
    """Count components of size at most ``floor(1/eps)`` in O(n/eps) time.

    Each search starts at an unvisited vertex and stops after discovering
    ``K + 1`` new vertices, on touching an already visited vertex, or on
    exhausting a component; only the last outcome is counted.
    """
    K = small_cc_threshold(eps)
    adj = g.adj
    mark = [0] * g.n
    hist = [0] * (K + 1)
    for s in range(g.n):
        if mark[s]:
            continue
        sid = s + 1
        mark[s] = sid
        found = 1
        complete = True
        frontier = [s]
        while frontier and complete:
            nxt = []
            for x in frontier:
                nbrs = adj[x]
                if len(nbrs) > K:
                    complete = False
                    break
                for y in nbrs:
                    my = mark[y]
                    if my == sid:
                        continue
                    if my:
                        # touched an earlier, unfinished search: large component
                        complete = False
                        break
                    mark[y] = sid
                    found += 1
                    if found > K:
                        complete = False
                        break
                    nxt.append(y)
                if not complete:
                    break
            frontier = nxt
        if complete:
            hist[found] += 1
    counter = SmallCcCounter(eps, K, sum(hist), hist)
    if attach:
        counter.attach(g)
    return counter
