"""Constant-time uniform sampling of the non-zero entries of a dynamic array.

Two arrays back the structure: a dense array holding ``(element, value)``
pairs in slots ``[0, count)`` and a position array mapping each element to its
slot (or -1 when the element's value is zero).  Removal swaps the last live
slot into the hole, so every update touches a constant number of slots.
"""

from __future__ import annotations

import numpy as np

from .errors import EmptySupport


class NonZeroSampler:
    """Dynamic integer array ``d`` with O(1) updates and uniform sampling of
    ``{u : d[u] != 0}``.

    ``last_accesses`` / ``total_accesses`` count reads and writes to the two
    backing arrays; they exist so tests can check the constant-work bound.
    """

    __slots__ = ("n", "_elem", "_val", "_pos", "_count", "last_accesses", "total_accesses")

    def __init__(self, n: int, initial=None):
        self.n = n
        self._elem = [0] * n
        self._val = [0] * n
        self._pos = [-1] * n
        self._count = 0
        self.last_accesses = 0
        self.total_accesses = 0
        if initial is not None:
            if len(initial) != n:
                raise ValueError(f"initial has length {len(initial)}, expected {n}")
            for u, d in enumerate(initial):
                if d:
                    self.update(u, int(d))

    def update(self, u: int, delta: int) -> None:
        """Add ``delta`` to ``d[u]``."""
        if delta == 0:
            self.last_accesses = 0
            return
        pos = self._pos[u]
        acc = 1
        if pos >= 0:
            d = self._val[pos] + delta
            acc += 1
            if d != 0:
                self._val[pos] = d
                acc += 1
            else:
                last = self._count - 1
                v = self._elem[last]
                self._elem[pos] = v
                self._val[pos] = self._val[last]
                self._pos[v] = pos
                self._pos[u] = -1
                self._count = last
                acc += 6
        else:
            slot = self._count
            self._elem[slot] = u
            self._val[slot] = delta
            self._pos[u] = slot
            self._count = slot + 1
            acc += 3
        self.last_accesses = acc
        self.total_accesses += acc

    def value(self, u: int) -> int:
        pos = self._pos[u]
        return self._val[pos] if pos >= 0 else 0

    def __getitem__(self, u: int) -> int:
        return self.value(u)

    def nonzero_count(self) -> int:
        return self._count

    def __len__(self) -> int:
        return self._count

    def __contains__(self, u: int) -> bool:
        return self._pos[u] >= 0

    def support(self) -> list[int]:
        """Live elements in slot order (a copy)."""
        return self._elem[: self._count]

    def slot_of(self, u: int) -> int:
        return self._pos[u]

    def element_at(self, slot: int) -> int:
        if not 0 <= slot < self._count:
            raise IndexError(slot)
        return self._elem[slot]

    def sample(self, rng: np.random.Generator) -> int:
        """One element drawn uniformly from the non-zero entries."""
        if self._count == 0:
            raise EmptySupport("no non-zero entries to sample from")
        return self._elem[int(rng.integers(self._count))]

    def sample_counts(self, rng: np.random.Generator, size: int):
        """Outcome of ``size`` independent :meth:`sample` calls, aggregated.

        Returns ``(elements, counts)`` with zero counts dropped.  For
        ``size > count`` the multiplicities are drawn as one multinomial over
        the live slots, which has exactly the law of ``size`` i.i.d. uniform
        draws but costs O(count) instead of O(size).
        """
        c = self._count
        if c == 0:
            raise EmptySupport("no non-zero entries to sample from")
        if size <= c:
            idx = rng.integers(0, c, size=size)
            slots, counts = np.unique(idx, return_counts=True)
        else:
            counts = rng.multinomial(size, np.full(c, 1.0 / c))
            slots = np.flatnonzero(counts)
            counts = counts[slots]
        elem = self._elem
        return [elem[s] for s in slots.tolist()], counts.tolist()

    def check(self) -> None:
        """Full O(n) consistency scan; raises AssertionError on corruption."""
        c = self._count
        for i in range(c):
            u = self._elem[i]
            assert self._pos[u] == i, f"P[A[{i}]] = {self._pos[u]}"
            assert self._val[i] != 0, f"zero value stored in live slot {i}"
        live = 0
        for u in range(self.n):
            p = self._pos[u]
            if p >= 0:
                live += 1
                assert p < c and self._elem[p] == u, f"A[P[{u}]] != {u}"
        assert live == c, f"{live} positioned elements, count {c}"
