"""Index tables for finite carriers.

Exhaustive sweeps (classification, radicals, subgroup lattices) run on
integer indices into ``elements`` with numpy lookup tables for ``+``,
``*``, negation and ``o``. Index order is the enumeration order of the
descriptor, so results map back to elements deterministically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Any, Iterable

import numpy as np

from .ring import DirectSum, Elem, InfiniteRingError, Matrix, Ring, Zmod


@dataclass(eq=False)
class FiniteRing:
    ring: Ring
    elements: list[Any]
    add: np.ndarray
    mul: np.ndarray
    neg: np.ndarray
    index: dict[Any, int] = field(repr=False)

    @property
    def size(self) -> int:
        return len(self.elements)

    @cached_property
    def zero(self) -> int:
        return self.index[self.ring.zero()]

    @cached_property
    def one(self) -> int | None:
        return self.index[self.ring.one()] if self.ring.has_unit else None

    def elem(self, i: int) -> Elem:
        return Elem(self.ring, self.elements[i])

    def idx(self, a: Elem | Any) -> int:
        return self.index[a.value if isinstance(a, Elem) else a]

    def sub(self, a, b):
        return self.add[a, self.neg[b]]

    @cached_property
    def circ(self) -> np.ndarray:
        """circ[i, j] = index of e_i + e_j - e_i e_j."""
        return self.add[self.add, self.neg[self.mul]]

    @cached_property
    def qinv(self) -> np.ndarray:
        """Quasi-inverse index per element, -1 when none exists."""
        hits = self.circ == self.zero
        out = np.full(self.size, -1, dtype=np.int64)
        has = hits.any(axis=1)
        right = hits.argmax(axis=1)
        for i in np.nonzero(has)[0]:
            j = right[i]
            if self.circ[j, i] == self.zero:
                out[i] = j
        return out

    @cached_property
    def quasi_regular(self) -> np.ndarray:
        return self.qinv >= 0

    @cached_property
    def nil_index(self) -> np.ndarray:
        """Least n with e**n == 0 per element, 0 when not nilpotent."""
        out = np.zeros(self.size, dtype=np.int64)
        ar = np.arange(self.size)
        cur = ar.copy()
        for n in range(1, self.size + 1):
            newly = (cur == self.zero) & (out == 0)
            out[newly] = n
            cur = self.mul[cur, ar]
        return out

    @cached_property
    def nilpotent(self) -> np.ndarray:
        return self.nil_index > 0

    @cached_property
    def circ_order(self) -> np.ndarray:
        """Order of each quasi-regular element in (Q(R), o); 0 elsewhere."""
        out = np.zeros(self.size, dtype=np.int64)
        q = np.nonzero(self.quasi_regular)[0]
        cur = q.copy()
        for n in range(1, self.size + 1):
            newly = (cur == self.zero) & (out[q] == 0)
            out[q[newly]] = n
            if (out[q] > 0).all():
                break
            cur = self.circ[cur, q]
        return out

    @cached_property
    def additive_order(self) -> np.ndarray:
        out = np.zeros(self.size, dtype=np.int64)
        ar = np.arange(self.size)
        cur = ar.copy()
        for n in range(1, self.size + 1):
            newly = (cur == self.zero) & (out == 0)
            out[newly] = n
            cur = self.add[cur, ar]
        return out

    @property
    def characteristic(self) -> int:
        return math.lcm(*map(int, self.additive_order))

    def mask(self, idxs: Iterable[int]) -> np.ndarray:
        m = np.zeros(self.size, dtype=bool)
        m[list(idxs)] = True
        return m

    def additive_span(self, gens: Iterable[int]) -> np.ndarray:
        """Boolean mask of the additive subgroup generated by ``gens``."""
        member = np.zeros(self.size, dtype=bool)
        member[self.zero] = True
        current = np.array([self.zero])
        for g in gens:
            g = int(g)
            if member[g]:
                continue
            cyc = [self.zero]
            x = g
            while x != self.zero:
                cyc.append(x)
                x = int(self.add[x, g])
            current = np.unique(self.add[np.ix_(current, np.array(cyc))])
            member[:] = False
            member[current] = True
        return member


def _generic_tables(R: Ring) -> tuple[list[Any], np.ndarray, np.ndarray, np.ndarray]:
    elems = list(R.elements())
    index = {v: i for i, v in enumerate(elems)}
    n = len(elems)
    add = np.empty((n, n), dtype=np.int64)
    mul = np.empty((n, n), dtype=np.int64)
    for i, a in enumerate(elems):
        for j, b in enumerate(elems):
            add[i, j] = index[R.add(a, b)]
            mul[i, j] = index[R.mul(a, b)]
    neg = np.array([index[R.neg(a)] for a in elems], dtype=np.int64)
    return elems, add, mul, neg


def _matrix_zmod_tables(R: Matrix) -> tuple[list[Any], np.ndarray, np.ndarray, np.ndarray]:
    k, n = R.k, R.base.n
    elems = list(R.elements())
    N = len(elems)
    E = np.array(elems, dtype=np.int64).reshape(N, k, k)
    weights = n ** np.arange(k * k - 1, -1, -1, dtype=np.int64)

    def encode(arr: np.ndarray) -> np.ndarray:
        return (arr.reshape(arr.shape[:-2] + (k * k,)) % n) @ weights

    add = np.empty((N, N), dtype=np.int64)
    mul = np.empty((N, N), dtype=np.int64)
    chunk = max(1, 200_000 // N)
    for s in range(0, N, chunk):
        A = E[s : s + chunk]
        add[s : s + chunk] = encode(A[:, None] + E[None, :])
        mul[s : s + chunk] = encode(np.einsum("aij,bjl->abil", A, E))
    neg = encode(-E)
    return elems, add, mul, neg


def _direct_sum_tables(R: DirectSum) -> tuple[list[Any], np.ndarray, np.ndarray, np.ndarray]:
    comps = [tables(p) for p in R.parts]
    sizes = [c.size for c in comps]
    N = math.prod(sizes)
    weights = []
    w = N
    for s in sizes:
        w //= s
        weights.append(w)
    ar = np.arange(N)
    digits = [(ar // wt) % s for wt, s in zip(weights, sizes)]
    add = np.zeros((N, N), dtype=np.int64)
    mul = np.zeros((N, N), dtype=np.int64)
    neg = np.zeros(N, dtype=np.int64)
    for c, d, wt in zip(comps, digits, weights):
        add += c.add[np.ix_(d, d)] * wt
        mul += c.mul[np.ix_(d, d)] * wt
        neg += c.neg[d] * wt
    elems = list(R.elements())
    return elems, add, mul, neg


@lru_cache(maxsize=64)
def tables(R: Ring) -> FiniteRing:
    """Build (and cache) the index tables of a finite ring."""
    if not R.is_finite:
        raise InfiniteRingError(f"{R} is infinite")
    if isinstance(R, Matrix) and isinstance(R.base, Zmod):
        elems, add, mul, neg = _matrix_zmod_tables(R)
    elif isinstance(R, DirectSum):
        elems, add, mul, neg = _direct_sum_tables(R)
    else:
        elems, add, mul, neg = _generic_tables(R)
    index = {v: i for i, v in enumerate(elems)}
    return FiniteRing(R, elems, add, mul, neg, index)


def generic_tables(R: Ring) -> FiniteRing:
    """Uncached, loop-built tables; used to cross-check the fast paths."""
    elems, add, mul, neg = _generic_tables(R)
    return FiniteRing(R, elems, add, mul, neg, {v: i for i, v in enumerate(elems)})
