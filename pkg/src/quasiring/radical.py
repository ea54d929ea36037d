"""Ideals, the Jacobson radical and the upper and lower nilradicals of
finite rings, plus the one-sided nil ideal check.

All closures are taken over the additive group, never over a unit, so the
same code serves unital and nonunital rings: the ideal generated by S is
ZS + RS + SR + RSR.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

import numpy as np

from .finite import FiniteRing, tables
from .ring import Elem, Ring

LEFT, RIGHT, TWO = "left", "right", "two"


@dataclass(frozen=True)
class IdealSet:
    ring: Ring
    indices: frozenset[int]
    sided: str = TWO

    @property
    def elements(self) -> list[Elem]:
        T = tables(self.ring)
        return [T.elem(i) for i in sorted(self.indices)]

    def __len__(self) -> int:
        return len(self.indices)

    def __contains__(self, a: Elem) -> bool:
        return tables(self.ring).idx(a) in self.indices

    def mask(self) -> np.ndarray:
        return tables(self.ring).mask(self.indices)

    def closure_flags(self) -> dict[str, bool]:
        T = tables(self.ring)
        m = self.mask()
        idx = np.array(sorted(self.indices))
        return {
            "additive": bool(m[T.add[np.ix_(idx, idx)]].all() and m[T.neg[idx]].all()),
            "left_absorbing": bool(m[T.mul[:, idx]].all()),
            "right_absorbing": bool(m[T.mul[idx, :]].all()),
        }

    def is_ideal(self, sided: str = TWO) -> bool:
        f = self.closure_flags()
        if not f["additive"]:
            return False
        if sided in (LEFT, TWO) and not f["left_absorbing"]:
            return False
        if sided in (RIGHT, TWO) and not f["right_absorbing"]:
            return False
        return True

    def __str__(self) -> str:
        return "{" + ", ".join(str(e) for e in self.elements) + "}"


def _ideal_mask(T: FiniteRing, gens: np.ndarray, sided: str) -> np.ndarray:
    gens = np.asarray(gens, dtype=np.int64)
    parts = [gens]
    if sided in (LEFT, TWO):
        parts.append(T.mul[:, gens].ravel())
    if sided in (RIGHT, TWO):
        parts.append(T.mul[gens, :].ravel())
    if sided == TWO:
        parts.append(T.mul[T.mul[:, gens].ravel()].ravel())
    pool = np.unique(np.concatenate(parts))
    return T.additive_span(pool)


def ideal_generated(S: Iterable[Elem], R: Ring, sided: str = TWO) -> IdealSet:
    """Smallest (left/right/two-sided) ideal of the finite ring R holding S."""
    if sided not in (LEFT, RIGHT, TWO):
        raise ValueError(f"sided must be left, right or two, got {sided!r}")
    T = tables(R)
    gens = np.array([T.idx(a) for a in S], dtype=np.int64)
    if gens.size == 0:
        return IdealSet(R, frozenset([T.zero]), sided)
    m = _ideal_mask(T, gens, sided)
    return IdealSet(R, frozenset(np.nonzero(m)[0].tolist()), sided)


def ideal_fixpoint(S: Iterable[Elem], R: Ring, sided: str = TWO) -> IdealSet:
    """Naive least fixed point of closing S under +, - and multiplication.

    Slow; kept as an independent check of :func:`ideal_generated`.
    """
    T = tables(R)
    cur = {T.zero} | {T.idx(a) for a in S}
    while True:
        new = set(cur)
        for a in cur:
            new.add(int(T.neg[a]))
            for b in cur:
                new.add(int(T.add[a, b]))
            for r in range(T.size):
                if sided in (LEFT, TWO):
                    new.add(int(T.mul[r, a]))
                if sided in (RIGHT, TWO):
                    new.add(int(T.mul[a, r]))
        if new == cur:
            return IdealSet(R, frozenset(cur), sided)
        cur = new


@lru_cache(maxsize=128)
def _principal_cached(R: Ring, sided: str) -> tuple[np.ndarray, ...]:
    T = tables(R)
    return tuple(_ideal_mask(T, np.array([i]), sided) for i in range(T.size))


def _principal_masks(T: FiniteRing, sided: str) -> tuple[np.ndarray, ...]:
    return _principal_cached(T.ring, sided)


def _largest_ideal_inside(T: FiniteRing, allowed: np.ndarray) -> np.ndarray:
    # A sum of ideals contained in `allowed`-type sets is again of that type
    # (quasi-regular or nil ideals are closed under sums), so the largest
    # such ideal is exactly the set of a whose principal ideal fits.
    principal = _principal_masks(T, TWO)
    return np.array([not (m & ~allowed).any() for m in principal])


def jacobson_radical(R: Ring) -> IdealSet:
    """Largest quasi-regular ideal: all a with (a) inside Q(R)."""
    T = tables(R)
    members = _largest_ideal_inside(T, T.quasi_regular)
    J = IdealSet(R, frozenset(np.nonzero(members)[0].tolist()))
    if not J.is_ideal():
        raise AssertionError(f"J({R}) is not an ideal")
    if not T.quasi_regular[list(J.indices)].all():
        raise AssertionError(f"J({R}) is not quasi-regular")
    return J


def jacobson_maximality(R: Ring, J: IdealSet | None = None) -> bool:
    """Adding any outside element and re-closing leaves Q(R)."""
    T = tables(R)
    J = J or jacobson_radical(R)
    base = np.array(sorted(J.indices))
    principal = _principal_masks(T, TWO)
    for b in range(T.size):
        if b in J.indices:
            continue
        # J is an ideal, so the ideal generated by J and b is J + (b)
        grown = np.unique(T.add[np.ix_(base, np.nonzero(principal[b])[0])])
        if T.quasi_regular[grown].all():
            return False
    return True


def upper_nilradical(R: Ring) -> IdealSet:
    """Largest nil ideal: all a with (a) inside N(R)."""
    T = tables(R)
    members = _largest_ideal_inside(T, T.nilpotent)
    N = IdealSet(R, frozenset(np.nonzero(members)[0].tolist()))
    if not N.is_ideal():
        raise AssertionError(f"Nil*({R}) is not an ideal")
    return N


def strongly_nilpotent_mask(T: FiniteRing) -> np.ndarray:
    """Greatest fixed point Z of Z <- {a in Z : a x a in Z for some x},
    started from the nonzero elements; the complement of Z is the set of
    strongly nilpotent elements."""
    axa = T.mul[T.mul, np.arange(T.size)[:, None]]  # axa[a, x] = (a x) a
    Z = np.ones(T.size, dtype=bool)
    Z[T.zero] = False
    while True:
        keep = Z & Z[axa].any(axis=1)
        if (keep == Z).all():
            break
        Z = keep
    return ~Z


def lower_nilradical(R: Ring) -> IdealSet:
    """Intersection of the prime ideals, computed as the strongly nilpotent
    elements."""
    T = tables(R)
    m = strongly_nilpotent_mask(T)
    L = IdealSet(R, frozenset(np.nonzero(m)[0].tolist()))
    if not L.is_ideal():
        raise AssertionError(f"Nil_*({R}) is not an ideal")
    return L


@dataclass
class KotheResult:
    ring: Ring
    nil_left: list[IdealSet]
    nil_right: list[IdealSet]
    upper: IdealSet
    violations: list[str]

    @property
    def passed(self) -> bool:
        return not self.violations


def kothe_check(R: Ring) -> KotheResult:
    """Every principal one-sided nil ideal must lie in Nil*(R)."""
    T = tables(R)
    upper = upper_nilradical(R)
    up = upper.mask()
    found = {LEFT: {}, RIGHT: {}}
    violations: list[str] = []
    for sided in (LEFT, RIGHT):
        for i, m in enumerate(_principal_masks(T, sided)):
            if (m & ~T.nilpotent).any():
                continue
            key = frozenset(np.nonzero(m)[0].tolist())
            found[sided].setdefault(key, IdealSet(R, key, sided))
            if (m & ~up).any():
                violations.append(
                    f"{sided} ideal of {T.elem(i)} is nil but not inside Nil*"
                )
    return KotheResult(
        R,
        list(found[LEFT].values()),
        list(found[RIGHT].values()),
        upper,
        violations,
    )


def pi_ideals_are_nil(R: Ring) -> list[Elem]:
    """Elements whose principal ideal is pi-algebraic but not nil (should be
    none). For finite rings pi(R) = Q(R)."""
    T = tables(R)
    bad = []
    for i, m in enumerate(_principal_masks(T, TWO)):
        if not (m & ~T.quasi_regular).any() and (m & ~T.nilpotent).any():
            bad.append(T.elem(i))
    return bad


def radical_summary(R: Ring) -> dict[str, object]:
    T = tables(R)
    J = jacobson_radical(R)
    U = upper_nilradical(R)
    L = lower_nilradical(R)
    return {
        "ring": str(R),
        "size": T.size,
        "J": [str(e) for e in J.elements],
        "Nil_upper": [str(e) for e in U.elements],
        "Nil_lower": [str(e) for e in L.elements],
        "N_count": int(T.nilpotent.sum()),
        "Q_count": int(T.quasi_regular.sum()),
        "chain_holds": L.indices <= U.indices <= J.indices,
    }
