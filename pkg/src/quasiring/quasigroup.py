"""The group (Q(R), o): subgroup generation, conjugation and closure checks.

Finite work runs on the index tables from :mod:`quasiring.finite`; the
element-level identity check works in any carrier, rationals included.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

import numpy as np

from .certificate import Certificate, new_certificate
from .classify import pi_decide_rational
from .coeff import is_prime
from .finite import FiniteRing, tables
from .ring import Elem, Matrix, Ring, Zmod, circ, quasi_inverse

MAX_ENUMERATED_GROUP = 24


class NotQuasiRegularError(ValueError):
    pass


@dataclass(frozen=True)
class SubgroupSet:
    ring: Ring
    indices: frozenset[int]
    generators: tuple[int, ...] = ()
    # sizes of the set after each closure round
    trace: tuple[int, ...] = field(default=(), compare=False)

    def __len__(self) -> int:
        return len(self.indices)

    def __contains__(self, a: Elem) -> bool:
        return tables(self.ring).idx(a) in self.indices

    @property
    def elements(self) -> list[Elem]:
        T = tables(self.ring)
        return [T.elem(i) for i in sorted(self.indices)]

    def mask(self) -> np.ndarray:
        return tables(self.ring).mask(self.indices)

    def is_valid(self) -> bool:
        """0 in S, S inside Q(R), closed under o and quasi-inversion."""
        T = tables(self.ring)
        idx = np.array(sorted(self.indices))
        m = self.mask()
        return bool(
            m[T.zero]
            and T.quasi_regular[idx].all()
            and m[T.circ[np.ix_(idx, idx)]].all()
            and m[T.qinv[idx]].all()
        )

    def __str__(self) -> str:
        return "{" + ", ".join(str(e) for e in self.elements) + "}"


def _close(T: FiniteRing, gens: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """Mask of the subgroup of (Q, o) generated by index array ``gens``.

    In a finite group closing under the product alone already yields the
    subgroup, so inverses come for free.
    """
    member = np.zeros(T.size, dtype=bool)
    member[T.zero] = True
    member[gens] = True
    frontier = np.nonzero(member)[0]
    trace = [int(member.sum())]
    while frontier.size:
        prods = np.unique(T.circ[np.ix_(frontier, gens)])
        frontier = prods[~member[prods]]
        member[frontier] = True
        trace.append(int(member.sum()))
    return member, trace


def _conjugates(T: FiniteRing, gens: np.ndarray) -> np.ndarray:
    q = np.nonzero(T.quasi_regular)[0]
    conj = T.circ[T.circ[np.ix_(q, gens)], T.qinv[q][:, None]]
    return np.unique(np.concatenate([gens, conj.ravel()]))


def _indices_of(T: FiniteRing, S: Iterable[Elem | int]) -> np.ndarray:
    out = [s if isinstance(s, (int, np.integer)) else T.idx(s) for s in S]
    return np.array(sorted(set(int(i) for i in out)), dtype=np.int64)


def subgroup_generate(S: Iterable[Elem | int], R: Ring, normal: bool = False) -> SubgroupSet:
    """Subgroup (or normal subgroup) of (Q(R), o) generated by S."""
    T = tables(R)
    gens = _indices_of(T, S)
    if gens.size and not T.quasi_regular[gens].all():
        bad = T.elem(int(gens[~T.quasi_regular[gens]][0]))
        raise NotQuasiRegularError(f"{bad} is not quasi-regular in {R}")
    if gens.size == 0:
        gens = np.array([T.zero])
    if not normal:
        member, trace = _close(T, gens)
    else:
        # alternate conjugate-closure and group closure until stable
        trace = []
        current = gens
        while True:
            member, t = _close(T, _conjugates(T, current))
            trace.extend(t)
            nxt = np.nonzero(member)[0]
            if nxt.size == current.size and (nxt == current).all():
                break
            current = nxt
    return SubgroupSet(
        R, frozenset(np.nonzero(member)[0].tolist()), tuple(gens.tolist()), tuple(trace)
    )


def quasi_regular_group(R: Ring) -> SubgroupSet:
    T = tables(R)
    q = np.nonzero(T.quasi_regular)[0]
    return SubgroupSet(R, frozenset(q.tolist()), tuple(q.tolist()), (len(q),))


def all_subgroups(R: Ring, cap: int = MAX_ENUMERATED_GROUP) -> list[SubgroupSet]:
    """Every subgroup of (Q(R), o), found by growing known subgroups by one
    element at a time and deduplicating; refuses groups larger than cap."""
    T = tables(R)
    q = np.nonzero(T.quasi_regular)[0]
    if q.size > cap:
        raise ValueError(f"|Q({R})| = {q.size} exceeds the enumeration cap {cap}")
    trivial = frozenset([T.zero])
    seen: dict[frozenset[int], tuple[int, ...]] = {trivial: ()}
    queue = [trivial]
    while queue:
        H = queue.pop()
        for g in q:
            if int(g) in H:
                continue
            gens = np.array(sorted(H | {int(g)}), dtype=np.int64)
            member, _ = _close(T, gens)
            K = frozenset(np.nonzero(member)[0].tolist())
            if K not in seen:
                seen[K] = seen[H] + (int(g),)
                queue.append(K)
    return [
        SubgroupSet(R, K, gens)
        for K, gens in sorted(seen.items(), key=lambda kv: (len(kv[0]), sorted(kv[0])))
    ]


# ---------------------------------------------------------------------------
# Conjugation and the circle identities
# ---------------------------------------------------------------------------


def conjugation_table(T: FiniteRing, r: int) -> np.ndarray:
    """phi[x] = r o x o r^(-1) for every index x."""
    return T.circ[T.circ[r, :], T.qinv[r]]


def _first_pair(bad: np.ndarray) -> tuple[int, ...] | None:
    hits = np.argwhere(bad)
    return tuple(int(v) for v in hits[0]) if hits.size else None


def conjugation_check(r: Elem, R: Ring | None = None, cert: Certificate | None = None) -> Certificate:
    """Exhaustively checks that conjugation by r is a ring automorphism and,
    for unital R, that it agrees with x -> (1 - r) x (1 - r)^(-1)."""
    R = R or r.ring
    T = tables(R)
    i = T.idx(r)
    if not T.quasi_regular[i]:
        raise NotQuasiRegularError(f"{r} is not quasi-regular in {R}")
    cert = cert if cert is not None else new_certificate("conjugation")
    phi = conjugation_table(T, i)
    label = f"{R}: r = {r}"

    def witness(pair):
        if pair is None:
            return None
        return [str(T.elem(k)) for k in pair]

    bad_add = phi[T.add] != T.add[phi[:, None], phi[None, :]]
    cert.add(label, "phi(x + y) = phi(x) + phi(y)", not bad_add.any(), witness(_first_pair(bad_add)))
    bad_mul = phi[T.mul] != T.mul[phi[:, None], phi[None, :]]
    cert.add(label, "phi(xy) = phi(x) phi(y)", not bad_mul.any(), witness(_first_pair(bad_mul)))
    cert.add(label, "phi is a bijection", np.unique(phi).size == T.size)
    if T.one is not None:
        u = T.sub(T.one, i)
        v = T.sub(T.one, T.qinv[i])
        usual = T.mul[T.mul[u, :], v]
        bad = np.nonzero(usual != phi)[0]
        cert.add(
            label,
            "phi(x) = (1 - r) x (1 - r)^(-1)",
            bad.size == 0,
            [str(T.elem(int(bad[0])))] if bad.size else None,
        )
    return cert


def circ_identities(x: Elem, y: Elem) -> dict[str, bool]:
    """The three circle identities for one pair, by direct computation."""
    xi, yi = quasi_inverse(x), quasi_inverse(y)
    if xi is None or yi is None:
        raise NotQuasiRegularError(f"{x if xi is None else y} is not quasi-regular")
    return {
        "xy = x o (x' + y') o y": x * y == circ(circ(x, xi + yi), y),
        "x + y = x o (x'y') o y": x + y == circ(circ(x, xi * yi), y),
        "-x = (2x') o x": -x == circ(2 * xi, x),
    }


def circ_identity_check(x: Elem, y: Elem, cert: Certificate | None = None) -> Certificate:
    cert = cert if cert is not None else new_certificate("circ_identities")
    for claim, ok in circ_identities(x, y).items():
        cert.add(f"{x.ring}: x = {x}, y = {y}", claim, ok)
    return cert


def circ_identity_sweep(R: Ring, cert: Certificate | None = None) -> Certificate:
    """All three identities over every pair of quasi-regular elements of a
    finite ring, vectorized over the tables."""
    T = tables(R)
    cert = cert if cert is not None else new_certificate("circ_identities")
    q = np.nonzero(T.quasi_regular)[0]
    X, Y = np.meshgrid(q, q, indexing="ij")
    xi, yi = T.qinv[X], T.qinv[Y]
    checks = {
        "xy = x o (x' + y') o y": T.mul[X, Y] != T.circ[T.circ[X, T.add[xi, yi]], Y],
        "x + y = x o (x'y') o y": T.add[X, Y] != T.circ[T.circ[X, T.mul[xi, yi]], Y],
    }
    for claim, bad in checks.items():
        pair = _first_pair(bad)
        w = None if pair is None else [str(T.elem(int(q[pair[0]]))), str(T.elem(int(q[pair[1]])))]
        cert.add(f"{R}: all {q.size}^2 pairs", claim, pair is None, w)
    bad_neg = np.nonzero(T.neg[q] != T.circ[T.add[T.qinv[q], T.qinv[q]], q])[0]
    cert.add(
        f"{R}: all {q.size} elements",
        "-x = (2x') o x",
        bad_neg.size == 0,
        [str(T.elem(int(q[bad_neg[0]])))] if bad_neg.size else None,
    )
    return cert


# ---------------------------------------------------------------------------
# Closure predicates on subgroups
# ---------------------------------------------------------------------------


def _closure_violation(T: FiniteRing, idx: np.ndarray, table: np.ndarray) -> list[str] | None:
    m = T.mask(idx.tolist())
    pair = _first_pair(~m[table[np.ix_(idx, idx)]])
    if pair is None:
        return None
    return [str(T.elem(int(idx[pair[0]]))), str(T.elem(int(idx[pair[1]])))]


def ring_closure_predicates(S: SubgroupSet) -> dict[str, list[str] | None]:
    """Violating pair (or None) for closure under +, under * and for being
    a subring."""
    T = tables(S.ring)
    idx = np.array(sorted(S.indices))
    add_bad = _closure_violation(T, idx, T.add)
    mul_bad = _closure_violation(T, idx, T.mul)
    m = S.mask()
    neg_bad = np.nonzero(~m[T.neg[idx]])[0]
    sub_bad = add_bad or mul_bad
    if sub_bad is None and neg_bad.size:
        sub_bad = [str(T.elem(int(idx[neg_bad[0]])))]
    return {"additive": add_bad, "multiplicative": mul_bad, "subring": sub_bad}


def subgroup_ring_closure_check(S: SubgroupSet, cert: Certificate | None = None) -> Certificate:
    if not S.is_valid():
        raise ValueError(f"{S} is not a subgroup of Q({S.ring})")
    cert = cert if cert is not None else new_certificate("ring_closure")
    preds = ring_closure_predicates(S)
    flags = {k: v is None for k, v in preds.items()}
    label = f"{S.ring}: S = {S}"
    cert.add(
        label,
        "closed under + iff closed under * iff subring",
        len(set(flags.values())) == 1,
        {k: {"holds": flags[k], "violation": preds[k]} for k in preds},
    )
    return cert


def division_predicates(S: SubgroupSet) -> dict[str, bool]:
    """(i) S together with the prime subfield is closed under +;
    (ii) that union is a division subring."""
    R = S.ring
    T = tables(R)
    if T.one is None:
        raise ValueError(f"{R} has no unit")
    p = T.characteristic
    if not is_prime(p):
        raise ValueError(f"characteristic {p} of {R} is not prime")
    prime_field = [T.zero]
    x = T.one
    while x != T.zero:
        prime_field.append(int(x))
        x = int(T.add[x, T.one])
    U = np.array(sorted(S.indices | set(prime_field)))
    m = T.mask(U.tolist())
    additive = bool(m[T.add[np.ix_(U, U)]].all())
    subring = additive and bool(m[T.neg[U]].all() and m[T.mul[np.ix_(U, U)]].all())
    division = False
    if subring:
        nonzero = U[U != T.zero]
        hits = T.mul[np.ix_(nonzero, U)] == T.one
        left = T.mul[np.ix_(U, nonzero)] == T.one
        # a two-sided inverse: some u with a u = u a = 1
        division = all(
            (hits[k] & left[:, k]).any() for k in range(nonzero.size)
        )
    return {"additive": additive, "division_subring": division}


def division_closure_check(S: SubgroupSet, cert: Certificate | None = None) -> Certificate:
    if not S.is_valid():
        raise ValueError(f"{S} is not a subgroup of Q({S.ring})")
    cert = cert if cert is not None else new_certificate("division_closure")
    flags = division_predicates(S)
    cert.add(
        f"{S.ring}: S = {S}",
        "S + Z/p closed under + iff S + Z/p is a division subring",
        flags["additive"] == flags["division_subring"],
        flags,
    )
    return cert


# ---------------------------------------------------------------------------
# Generation
# ---------------------------------------------------------------------------


def det_one_minus(T: FiniteRing) -> np.ndarray:
    """det(I - A) per element of a matrix ring over Z/p, as ints mod p."""
    R = T.ring
    if not (isinstance(R, Matrix) and isinstance(R.base, Zmod) and R.base.is_field):
        raise ValueError(f"{R} is not a matrix ring over a prime field")
    one = R.one()
    return np.array(
        [int(R.det(R.sub(one, a))) % R.base.n for a in T.elements], dtype=np.int64
    )


@dataclass
class DeterminantReport:
    ring: Ring
    homomorphism: bool
    nil_generated: SubgroupSet
    kernel: frozenset[int]

    @property
    def nil_in_kernel(self) -> bool:
        return self.nil_generated.indices <= self.kernel

    @property
    def equal(self) -> bool:
        return self.nil_generated.indices == self.kernel


def determinant_report(R: Ring) -> DeterminantReport:
    """A -> det(I - A) on (Q, o), its kernel and the normal closure of N."""
    T = tables(R)
    d = det_one_minus(T)
    p = R.base.n
    q = np.nonzero(T.quasi_regular)[0]
    hom = bool(
        (d[T.circ[np.ix_(q, q)]] == (d[q][:, None] * d[q][None, :]) % p).all()
    )
    N = np.nonzero(T.nilpotent)[0]
    gen = subgroup_generate(N.tolist(), R, normal=True)
    kernel = frozenset(int(i) for i in q if d[i] == 1)
    return DeterminantReport(R, hom, gen, kernel)


def rational_product_certificate(q: Fraction | int) -> list[tuple[Fraction, int]]:
    """Signed generators g^(+-1) from pi(Q) whose o-product is q.

    Under x -> 1 - x the group (Q \\ {1}, o) becomes (Q*, *) and pi(Q)
    becomes {1/n, -1/n}; writing 1 - q = s a/b gives the factors.
    """
    q = Fraction(q)
    if q == 1:
        raise ValueError("1 is not quasi-regular in Q")
    u = 1 - q
    s = 1 if u > 0 else -1
    a, b = abs(u.numerator), u.denominator
    if u == 1:
        out: list[tuple[Fraction, int]] = []
    elif a == 1:
        out = [(q, 1)]
    elif b == 1:
        out = [(1 - Fraction(s, a), -1)]
    else:
        out = [(1 + Fraction(1, a), -1), (1 + Fraction(s, b), 1)]
    check_rational_product(out, q)
    return out


def circ_rational(x: Fraction, y: Fraction) -> Fraction:
    return x + y - x * y


def rational_quasi_inverse(g: Fraction) -> Fraction:
    if g == 1:
        raise NotQuasiRegularError("1 is not quasi-regular in Q")
    return g / (g - 1)


def check_rational_product(factors: list[tuple[Fraction, int]], q: Fraction) -> None:
    acc = Fraction(0)
    for g, e in factors:
        if pi_decide_rational(g) is None:
            raise AssertionError(f"generator {g} is not in pi(Q)")
        if e not in (1, -1):
            raise AssertionError(f"exponent {e} must be 1 or -1")
        acc = circ_rational(acc, g if e == 1 else rational_quasi_inverse(g))
    if acc != q:
        raise AssertionError(f"product {acc} differs from {q}")


def pi_and_inverse_rationals(bound: int) -> set[Fraction]:
    """Rationals with |numerator|, denominator <= bound lying in pi(Q) with
    their quasi-inverse also in pi(Q)."""
    found = set()
    for b in range(1, bound + 1):
        for a in range(-bound, bound + 1):
            q = Fraction(a, b)
            if q.denominator != b or q == 1:
                continue
            if pi_decide_rational(q) and pi_decide_rational(rational_quasi_inverse(q)):
                found.add(q)
    return found


def rational_subgroup_closure(gens: Iterable[Fraction], limit: int = 1000) -> set[Fraction]:
    """o-closure of a finite set of rationals; raises if it keeps growing."""
    cur = {Fraction(0)} | {Fraction(g) for g in gens}
    cur |= {rational_quasi_inverse(g) for g in cur}
    while True:
        new = cur | {circ_rational(x, y) for x in cur for y in cur}
        if new == cur:
            return cur
        if len(new) > limit:
            raise ValueError("closure exceeds the limit")
        cur = new

