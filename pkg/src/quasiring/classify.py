"""Membership in N (nilpotent), Q (quasi-regular), pi (annihilated by some
p with p(0) = 0 and p(1) = 1) and I (integral), with checkable witnesses.

Every witness re-validates by evaluation alone, so a stored certificate
can be rechecked without trusting the code that produced it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .coeff import Modular
from .finite import FiniteRing, tables
from .poly import (
    Polynomial,
    eval_nonunital,
    format_poly,
    hat_transform,
    scale_to_pi,
)
from .ring import (
    DirectSum,
    Elem,
    InfiniteRingError,
    Integers,
    Matrix,
    PolyRing,
    Ring,
    Zmod,
    _RationalCarrier,
    nilpotency_index,
    quasi_inverse,
)

PI = "pi"
INTEGRAL = "integral"
NIL = "nil"


class WitnessError(ValueError):
    """A witness failed to validate against its target element."""


@dataclass(frozen=True)
class Witness:
    kind: str
    poly: Polynomial | None = None
    exponent: int | None = None

    def validates(self, a: Elem) -> bool:
        if self.kind == NIL:
            return self.exponent is not None and self.exponent >= 1 and (a**self.exponent).is_zero()
        p = self.poly
        if p is None or p.is_zero() or p.const != 0:
            return False
        if self.kind == PI and p.sum_of_coefficients() != 1:
            return False
        if self.kind == INTEGRAL and not p.is_monic():
            return False
        try:
            return eval_nonunital(p, a).is_zero()
        except TypeError:
            return False

    def require(self, a: Elem) -> Witness:
        if not self.validates(a):
            raise WitnessError(f"{self} does not validate against {a}")
        return self

    def to_text(self) -> str:
        if self.kind == NIL:
            return f"x^{self.exponent}"
        return format_poly(self.poly)

    def __str__(self) -> str:
        return f"{self.kind}[{self.to_text()}]"


def pi_polynomial_of_order(n: int) -> Polynomial:
    """1 - (1 - x)**n, the pi-witness of any element of quasi-order n."""
    return 1 - Polynomial([1, -1]) ** n


def nil_witness(a: Elem) -> Witness | None:
    n = nilpotency_index(a)
    return None if n is None else Witness(NIL, exponent=n)


@dataclass
class ClassificationReport:
    element: Elem
    in_N: bool | None
    in_Q: bool | None
    in_pi: bool | None
    in_I: bool | None
    witnesses: dict[str, Witness] = field(default_factory=dict)
    quasi_inverse: Elem | None = None

    def to_dict(self) -> dict[str, Any]:
        return {
            "ring": str(self.element.ring),
            "element": str(self.element),
            "in_N": self.in_N,
            "in_Q": self.in_Q,
            "in_pi": self.in_pi,
            "in_I": self.in_I,
            "quasi_inverse": None if self.quasi_inverse is None else str(self.quasi_inverse),
            "witnesses": {k: w.to_text() for k, w in self.witnesses.items()},
        }


# ---------------------------------------------------------------------------
# Finite rings
# ---------------------------------------------------------------------------


def _integral_witness_indexed(T: FiniteRing, i: int) -> Polynomial:
    """x^2 - kx for the first k in 0..char-1 with a^2 = ka; otherwise the
    power-cycle polynomial x^j - x^i with a^j = a^i."""
    sq = T.mul[i, i]
    multiple = T.zero
    for k in range(T.characteristic):
        if multiple == sq:
            return Polynomial([0, -k, 1])
        multiple = T.add[multiple, i]
    seen: dict[int, int] = {}
    cur, n = i, 1
    while cur not in seen:
        seen[cur] = n
        cur = T.mul[cur, i]
        n += 1
    lo = seen[cur]
    return Polynomial.monomial(n) - Polynomial.monomial(lo)


def pi_witness_finite(a: Elem) -> Witness | None:
    """1 - (1 - x)**n with n the order of ``a`` in (Q(R), o)."""
    R = a.ring
    if not R.is_finite:
        raise InfiniteRingError(f"{R} is infinite")
    T = tables(R)
    i = T.idx(a)
    if not T.quasi_regular[i]:
        return None
    return Witness(PI, pi_polynomial_of_order(int(T.circ_order[i]))).require(a)


def integral_witness_finite(a: Elem) -> Witness:
    R = a.ring
    if not R.is_finite:
        raise InfiniteRingError(f"{R} is infinite")
    T = tables(R)
    return Witness(INTEGRAL, _integral_witness_indexed(T, T.idx(a))).require(a)


@dataclass
class ClassSets:
    """N, Q, pi and I of a finite ring; each member carries its witness
    (for Q, its quasi-inverse)."""

    ring: Ring
    N: dict[Elem, Witness]
    Q: dict[Elem, Elem]
    pi: dict[Elem, Witness]
    I: dict[Elem, Witness]

    def counts(self) -> dict[str, int]:
        return {
            "size": self.ring.size(),
            "N": len(self.N),
            "Q": len(self.Q),
            "pi": len(self.pi),
            "I": len(self.I),
        }


def classify_sets(R: Ring, validate: bool = True) -> ClassSets:
    if not R.is_finite:
        raise InfiniteRingError(f"{R} is infinite")
    T = tables(R)
    N: dict[Elem, Witness] = {}
    Q: dict[Elem, Elem] = {}
    pi: dict[Elem, Witness] = {}
    I: dict[Elem, Witness] = {}
    for i in range(T.size):
        a = T.elem(i)
        if T.nilpotent[i]:
            N[a] = Witness(NIL, exponent=int(T.nil_index[i]))
        if T.quasi_regular[i]:
            Q[a] = T.elem(int(T.qinv[i]))
            pi[a] = Witness(PI, pi_polynomial_of_order(int(T.circ_order[i])))
        I[a] = Witness(INTEGRAL, _integral_witness_indexed(T, i))
    if validate:
        for d in (N, pi, I):
            for a, w in d.items():
                w.require(a)
    if not (set(N) <= set(pi) <= set(Q)):
        raise AssertionError(f"inclusion N <= pi <= Q fails in {R}")
    if set(pi) != set(Q):
        raise AssertionError(f"pi != Q in the finite ring {R}")
    return ClassSets(R, N, Q, pi, I)


# ---------------------------------------------------------------------------
# Rationals
# ---------------------------------------------------------------------------


def pi_decide_rational(q: Fraction | int) -> Witness | None:
    """pi-witness over Z for a rational, present exactly when q = 1 + 1/n.

    For reduced a/b this happens iff |a - b| = 1, and then n = b * (a - b)
    and s(x) = (1 - n(x - 1)) x.
    """
    q = Fraction(q)
    a, b = q.numerator, q.denominator
    if abs(a - b) != 1:
        return None
    n = b * (a - b)
    return Witness(PI, Polynomial([0, 1 + n, -n]))


# ---------------------------------------------------------------------------
# Matrices over F_p and F_p[t]
# ---------------------------------------------------------------------------


def _poly_det(m: list[list[Polynomial]]) -> Polynomial:
    n = len(m)
    if n == 1:
        return m[0][0]
    acc = Polynomial()
    for j in range(n):
        if m[0][j].is_zero():
            continue
        minor = [row[:j] + row[j + 1 :] for row in m[1:]]
        term = m[0][j] * _poly_det(minor)
        acc = acc - term if j % 2 else acc + term
    return acc


def charpoly(A: Elem) -> Polynomial:
    """det(xI - A) by cofactor expansion; coefficients live in the base."""
    M = A.ring
    if not isinstance(M, Matrix):
        raise TypeError(f"{M} is not a matrix ring")
    B = M.base
    one = _base_coeff(B, B.one())
    rows = []
    for i, row in enumerate(A.value):
        rows.append(
            [
                Polynomial([-_base_coeff(B, v), one if i == j else 0 * one])
                for j, v in enumerate(row)
            ]
        )
    return _poly_det(rows)


def _base_coeff(B: Ring, v: Any) -> Any:
    return Modular(v, B.n) if isinstance(B, Zmod) else v


def _prime_of(M: Matrix) -> int:
    B = M.base
    if isinstance(B, Zmod) and B.is_field:
        return B.n
    if isinstance(B, PolyRing):
        return B.p
    raise TypeError(f"{M} is not a matrix ring over F_p or F_p[t]")


def _flatten_constant(c: Any, p: int) -> Modular | None:
    """A coefficient in F_p[t] that is constant, as a residue; else None."""
    if isinstance(c, Modular):
        return c
    if isinstance(c, int):
        return Modular(c, p)
    if isinstance(c, Polynomial):
        if c.degree > 0:
            return None
        return c.const if isinstance(c.const, Modular) else Modular(c.const, p)
    return None


def classify_matrix(A: Elem) -> ClassificationReport:
    """Classify a square matrix over F_p (or F_p[t]) through its
    characteristic polynomial.

    The characteristic polynomial annihilates A, so when it has constant
    coefficients and does not vanish at 1, scaling it by its value at 1
    and multiplying by x gives a pi-witness.
    """
    M = A.ring
    if not isinstance(M, Matrix):
        raise TypeError(f"{M} is not a matrix ring")
    p = _prime_of(M)
    chi = charpoly(A)
    k = M.k
    in_N = chi.degree == k and all(c == 0 for c in chi.coeffs[:-1])
    qi = quasi_inverse(A)
    in_Q = qi is not None
    witnesses: dict[str, Witness] = {}
    if in_N:
        idx = nilpotency_index(A)
        assert idx is not None and idx <= k
        witnesses[NIL] = Witness(NIL, exponent=idx).require(A)
    flat = [_flatten_constant(c, p) for c in chi.coeffs]
    if all(c is not None for c in flat):
        r = Polynomial(flat)
        integral = r * Polynomial.x() if r.const != 0 else r
        witnesses[INTEGRAL] = Witness(INTEGRAL, integral).require(A)
        in_I = True
        if r.sum_of_coefficients() != 0:
            witnesses[PI] = Witness(PI, scale_to_pi(r)).require(A)
            in_pi = True
        else:
            in_pi = False
    else:
        # a coefficient outside F_p means an eigenvalue transcendental over F_p
        in_I = False
        in_pi = False
    if in_pi and not in_Q:
        raise AssertionError("pi-algebraic matrix without a quasi-inverse")
    if isinstance(M.base, Zmod) and in_pi != in_Q:
        raise AssertionError("over a finite field pi and Q must coincide")
    return ClassificationReport(A, in_N, in_Q, in_pi, in_I, witnesses, qi)


# ---------------------------------------------------------------------------
# Hat-transform round trips
# ---------------------------------------------------------------------------


def witness_roundtrip(a: Elem, w: Witness) -> Witness:
    """Monic integral witness for the quasi-inverse of a pi-algebraic ``a``."""
    if w.kind != PI:
        raise WitnessError("expected a pi witness")
    w.require(a)
    inv = quasi_inverse(a)
    if inv is None:
        raise WitnessError(f"{a} is not quasi-regular")
    return Witness(INTEGRAL, hat_transform(w.poly)).require(inv)


def witness_from_integral(w: Witness, a: Elem) -> Witness:
    """pi-witness for ``a`` from a monic witness of its quasi-inverse."""
    if w.kind != INTEGRAL:
        raise WitnessError("expected an integral witness")
    inv = quasi_inverse(a)
    if inv is None:
        raise WitnessError(f"{a} is not quasi-regular")
    w.require(inv)
    return Witness(PI, hat_transform(w.poly)).require(a)


# ---------------------------------------------------------------------------
# General dispatcher (three-valued where no criterion is known)
# ---------------------------------------------------------------------------


def _try(fn, *args):
    try:
        return fn(*args)
    except NotImplementedError:
        return NotImplemented


def classify_element(a: Elem) -> ClassificationReport:
    """Classify one element; flags are None where membership is unknown."""
    R = a.ring
    if R.is_finite:
        if isinstance(R, Matrix) and isinstance(R.base, Zmod) and R.base.is_field:
            return classify_matrix(a)
        T = tables(R)
        i = T.idx(a)
        ws: dict[str, Witness] = {}
        in_N = bool(T.nilpotent[i])
        if in_N:
            ws[NIL] = Witness(NIL, exponent=int(T.nil_index[i]))
        in_Q = bool(T.quasi_regular[i])
        if in_Q:
            ws[PI] = pi_witness_finite(a)
        ws[INTEGRAL] = integral_witness_finite(a)
        qi = T.elem(int(T.qinv[i])) if in_Q else None
        return ClassificationReport(a, in_N, in_Q, in_Q, True, ws, qi)

    if isinstance(R, Matrix):
        try:
            return classify_matrix(a)
        except TypeError:
            pass

    if isinstance(R, (_RationalCarrier, Integers)):
        q = Fraction(a.value)
        ws = {}
        qi = quasi_inverse(a)
        w = pi_decide_rational(q)
        if w is not None:
            ws[PI] = w.require(a)
        in_I = q.denominator == 1
        if in_I:
            ws[INTEGRAL] = Witness(INTEGRAL, Polynomial([0, -q.numerator, 1])).require(a)
        if q == 0:
            ws[NIL] = Witness(NIL, exponent=1)
        return ClassificationReport(a, q == 0, qi is not None, w is not None, in_I, ws, qi)

    if isinstance(R, PolyRing):
        ws = {}
        qi = quasi_inverse(a)
        f = a.value
        const = f.degree <= 0
        if const:
            c = f.const if not f.is_zero() else Modular(0, R.p)
            # a constant lies in the finite prime field, where pi = Q
            ws[INTEGRAL] = Witness(
                INTEGRAL, Polynomial.monomial(R.p) - Polynomial.x()
            ).require(a)
            if qi is not None:
                sub = pi_witness_finite(Elem(Zmod(R.p), c.value))
                ws[PI] = Witness(PI, sub.poly).require(a)
        if f.is_zero():
            ws[NIL] = Witness(NIL, exponent=1)
        return ClassificationReport(
            a, f.is_zero(), qi is not None, const and qi is not None, const, ws, qi
        )

    if isinstance(R, DirectSum):
        reps = [classify_element(Elem(p, x)) for p, x in zip(R.parts, a.value)]
        ws = {}

        def combine(flag: str) -> bool | None:
            vals = [getattr(r, flag) for r in reps]
            if any(v is False for v in vals):
                return False
            if any(v is None for v in vals):
                return None
            return True

        in_N, in_Q, in_pi, in_I = (combine(f) for f in ("in_N", "in_Q", "in_pi", "in_I"))
        if in_N:
            ws[NIL] = Witness(NIL, exponent=max(r.witnesses[NIL].exponent for r in reps))
        # a product of witnesses kills every component
        for kind, flag in ((PI, in_pi), (INTEGRAL, in_I)):
            if flag:
                prod = Polynomial([1])
                for r in reps:
                    prod = prod * r.witnesses[kind].poly
                ws[kind] = Witness(kind, prod).require(a)
        qi = quasi_inverse(a) if in_Q else None
        return ClassificationReport(a, in_N, in_Q, in_pi, in_I, ws, qi)

    # generic fallback: only nilpotency and non-quasi-regularity are decisive
    idx = _try(nilpotency_index, a)
    qi = _try(quasi_inverse, a)
    in_N = None if idx is NotImplemented else idx is not None
    in_Q = None if qi is NotImplemented else qi is not None
    ws = {}
    if in_N:
        ws[NIL] = Witness(NIL, exponent=idx)
        ws[PI] = Witness(PI, Polynomial.monomial(idx))
        ws[INTEGRAL] = Witness(INTEGRAL, Polynomial.monomial(idx))
    in_pi: bool | None = True if in_N else (False if in_Q is False else None)
    in_I: bool | None = True if in_N else None
    return ClassificationReport(
        a, in_N, in_Q, in_pi, in_I, ws, None if qi is NotImplemented else qi
    )


def decide_pi(a: Elem) -> tuple[str, Witness | None]:
    """("yes", witness), ("no", None) or ("unknown", None)."""
    rep = classify_element(a)
    if rep.in_pi is None:
        return "unknown", None
    return ("yes", rep.witnesses.get(PI)) if rep.in_pi else ("no", None)
