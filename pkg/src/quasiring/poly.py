"""Dense univariate polynomials and the transforms used to build witnesses.

Coefficients are any exact scalars supporting ``+ - *`` and comparison with
``0``: ``int``, ``Fraction``, :class:`~quasiring.coeff.Modular`, or another
:class:`Polynomial` (which gives polynomials over a polynomial ring).
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Any, Iterable, Sequence

from .coeff import Modular


class Polynomial:
    """Coefficient ``i`` multiplies ``x**i``; trailing zeros are trimmed."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Any] = ()) -> None:
        cs = list(coeffs)
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple = tuple(cs)

    @classmethod
    def x(cls, one: Any = 1) -> Polynomial:
        return cls([0 * one, one])

    @classmethod
    def constant(cls, c: Any) -> Polynomial:
        return cls([c])

    @classmethod
    def monomial(cls, n: int, c: Any = 1) -> Polynomial:
        return cls([0 * c] * n + [c])

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lead(self) -> Any:
        return self.coeffs[-1] if self.coeffs else 0

    @property
    def const(self) -> Any:
        return self.coeffs[0] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.lead == 1

    def coeff(self, i: int) -> Any:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def sum_of_coefficients(self) -> Any:
        total: Any = 0
        for c in self.coeffs:
            total = total + c
        return total

    def __call__(self, value: Any) -> Any:
        """Horner evaluation at a value of the coefficient domain (or any
        commutative extension of it that has a unit)."""
        acc: Any = 0
        for c in reversed(self.coeffs):
            acc = acc * value + c
        return acc

    def compose(self, inner: Polynomial) -> Polynomial:
        acc = Polynomial()
        for c in reversed(self.coeffs):
            acc = acc * inner + c
        return acc

    def map_coeffs(self, fn) -> Polynomial:
        return Polynomial(fn(c) for c in self.coeffs)

    def _lift(self, other: Any) -> Polynomial | None:
        if isinstance(other, Polynomial):
            return other
        if isinstance(other, (int, Fraction, Modular)):
            return Polynomial([other])
        return None

    def __add__(self, other: Any) -> Polynomial:
        o = self._lift(other)
        if o is None:
            return NotImplemented
        n = max(len(self.coeffs), len(o.coeffs))
        return Polynomial(self.coeff(i) + o.coeff(i) for i in range(n))

    __radd__ = __add__

    def __neg__(self) -> Polynomial:
        return Polynomial(-c for c in self.coeffs)

    def __sub__(self, other: Any) -> Polynomial:
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: Any) -> Polynomial:
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other: Any) -> Polynomial:
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if self.is_zero() or o.is_zero():
            return Polynomial()
        out: list[Any] = [0] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(o.coeffs):
                out[i + j] = out[i + j] + a * b
        return Polynomial(out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> Polynomial:
        if e < 0:
            raise ValueError("negative polynomial power")
        result = Polynomial([1])
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Polynomial):
            return len(self.coeffs) == len(other.coeffs) and all(
                a == b for a, b in zip(self.coeffs, other.coeffs)
            )
        if isinstance(other, (int, Fraction, Modular)):
            if other == 0:
                return self.is_zero()
            return self.degree == 0 and self.coeffs[0] == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash(tuple(_hashable(c) for c in self.coeffs))

    def __repr__(self) -> str:
        return f"Polynomial({list(self.coeffs)!r})"

    def __str__(self) -> str:
        return format_poly(self)


def _hashable(c: Any) -> Any:
    return c.value if isinstance(c, Modular) else c


def _exact_quotient(a: Any, b: Any) -> Any:
    """a / b inside the coefficient domain, or ValueError."""
    if isinstance(a, int) and isinstance(b, int):
        q, r = divmod(a, b)
        if r:
            raise ValueError(f"{a} is not divisible by {b} in Z")
        return q
    if isinstance(b, Modular) or isinstance(a, Modular):
        m = b if isinstance(b, Modular) else a
        bb = b if isinstance(b, Modular) else Modular(b, m.modulus)
        try:
            return a * bb.inverse()
        except ZeroDivisionError:
            raise ValueError(f"{b} is not invertible mod {m.modulus}") from None
    if isinstance(a, (int, Fraction)) and isinstance(b, (int, Fraction)):
        return Fraction(a) / Fraction(b)
    raise ValueError(f"cannot divide {a!r} by {b!r}")


def divide_exact(p: Polynomial, q: Polynomial) -> Polynomial:
    """Return t with p == q * t; ValueError if the division is not exact."""
    if q.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    rem = list(p.coeffs)
    dq = q.degree
    if len(rem) - 1 < dq:
        if p.is_zero():
            return Polynomial()
        raise ValueError("nonzero remainder")
    out: list[Any] = [0] * (len(rem) - dq)
    for k in range(len(rem) - 1 - dq, -1, -1):
        c = _exact_quotient(rem[k + dq], q.lead)
        out[k] = c
        for j, b in enumerate(q.coeffs):
            rem[k + j] = rem[k + j] - c * b
    if any(r != 0 for r in rem):
        raise ValueError("nonzero remainder")
    return Polynomial(out)


def _check_pi_shape(p: Polynomial) -> None:
    if p.const != 0:
        raise ValueError(f"{p} has nonzero constant term")
    if p.sum_of_coefficients() != 1:
        raise ValueError(f"{p} does not take the value 1 at 1")


def quasi_inverse_witness(p: Polynomial) -> Polynomial:
    """P = 1 - (1 - p)/(1 - x), so that x + P - x*P == p coefficientwise.

    Evaluating P at any element annihilated by p gives its quasi-inverse.
    """
    _check_pi_shape(p)
    one_minus_x = Polynomial([1, -1])
    P = 1 - divide_exact(1 - p, one_minus_x)
    x = Polynomial.x()
    if x + P - x * P != p:
        raise ArithmeticError("quasi-inverse identity failed")
    return P


def hat_transform(p: Polynomial) -> Polynomial:
    """(x - 1)**deg(p) * p(x / (x - 1)).

    Term i of p contributes c_i * x**i * (x - 1)**(deg - i); the sum is the
    numerator of p(x/(x-1)) over the common denominator (x-1)**deg.
    """
    if p.is_zero():
        raise ValueError("hat transform of the zero polynomial")
    d = p.degree
    x = Polynomial.x()
    xm1 = Polynomial([-1, 1])
    out = Polynomial()
    for i, c in enumerate(p.coeffs):
        if c != 0:
            out = out + c * (x**i) * (xm1 ** (d - i))
    if out(1) != p.lead:
        raise ArithmeticError("hat(p)(1) differs from the leading coefficient")
    s = p.sum_of_coefficients()
    if s != 0 and out.lead != s:
        raise ArithmeticError("leading coefficient of hat(p) differs from p(1)")
    if (out.const == 0) != (p.const == 0):
        raise ArithmeticError("hat transform broke the zero constant term")
    return out


def two_minus_transform(p: Polynomial) -> Polynomial:
    """q(x) = p(2 - x) * x, which annihilates 2 - a whenever p annihilates a."""
    _check_pi_shape(p)
    q = p.compose(Polynomial([2, -1])) * Polynomial.x()
    _check_pi_shape(q)
    return q


def scale_to_pi(r: Polynomial) -> Polynomial:
    """r(1)**-1 * r(x) * x over a field; a pi-witness for every zero of r."""
    r1 = r.sum_of_coefficients()
    if r1 == 0:
        raise ValueError(f"{r} vanishes at 1")
    if isinstance(r1, int):
        r1 = Fraction(r1)
    inv = r1.inverse() if isinstance(r1, Modular) else 1 / r1
    p = inv * r * Polynomial.x()
    p = p.map_coeffs(_demote)
    _check_pi_shape(p)
    return p


def _demote(c: Any) -> Any:
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


def content(p: Polynomial) -> int:
    """Positive gcd of the integer coefficients."""
    if p.is_zero():
        raise ValueError("content of the zero polynomial")
    from math import gcd

    g = 0
    for c in p.coeffs:
        if not isinstance(c, int):
            raise TypeError("content is defined for integer polynomials only")
        g = gcd(g, c)
    return g


def reflect(p: Polynomial) -> Polynomial:
    """x**deg(p) * p(1/x)."""
    if p.is_zero():
        raise ValueError("reflection of the zero polynomial")
    return Polynomial(reversed(p.coeffs))


def _format_scalar(c: Any) -> str:
    if isinstance(c, Fraction):
        return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"
    return str(c)


def format_poly(p: Polynomial, var: str = "x") -> str:
    """Ascending rendering such as ``3*x - 2*x^2``."""
    if p.is_zero():
        return "0"
    parts: list[str] = []
    for i, c in enumerate(p.coeffs):
        if c == 0:
            continue
        if isinstance(c, Polynomial):
            text = f"({format_poly(c, 't' if var != 't' else 's')})"
            neg = False
        else:
            text = _format_scalar(c)
            neg = text.startswith("-")
            if neg:
                text = text[1:]
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        if mono and text == "1":
            term = mono
        elif mono:
            term = f"{text}*{mono}"
        else:
            term = text
        if not parts:
            parts.append(f"-{term}" if neg else term)
        else:
            parts.append(f"- {term}" if neg else f"+ {term}")
    return " ".join(parts)


_TERM = re.compile(
    r"([+-]?)(\d+(?:/\d+)?)?(?:\*?([a-z])(?:\^(\d+))?)?"
)


def parse_poly(
    text: str, var: str | None = None, modulus: int | None = None
) -> Polynomial:
    """Inverse of :func:`format_poly` for scalar coefficients.

    Accepts ``2x - x^2``, ``2*x + -1*x^2``, ``1/2*x`` and the unicode minus.
    With ``modulus`` the coefficients become residues.
    """
    s = text.replace("−", "-").replace(" ", "").replace("²", "^2").replace("³", "^3")
    if not s:
        raise ValueError("empty polynomial text")
    s = s.replace("+-", "-").replace("-+", "-").replace("--", "+")
    coeffs: dict[int, Fraction] = {}
    pos = 0
    seen_var = var
    while pos < len(s):
        m = _TERM.match(s, pos)
        if m is None or m.end() == pos:
            raise ValueError(f"cannot parse polynomial {text!r} at {s[pos:]!r}")
        sign, num, v, exp = m.groups()
        if num is None and v is None:
            raise ValueError(f"cannot parse polynomial {text!r} at {s[pos:]!r}")
        if pos > 0 and not sign:
            raise ValueError(f"missing operator in {text!r}")
        if v is not None:
            if seen_var is None:
                seen_var = v
            elif v != seen_var:
                raise ValueError(f"mixed variables in {text!r}")
        c = Fraction(num) if num is not None else Fraction(1)
        if sign == "-":
            c = -c
        e = 0 if v is None else (int(exp) if exp else 1)
        coeffs[e] = coeffs.get(e, Fraction(0)) + c
        pos = m.end()
    n = max(coeffs) + 1
    vals: list[Any] = [_demote(coeffs.get(i, Fraction(0))) for i in range(n)]
    if modulus is not None:
        if any(isinstance(c, Fraction) for c in vals):
            raise ValueError("fractional coefficient in a modular polynomial")
        vals = [Modular(c, modulus) for c in vals]
    return Polynomial(vals)


def from_coeffs(coeffs: Sequence[Any]) -> Polynomial:
    return Polynomial(coeffs)


def eval_nonunital(p: Polynomial, a):
    """Evaluate a zero-constant polynomial at a ring element without a unit.

    Uses h_n = c_n a, h_i = c_i a + h_{i+1} a, so only scalar multiples and
    products of ``a`` appear.
    """
    if p.const != 0:
        raise ValueError(f"{p} has a nonzero constant term")
    ring = a.ring
    if p.is_zero():
        return ring.zero_elem()
    acc = ring.scale(p.coeffs[-1], a.value)
    for c in reversed(p.coeffs[1:-1]):
        acc = ring.add(ring.scale(c, a.value), ring.mul(acc, a.value))
    return ring.elem(acc)
