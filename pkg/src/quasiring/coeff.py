"""Exact coefficient domains and the elementary number theory the rest of
the package leans on.

Integers are plain Python ``int`` and rationals are ``fractions.Fraction``
(always reduced, positive denominator). Residues modulo ``n`` are carried by
:class:`Modular`; subrings of the rationals obtained by localizing the
integers are carried by :class:`LocalizedRational`.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence, Union

MAX_FACTOR_INPUT = 2**63


@dataclass(frozen=True, eq=False)
class Modular:
    """An element of Z/nZ stored as its least nonnegative residue."""

    value: int
    modulus: int

    def __post_init__(self) -> None:
        if self.modulus < 2:
            raise ValueError(f"modulus must be >= 2, got {self.modulus}")
        object.__setattr__(self, "value", self.value % self.modulus)

    def _coerce(self, other: object) -> int:
        if isinstance(other, Modular):
            if other.modulus != self.modulus:
                raise ValueError(
                    f"modulus mismatch: {self.modulus} vs {other.modulus}"
                )
            return other.value
        if isinstance(other, int) and not isinstance(other, bool):
            return other
        raise TypeError(f"cannot combine Modular with {type(other).__name__}")

    def __add__(self, other: object) -> Modular:
        try:
            return Modular(self.value + self._coerce(other), self.modulus)
        except TypeError:
            return NotImplemented

    __radd__ = __add__

    def __sub__(self, other: object) -> Modular:
        try:
            return Modular(self.value - self._coerce(other), self.modulus)
        except TypeError:
            return NotImplemented

    def __rsub__(self, other: object) -> Modular:
        try:
            return Modular(self._coerce(other) - self.value, self.modulus)
        except TypeError:
            return NotImplemented

    def __mul__(self, other: object) -> Modular:
        try:
            return Modular(self.value * self._coerce(other), self.modulus)
        except TypeError:
            return NotImplemented

    __rmul__ = __mul__

    def __neg__(self) -> Modular:
        return Modular(-self.value, self.modulus)

    def __pow__(self, e: int) -> Modular:
        if e < 0:
            return self.inverse() ** (-e)
        return Modular(pow(self.value, e, self.modulus), self.modulus)

    def __truediv__(self, other: object) -> Modular:
        if isinstance(other, int):
            other = Modular(other, self.modulus)
        if not isinstance(other, Modular):
            return NotImplemented
        return self * other.inverse()

    def inverse(self) -> Modular:
        if math.gcd(self.value, self.modulus) != 1:
            raise ZeroDivisionError(f"{self} is not invertible")
        return Modular(pow(self.value, -1, self.modulus), self.modulus)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Modular):
            return self.value == other.value and self.modulus == other.modulus
        if isinstance(other, int) and not isinstance(other, bool):
            return self.value == other % self.modulus
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.value, self.modulus))

    def __bool__(self) -> bool:
        return self.value != 0

    def __int__(self) -> int:
        return self.value

    def __repr__(self) -> str:
        return f"Modular({self.value}, {self.modulus})"

    def __str__(self) -> str:
        return str(self.value)


# Localization tags: which primes may appear in a denominator.
ODD = "odd"
COPRIME = "coprime"
S_TWO_ONE_MOD_4 = "S"


def allowed_prime(tag: str, p: int | None) -> Callable[[int], bool]:
    if tag == ODD:
        return lambda q: q != 2
    if tag == COPRIME:
        if p is None or not is_prime(p):
            raise ValueError(f"coprime-to-p localization needs a prime, got {p}")
        return lambda q: q != p
    if tag == S_TWO_ONE_MOD_4:
        return lambda q: q == 2 or q % 4 == 1
    raise ValueError(f"unknown localization tag {tag!r}")


@dataclass(frozen=True)
class LocalizedRational:
    """A rational number whose denominator only uses allowed primes."""

    value: Fraction
    tag: str
    p: int | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "value", Fraction(self.value))
        allowed = allowed_prime(self.tag, self.p)
        _, primes = factor(self.value.denominator)
        if not all(allowed(q) for q in primes):
            raise ValueError(
                f"{self.value} has a denominator outside the localization {self.tag}"
            )

    def _same(self, other: LocalizedRational) -> None:
        if (other.tag, other.p) != (self.tag, self.p):
            raise ValueError("localization mismatch")

    def __add__(self, other: LocalizedRational) -> LocalizedRational:
        self._same(other)
        return LocalizedRational(self.value + other.value, self.tag, self.p)

    def __sub__(self, other: LocalizedRational) -> LocalizedRational:
        self._same(other)
        return LocalizedRational(self.value - other.value, self.tag, self.p)

    def __mul__(self, other: LocalizedRational) -> LocalizedRational:
        self._same(other)
        return LocalizedRational(self.value * other.value, self.tag, self.p)

    def __neg__(self) -> LocalizedRational:
        return LocalizedRational(-self.value, self.tag, self.p)

    def is_unit(self) -> bool:
        if self.value == 0:
            return False
        allowed = allowed_prime(self.tag, self.p)
        _, primes = factor(self.value.numerator)
        return all(allowed(q) for q in primes)


Scalar = Union[int, Fraction, Modular, LocalizedRational]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def factor(n: int) -> tuple[int, list[int]]:
    """Trial-division factorization.

    Returns ``(sign, primes)`` with ``sign * prod(primes) == n`` and the
    primes listed in ascending order with multiplicity.
    """
    if n == 0:
        raise ValueError("cannot factor 0")
    if abs(n) >= MAX_FACTOR_INPUT:
        raise ValueError(f"|n| must be below 2**63, got {n}")
    sign = -1 if n < 0 else 1
    m = abs(n)
    primes: list[int] = []
    while m % 2 == 0:
        primes.append(2)
        m //= 2
    f = 3
    while f * f <= m:
        while m % f == 0:
            primes.append(f)
            m //= f
        f += 2
    if m > 1:
        primes.append(m)
    return sign, primes


def crt_solve(residues: Sequence[int], moduli: Sequence[int]) -> int:
    """Smallest nonnegative k with k = residues[i] (mod moduli[i]) for all i."""
    if len(residues) != len(moduli):
        raise ValueError("residues and moduli differ in length")
    for i, m in enumerate(moduli):
        if m < 1:
            raise ValueError(f"moduli must be positive, got {m}")
        for m2 in moduli[i + 1 :]:
            if math.gcd(m, m2) != 1:
                raise ValueError(f"moduli {m} and {m2} are not coprime")
    k, M = 0, 1
    for r, m in zip(residues, moduli):
        # lift k so that it also matches r mod m
        t = ((r - k) * pow(M, -1, m)) % m if m > 1 else 0
        k += M * t
        M *= m
    return k % M


_ZMOD = re.compile(r"^(?:Z/|F)(\d+)$")
_ZLOC = re.compile(r"^Zloc\((\d+)\)$")


def is_unit(x: Scalar, domain: str) -> bool:
    """Invertibility of ``x`` in the coefficient domain named by ``domain``.

    Recognized names: ``Z``, ``Q``, ``Z/n``, ``Fp``, ``Zloc(p)``, ``ZlocS``
    and ``Zodd`` (integers localized at odd denominators).
    """
    domain = domain.replace(" ", "")
    if domain == "Z":
        return _as_int(x) in (1, -1)
    if domain == "Q":
        return Fraction(_as_fraction(x)) != 0
    if m := _ZMOD.match(domain):
        n = int(m.group(1))
        if domain.startswith("F") and not is_prime(n):
            raise ValueError(f"F{n} is not a prime field")
        v = x.value if isinstance(x, Modular) else _as_int(x)
        return math.gcd(v % n, n) == 1
    if m := _ZLOC.match(domain):
        return LocalizedRational(_as_fraction(x), COPRIME, int(m.group(1))).is_unit()
    if domain == "ZlocS":
        return LocalizedRational(_as_fraction(x), S_TWO_ONE_MOD_4).is_unit()
    if domain == "Zodd":
        return LocalizedRational(_as_fraction(x), ODD).is_unit()
    raise ValueError(f"unknown domain {domain!r}")


def _as_int(x: Scalar) -> int:
    if isinstance(x, Modular):
        raise TypeError("a residue class is not an integer")
    if isinstance(x, LocalizedRational):
        x = x.value
    f = Fraction(x)
    if f.denominator != 1:
        raise TypeError(f"{x} is not an integer")
    return f.numerator


def _as_fraction(x: Scalar) -> Fraction:
    if isinstance(x, LocalizedRational):
        return x.value
    if isinstance(x, Modular):
        raise TypeError("a residue class is not a rational number")
    return Fraction(x)


def parse_rational(text: str) -> Fraction:
    return Fraction(text.strip().replace("−", "-"))


def format_rational(q: Fraction | int) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"
