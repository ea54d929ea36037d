"""Standalone re-validation of certificate payloads.

Uses only the scalar, polynomial and ring layers: nothing here trusts the
classifiers or the index tables that produced the certificate.

Recognized payloads (found anywhere inside an instance's witness):

* ``{ring, element, kind, poly}``: poly annihilates element, with the
  shape its kind demands (pi: p(0) = 0, p(1) = 1; integral: monic).
* ``{ring, element, quasi_inverse}``: both circle products vanish.
* ``{ring, x, y, circle_identities}``: the three circle identities.
* ``{q, factors}``: signed generators 1 + 1/n (n nonzero) whose circle
  product is q.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterator

from .coeff import parse_rational
from .poly import eval_nonunital, parse_poly
from .ring import circ, parse_ring, quasi_inverse


@dataclass
class Recheck:
    instance: int
    payload: dict[str, Any]
    ok: bool
    reason: str = ""


def _payloads(obj: Any) -> Iterator[dict[str, Any]]:
    if isinstance(obj, dict):
        if {"ring", "element", "poly"} <= obj.keys() or {"ring", "element", "quasi_inverse"} <= obj.keys() \
                or {"ring", "x", "y", "circle_identities"} <= obj.keys() or {"q", "factors"} <= obj.keys():
            yield obj
        for v in obj.values():
            yield from _payloads(v)
    elif isinstance(obj, list):
        for v in obj:
            yield from _payloads(v)


def _check_annihilator(d: dict[str, Any]) -> tuple[bool, str]:
    R = parse_ring(d["ring"])
    a = R.parse(d["element"])
    p = parse_poly(d["poly"])
    if p.const != 0:
        return False, "nonzero constant term"
    if d.get("kind") == "pi" and p.sum_of_coefficients() != 1:
        return False, "p(1) != 1"
    if d.get("kind") == "integral" and not p.is_monic():
        return False, "not monic"
    if not eval_nonunital(p, a).is_zero():
        return False, "does not annihilate"
    return True, ""


def _check_quasi_inverse(d: dict[str, Any]) -> tuple[bool, str]:
    R = parse_ring(d["ring"])
    a, b = R.parse(d["element"]), R.parse(d["quasi_inverse"])
    ok = circ(a, b).is_zero() and circ(b, a).is_zero()
    return ok, "" if ok else "circle product is not zero"


def _check_identities(d: dict[str, Any]) -> tuple[bool, str]:
    R = parse_ring(d["ring"])
    x, y = R.parse(d["x"]), R.parse(d["y"])
    xi, yi = quasi_inverse(x), quasi_inverse(y)
    if xi is None or yi is None:
        return False, "not quasi-regular"
    ok = (
        x * y == circ(circ(x, xi + yi), y)
        and x + y == circ(circ(x, xi * yi), y)
        and -x == circ(2 * xi, x)
    )
    return ok, "" if ok else "identity fails"


def _check_product(d: dict[str, Any]) -> tuple[bool, str]:
    acc = Fraction(0)
    for g_text, e in d["factors"]:
        g = parse_rational(g_text)
        u = 1 - g
        if u == 0 or abs(u.numerator) != 1:
            return False, f"{g} is not 1 + 1/n"
        f = g if e == 1 else g / (g - 1)
        acc = acc + f - acc * f
    ok = acc == parse_rational(d["q"])
    return ok, "" if ok else f"product is {acc}"


def recheck(cert: dict[str, Any] | str) -> list[Recheck]:
    """Re-validate every recognized payload in a certificate (dict or JSON)."""
    if isinstance(cert, str):
        cert = json.loads(cert)
    out = []
    for n, inst in enumerate(cert["instances"]):
        for d in _payloads(inst.get("witness")):
            if "poly" in d:
                ok, why = _check_annihilator(d)
            elif "quasi_inverse" in d:
                ok, why = _check_quasi_inverse(d)
            elif "circle_identities" in d:
                ok, why = _check_identities(d)
            else:
                ok, why = _check_product(d)
            out.append(Recheck(n, d, ok, why))
    return out
