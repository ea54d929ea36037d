"""Verification certificates and their JSON form.

Schema::

    {suite, anchor: {section, quote}, seed,
     instances: [{input, claim, result, witness?}], pass, counterexample,
     elapsed_ms}

``to_json(timing=False)`` drops ``elapsed_ms``; that canonical form is
byte-for-byte reproducible from the seed.
"""

from __future__ import annotations

import json
import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from typing import Any, Iterator


@dataclass
class Instance:
    input: str
    claim: str
    result: bool
    witness: Any = None

    def to_dict(self) -> dict[str, Any]:
        d = {"input": self.input, "claim": self.claim, "result": bool(self.result)}
        if self.witness is not None:
            d["witness"] = self.witness
        return d


@dataclass
class Certificate:
    suite: str
    section: str
    quote: str
    seed: int | None = None
    instances: list[Instance] = field(default_factory=list)
    elapsed_ms: float = 0.0
    notes: str | None = None

    def add(self, input: str, claim: str, result: bool, witness: Any = None) -> bool:
        self.instances.append(Instance(input, claim, bool(result), witness))
        return bool(result)

    @property
    def passed(self) -> bool:
        return all(i.result for i in self.instances)

    @property
    def counterexample(self) -> Instance | None:
        return next((i for i in self.instances if not i.result), None)

    def to_dict(self, timing: bool = True) -> dict[str, Any]:
        d: dict[str, Any] = {
            "suite": self.suite,
            "anchor": {"section": self.section, "quote": self.quote},
            "seed": self.seed,
            "instances": [i.to_dict() for i in self.instances],
            "pass": self.passed,
            "counterexample": None if self.passed else self.counterexample.to_dict(),
        }
        if self.notes:
            d["notes"] = self.notes
        if timing:
            d["elapsed_ms"] = round(self.elapsed_ms, 3)
        return d

    def to_json(self, timing: bool = True) -> str:
        return json.dumps(self.to_dict(timing), indent=2, sort_keys=True)

    @contextmanager
    def timed(self) -> Iterator[Certificate]:
        t0 = time.perf_counter()
        try:
            yield self
        finally:
            self.elapsed_ms = (time.perf_counter() - t0) * 1000.0

    def summary(self) -> str:
        bad = sum(1 for i in self.instances if not i.result)
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.suite}: {len(self.instances) - bad}/{len(self.instances)} instances"


CERTIFICATE_SCHEMA: dict[str, Any] = {
    "type": "object",
    "required": ["suite", "anchor", "seed", "instances", "pass"],
    "properties": {
        "suite": {"type": "string"},
        "anchor": {
            "type": "object",
            "required": ["section", "quote"],
            "properties": {"section": {"type": "string"}, "quote": {"type": "string"}},
        },
        "seed": {"type": ["integer", "null"]},
        "instances": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["input", "claim", "result"],
                "properties": {
                    "input": {"type": "string"},
                    "claim": {"type": "string"},
                    "result": {"type": "boolean"},
                },
            },
        },
        "pass": {"type": "boolean"},
        "counterexample": {"type": ["object", "null"]},
        "elapsed_ms": {"type": "number"},
        "notes": {"type": "string"},
    },
}


# Anchor per suite: a result label and the formula being checked. Formulas
# only, so a certificate can be audited without the code.
ANCHORS: dict[str, tuple[str, str]] = {
    "finite_core": ("finite rings", "pi(R) = Q(R), J(R) = Nil*(R), pi-ideals nil"),
    "odd_denominator": ("odd-denominator rationals", "(2m/(2n-1))^(-1) = 2m/(2m-2n+1)"),
    "localization_x2plus1": ("localization at 2 and primes 1 mod 4", "m^2 + n^2 has only allowed prime factors"),
    "zp_radical": ("J of the p-local integers", "a^2 - a*a = 0 and a/(a-1) in pZ_(p)"),
    "unbounded_index": ("nil ring of unbounded index", "a^2 = k a with k from CRT"),
    "exceptional_refute_int": ("polynomials over Z", "p(k) not in {1, -1} for some k"),
    "exceptional_witness_polyring": ("polynomials over F_p[t]", "deg P(x^(d+1)) = d_n + n(d+1)"),
    "notcl": ("pi over F_p in M2(F_p[t])", "trace(A o B) = -t for A = tE12, B = E21"),
    "rational_pi": ("pi-algebraic rationals", "a/b in pi(Q) iff |a - b| = 1"),
    "hat_identities": ("hat transform", "hat(p)(1) = lead(p), lead(hat(p)) = p(1), hat(hat(p)) = p"),
    "witness_agreement": ("witness quasi-inverse", "P = 1 - (1 - p)/(1 - x) gives a^(-1)"),
    "conjugation": ("conjugation automorphism", "x -> r o x o r^(-1) is a ring automorphism"),
    "circ_identities": (
        "circle identities",
        "xy = x o (x' + y') o y, x + y = x o (x'y') o y, -x = (2x') o x",
    ),
    "quasigroup_identities": (
        "circle identities and conjugation",
        "xy = x o (x' + y') o y, x + y = x o (x'y') o y, -x = (2x') o x",
    ),
    "ring_closure": ("subgroups of Q(R)", "closed under + iff closed under * iff subring"),
    "division_closure": ("subgroups in prime characteristic", "S + Z/p closed under + iff division subring"),
    "subgroup_equivalences": ("subgroups of Q(R)", "closed under + iff closed under *"),
    "generation": ("generation of Q", "<N(M2(F2))> = Q, <N(M2(F3))> = ker det(1 - A), <pi(Q)> = Q \\ {1}"),
    "rational_product": ("generation of Q(Q)", "<pi(Q)> = Q \\ {1}"),
}


def new_certificate(suite: str, seed: int | None = None, anchor: str | None = None) -> Certificate:
    section, quote = ANCHORS[anchor or suite]
    return Certificate(suite, section, quote, seed)
