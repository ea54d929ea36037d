import json
from fractions import Fraction

import jsonschema
import pytest

from quasiring.certificate import CERTIFICATE_SCHEMA, Certificate
from quasiring.coeff import Modular
from quasiring.poly import Polynomial
from quasiring.recheck import recheck
from quasiring.verify import (
    SUITES,
    crt_multiplier,
    exceptional_refute_int,
    exceptional_witness_polyring,
    finite_family,
    rational_oracle,
    run_suite,
    suite_finite_core,
    unbounded_ring,
)
from quasiring.ring import parse_ring

SMALL = {"sample": 40}


def fp(coeffs, p):
    return Polynomial([Modular(c, p) for c in coeffs])


class TestCertificate:
    def test_counterexample_and_pass(self):
        c = Certificate("demo", "label", "formula", 0)
        c.add("a", "holds", True)
        assert c.passed and c.to_dict()["counterexample"] is None
        c.add("b", "breaks", False, {"why": 1})
        assert not c.passed
        assert c.to_dict()["counterexample"]["input"] == "b"

    def test_timing_excluded_from_canonical_form(self):
        c = Certificate("demo", "label", "formula", 0)
        with c.timed():
            c.add("a", "holds", True)
        assert "elapsed_ms" in c.to_dict()
        assert "elapsed_ms" not in c.to_dict(timing=False)


@pytest.mark.parametrize("name", sorted(SUITES))
class TestSuites:
    def test_passes_and_matches_schema(self, name):
        cert = run_suite(name, seed=7, **({} if name == "finite_core" else SMALL))
        assert cert.passed, cert.counterexample
        jsonschema.validate(json.loads(cert.to_json()), CERTIFICATE_SCHEMA)

    def test_deterministic(self, name):
        kw = {"max_n": 8} if name == "finite_core" else SMALL
        a = run_suite(name, seed=3, **kw).to_json(timing=False)
        b = run_suite(name, seed=3, **kw).to_json(timing=False)
        assert a == b

    def test_offline_recheck(self, name):
        kw = {"max_n": 8} if name == "finite_core" else SMALL
        results = recheck(run_suite(name, seed=1, **kw).to_json())
        assert all(r.ok for r in results), [r for r in results if not r.ok][:3]


class TestRecheckDetectsTampering:
    def test_bad_annihilator(self):
        cert = json.loads(run_suite("finite_core", max_n=6).to_json())
        for inst in cert["instances"]:
            for s in (inst.get("witness") or {}).get("samples") or []:
                if s.get("poly") and s["element"] not in ("0",):
                    s["poly"] = "x"
                    break
        assert any(not r.ok for r in recheck(cert))

    def test_bad_product(self):
        payload = {"instances": [{"witness": {"q": "1/3", "factors": [["3/2", 1]]}}]}
        assert not recheck(payload)[0].ok

    def test_bad_quasi_inverse(self):
        payload = {"instances": [{"witness": {"ring": "Z/8", "element": "2", "quasi_inverse": "6"}}]}
        assert not recheck(payload)[0].ok


class TestFiniteFamily:
    def test_contents(self):
        names = [str(R) for R in finite_family(64)]
        assert "Z/64" in names and "M2(Z/4)" in names and "Z/4 + M2(Z/2)" in names
        assert "Unital(dZ/nZ(2,16))" in names

    def test_rejects_infinite(self):
        with pytest.raises(ValueError):
            suite_finite_core(rings=[parse_ring("Q")])

    def test_examples(self):
        cert = suite_finite_core(rings=[parse_ring("Z/8"), parse_ring("dZ/nZ(2,8)"), parse_ring("M2(Z/2)")])
        assert cert.passed
        by = {(i.input, i.claim): i.witness for i in cert.instances}
        assert by[("Z/8", "J(R) = Nil*(R)")] == {"J": 4, "Nil*": 4}
        assert by[("M2(Z/2)", "J(R) = Nil*(R)")] == {"J": 1, "Nil*": 1}


class TestUnboundedIndex:
    def test_example(self):
        R = unbounded_ring(3)
        a = (0, 3, 5)
        assert crt_multiplier(R, a) == 255
        assert R.mul(a, a) == R.scale_int(255, a)
        assert crt_multiplier(R, (0, 0, 0)) == 0

    def test_rejects_small(self):
        with pytest.raises(ValueError):
            unbounded_ring(1)


class TestExceptional:
    @pytest.mark.parametrize("coeffs,k", [([1, 1, 1], 1), ([0, 1], 0), ([1, 2], 1)])
    def test_refute_examples(self, coeffs, k):
        assert exceptional_refute_int(Polynomial(coeffs)) == k

    def test_refute_constant(self):
        with pytest.raises(ValueError):
            exceptional_refute_int(Polynomial([1]))

    def test_worst_case_probes(self):
        # p = 1 at 0, 1, -1 and p = -1 at 2, -2 cannot all hold for one quadratic,
        # but x(x - 1) + 1 takes the value 1 at 0 and 1
        p = Polynomial([1, -1, 1])
        assert exceptional_refute_int(p) == -1

    def test_polyring_examples(self):
        x = fp([0, 1], 2)
        one = fp([1], 2)
        assert exceptional_witness_polyring(Polynomial([one, x])).degree == 2
        assert exceptional_witness_polyring(Polynomial([fp([], 2), one])).degree == 1
        x3 = fp([0, 0, 0, 1], 2)
        assert exceptional_witness_polyring(Polynomial([x3, fp([], 2), one])).degree == 4

    def test_polyring_constant(self):
        with pytest.raises(ValueError):
            exceptional_witness_polyring(Polynomial([fp([1], 2)]))


class TestRationalOracle:
    def test_agrees_on_small_box(self):
        oracle = rational_oracle(6)
        assert oracle[Fraction(3, 2)] and oracle[Fraction(0)] and not oracle[Fraction(5, 3)]
