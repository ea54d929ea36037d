import itertools
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from conftest import SMALL_FINITE
from quasiring.classify import (
    INTEGRAL,
    NIL,
    PI,
    Witness,
    charpoly,
    classify_element,
    classify_matrix,
    classify_sets,
    decide_pi,
    integral_witness_finite,
    pi_decide_rational,
    pi_witness_finite,
    witness_from_integral,
    witness_roundtrip,
)
from quasiring.finite import tables
from quasiring.poly import Polynomial, eval_nonunital, parse_poly, quasi_inverse_witness
from quasiring.ring import enumerate_ring, parse_ring, quasi_inverse


def brute_pi_mod(n, a, deg=4):
    """Some p over Z/n with p(0) = 0, p(1) = 1, deg p <= deg and p(a) = 0?"""
    for cs in itertools.product(range(n), repeat=deg - 1):
        last = (1 - sum(cs)) % n
        coeffs = list(cs) + [last]
        if sum(c * pow(a, i + 1, n) for i, c in enumerate(coeffs)) % n == 0:
            return True
    return False


class TestWitness:
    def test_shapes(self, z4):
        two = z4.parse("2")
        assert Witness(PI, parse_poly("2x - x^2")).validates(two)
        assert not Witness(PI, parse_poly("x^2")).validates(z4.parse("1"))
        assert not Witness(PI, parse_poly("x^2 + x")).validates(two)  # p(1) = 2
        assert not Witness(INTEGRAL, parse_poly("2x^2")).validates(two)  # not monic
        assert Witness(NIL, exponent=2).validates(two)
        assert not Witness(NIL, exponent=1).validates(two)

    def test_to_text(self):
        assert Witness(NIL, exponent=3).to_text() == "x^3"
        assert Witness(PI, parse_poly("3x - 2x^2")).to_text() == "3*x - 2*x^2"


class TestFiniteWitnesses:
    def test_examples(self, z4):
        assert pi_witness_finite(z4.parse("2")).poly == parse_poly("2x - x^2")
        assert pi_witness_finite(z4.parse("1")) is None
        z6 = parse_ring("Z/6")
        w = pi_witness_finite(z6.parse("2"))
        assert w.poly == parse_poly("2x - x^2")
        assert classify_element(z6.parse("2")).in_N is False

    @pytest.mark.parametrize("n", range(2, 9))
    def test_brute_force_oracle(self, n):
        R = parse_ring(f"Z/{n}")
        for a in range(n):
            found = brute_pi_mod(n, a)
            in_q = quasi_inverse(R.parse(str(a))) is not None
            assert found == in_q

    @pytest.mark.parametrize("name", SMALL_FINITE)
    def test_integral_witness_everywhere(self, name):
        for a in enumerate_ring(parse_ring(name)):
            assert integral_witness_finite(a).validates(a)

    @pytest.mark.parametrize("name", SMALL_FINITE)
    def test_quasi_inverse_from_witness(self, name):
        for a in enumerate_ring(parse_ring(name)):
            w = pi_witness_finite(a)
            if w is not None:
                assert eval_nonunital(quasi_inverse_witness(w.poly), a) == quasi_inverse(a)


class TestClassifySets:
    @pytest.mark.parametrize(
        "name,counts",
        [
            ("Z/4", {"N": 2, "Q": 2, "pi": 2, "I": 4}),
            ("Z/6", {"N": 1, "Q": 2, "pi": 2, "I": 6}),
            ("M2(Z/2)", {"N": 4, "Q": 6, "pi": 6, "I": 16}),
        ],
    )
    def test_counts(self, name, counts):
        got = classify_sets(parse_ring(name)).counts()
        assert {k: got[k] for k in counts} == counts

    @pytest.mark.parametrize("name", SMALL_FINITE)
    def test_pi_equals_q_and_chain(self, name):
        s = classify_sets(parse_ring(name))
        assert set(s.N) <= set(s.pi) == set(s.Q)

    def test_m2f2_q_matches_determinant(self, m2f2):
        s = classify_sets(m2f2)
        one = m2f2.one_elem()
        by_det = {a for a in enumerate_ring(m2f2) if m2f2.det((one - a).value) % 2}
        assert set(s.Q) == by_det


class TestRationals:
    def test_examples(self):
        assert pi_decide_rational(Fraction(3, 2)).poly == parse_poly("3x - 2x^2")
        assert pi_decide_rational(Fraction(5, 3)) is None
        assert pi_decide_rational(0).poly == parse_poly("x^2")

    @given(st.integers(-60, 60), st.integers(1, 60))
    def test_criterion(self, a, b):
        q = Fraction(a, b)
        w = pi_decide_rational(q)
        assert (w is not None) == (abs(q.numerator - q.denominator) == 1)
        if w is not None:
            assert w.poly(q) == 0 and w.poly(1) == 1 and w.poly.const == 0

    def test_dispatch_on_carriers(self):
        assert classify_element(parse_ring("Q").parse("3/2")).in_pi is True
        assert classify_element(parse_ring("Z").parse("2")).in_pi is True
        assert classify_element(parse_ring("Z").parse("3")).in_pi is False
        assert classify_element(parse_ring("OddDen").parse("2/3")).in_pi is True
        assert classify_element(parse_ring("Zloc(5)").parse("5/4")).in_pi is True


class TestMatrices:
    def test_e12_f2(self, m2f2):
        r = classify_matrix(m2f2.parse("[[0,1],[0,0]]"))
        assert r.in_N and r.witnesses[NIL].exponent == 2
        assert r.witnesses[PI].poly == Polynomial([0, 0, 0, 1])

    def test_identity_f3(self):
        M = parse_ring("M2(Z/3)")
        r = classify_matrix(M.one_elem())
        assert (r.in_Q, r.in_pi, r.in_I) == (False, False, True)

    def test_diag_f3(self):
        M = parse_ring("M2(Z/3)")
        r = classify_matrix(M.parse("[[2,0],[0,0]]"))
        assert r.in_Q and r.in_pi
        assert r.witnesses[PI].poly == parse_poly("2x^2 + 2x^3", modulus=3)

    @pytest.mark.parametrize("p", [2, 3, 5])
    def test_charpoly_trace_det_oracle(self, p):
        M = parse_ring(f"M2(Z/{p})")
        rng = np.random.default_rng(p)
        for _ in range(30):
            a, b, c, d = (int(v) for v in rng.integers(0, p, 4))
            A = M.elem(((a, b), (c, d)))
            chi = charpoly(A)
            assert chi == parse_poly(f"x^2 - {a + d}x + {a * d - b * c}", modulus=p)

    def test_polynomial_entries(self):
        M = parse_ring("M2(F3[t])")
        AB = M.parse("[[-t,t],[1,0]]")
        r = classify_element(AB)
        assert r.in_Q is True and r.in_pi is False
        assert classify_element(M.parse("[[0,t],[0,0]]")).in_pi is True

    def test_matrix_classification_matches_tables(self):
        M = parse_ring("M2(Z/3)")
        T = tables(M)
        for i, a in enumerate(enumerate_ring(M)):
            r = classify_matrix(a)
            assert r.in_Q == bool(T.quasi_regular[i])
            assert r.in_N == bool(T.nilpotent[i])


class TestRoundtrip:
    def test_rational(self, rationals):
        a = rationals.parse("3/2")
        w = witness_roundtrip(a, Witness(PI, parse_poly("3x - 2x^2")))
        assert w.poly == parse_poly("x^2 - 3x")
        assert witness_from_integral(w, a).poly == parse_poly("3x - 2x^2")

    def test_zero_and_z4(self, z4, rationals):
        zero = rationals.parse("0")
        assert witness_roundtrip(zero, Witness(PI, parse_poly("x"))).poly == parse_poly("x")
        w = witness_roundtrip(z4.parse("2"), Witness(PI, parse_poly("2x - x^2")))
        assert w.poly == parse_poly("x^2 - 2x")

    def test_e12(self, m2f2):
        a = m2f2.parse("[[0,1],[0,0]]")
        w = witness_from_integral(Witness(INTEGRAL, parse_poly("x^2")), a)
        assert w.poly == parse_poly("x^2")

    @pytest.mark.parametrize("name", ["Z/8", "Z/9", "M2(Z/2)"])
    def test_finite_roundtrip(self, name):
        for a in enumerate_ring(parse_ring(name)):
            w = pi_witness_finite(a)
            if w is None:
                continue
            back = witness_from_integral(witness_roundtrip(a, w), a)
            assert back.validates(a)


class TestThreeValued:
    def test_unknown_is_reported(self):
        R = parse_ring("Unital(OddDen)")
        decision, w = decide_pi(R.parse("(1|2/3)"))
        assert decision in ("no", "unknown")

    def test_yes_carries_witness(self, z4):
        decision, w = decide_pi(z4.parse("2"))
        assert decision == "yes" and w.validates(z4.parse("2"))

    def test_no(self, z4):
        assert decide_pi(z4.parse("1")) == ("no", None)
