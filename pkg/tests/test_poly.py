from fractions import Fraction

import pytest
from hypothesis import assume, given, strategies as st

from quasiring.coeff import Modular
from quasiring.poly import (
    Polynomial,
    content,
    divide_exact,
    eval_nonunital,
    format_poly,
    hat_transform,
    parse_poly,
    quasi_inverse_witness,
    reflect,
    scale_to_pi,
    two_minus_transform,
)
from quasiring.ring import parse_ring

X = Polynomial.x()


def P(text, **kw):
    return parse_poly(text, **kw)


def hat_by_substitution(p, at):
    """(x - 1)^deg * p(x / (x - 1)) evaluated at a rational point."""
    at = Fraction(at)
    return (at - 1) ** p.degree * p(at / (at - 1))


zero_const_polys = st.lists(st.integers(-9, 9), min_size=1, max_size=8).map(
    lambda cs: Polynomial([0] + cs)
)


class TestArithmetic:
    def test_trims_and_degree(self):
        assert Polynomial([1, 2, 0, 0]).degree == 1
        assert Polynomial().degree == -1
        assert Polynomial([0]) == 0

    def test_mul_and_pow(self):
        assert (1 - X) ** 2 == P("1 - 2x + x^2")
        assert (X + 1) * (X - 1) == P("x^2 - 1")

    def test_compose(self):
        assert P("x^2").compose(P("2 - x")) == P("4 - 4x + x^2")

    @given(zero_const_polys, zero_const_polys, st.integers(-5, 5))
    def test_evaluation_is_a_homomorphism(self, p, q, v):
        assert (p * q)(v) == p(v) * q(v)
        assert (p + q)(v) == p(v) + q(v)


class TestText:
    @pytest.mark.parametrize("text", ["2x - x^2", "2x−x^2", "2*x - x^2"])
    def test_parse_variants(self, text):
        assert P(text) == Polynomial([0, 2, -1])

    def test_rational_coefficients(self):
        assert P("x^2 - 3/2x").coeffs == (0, Fraction(-3, 2), 1)

    def test_modular(self):
        p = P("t + 1", var="t", modulus=3)
        assert all(isinstance(c, Modular) for c in p.coeffs)
        assert format_poly(p, "t") == "1 + t"

    @given(zero_const_polys)
    def test_roundtrip(self, p):
        assert P(format_poly(p)) == p


class TestEvalNonunital:
    def test_square_mod_8(self):
        R = parse_ring("Z/8")
        assert eval_nonunital(P("x^2"), R.parse("2")) == R.parse("4")

    def test_rational_root(self):
        Q = parse_ring("Q")
        assert eval_nonunital(P("3x - 2x^2"), Q.parse("3/2")).is_zero()

    def test_f3(self):
        F3 = parse_ring("F3")
        assert eval_nonunital(P("2x^2 + 2x"), F3.parse("2")).is_zero()

    def test_nonunital_ring(self):
        R = parse_ring("dZ/nZ(2,8)")
        assert eval_nonunital(P("x^3"), R.parse("2")).is_zero()

    def test_constant_term_rejected(self):
        with pytest.raises(ValueError):
            eval_nonunital(P("1 + x"), parse_ring("Z/4").parse("1"))

    @given(zero_const_polys, st.integers(0, 11))
    def test_matches_unital_evaluation(self, p, a):
        R = parse_ring("Z/12")
        assert eval_nonunital(p, R.parse(str(a))) == R.parse(str(p(a) % 12))


class TestDivideExact:
    def test_examples(self):
        assert divide_exact(P("1 - x^2"), P("1 - x")) == P("1 + x")
        assert divide_exact(P("2x^2 - 3x + 1"), P("1 - x")) == P("1 - 2x")

    def test_remainder(self):
        with pytest.raises(ValueError):
            divide_exact(P("x^2 + 1"), X)


class TestQuasiInverseWitness:
    def test_examples(self):
        assert quasi_inverse_witness(P("x^2")) == P("-x")
        assert quasi_inverse_witness(P("3x - 2x^2")) == P("2x")

    @pytest.mark.parametrize("n", range(1, 9))
    def test_power_family(self, n):
        p = 1 - (1 - X) ** n
        assert quasi_inverse_witness(p) == 1 - (1 - X) ** (n - 1)

    @given(zero_const_polys)
    def test_identity(self, p):
        p = p + (1 - p(1)) * X  # force p(1) = 1
        Pq = quasi_inverse_witness(p)
        assert X + Pq - X * Pq == p


class TestHat:
    @pytest.mark.parametrize(
        "p,expected",
        [("x^2", "x^2"), ("x^2 - 3x", "-2x^2 + 3x"), ("3x - 2x^2", "x^2 - 3x")],
    )
    def test_examples(self, p, expected):
        assert hat_transform(P(p)) == P(expected)

    @given(zero_const_polys, st.integers(2, 9))
    def test_matches_substitution_oracle(self, p, at):
        assume(p(1) != 0)
        assert hat_transform(p)(at) == hat_by_substitution(p, at)

    @given(zero_const_polys)
    def test_identities(self, p):
        assume(p(1) != 0)
        h = hat_transform(p)
        assert h(1) == p.lead
        assert h.lead == p(1)
        assert hat_transform(h) == p

    def test_zero_rejected(self):
        with pytest.raises(ValueError):
            hat_transform(Polynomial())


class TestTwoMinus:
    @pytest.mark.parametrize(
        "p,expected",
        [
            (X, (2 - X) * X),
            (X**2, (2 - X) ** 2 * X),
            (3 * X - 2 * X**2, (3 * (2 - X) - 2 * (2 - X) ** 2) * X),
        ],
    )
    def test_examples(self, p, expected):
        assert two_minus_transform(p) == expected

    def test_annihilates_two_minus_root(self):
        q = two_minus_transform(P("3x - 2x^2"))
        assert q(Fraction(1, 2)) == 0 and q(1) == 1


class TestScaleToPi:
    def test_f3(self):
        r = Polynomial([Modular(-2, 3), Modular(1, 3)])
        assert scale_to_pi(r) == Polynomial([0, Modular(2, 3), Modular(2, 3)])

    def test_f2(self):
        r = Polynomial([0, 0, Modular(1, 2)])
        assert scale_to_pi(r) == Polynomial([0, 0, 0, Modular(1, 2)])

    def test_rational(self):
        p = scale_to_pi(X - 5)
        assert p == Fraction(-1, 4) * (X - 5) * X
        assert p(1) == 1 and p(5) == 0

    @given(st.lists(st.integers(-9, 9), min_size=1, max_size=6))
    def test_shape(self, cs):
        r = Polynomial(cs)
        assume(r.degree >= 0 and r(1) != 0)
        p = scale_to_pi(r)
        assert p.const == 0 and p(1) == 1


class TestContentReflect:
    @pytest.mark.parametrize("p,c", [("6x^2 + 4x", 2), ("x", 1), ("-3x^3 - 9x", 3)])
    def test_content(self, p, c):
        assert content(P(p)) == c

    @pytest.mark.parametrize("p,r", [("x^2 - 3x", "1 - 3x"), ("x^3", "1"), ("2x + 5x^2", "5 + 2x")])
    def test_reflect(self, p, r):
        assert reflect(P(p)) == P(r)
