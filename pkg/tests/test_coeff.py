from fractions import Fraction
from math import gcd, prod

import pytest
from hypothesis import given, strategies as st

from quasiring.coeff import (
    COPRIME,
    ODD,
    S_TWO_ONE_MOD_4,
    LocalizedRational,
    Modular,
    allowed_prime,
    crt_solve,
    factor,
    format_rational,
    is_prime,
    is_unit,
    parse_rational,
)


def naive_is_prime(n):
    return n >= 2 and all(n % d for d in range(2, n))


class TestModular:
    def test_wraps(self):
        assert Modular(11, 8) == 3
        assert Modular(3, 8) * 3 == 1
        assert int(-Modular(3, 8)) == 5

    def test_mixed_moduli_rejected(self):
        with pytest.raises(ValueError):
            Modular(1, 4) + Modular(1, 6)

    def test_bad_modulus(self):
        with pytest.raises(ValueError):
            Modular(1, 1)

    def test_inverse(self):
        assert Modular(3, 8).inverse() == 3
        with pytest.raises(ZeroDivisionError):
            Modular(2, 8).inverse()

    @given(st.integers(2, 60), st.integers(), st.integers(), st.integers())
    def test_ring_laws_match_integers(self, n, a, b, c):
        A, B, C = Modular(a, n), Modular(b, n), Modular(c, n)
        assert A * (B + C) == (a * (b + c)) % n
        assert (A - B) == (a - b) % n
        assert A * B == B * A

    @given(st.integers(2, 60), st.integers())
    def test_inverse_exists_iff_coprime(self, n, a):
        if gcd(a, n) == 1:
            assert Modular(a, n) * Modular(a, n).inverse() == 1
        else:
            with pytest.raises(ZeroDivisionError):
                Modular(a, n).inverse()


class TestFactor:
    @pytest.mark.parametrize("n,expected", [(5, [5]), (34, [2, 17]), (50, [2, 5, 5]), (1, [])])
    def test_examples(self, n, expected):
        assert factor(n) == (1, expected)

    def test_sign(self):
        assert factor(-12) == (-1, [2, 2, 3])

    def test_zero_and_huge(self):
        with pytest.raises(ValueError):
            factor(0)
        with pytest.raises(ValueError):
            factor(2**63)

    @given(st.integers(1, 10**6))
    def test_product_of_primes(self, n):
        sign, primes = factor(n)
        assert sign == 1 and prod(primes) == n
        assert all(naive_is_prime(p) for p in primes)
        assert primes == sorted(primes)

    @given(st.integers(-5, 500))
    def test_is_prime_oracle(self, n):
        assert is_prime(n) == naive_is_prime(n)


class TestCrt:
    def test_example(self):
        assert crt_solve([3, 5], [9, 125]) == 255

    def test_not_coprime(self):
        with pytest.raises(ValueError):
            crt_solve([1, 1], [4, 6])

    @given(st.lists(st.sampled_from([3, 4, 5, 7, 11, 13]), min_size=1, max_size=4, unique=True), st.data())
    def test_brute_force(self, moduli, data):
        residues = [data.draw(st.integers(0, m - 1)) for m in moduli]
        k = crt_solve(residues, moduli)
        assert 0 <= k < prod(moduli)
        brute = next(x for x in range(prod(moduli)) if all(x % m == r for r, m in zip(residues, moduli)))
        assert k == brute


class TestLocalization:
    def test_allowed_primes(self):
        assert allowed_prime(ODD, None)(3) and not allowed_prime(ODD, None)(2)
        assert not allowed_prime(COPRIME, 5)(5) and allowed_prime(COPRIME, 5)(3)
        s = allowed_prime(S_TWO_ONE_MOD_4, None)
        assert s(2) and s(5) and s(13) and not s(3) and not s(7)

    def test_membership(self):
        assert LocalizedRational(Fraction(1, 3), ODD).is_unit()
        with pytest.raises(ValueError):
            LocalizedRational(Fraction(1, 2), ODD)
        assert not LocalizedRational(Fraction(5, 3), COPRIME, 5).is_unit()

    @pytest.mark.parametrize(
        "x,domain,expected",
        [
            (3, "Z/8", True),
            (2, "Z/8", False),
            (-1, "Z", True),
            (2, "Z", False),
            (Fraction(3, 5), "Q", True),
            (0, "Q", False),
            (Fraction(3, 2), "Zloc(5)", True),
            (Fraction(5, 3), "Zloc(5)", False),
            (Fraction(1, 5), "ZlocS", True),
            (3, "F7", True),
        ],
    )
    def test_is_unit(self, x, domain, expected):
        assert is_unit(x, domain) == expected

    def test_unknown_domain(self):
        with pytest.raises(ValueError):
            is_unit(1, "W")


class TestRationalText:
    @given(st.fractions())
    def test_roundtrip(self, q):
        assert parse_rational(format_rational(q)) == q

    def test_reduces(self):
        assert parse_rational("3/6") == Fraction(1, 2)
        assert format_rational(4) == "4"
