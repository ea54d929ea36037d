from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from conftest import SMALL_FINITE
from quasiring.finite import generic_tables, tables
from quasiring.poly import Polynomial, eval_nonunital
from quasiring.ring import (
    InfiniteRingError,
    Matrix,
    PolyRing,
    circ,
    circ_power,
    enumerate_ring,
    is_quasi_regular,
    nilpotency_index,
    parse_ring,
    quasi_inverse,
    unitalize,
)


class TestCirc:
    def test_examples(self, rationals, z4):
        assert circ(rationals.parse("2"), rationals.parse("2")).is_zero()
        assert circ(z4.parse("2"), z4.parse("3")) == z4.parse("3")

    def test_nilpotent_pair_over_polynomials(self):
        M = Matrix(2, PolyRing(3))
        A, B = M.parse("[[0,t],[0,0]]"), M.parse("[[0,0],[1,0]]")
        assert circ(A, B) == M.parse("[[-t,t],[1,0]]")

    def test_powers(self, rationals):
        Z = parse_ring("Z")
        assert circ_power(Z.parse("2"), 2).is_zero()
        assert circ_power(parse_ring("Z/8").parse("2"), 2).is_zero()
        assert circ_power(rationals.parse("5/4"), -1) == rationals.parse("5")
        assert circ_power(rationals.parse("3"), 0).is_zero()

    @pytest.mark.parametrize("name", SMALL_FINITE + ["M2(Z/3)"])
    def test_monoid_laws_exhaustive(self, name):
        T = tables(parse_ring(name))
        c, ar = T.circ, np.arange(T.size)
        assert (c[c[:, :, None], ar[None, None, :]] == c[ar[:, None, None], c[None, :, :]]).all()
        assert (c[:, T.zero] == np.arange(T.size)).all()
        assert (c[T.zero, :] == np.arange(T.size)).all()

    @pytest.mark.parametrize("name", ["Z/12", "M2(Z/2)", "Z/2 + Z/3", "Unital(dZ/nZ(2,8))", "M2(Z/3)"])
    def test_shift_homomorphism(self, name):
        T = tables(parse_ring(name))
        one_minus = T.sub(T.one, np.arange(T.size))
        lhs = one_minus[T.circ]
        rhs = T.mul[one_minus[:, None], one_minus[None, :]]
        assert (lhs == rhs).all()


class TestAssociativitySampled:
    @given(st.fractions(), st.fractions(), st.fractions())
    def test_rationals(self, a, b, c):
        Q = parse_ring("Q")
        x, y, z = Q.elem(a), Q.elem(b), Q.elem(c)
        assert circ(circ(x, y), z) == circ(x, circ(y, z))

    @given(st.lists(st.integers(0, 4), min_size=12, max_size=12))
    def test_matrices_mod_5(self, entries):
        M = parse_ring("M2(Z/5)")
        x, y, z = (M.elem(((e[0], e[1]), (e[2], e[3]))) for e in (entries[0:4], entries[4:8], entries[8:12]))
        assert circ(circ(x, y), z) == circ(x, circ(y, z))


class TestQuasiInverse:
    def test_examples(self):
        M = parse_ring("M2(Z/3)")
        assert quasi_inverse(M.parse("[[0,1],[0,0]]")) == M.parse("[[0,2],[0,0]]")
        odd = parse_ring("OddDen")
        assert quasi_inverse(odd.parse("2/3")) == odd.parse("-2")
        assert quasi_inverse(parse_ring("Z/4").parse("1")) is None

    def test_rational_carriers(self):
        assert quasi_inverse(parse_ring("Q").parse("1")) is None
        # 1/2 / (1/2 - 1) = -1 is in Z_(5) but 6/5 / (1/5) = 6 needs no 5 in the denominator either
        assert quasi_inverse(parse_ring("Zloc(5)").parse("1/2")) == parse_ring("Zloc(5)").parse("-1")
        assert quasi_inverse(parse_ring("Z").parse("3")) is None
        assert quasi_inverse(parse_ring("Z").parse("2")) == parse_ring("Z").parse("2")

    @pytest.mark.parametrize("name", SMALL_FINITE)
    def test_both_sides(self, name):
        for a in enumerate_ring(parse_ring(name)):
            b = quasi_inverse(a)
            if b is not None:
                assert circ(a, b).is_zero() and circ(b, a).is_zero()

    @pytest.mark.parametrize("name", SMALL_FINITE)
    def test_nilpotent_geometric_series(self, name):
        for a in enumerate_ring(parse_ring(name)):
            n = nilpotency_index(a)
            if n is None:
                continue
            series = -sum((Polynomial.monomial(k) for k in range(1, n)), Polynomial())
            assert quasi_inverse(a) == eval_nonunital(series, a)

    @given(st.integers(-40, 40), st.integers(1, 40))
    def test_brute_force_mod(self, a, n):
        n = max(n, 2)
        R = parse_ring(f"Z/{n}")
        x = R.parse(str(a % n))
        brute = [b for b in range(n) if (a + b - a * b) % n == 0]
        assert is_quasi_regular(x) == bool(brute)


class TestNilpotency:
    def test_examples(self):
        Z8 = parse_ring("Z/8")
        assert nilpotency_index(Z8.parse("2")) == 3
        assert nilpotency_index(Z8.parse("0")) == 1
        assert nilpotency_index(parse_ring("Z/6").parse("2")) is None
        assert nilpotency_index(parse_ring("Q").parse("1/2")) is None


class TestUnitalize:
    def test_nonunital_embedding(self):
        R = parse_ring("dZ/nZ(2,8)")
        U = unitalize(R)
        e = U.embed(R.parse("2"))
        assert nilpotency_index(e) == 3
        # the integer part lives mod the characteristic 4 of 2Z/8Z
        assert U.has_unit and U.size() == 4 * 4

    def test_zero_stays_identity(self, z4):
        U = unitalize(z4)
        zero = U.embed(z4.parse("0"))
        for a in enumerate_ring(U):
            assert circ(a, zero) == a

    def test_infinite_inner(self):
        U = unitalize(parse_ring("OddDen"))
        a = U.parse("(0|2/3)")
        assert circ(a, quasi_inverse(a)).is_zero()


class TestEnumerate:
    @pytest.mark.parametrize("name,values", [("Z/4", [0, 1, 2, 3]), ("dZ/nZ(2,8)", [0, 2, 4, 6])])
    def test_small(self, name, values):
        assert [a.value for a in enumerate_ring(parse_ring(name))] == values

    def test_matrices(self):
        assert len(list(enumerate_ring(parse_ring("M2(Z/2)")))) == 16

    def test_infinite(self):
        with pytest.raises(InfiniteRingError):
            enumerate_ring(parse_ring("Q"))


class TestDescriptors:
    @pytest.mark.parametrize(
        "text",
        ["Z/4", "F7", "dZ/nZ(2,8)", "M2(Z/4)", "M2(F3[t])", "Unital(dZ/nZ(2,8))", "Zloc(5)",
         "ZlocS", "OddDen", "Q", "Z", "Z/4+M2(F2)", "Z/4 ⊕ Z/3", "(Z/2+Z/3)"],
    )
    def test_roundtrip(self, text):
        R = parse_ring(text)
        assert parse_ring(str(R)) == R

    @pytest.mark.parametrize("bad", ["Z/1", "Zloc(4)", "M0(Z/2)", "W", "Z/4+", "F4[t]"])
    def test_rejects(self, bad):
        with pytest.raises(ValueError):
            parse_ring(bad)

    @pytest.mark.parametrize("name", SMALL_FINITE + ["M2(Z/3)"])
    def test_element_literals_roundtrip(self, name):
        R = parse_ring(name)
        for a in enumerate_ring(R):
            assert R.parse(str(a)) == a

    def test_rational_literal(self, rationals):
        assert rationals.parse("3/6").value == Fraction(1, 2)
        with pytest.raises(ValueError):
            parse_ring("OddDen").parse("1/2")


class TestTables:
    @pytest.mark.parametrize("name", ["M2(Z/2)", "M2(Z/4)", "Z/4+M2(F2)", "Unital(dZ/nZ(2,8))", "Z/2+Z/3"])
    def test_fast_paths_match_generic(self, name):
        R = parse_ring(name)
        fast, slow = tables(R), generic_tables(R)
        assert fast.elements == slow.elements
        for t in ("add", "mul", "neg"):
            assert (getattr(fast, t) == getattr(slow, t)).all()

    def test_matrix_product_oracle(self):
        R = parse_ring("M2(Z/4)")
        T = tables(R)
        rng = np.random.default_rng(0)
        for i, j in rng.integers(0, T.size, size=(50, 2)):
            A = np.array(T.elements[i])
            B = np.array(T.elements[j])
            assert T.elements[T.mul[i, j]] == tuple(map(tuple, (A @ B) % 4))

    @pytest.mark.parametrize("name,count", [("M2(Z/3)", 48), ("M2(Z/5)", 480), ("M3(Z/2)", 168)])
    def test_quasi_regular_counts(self, name, count):
        assert int(tables(parse_ring(name)).quasi_regular.sum()) == count

    def test_characteristic(self):
        assert tables(parse_ring("Z/4+M2(F2)")).characteristic == 4
