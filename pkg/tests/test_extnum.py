from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from powdom.errors import PowdomError
from powdom.extnum import INF, ONE, ZERO, ExtNN, enn_max, enn_min, enn_sum

_values = st.one_of(
    st.just(INF),
    st.fractions(min_value=0, max_value=50).map(ExtNN),
    st.integers(min_value=0, max_value=20).map(ExtNN),
)


class TestArithmetic:
    def test_add_exact(self):
        # oracle: plain fraction arithmetic
        assert Fraction(1, 2) + Fraction(2, 3) == Fraction(7, 6)
        assert ExtNN(Fraction(1, 2)) + ExtNN(Fraction(2, 3)) == ExtNN(Fraction(7, 6))

    def test_add_unit(self):
        a = ExtNN(Fraction(5, 7))
        assert a + ZERO == a

    def test_add_infinity_absorbs(self):
        assert ExtNN(3) + INF == INF
        assert INF + ExtNN(3) == INF

    def test_mul_zero_times_infinity(self):
        assert ZERO * INF == ZERO
        assert INF * ZERO == ZERO

    def test_mul_positive_times_infinity(self):
        assert ExtNN(Fraction(1, 5)) * INF == INF

    def test_mul_unit(self):
        a = ExtNN(Fraction(9, 4))
        assert ONE * a == a

    def test_mul_exact(self):
        assert Fraction(2, 3) * Fraction(3, 4) == Fraction(1, 2)
        assert ExtNN(Fraction(2, 3)) * ExtNN(Fraction(3, 4)) == ExtNN(Fraction(1, 2))


class TestOrder:
    def test_max_by_cross_products(self):
        # oracle: p/q >= r/s iff p*s >= r*q for positive denominators
        assert 1 * 3 >= 1 * 2
        assert enn_max(ExtNN(Fraction(1, 2)), ExtNN(Fraction(1, 3))) == ExtNN(Fraction(1, 2))

    def test_min_by_cross_products(self):
        assert enn_min(ExtNN(Fraction(1, 2)), ExtNN(Fraction(1, 3))) == ExtNN(Fraction(1, 3))

    def test_idempotent(self):
        a = ExtNN(Fraction(4, 9))
        assert enn_max(a, a) == a
        assert enn_min(a, a) == a

    def test_infinity_is_top(self):
        assert enn_max(INF, ExtNN(7)) == INF
        assert INF > ExtNN(10**9)

    def test_zero_is_bottom(self):
        assert enn_min(ZERO, ExtNN(Fraction(1, 100))) == ZERO

    @given(_values, _values)
    def test_total_order(self, a, b):
        assert a <= b or b <= a


class TestMonoidLaws:
    @given(_values, _values, _values)
    def test_add_associative(self, a, b, c):
        assert (a + b) + c == a + (b + c)

    @given(_values, _values)
    def test_add_commutative(self, a, b):
        assert a + b == b + a

    @given(_values, _values, _values)
    def test_mul_distributes(self, a, b, c):
        assert a * (b + c) == a * b + a * c

    @given(_values, _values, _values)
    def test_monotone(self, a, b, c):
        lo, hi = (b, c) if b <= c else (c, b)
        assert a + lo <= a + hi
        assert a * lo <= a * hi
        assert lo * a <= hi * a


class TestLiterals:
    @pytest.mark.parametrize(
        "text,value",
        [
            ("1/2", ExtNN(Fraction(1, 2))),
            ("7", ExtNN(7)),
            ("inf", INF),
            ("6/4", ExtNN(Fraction(3, 2))),
        ],
    )
    def test_parse(self, text, value):
        assert ExtNN.parse(text) == value

    @pytest.mark.parametrize("value,text", [(ExtNN(Fraction(3, 2)), "3/2"), (ExtNN(5), "5"), (INF, "inf")])
    def test_format(self, value, text):
        assert str(value) == text

    def test_roundtrip(self):
        for text in ("0", "1/3", "17/5", "inf"):
            assert str(ExtNN.parse(text)) == text

    @pytest.mark.parametrize("bad", ["-1", "1/-2", "a", "1/0", "1.5", ""])
    def test_rejects(self, bad):
        with pytest.raises(PowdomError):
            ExtNN.parse(bad)

    def test_negative_rejected(self):
        with pytest.raises(PowdomError):
            ExtNN(Fraction(-1, 2))


def test_sum_helper():
    vals = [ExtNN(Fraction(1, 2)), ExtNN(Fraction(1, 3)), ExtNN(Fraction(1, 6))]
    assert enn_sum(vals) == ONE
    assert enn_sum([]) == ZERO
