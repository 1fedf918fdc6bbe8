import itertools

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from strucprof.errors import NonUnitConstantTerm, RangeError, UnknownLetter
from strucprof.series import (
    G5_SERIES_CORRECTED,
    TEN_GRAPH_SERIES,
    RationalSeries,
    growth_root,
    higman_leq,
    polymul,
    series_expand,
    w_sequence,
    w_series,
)

x = sympy.symbols("x")


def sympy_coeffs(S: RationalSeries, n_max: int) -> list[int]:
    num = sum(c * x ** i for i, c in enumerate(S.numerator))
    den = sum(c * x ** i for i, c in enumerate(S.denominator))
    poly = sympy.series(num / den, x, 0, n_max + 1).removeO()
    return [int(poly.coeff(x, i)) for i in range(n_max + 1)]


class TestWSequence:
    def test_fibonacci(self):
        assert w_sequence(2, 6) == [1, 1, 2, 3, 5, 8, 13]

    def test_h1_doubles(self):
        assert w_sequence(1, 5) == [1, 2, 4, 8, 16, 32]

    def test_h3(self):
        assert w_sequence(3, 8) == [1, 1, 1, 2, 3, 4, 6, 9, 13]

    @pytest.mark.parametrize("h", range(1, 7))
    def test_matches_series(self, h):
        assert series_expand(w_series(h), 40) == w_sequence(h, 40)

    def test_range(self):
        with pytest.raises(RangeError):
            w_sequence(0, 3)


class TestSeries:
    def test_fibonacci_series(self):
        assert series_expand(RationalSeries((1,), (1, -1, -1)), 5) == [1, 1, 2, 3, 5, 8]

    def test_geometric(self):
        assert series_expand(RationalSeries((1,), (1, -1)), 7) == [1] * 8

    def test_negative_unit(self):
        assert series_expand(RationalSeries((-1,), (-1, 1)), 4) == [1] * 5

    def test_non_unit(self):
        with pytest.raises(NonUnitConstantTerm):
            RationalSeries((1,), (2, 1))
        with pytest.raises(NonUnitConstantTerm):
            RationalSeries((1,), (0, 1))

    def test_polymul(self):
        assert polymul((1, -1), (1, 1)) == (1, 0, -1)

    @given(
        st.lists(st.integers(-5, 5), min_size=1, max_size=5),
        st.lists(st.integers(-5, 5), min_size=0, max_size=4),
        st.sampled_from([1, -1]),
    )
    def test_matches_sympy(self, num, den_tail, unit):
        S = RationalSeries(tuple(num), (unit,) + tuple(den_tail))
        assert series_expand(S, 12) == sympy_coeffs(S, 12)

    def test_exact_big_integers(self):
        assert series_expand(RationalSeries((1,), (1, -2)), 200)[-1] == 2 ** 200


class TestTenGraphSeries:
    @pytest.mark.parametrize("i", range(1, 6))
    def test_matches_sympy(self, i):
        assert series_expand(TEN_GRAPH_SERIES[i], 20) == sympy_coeffs(TEN_GRAPH_SERIES[i], 20)

    def test_g1_closed_form(self):
        assert series_expand(TEN_GRAPH_SERIES[1], 30) == [n // 2 + 1 for n in range(31)]

    def test_g5_printed_collapses(self):
        # (1 - x - 2x^2) = (1 - 2x)(1 + x)
        assert series_expand(TEN_GRAPH_SERIES[5], 6) == [1, 1, 0, 0, 0, 0, 0]

    def test_g5_corrected(self):
        assert series_expand(G5_SERIES_CORRECTED, 8) == [1] + [2 ** (n - 1) for n in range(1, 9)]


class TestGrowthRoot:
    def test_golden_ratio(self):
        assert abs(growth_root(2) - (1 + 5 ** 0.5) / 2) < 1e-11

    @pytest.mark.parametrize("h", range(2, 6))
    def test_ratio_converges(self, h):
        w = w_sequence(h, 61)
        assert abs(w[61] / w[60] - growth_root(h)) < 1e-6

    @pytest.mark.parametrize("h", range(2, 7))
    def test_is_root(self, h):
        r = growth_root(h)
        assert abs(r ** h - r ** (h - 1) - 1) < 1e-9 and 1 < r <= 2

    def test_range(self):
        with pytest.raises(RangeError):
            growth_root(1)


def higman_oracle(v, w, leq):
    return any(
        all(leq(a, w[j]) for a, j in zip(v, idx))
        for idx in itertools.combinations(range(len(w)), len(v))
    )


class TestHigman:
    def test_examples(self):
        assert higman_leq("", "abc")
        assert higman_leq("ab", "xaxbx")
        assert not higman_leq("ba", "ab")

    def test_unknown_letter(self):
        with pytest.raises(UnknownLetter):
            higman_leq("az", "ab", alphabet="ab")

    @given(st.lists(st.integers(0, 3), max_size=5), st.lists(st.integers(0, 3), max_size=8))
    def test_matches_oracle_equality(self, v, w):
        assert higman_leq(v, w) == higman_oracle(v, w, lambda a, b: a == b)

    @given(st.lists(st.integers(0, 3), max_size=5), st.lists(st.integers(0, 3), max_size=8))
    def test_matches_oracle_divisibility(self, v, w):
        # a quasi-order on letters: a <= b when a divides b + 1
        def leq(a, b):
            return (b + 1) % (a + 1) == 0

        assert higman_leq(v, w, leq) == higman_oracle(v, w, leq)
