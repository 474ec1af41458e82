"""
Tests for the Hilbert series forms and the quasipolynomial.
"""

import time
from collections import Counter
from fractions import Fraction
from math import comb

import pytest

from hilbertcone.errors import ConsistencyError
from hilbertcone.series_module import (
    CyclotomicSeries, Quasipolynomial, RawSeries, SeriesAccumulator, StandardSeries,
    check_reproduction, cyclotomic, cyclotomic_reduce, expand, multiplicity_check,
    power_denominator_form, quasipolynomial, series_coefficients, standardize, sum_raw,
)
from hilbertcone.series_module.hilbert_series import accumulate
from hilbertcone.series_module.polynomials import coefficients, format_polynomial

TOY23_RAW = RawSeries([1], [2, 3])
TOY23_CYCLOTOMIC = CyclotomicSeries([1], [(1, 2), (2, 1), (3, 1)])


@pytest.mark.parametrize("n, expected", [
    (1, [1, -1]),
    (2, [1, 1]),
    (3, [1, 1, 1]),
    (6, [1, -1, 1]),
    (12, [1, 0, -1, 0, 1]),
])
def test_cyclotomic(n, expected):
    assert coefficients(cyclotomic(n)) == expected


def test_expand():
    assert expand([1], [1, 1, 1], 4) == [comb(k + 2, 2) for k in range(5)]
    assert expand([1, 1], [2], 5) == [1, 1, 1, 1, 1, 1]


def test_accumulate_by_sorted_degrees():
    accumulator = SeriesAccumulator()
    accumulator.add((3, 2), {0: 1})
    accumulator.add((2, 3), {1: 1})
    assert accumulator.classes == {(2, 3): Counter({0: 1, 1: 1})}
    with pytest.raises(ValueError):
        accumulate({}, (1, 1), {-1: 1})


def test_sum_raw_single_class():
    assert sum_raw({(2, 3): Counter({0: 1})}) == TOY23_RAW
    assert sum_raw({(1,): Counter({0: 2})}) == RawSeries([2], [1])


def test_sum_raw_reuses_factors():
    # 1 / ((1-t)(1-t^2)) + t / (1-t)^2 over the common denominator (1-t)(1-t^2)
    raw = sum_raw({(1, 2): Counter({0: 1}), (1, 1): Counter({1: 1})})
    assert raw == RawSeries([1, 1, 1], [1, 2])


def test_cyclotomic_reduce_cancels_common_factors():
    reduced = cyclotomic_reduce(RawSeries([1, 0, -1], [6]))
    assert reduced.numerator == [1]
    assert reduced.factors == [(3, 1), (6, 1)]
    assert cyclotomic_reduce(RawSeries([1, -1], [1, 1])).factors == [(1, 1)]


def test_toy23_three_representations():
    reduced = cyclotomic_reduce(TOY23_RAW)
    assert reduced == TOY23_CYCLOTOMIC
    assert reduced.period == 6
    assert standardize(reduced, 2) == StandardSeries([1, -1, 1], [1, 6])


def test_standardize_lcm_levels():
    assert standardize(CyclotomicSeries([1], [(1, 1), (2, 1)]), 2) == StandardSeries([1, -1], [1, 2])


def test_standardize_refuses():
    assert standardize(CyclotomicSeries([1], [(1, 3)]), 2) is None
    assert standardize(TOY23_CYCLOTOMIC, 2, numerator_cap=1) is None


def test_power_denominator_form():
    assert power_denominator_form(TOY23_CYCLOTOMIC) == ([1, -1, 1], [1, 6])
    assert power_denominator_form(TOY23_RAW) == ([1], [2, 3])


def test_series_coefficients_agree_across_forms():
    expected = [1, 0, 1, 1, 1, 1, 2, 1, 2]
    assert series_coefficients(TOY23_RAW, 8) == expected
    assert series_coefficients(TOY23_CYCLOTOMIC, 8) == expected
    assert series_coefficients(StandardSeries([1, -1, 1], [1, 6]), 8) == expected
    with pytest.raises(ValueError):
        series_coefficients(TOY23_RAW, -1)


def test_quasipolynomial_of_polynomial_series():
    q = quasipolynomial(CyclotomicSeries([1], [(1, 2)]), 2)
    assert (q.period, q.denom, q.numerators) == (1, 1, [[1, 1]])
    assert q.value(10) == 11


def test_quasipolynomial_period_two():
    q = quasipolynomial(CyclotomicSeries([1], [(1, 2), (2, 1)]), 2)
    assert (q.period, q.denom, q.numerators) == (2, 2, [[2, 1], [1, 1]])
    assert [q.value(k) for k in range(6)] == [1, 1, 2, 2, 3, 3]
    assert q.lines() == ["0: 2 1", "1: 1 1", "denominator 2"]


def test_toy23_quasipolynomial():
    q = quasipolynomial(TOY23_CYCLOTOMIC, 2)
    assert q.period == 6
    assert q.leading_coefficients() == [Fraction(1, 6)] * 6
    assert [q.value(k) for k in range(9)] == series_coefficients(TOY23_RAW, 8)
    assert multiplicity_check(q, Fraction(1, 6), 2)
    assert not multiplicity_check(q, Fraction(1, 3), 2)


def _count_representations(k, weights):
    """Solutions of a + w_1 b + w_2 c = k in nonnegative integers."""
    w1, w2 = weights
    return sum(1 for b in range(k // w1 + 1) for c in range((k - w1 * b) // w2 + 1))


def test_quasipolynomial_with_long_period():
    series = CyclotomicSeries([1], [(1, 3), (101, 1), (103, 1)])
    started = time.perf_counter()
    q = quasipolynomial(series, 3)
    assert time.perf_counter() - started < 30
    assert q.period == 101 * 103
    assert set(q.leading_coefficients()) == {Fraction(1, 2 * 101 * 103)}
    for k in (0, 100, 250, 10402, 20000):
        assert q.value(k) == _count_representations(k, (101, 103))


def test_quasipolynomial_period_cap():
    assert quasipolynomial(TOY23_CYCLOTOMIC, 2, period_cap=5) is None


def test_reproduction_failures():
    q = Quasipolynomial(1, 1, [[1, 1]])
    with pytest.raises(ConsistencyError):
        check_reproduction(q, [1, 2, 4])
    with pytest.raises(ConsistencyError):
        Quasipolynomial(1, 2, [[1, 0]]).value(0)


def test_series_strings():
    assert str(StandardSeries([1, -1, 1], [1, 6])) == "(1 - t + t^2) / ((1 - t)*(1 - t^6))"
    assert str(TOY23_CYCLOTOMIC) == "(1) / (zeta_1^2*zeta_2*zeta_3)"
    assert str(RawSeries([1], [1, 1])) == "(1) / ((1 - t)^2)"
    assert format_polynomial([0, -2, 0, 1]) == "-2*t + t^3"
