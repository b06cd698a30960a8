import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from whqram.spectrum import (
    FunctionTable,
    Spectrum,
    degree_profile,
    fwht,
    ifwht,
    parity,
    popcount,
    table_from_values,
    to_dyadic,
    truncate_approximation,
)


def brute_wh(values, n):
    return [sum(v * (-1) ** parity(x & z) for x, v in enumerate(values)) for z in range(1 << n)]


def test_worked_example_spectrum(worked_example):
    spec = fwht(worked_example)
    assert list(spec.coefficients) == [0, 2, -2, 4]
    assert spec.support == (1, 2, 3)
    assert spec.sparsity == 3


def test_fwht_matches_brute_force(rng):
    for n in range(0, 6):
        values = [rng.randrange(8) for _ in range(1 << n)]
        spec = fwht(FunctionTable(n, 3, tuple(values)))
        assert list(spec.coefficients) == brute_wh(values, n)


def test_dyadic_values_round_trip():
    t = FunctionTable(2, 3, (Fraction(1, 2), Fraction(-3, 4), 0, 7), "real")
    spec = fwht(t)
    assert list(spec.coefficients) == brute_wh(t.values, 2)
    assert ifwht(spec).values == t.values


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 6).flatmap(lambda n: st.tuples(st.just(n), st.lists(st.integers(-50, 50), min_size=1 << n, max_size=1 << n))))
def test_round_trip_property(args):
    n, values = args
    t = FunctionTable(n, 7, tuple(values), "real")
    assert ifwht(fwht(t)).values == t.values


def test_ifwht_keeps_binary_mode_when_in_range():
    t = FunctionTable(3, 2, (0, 1, 2, 3, 3, 2, 1, 0))
    back = ifwht(fwht(t))
    assert back.mode == "binary" and back.values == t.values


def test_table_validation():
    with pytest.raises(ValueError):
        FunctionTable(2, 2, (0, 1, 2))
    with pytest.raises(ValueError):
        FunctionTable(1, 2, (0, 4))
    with pytest.raises(ValueError):
        FunctionTable(1, 2, (0, Fraction(1, 3)), "real")
    with pytest.raises(ValueError):
        FunctionTable(1, 0, (0, 0))


def test_to_dyadic_inputs():
    assert to_dyadic("−3/4") == Fraction(-3, 4)
    assert to_dyadic(0.5) == Fraction(1, 2)
    assert to_dyadic(3) == 3
    with pytest.raises((TypeError, ValueError)):
        to_dyadic(True)
    with pytest.raises(ValueError):
        to_dyadic("1/10")


def test_json_round_trip(worked_example):
    assert FunctionTable.from_json(worked_example.to_json()) == worked_example


def test_popcount_parity():
    assert popcount(0b1011) == 3
    assert parity(0b1011) == 1 and parity(0b11) == 0


def test_degree_profile():
    # n = 3: weights {1, 3} avoid the open interval (1, 2)
    prof = degree_profile(Spectrum(3, 1, (0, 1, 0, 0, 0, 0, 0, 1)))
    assert prof.degrees == frozenset({1, 3})
    assert prof.min_low_k == 1 and prof.oracle4_eligible
    # parity: support {000, 111}
    prof = degree_profile(fwht(FunctionTable(3, 1, (0, 1, 1, 0, 1, 0, 0, 1), "real")))
    assert prof.degrees == frozenset({0, 3}) and prof.min_low_k == 0
    # constant
    assert degree_profile(Spectrum(2, 1, (4, 0, 0, 0))).min_low_k == 0
    # a weight-n/2 component blocks every k for even n
    coeffs = [0] * 16
    coeffs[0b0011] = 4
    assert degree_profile(Spectrum(4, 1, tuple(coeffs))).min_low_k is None
    assert degree_profile(Spectrum(2, 1, (0, 1, 0, 1))).min_low_k is None
    # n = 4: weights {1, 4} need k = 1
    coeffs = [0] * 16
    coeffs[0b0100] = coeffs[0b1111] = 2
    assert degree_profile(Spectrum(4, 1, tuple(coeffs))).min_low_k == 1


def test_zero_spectrum_has_empty_support():
    spec = fwht(FunctionTable(3, 2, (0,) * 8))
    assert spec.sparsity == 0 and spec.support == ()


def test_truncation_sign_bits_match():
    rng = random.Random(5)
    for _ in range(20):
        n = rng.randint(1, 4)
        f = [rng.randrange(2) for _ in range(1 << n)]
        approx = [(-1) ** b + Fraction(rng.randint(-15, 15), 64) for b in f]
        tr = truncate_approximation(table_from_values(approx, 4, "real"))
        assert list(tr.sign_bits()) == f
        assert fwht(tr.g).sparsity <= fwht(table_from_values(approx, 4, "real")).sparsity
        assert tr.d_f == 2 + tr.d0
