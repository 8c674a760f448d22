from fractions import Fraction
from functools import lru_cache

import pytest
from hypothesis import given, strategies as st

from qsunflower.bounds import (
    bound_sandwich,
    exponent_A,
    exponent_B,
    floor_sum,
    floor_sum_closed_form,
    lower_bound,
    upper_bound,
    upper_cap,
)
from qsunflower.gaussian import bracket_sandwich, check_bracket_sandwich, gauss_bracket, gaussian


@lru_cache(maxsize=None)
def q_pascal(n, m, q):
    if m == 0 or m == n:
        return 1
    if m < 0 or m > n:
        return 0
    return q_pascal(n - 1, m - 1, q) + q**m * q_pascal(n - 1, m, q)


def test_bracket_values():
    assert gauss_bracket(1, 5) == 1
    assert gauss_bracket(4, 2) == 15 == 1 + 2 + 4 + 8
    assert gauss_bracket(3, 1) == 3


@pytest.mark.parametrize("q", (2, 3, 4, 5, 7, 8, 9))
def test_gaussian_matches_q_pascal(q):
    for n in range(0, 12):
        for m in range(-1, n + 2):
            assert gaussian(n, m, q) == q_pascal(n, m, q)


def test_gaussian_spot_values():
    assert gaussian(4, 2, 2) == 35
    assert gaussian(5, 2, 2) == 155


@pytest.mark.parametrize("q", (2, 3, 4, 5, 7, 8, 9))
def test_bracket_sandwich(q):
    for m in range(2, 21):
        lo, val, hi = bracket_sandwich(m, q)
        assert val == sum(q**i for i in range(m))
        assert Fraction(q + 1, q) * q ** (m - 1) == lo <= val < hi == Fraction(q, q - 1) * q ** (m - 1)
        assert check_bracket_sandwich(m, q)


def test_upper_bound_values():
    assert upper_bound(3, 2, 2) == 45
    assert upper_bound(3, 2, 2) == 2**4 + 2 * 2**3 + 2 * 2**2 + 2 * 2 + 1
    assert upper_bound(3, 1, 7) == 8
    assert upper_bound(4, 2, 3) == 364 * 13 == 4732
    with pytest.raises(ValueError):
        upper_bound(2, 2, 2)


def test_lower_bound_values():
    assert lower_bound(3, 2, 2) == 16
    assert lower_bound(5, 2, 2) == 1024
    assert lower_bound(4, 3, 2) == 2**15
    assert lower_bound(3, 4, 2) == 256
    assert exponent_A(3, 2) == 4
    assert exponent_B(3, 4) == 8


def test_gcd_branch_when_s_minus_1_divides_k():
    for s, k in [(3, 4), (3, 6), (4, 6), (5, 8)]:
        assert exponent_B(s, k) * 2 == (s - 2) * k * (k + 1) + k * (s - 1 - 3)


def test_sandwich_examples():
    r = bound_sandwich(3, 2, 2)
    assert (r.lower, r.product, r.cap) == (16, 45, 64)
    r = bound_sandwich(4, 3, 2)
    assert (r.lower, r.product) == (32768, 511 * 63 * 7)
    assert r.cap == 2**3 * 2 ** (3 * 6 - 3)
    assert bound_sandwich(3, 4, 2).lower == 256
    with pytest.raises(ValueError):
        bound_sandwich(3, 1, 2)


@pytest.mark.parametrize("s", (3, 4, 5, 6))
@pytest.mark.parametrize("k", (2, 3, 4, 5))
@pytest.mark.parametrize("q", (2, 3, 4, 5))
def test_sandwich_grid(s, k, q):
    r = bound_sandwich(s, k, q)
    assert r.lower <= r.product <= r.cap
    assert upper_cap(s, k, q) == Fraction(q, q - 1) ** k * q ** exponent_A(s, k)
    if s >= k + 1:
        assert r.ratios()["lower/base"] == 1
    d = r.to_dict()
    assert d["lower"] == str(r.lower) and d["upper_product"] == str(r.product)


def test_floor_sum_examples():
    assert floor_sum(5, 3) == 4
    assert floor_sum(1, 9) == 0
    for k in range(1, 12):
        assert floor_sum(k, k) == k * (k - 1) // 2
    with pytest.raises(ValueError):
        floor_sum(0, 3)


@given(st.integers(1, 60), st.integers(1, 60))
def test_floor_sum_property(mu, nu):
    direct = sum((kappa * mu) // nu for kappa in range(1, nu))
    assert floor_sum(mu, nu) == direct == floor_sum_closed_form(mu, nu)
