from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from clusterpic.numbers import (
    INFINITY,
    denom,
    divisors,
    euler_phi,
    gcd_inf,
    is_prime,
    lcm_all,
    legendre,
    v_q,
)


def brute_gcd_inf(n, d):
    # minimal positive divisor g of n with gcd(n//g, d) == 1
    import math

    for g in divisors(n):
        if math.gcd(n // g, d) == 1:
            return g
    raise AssertionError


def test_denom():
    assert denom(Fraction(4, 9)) == 9
    assert denom(0) == 1
    assert denom(Fraction(-3, 6)) == 2
    assert denom(7) == 1


def test_v_q():
    assert v_q(2, 12) == 2
    assert v_q(2, Fraction(3, 4)) == -2
    assert v_q(2, 0) is INFINITY
    assert v_q(3, Fraction(9, 5)) == 2
    with pytest.raises(ValueError):
        v_q(4, 1)


def test_infinity_ordering():
    assert INFINITY >= 1
    assert INFINITY > Fraction(10**9)
    assert not (INFINITY < 5)
    assert Fraction(1, 2) < INFINITY
    assert INFINITY == INFINITY


def test_gcd_inf_examples():
    assert gcd_inf(12, 2) == 4
    assert gcd_inf(18, 3) == 9
    for n in range(1, 40):
        assert gcd_inf(n, 1) == 1


@given(st.integers(1, 400), st.integers(1, 30))
def test_gcd_inf_matches_brute_force(n, d):
    g = gcd_inf(n, d)
    assert g == brute_gcd_inf(n, d)
    assert n % g == 0
    assert gcd_inf(n, d) == gcd_inf(n, d * d)


def test_euler_phi():
    assert euler_phi(1) == 1
    assert euler_phi(9) == 6
    assert euler_phi(12) == 4
    # brute force cross-check
    import math

    for d in range(1, 60):
        assert euler_phi(d) == sum(1 for k in range(1, d + 1) if math.gcd(k, d) == 1)


def test_legendre_against_square_tables():
    for q in (3, 5, 7, 11, 13, 19, 23):
        squares = {pow(x, 2, q) for x in range(1, q)}
        for a in range(-q, q):
            expect = 0 if a % q == 0 else (1 if a % q in squares else -1)
            assert legendre(a, q) == expect
    assert legendre(-1, 19) == -1
    assert legendre(-2, 7) == -1
    for q in (3, 5, 7, 11):
        assert legendre(1, q) == 1
    with pytest.raises(ValueError):
        legendre(3, 2)
    with pytest.raises(ValueError):
        legendre(3, 15)


@given(st.integers(-50, 50), st.integers(-50, 50))
def test_legendre_multiplicative(a, b):
    q = 19
    assert legendre(a * b, q) == legendre(a, q) * legendre(b, q)


def test_lcm_all():
    assert lcm_all([9, 2, 3]) == 18
    assert lcm_all([1]) == 1
    assert lcm_all([4, 6]) == 12
    with pytest.raises(ValueError):
        lcm_all([])


@given(st.fractions(max_denominator=200))
def test_denom_times_value_is_integral(x):
    assert (denom(x) * x).denominator == 1
    assert (denom(x) == 1) == (x.denominator == 1)


@given(
    st.fractions(max_denominator=40).filter(lambda x: x != 0),
    st.fractions(max_denominator=40).filter(lambda x: x != 0),
)
def test_vq_additivity(x, y):
    for q in (2, 3, 5):
        assert v_q(q, x * y) == v_q(q, x) + v_q(q, y)


def test_is_prime_small():
    primes = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47}
    for n in range(50):
        assert is_prime(n) == (n in primes)
    assert is_prime(10**9 + 7)
    assert not is_prime(10**9 + 8)
