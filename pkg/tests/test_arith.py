import math
import random
from fractions import Fraction

import mpmath
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from sumsq.arith import (
    DIVISOR_FILTERS,
    Factorization,
    bernoulli,
    chi4,
    divisor_power_sum,
    euler_number,
    factorize,
    gen_bernoulli_chi4,
    is_prime,
)
from sumsq.series import fmt_rational, parse_rational


def divisors(m):
    small = [d for d in range(1, math.isqrt(m) + 1) if m % d == 0]
    return sorted(set(small + [m // d for d in small]))


def naive_divisor_sum(m, t, filt):
    total = 0
    for d in divisors(m):
        if filt == "all":
            w = 1
        elif filt == "odd":
            w = d % 2
        elif filt == "chi4_at_d":
            w = chi4(d)
        else:
            w = chi4(m // d)
        total += w * d**t
    return total


# factorization


def test_factorize_small():
    assert factorize(1).pairs == ()
    assert factorize(12).pairs == ((2, 2), (3, 1))
    assert factorize(10**9 + 7).pairs == ((10**9 + 7, 1),)
    assert sympy.isprime(10**9 + 7)


@pytest.mark.parametrize("bad", [0, -5])
def test_factorize_rejects_nonpositive(bad):
    with pytest.raises(ValueError):
        factorize(bad)


def test_factorize_refuses_beyond_64_bits():
    with pytest.raises(ValueError, match="2\\^64"):
        factorize(2**64 + 1)


def test_factorize_roundtrip_dense():
    for m in range(1, 10**5 + 1):
        f = factorize(m)
        assert f.value == m


def test_factorize_roundtrip_random_64bit():
    rng = random.Random(20261018)
    for _ in range(100):
        m = rng.getrandbits(64) or 1
        f = factorize(m)
        assert f.value == m
        assert all(sympy.isprime(p) for p, _ in f)
        assert [p for p, _ in f] == sorted({p for p, _ in f})


def test_factorize_semiprime_needs_rho():
    p, q = 1000003, 998244353
    assert factorize(p * q).pairs == ((p, 1), (q, 1))
    assert factorize(p * p).pairs == ((p, 2),)


def test_is_prime_matches_sympy():
    for n in range(0, 5000):
        assert is_prime(n) == sympy.isprime(n)
    for n in (2**61 - 1, 2**64 - 59, 3215031751, 3825123056546413051):
        assert is_prime(n) == sympy.isprime(n)


def test_factorization_parse_and_format():
    f = Factorization.parse("2^2,3^1")
    assert f.value == 12
    assert str(f) == "2^2 * 3^1"
    assert Factorization.parse(str(f)) == f
    assert Factorization.parse("5").pairs == ((5, 1),)
    assert str(Factorization()) == "1"
    with pytest.raises(ValueError):
        Factorization.parse("4^1")
    with pytest.raises(ValueError):
        Factorization(((3, 1), (2, 1)))


def test_divide_by_power_of_two():
    f = factorize(24)
    assert f.divide_by_power_of_two(1).value == 12
    assert f.divide_by_power_of_two(3).value == 3
    assert f.divide_by_power_of_two(4) is None
    assert factorize(7).divide_by_power_of_two(1) is None


# chi4 and divisor sums


def test_chi4_values():
    assert chi4(1) == 1
    assert chi4(2) == 0
    assert chi4(7) == -1
    assert chi4(-1) == -1


@given(st.integers(min_value=-10**6, max_value=10**6).filter(lambda a: a % 2), st.integers(min_value=-10**6, max_value=10**6).filter(lambda a: a % 2))
def test_chi4_totally_multiplicative_on_odd(a, b):
    assert chi4(a * b) == chi4(a) * chi4(b)


def test_divisor_sum_examples():
    assert divisor_power_sum(factorize(3), 5, "all") == 244
    for filt in DIVISOR_FILTERS:
        assert divisor_power_sum(factorize(1), 7, filt) == 1
    assert divisor_power_sum(factorize(6), 1, "odd") == 4


def test_divisor_sum_matches_naive_loop():
    for m in range(1, 10**4 + 1):
        f = factorize(m)
        for filt in DIVISOR_FILTERS:
            for t in (0, 1) if m > 2000 else (0, 1, 2, 3):
                assert divisor_power_sum(f, t, filt) == naive_divisor_sum(m, t, filt), (m, t, filt)


@settings(max_examples=200, deadline=None)
@given(
    st.integers(min_value=1, max_value=10**6),
    st.integers(min_value=1, max_value=10**6),
    st.integers(min_value=0, max_value=6),
    st.sampled_from(DIVISOR_FILTERS),
)
def test_divisor_sum_multiplicative(m1, m2, t, filt):
    if math.gcd(m1, m2) != 1:
        return
    lhs = divisor_power_sum(factorize(m1 * m2), t, filt)
    assert lhs == divisor_power_sum(factorize(m1), t, filt) * divisor_power_sum(factorize(m2), t, filt)


def test_divisor_sum_rejects_unknown_filter():
    with pytest.raises(ValueError):
        divisor_power_sum(factorize(6), 1, "even")


# Bernoulli-type numbers


def test_bernoulli_examples():
    assert bernoulli(0) == 1
    assert bernoulli(1) == Fraction(-1, 2)
    assert bernoulli(6) == Fraction(1, 42)
    assert bernoulli(3) == 0


def test_bernoulli_against_series_expansion():
    # independent: sympy's Taylor expansion of t/(e^t - 1)
    t = sympy.symbols("t")
    ser = sympy.series(t / (sympy.exp(t) - 1), t, 0, 21).removeO()
    for k in range(21):
        coeff = ser.coeff(t, k) * sympy.factorial(k)
        assert bernoulli(k) == Fraction(int(coeff.p), int(coeff.q))


def test_euler_examples():
    assert euler_number(0) == 1
    assert euler_number(1) == 0
    assert euler_number(6) == -61


def test_euler_against_series_expansion():
    t = sympy.symbols("t")
    ser = sympy.series(2 / (sympy.exp(t) + sympy.exp(-t)), t, 0, 21).removeO()
    for k in range(21):
        assert euler_number(k) == ser.coeff(t, k) * sympy.factorial(k)


def test_parity_vanishing():
    for k in range(3, 60, 2):
        assert bernoulli(k) == 0
        assert euler_number(k) == 0
    for k in range(2, 40, 2):
        assert gen_bernoulli_chi4(k) == 0


def test_gen_bernoulli_examples():
    assert gen_bernoulli_chi4(0) == 0
    assert gen_bernoulli_chi4(1) == Fraction(-1, 2)
    assert gen_bernoulli_chi4(2) == 0


def _bernoulli_poly(k, x):
    return sum(math.comb(k, j) * bernoulli(j) * x ** (k - j) for j in range(k + 1))


def test_gen_bernoulli_matches_conductor_sum():
    # B_{k,chi} = f^{k-1} sum_{a=1}^{f} chi(a) B_k(a/f), f = 4
    for k in range(0, 26):
        closed = 4 ** (k - 1) * sum(chi4(a) * _bernoulli_poly(k, Fraction(a, 4)) for a in range(1, 5))
        assert gen_bernoulli_chi4(k) == closed, k


def test_bernoulli_zeta_identity():
    mpmath.mp.dps = 40
    for j in range(2, 31, 2):
        approx = 2 * mpmath.factorial(j) * mpmath.zeta(j) / (2 * mpmath.pi) ** j
        exact = abs(bernoulli(j))
        assert abs(mpmath.mpf(exact.numerator) / exact.denominator - approx) < mpmath.mpf(10) ** -25


def test_euler_beta_identity():
    mpmath.mp.dps = 40
    for k in range(2, 31, 2):
        beta = mpmath.dirichlet(k + 1, [0, 1, 0, -1])
        approx = 2 ** (2 * k + 3) * mpmath.factorial(k) * beta / (2 * mpmath.pi) ** (k + 1)
        assert abs(abs(euler_number(k)) - approx) / approx < mpmath.mpf(10) ** -25


def test_magnitude_lower_bounds():
    mpmath.mp.dps = 50
    pi, e = mpmath.pi, mpmath.e
    for j in range(2, 41, 2):
        bound = 4 * mpmath.sqrt(pi * j / 2) * (j / (2 * pi * e)) ** j
        exact = bernoulli(j)
        assert bound < mpmath.mpf(abs(exact.numerator)) / exact.denominator
    for k in range(2, 41, 2):
        bound = 8 * mpmath.sqrt(k / (2 * pi)) * (2 * k / (pi * e)) ** k
        assert bound < abs(euler_number(k))


def test_rational_serialization():
    assert fmt_rational(Fraction(6, 4)) == "3/2"
    assert fmt_rational(Fraction(-4, 2)) == "-2"
    assert parse_rational("189280/61") == Fraction(189280, 61)


@given(st.fractions())
def test_rational_roundtrip(x):
    s = fmt_rational(x)
    assert parse_rational(s) == x
    if x.denominator != 1:
        num, den = s.split("/")
        assert math.gcd(int(num), int(den)) == 1 and int(den) > 0
