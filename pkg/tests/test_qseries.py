import math
from fractions import Fraction

import pytest
import sympy

from sumsq.arith import bernoulli, chi4
from sumsq.gaussian import brute_norm_power_sum
from sumsq.qseries import (
    cm_form,
    eisenstein_E,
    eisenstein_E1,
    eisenstein_E2,
    eta12_2z,
    named_form,
    theta_series,
)
from sumsq.repnum import r_bruteforce


def test_theta12_head():
    assert list(theta_series(12, 4)) == [1, 24, 264, 1760, 7944]


@pytest.mark.parametrize("n", [2, 4, 6, 8, 10, 12, 14])
def test_theta_low_coefficients(n):
    s = theta_series(n, 4)
    assert s[0] == 1
    assert s[1] == 2 * n
    assert s[2] == 4 * math.comb(n, 2)
    assert s[3] == 8 * math.comb(n, 3)
    assert s[4] == 16 * math.comb(n, 4) + 2 * n


def test_theta_matches_lattice_count():
    for n in (2, 4, 6, 8, 10, 12):
        s = theta_series(n, 300)
        assert [int(c) for c in s] == [r_bruteforce(n, m) for m in range(301)]


def test_eta12_coefficients():
    s = eta12_2z(9)
    assert [s[m] for m in (1, 3, 5, 7, 9)] == [1, -12, 54, -88, -99]


def test_eta12_against_naive_product():
    # q * prod (1 - q^(2j))^12, multiplied out one factor at a time
    N = 60
    poly = [0] * (N + 1)
    poly[1] = 1
    for j in range(1, N // 2 + 1):
        for _ in range(12):
            for m in range(N, 2 * j - 1, -1):
                poly[m] -= poly[m - 2 * j]
    s = eta12_2z(N)
    assert [s[m] for m in range(N + 1)] == poly


def test_eta12_even_coefficients_vanish():
    s = eta12_2z(1000)
    assert s.is_integral()
    assert all(s[m] == 0 for m in range(0, 1001, 2))


def test_eisenstein_E_weight6():
    s = eisenstein_E(6, 4)
    assert s[0] == Fraction(-1, 504)
    assert list(s)[1:] == [1, 33, 244, 1057]
    # (8 + 0 - 512) * a_0 is the constant term of theta_12
    assert (8 + 0 - 512) * s[0] == 1


def test_eisenstein_E_constant_is_minus_b_over_2k():
    for k in range(4, 30, 2):
        assert eisenstein_E(k, 1)[0] == -bernoulli(k) / (2 * k)
        assert eisenstein_E(k, 1)[1] == 1


def test_eisenstein_rejects_wrong_parity():
    with pytest.raises(ValueError):
        eisenstein_E(5, 3)
    with pytest.raises(ValueError):
        eisenstein_E1(4, 3)
    with pytest.raises(ValueError):
        eisenstein_E2(6, 3)


def test_E1_E2_entries():
    assert eisenstein_E1(3, 3)[2] == 4
    for k in range(3, 40, 2):
        e1, e2 = eisenstein_E1(k, 4), eisenstein_E2(k, 4)
        assert e1[3] == 3 ** (k - 1) - 1
        assert e2[3] == 1 - 3 ** (k - 1)
        assert e1[2] == 2 ** (k - 1)
        assert e2[2] == 1
        assert e1[4] == 4 ** (k - 1)
        assert e2[4] == 1


def test_odd_weight_constant_terms():
    # the chi4(d)-twisted series carries the constant; the other has none
    assert eisenstein_E1(3, 0)[0] == 0
    assert eisenstein_E2(3, 0)[0] == Fraction(-1, 4)
    assert eisenstein_E2(5, 0)[0] == Fraction(5, 4)


def test_r2_identity_weight_one():
    # theta_2 = 4 E2 at k = 1
    assert theta_series(2, 400) == eisenstein_E2(1, 400).scale(4)
    e1 = eisenstein_E1(1, 400)
    assert list(e1)[1:] == list(eisenstein_E2(1, 400))[1:]


@pytest.mark.parametrize(
    "build, k",
    [(eisenstein_E, 4), (eisenstein_E, 6), (eisenstein_E1, 3), (eisenstein_E1, 7), (eisenstein_E2, 5), (eisenstein_E2, 9)],
)
def test_eisenstein_multiplicative(build, k):
    N = 600
    s = build(k, N)
    for m1 in range(1, 60):
        for m2 in range(1, N // m1 + 1):
            if math.gcd(m1, m2) == 1:
                assert s[m1 * m2] == s[m1] * s[m2]


def test_cm_form_examples():
    c = cm_form(5, 4)
    assert c[1] == 1
    assert c[2] == -4
    assert c[3] == 0
    assert c[4] == 16


def test_cm_form_rejects_non_cm_weights():
    for k in (1, 2, 3, 4, 6, 7, 8, 11):
        with pytest.raises(ValueError, match="CM cusp space"):
            cm_form(k, 5)


def test_cm_form_weight5_is_quarter_norm_sum():
    c = cm_form(5, 800)
    for m in range(1, 801):
        brute = brute_norm_power_sum(m, 4)
        assert c[m] == Fraction(brute.re, 4)


def test_cm_form_is_multiplicative_and_integral():
    c = cm_form(9, 500)
    assert c.is_integral()
    for m1 in range(1, 40):
        for m2 in range(1, 500 // m1 + 1):
            if math.gcd(m1, m2) == 1:
                assert c[m1 * m2] == c[m1] * c[m2]


def test_cm_inert_primes_vanish():
    c = cm_form(13, 2000)
    for p in sympy.primerange(3, 2001):
        if p % 4 == 3:
            assert c[p] == 0


def test_cm_second_coefficient():
    for k in range(5, 50, 4):
        assert cm_form(k, 2)[2] == (-4) ** ((k - 1) // 4)


def test_dilated_series():
    e = eisenstein_E(6, 8)
    assert list(e.dilate(2))[1:] == [0, 1, 0, 33, 0, 244, 0, 1057]


def test_named_form_dispatch():
    assert named_form("eta12", None, 3).pretty() == "q - 12*q^3 + O(q^4)"
    assert named_form("theta", 4, 2)[2] == 24
    with pytest.raises(ValueError):
        named_form("C", 6, 3)
    with pytest.raises(ValueError):
        named_form("E", None, 3)
    with pytest.raises(ValueError):
        named_form("F", 4, 3)


def test_chi4_twist_symmetry_at_weight_one():
    # sum chi4(d) = sum chi4(m/d), so E1 and E2 agree away from q^0 at k = 1
    for m in range(1, 200):
        assert sum(chi4(d) for d in range(1, m + 1) if m % d == 0) == eisenstein_E1(1, m)[m]
