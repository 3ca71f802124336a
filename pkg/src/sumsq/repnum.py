"""Representation numbers r_n(m): closed formulas, the n = 12 formula and a lattice-count oracle."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .arith import Factorization, as_factorization, bernoulli, chi4, divisor_power_sum, euler_number
from .gaussian import norm_power_sum
from .qseries import eta12_2z, theta_series
from .series import TruncatedSeries

ELEMENTARY_N = (2, 4, 6, 8, 10)
BRUTE_MAX_N = 16
BRUTE_MAX_M = 10**4
SERIES_MAX_M = 2 * 10**4


class GuardError(ValueError):
    """A brute-force request exceeds the desk-scale limits."""


@dataclass(frozen=True)
class RepQuery:
    n: int
    m: int
    factorization: Factorization | None = None

    def __post_init__(self):
        if self.n < 1 or self.n % 2:
            raise ValueError(f"n must be a positive even integer; got {self.n}")
        if self.m < 0:
            raise ValueError("m must be non-negative")
        if self.factorization is not None and self.factorization.value != self.m:
            raise ValueError(f"factorization {self.factorization} does not reconstruct {self.m}")


def _dps(f: Factorization | None, t: int, filt: str) -> int:
    # empty sum when the quotient m/2 or m/4 is not an integer
    return 0 if f is None else divisor_power_sum(f, t, filt)


def r_elementary(n: int, m: int, factorization: Factorization | None = None) -> int:
    """r_n(m) for n in {2, 4, 6, 8, 10} from divisor sums and a Gaussian norm sum.

    Cost is polynomial in log m once the factorization is known; it is
    computed when not supplied.
    """
    if n not in ELEMENTARY_N:
        raise ValueError(
            f"no elementary formula for n={n}; use r12 for n = 12 or r_bruteforce"
        )
    if m < 0:
        raise ValueError("m must be non-negative")
    if m == 0:
        return 1
    f = as_factorization(m, factorization)
    if n == 2:
        return 4 * divisor_power_sum(f, 0, "chi4_at_d")
    if n == 4:
        return 8 * _dps(f, 1, "odd") + 16 * _dps(f.divide_by_power_of_two(1), 1, "odd")
    if n == 6:
        return 16 * divisor_power_sum(f, 2, "chi4_at_cofactor") - 4 * divisor_power_sum(f, 2, "chi4_at_d")
    if n == 8:
        return (
            16 * _dps(f, 3, "all")
            - 32 * _dps(f.divide_by_power_of_two(1), 3, "all")
            + 256 * _dps(f.divide_by_power_of_two(2), 3, "all")
        )
    value = (
        Fraction(4, 5) * divisor_power_sum(f, 4, "chi4_at_d")
        + Fraction(64, 5) * divisor_power_sum(f, 4, "chi4_at_cofactor")
        + Fraction(8, 5) * norm_power_sum(f, 4)
    )
    if value.denominator != 1:
        raise ArithmeticError(f"r_10({m}) formula produced non-integer {value}")
    return value.numerator


def eta_context(m: int) -> TruncatedSeries:
    """eta^12(2z) to order m: the part of r_12 with no divisor-sum description."""
    return eta12_2z(max(m, 1))


def r12(m: int, eta: TruncatedSeries | None = None, factorization: Factorization | None = None) -> int:
    """r_12(m) = 8 sigma_5(m) - 512 sigma_5(m/4) + 16 [q^m] eta^12(2z).

    The eta coefficient needs a series of order >= m, so this costs time
    linear in m at best.  Pass ``eta`` to reuse one across calls.
    """
    if m < 0:
        raise ValueError("m must be non-negative")
    if m == 0:
        return 1
    if eta is None:
        eta = eta_context(m)
    cusp = eta[m]
    f = as_factorization(m, factorization)
    value = 8 * _dps(f, 5, "all") - 512 * _dps(f.divide_by_power_of_two(2), 5, "all") + 16 * cusp
    if value.denominator != 1:
        raise ArithmeticError(f"r_12({m}) is not an integer: {value}")
    return value.numerator


@lru_cache(maxsize=None)
def _count(n: int, m: int) -> int:
    if n == 0:
        return 1 if m == 0 else 0
    total = _count(n - 1, m)
    x = 1
    while x * x <= m:
        total += 2 * _count(n - 1, m - x * x)
        x += 1
    return total


def r_bruteforce(n: int, m: int, max_n: int = BRUTE_MAX_N, max_m: int = BRUTE_MAX_M) -> int:
    """Count x in Z^n with |x|^2 = m by peeling off one coordinate at a time."""
    if n < 0 or m < 0:
        raise ValueError("n and m must be non-negative")
    if n > max_n or m > max_m:
        raise GuardError(
            f"brute force limited to n <= {max_n}, m <= {max_m}; got n={n}, m={m}"
        )
    return _count(n, m)


def eisenstein_c(n: int, m: int, factorization: Factorization | None = None) -> Fraction:
    """Coefficient of q^m (m odd) in the Eisenstein part of theta_n, n even and > 2."""
    if n % 2 or n <= 2:
        raise ValueError(f"n must be even and greater than 2; got {n}")
    if m < 1 or m % 2 == 0:
        raise ValueError(f"only odd m are covered; got {m}")
    f = as_factorization(m, factorization)
    k = n // 2
    if n % 4 == 2:
        lead = Fraction(4, abs(euler_number(k - 1)))
        return lead * (chi4(m) * 2 ** (k - 1) + chi4(k)) * divisor_power_sum(f, k - 1, "chi4_at_d")
    lead = Fraction(n) / ((2**k - 1) * abs(bernoulli(k)))
    return lead * divisor_power_sum(f, k - 1, "all")


def r_value(n: int, m: int, method: str = "formula", factorization: Factorization | None = None) -> int:
    """Dispatch on method: formula, series or brute."""
    if n < 1 or n % 2:
        raise ValueError(f"n must be a positive even integer; got {n}")
    if method == "formula":
        if n in ELEMENTARY_N:
            return r_elementary(n, m, factorization)
        if n == 12:
            return r12(m, factorization=factorization)
        raise ValueError(f"no formula for n={n}; formulas exist only for n <= 12")
    if method == "series":
        if m > SERIES_MAX_M:
            raise GuardError(f"series method limited to m <= {SERIES_MAX_M}; got {m}")
        return int(theta_series(n, m)[m])
    if method == "brute":
        return r_bruteforce(n, m)
    raise ValueError(f"unknown method {method!r}")


def binomial_r3(n: int) -> int:
    """r_n(3) = 8 C(n, 3): three coordinates equal to +-1."""
    return 8 * math.comb(n, 3)
