"""q-expansions of the forms on Gamma_1(4) used throughout the package.

Every constructor returns a ``TruncatedSeries`` of the requested order with
exact Fraction coefficients.

Constant terms of the odd-weight Eisenstein series: the series whose
coefficients are sum chi4(d) d^(k-1) carries the constant -b_k^chi/(2k),
and the one with sum chi4(m/d) d^(k-1) has constant 0.  This is the
assignment that makes theta_6 = 16 E1 - 4 E2 and theta_10 hold at q^0.
"""

from __future__ import annotations

from fractions import Fraction

from .arith import Factorization, bernoulli, divisor_power_sum, gen_bernoulli_chi4
from .gaussian import norm_power_sum
from .series import TruncatedSeries


def factorizations_upto(n: int) -> list[Factorization]:
    """Factorizations of 0..n via a smallest-prime-factor sieve (index 0 is a placeholder)."""
    spf = list(range(n + 1))
    i = 2
    while i * i <= n:
        if spf[i] == i:
            for j in range(i * i, n + 1, i):
                if spf[j] == j:
                    spf[j] = i
        i += 1
    out = [Factorization()] * (n + 1)
    for m in range(2, n + 1):
        pairs: list[tuple[int, int]] = []
        x = m
        while x > 1:
            p = spf[x]
            e = 0
            while x % p == 0:
                x //= p
                e += 1
            pairs.append((p, e))
        out[m] = Factorization(tuple(pairs))
    return out


def _check_order(N: int) -> None:
    if N < 0:
        raise ValueError("order must be non-negative")


def theta1(N: int) -> TruncatedSeries:
    _check_order(N)
    terms = {0: 1}
    j = 1
    while j * j <= N:
        terms[j * j] = 2
        j += 1
    return TruncatedSeries.from_terms(terms, N)


def theta_series(n: int, N: int) -> TruncatedSeries:
    """theta_1^n to order N; the coefficient of q^m is r_n(m)."""
    if n < 1:
        raise ValueError("n must be positive")
    return theta1(N) ** n


def eta12_2z(N: int) -> TruncatedSeries:
    """q * prod_{j>=1} (1 - q^{2j})^12, the weight-6 cusp form on Gamma_1(4)."""
    if N < 1:
        raise ValueError("order must be at least 1")
    # build prod (1 - x^j) in x = q^2 at half the order, then dilate
    h = N // 2
    cs = [1] + [0] * h
    for j in range(1, h + 1):
        for m in range(h, j - 1, -1):
            cs[m] -= cs[m - j]
    half = TruncatedSeries(cs) ** 12
    full = [0] * (N + 1)
    for m, c in enumerate(half):
        full[2 * m] = c
    return TruncatedSeries(full).shift(1)


def _divisor_series(N, t, filt, constant) -> TruncatedSeries:
    fs = factorizations_upto(N)
    cs = [Fraction(constant)] + [divisor_power_sum(fs[m], t, filt) for m in range(1, N + 1)]
    return TruncatedSeries(cs)


def eisenstein_E(k: int, N: int) -> TruncatedSeries:
    """-b_k/(2k) + sum sigma_{k-1}(m) q^m for even k.

    k = 2 is accepted for the theta_4 decomposition even though that
    series alone is only quasi-modular.
    """
    _check_order(N)
    if k % 2 or k < 2:
        raise ValueError(f"E needs even weight k >= 2 (k >= 4 for a modular form); got {k}")
    return _divisor_series(N, k - 1, "all", -bernoulli(k) / (2 * k))


def _check_odd(k: int) -> None:
    if k % 2 == 0 or k < 1:
        raise ValueError(f"odd weight required; got {k}")


def eisenstein_E1(k: int, N: int) -> TruncatedSeries:
    """sum_{d|m} chi4(m/d) d^(k-1) q^m, constant term 0."""
    _check_order(N)
    _check_odd(k)
    return _divisor_series(N, k - 1, "chi4_at_cofactor", 0)


def eisenstein_E2(k: int, N: int) -> TruncatedSeries:
    """-b_k^chi/(2k) + sum_{d|m} chi4(d) d^(k-1) q^m."""
    _check_order(N)
    _check_odd(k)
    return _divisor_series(N, k - 1, "chi4_at_d", -gen_bernoulli_chi4(k) / (2 * k))


def cm_form(k: int, N: int) -> TruncatedSeries:
    """The normalized CM eigenform of weight k from psi((a)) = a^(k-1) on Q(i)."""
    _check_order(N)
    if k % 4 != 1 or k < 5:
        raise ValueError(
            f"the CM cusp space of weight {k} on Gamma_1(4) is zero; "
            "it is one-dimensional only for k = 1 mod 4 with k >= 5"
        )
    fs = factorizations_upto(N)
    cs = [0] + [Fraction(norm_power_sum(fs[m], k - 1), 4) for m in range(1, N + 1)]
    return TruncatedSeries(cs)


FORMS = ("theta", "E", "E1", "E2", "C", "eta12")


def named_form(name: str, param: int | None, N: int) -> TruncatedSeries:
    """Dispatch used by the CLI: theta takes n, the Eisenstein and CM families take k."""
    if name == "eta12":
        if param not in (None, 6):
            raise ValueError("eta12 has fixed weight 6")
        return eta12_2z(N)
    if param is None:
        raise ValueError(f"form {name!r} needs a weight or n")
    builders = {
        "theta": theta_series,
        "E": eisenstein_E,
        "E1": eisenstein_E1,
        "E2": eisenstein_E2,
        "C": cm_form,
    }
    if name not in builders:
        raise ValueError(f"unknown form {name!r}; choose from {', '.join(FORMS)}")
    return builders[name](param, N)
