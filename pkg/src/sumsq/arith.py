"""Integer arithmetic: factorization, chi_4, divisor sums and Bernoulli-type numbers.

Integers are Python ints and rationals are ``fractions.Fraction``; both are
exact and Fraction is always kept in lowest terms with a positive
denominator.
"""

from __future__ import annotations

import math
import random
import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .series import TruncatedSeries

TRIAL_LIMIT = 10**6
FACTOR_LIMIT = 2**64

# Strong-pseudoprime bases; deterministic for n < 3.3e24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def _sieve(limit: int) -> list[int]:
    flags = bytearray([1]) * (limit + 1)
    flags[0:2] = b"\x00\x00"
    for p in range(2, math.isqrt(limit) + 1):
        if flags[p]:
            flags[p * p :: p] = bytearray(len(range(p * p, limit + 1, p)))
    return [i for i, f in enumerate(flags) if f]


_small_primes: list[int] | None = None
_small_lock = threading.Lock()


def small_primes() -> list[int]:
    global _small_primes
    if _small_primes is None:
        with _small_lock:
            if _small_primes is None:
                _small_primes = _sieve(TRIAL_LIMIT)
    return _small_primes


def is_prime(n: int) -> bool:
    """Miller-Rabin with fixed bases.

    Deterministic below 3.3e24, which covers every factorization this
    package computes itself; above that it is a strong probable-prime test.
    """
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_brent(n: int, rng: random.Random) -> int:
    if n % 2 == 0:
        return 2
    while True:
        y, c, m = rng.randrange(1, n), rng.randrange(1, n), 128
        g, r, q = 1, 1, 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g


@dataclass(frozen=True)
class Factorization:
    """Prime factorization of a positive integer as ((p, e), ...) with p increasing."""

    pairs: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        last = 1
        for p, e in self.pairs:
            if p <= last:
                raise ValueError("primes must be strictly increasing")
            if e < 1:
                raise ValueError(f"exponent of {p} must be positive")
            last = p

    @classmethod
    def from_pairs(cls, pairs, check_primes: bool = True) -> "Factorization":
        merged: dict[int, int] = {}
        for p, e in pairs:
            p, e = int(p), int(e)
            if e == 0:
                continue
            merged[p] = merged.get(p, 0) + e
        if check_primes:
            for p in merged:
                if not is_prime(p):
                    raise ValueError(f"{p} is not prime")
        return cls(tuple(sorted(merged.items())))

    @classmethod
    def parse(cls, text: str) -> "Factorization":
        """Parse "p1^e1,p2^e2" or "p1^e1 * p2^e2" (exponent optional)."""
        text = text.strip()
        if text in ("", "1"):
            return cls()
        pairs = []
        for tok in text.replace("*", ",").split(","):
            tok = tok.strip()
            if not tok:
                continue
            base, _, exp = tok.partition("^")
            try:
                pairs.append((int(base), int(exp) if exp else 1))
            except ValueError:
                raise ValueError(f"malformed factor {tok!r}") from None
        return cls.from_pairs(pairs)

    @property
    def value(self) -> int:
        v = 1
        for p, e in self.pairs:
            v *= p**e
        return v

    def exponent(self, p: int) -> int:
        for q, e in self.pairs:
            if q == p:
                return e
        return 0

    def divide_by_power_of_two(self, k: int) -> "Factorization | None":
        """Factorization of m / 2^k, or None when 2^k does not divide m."""
        e = self.exponent(2)
        if e < k:
            return None
        pairs = [(p, f) for p, f in self.pairs if p != 2]
        if e > k:
            pairs.insert(0, (2, e - k))
        return Factorization(tuple(pairs))

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(self.pairs)

    def __len__(self):
        return len(self.pairs)

    def __str__(self):
        if not self.pairs:
            return "1"
        return " * ".join(f"{p}^{e}" for p, e in self.pairs)


def factorize(m: int) -> Factorization:
    """Factor m >= 1: trial division to 10^6, then Pollard-rho (Brent).

    Inputs of 2^64 or more are refused; callers must supply the
    factorization themselves.
    """
    if not isinstance(m, int) or m < 1:
        raise ValueError(f"can only factor positive integers, got {m!r}")
    if m >= FACTOR_LIMIT:
        raise ValueError(
            f"{m} is at least 2^64; supply its factorization explicitly"
        )
    pairs: dict[int, int] = {}
    n = m
    for p in small_primes():
        if p * p > n:
            break
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            pairs[p] = e
    if n > 1:
        rng = random.Random(n)
        stack = [n]
        while stack:
            x = stack.pop()
            if x == 1:
                continue
            if is_prime(x):
                pairs[x] = pairs.get(x, 0) + 1
                continue
            r = math.isqrt(x)
            if r * r == x:
                stack += [r, r]
                continue
            d = _pollard_brent(x, rng)
            stack += [d, x // d]
    return Factorization(tuple(sorted(pairs.items())))


def as_factorization(m: int, f: Factorization | None = None) -> Factorization:
    """Return f after checking it reconstructs m, or factor m."""
    if f is None:
        return factorize(m)
    if f.value != m:
        raise ValueError(f"factorization {f} does not reconstruct {m}")
    return f


def chi4(a: int) -> int:
    """The nontrivial character mod 4."""
    if a % 2 == 0:
        return 0
    return 1 if a % 4 == 1 else -1


DIVISOR_FILTERS = ("all", "odd", "chi4_at_d", "chi4_at_cofactor")


def _local_factor(p: int, e: int, t: int, filt: str) -> int:
    powers = [p ** (t * j) for j in range(e + 1)]
    if filt == "all":
        return sum(powers)
    if filt == "odd":
        return 1 if p == 2 else sum(powers)
    c = chi4(p)
    if filt == "chi4_at_d":
        # chi4(p^j) p^{tj}
        return sum(c**j * pw for j, pw in enumerate(powers)) if p != 2 else 1
    if filt == "chi4_at_cofactor":
        # chi4(p^{e-j}) p^{tj}
        if p == 2:
            return powers[e]
        return sum(c ** (e - j) * pw for j, pw in enumerate(powers))
    raise ValueError(f"unknown divisor filter {filt!r}; expected one of {DIVISOR_FILTERS}")


def divisor_power_sum(f: Factorization, t: int, filter: str = "all") -> int:
    """Twisted divisor power sum of m = f.value, evaluated prime by prime.

    ``filter`` is one of:
      all               sum_{d|m} d^t
      odd               sum_{d|m, d odd} d^t
      chi4_at_d         sum_{d|m} chi4(d) d^t
      chi4_at_cofactor  sum_{d|m} chi4(m/d) d^t
    """
    if filter not in DIVISOR_FILTERS:
        raise ValueError(f"unknown divisor filter {filter!r}; expected one of {DIVISOR_FILTERS}")
    if t < 0:
        raise ValueError("t must be non-negative")
    total = 1
    for p, e in f:
        total *= _local_factor(p, e, t, filter)
    return total


def sigma(m: int, t: int) -> int:
    return divisor_power_sum(factorize(m), t)


_bern_cache: list[Fraction] = [Fraction(1)]
_euler_cache: list[int] = [1]
_cache_lock = threading.Lock()


def bernoulli(k: int) -> Fraction:
    """b_k from t/(e^t - 1); note b_1 = -1/2."""
    if k < 0:
        raise ValueError("k must be non-negative")
    with _cache_lock:
        while len(_bern_cache) <= k:
            j = len(_bern_cache)
            # sum_{i<=j} C(j+1, i) b_i = 0
            s = sum(math.comb(j + 1, i) * _bern_cache[i] for i in range(j))
            _bern_cache.append(-s / (j + 1))
        return _bern_cache[k]


def euler_number(k: int) -> int:
    """e_k from 2/(e^t + e^-t); zero for odd k."""
    if k < 0:
        raise ValueError("k must be non-negative")
    if k % 2:
        return 0
    with _cache_lock:
        while 2 * (len(_euler_cache) - 1) < k:
            j = 2 * len(_euler_cache)
            s = sum(math.comb(j, 2 * i) * e for i, e in enumerate(_euler_cache))
            _euler_cache.append(-s)
        return _euler_cache[k // 2]


def gen_bernoulli_chi4(k: int) -> Fraction:
    """Bernoulli number of chi_4: k! [t^k] (t e^t - t e^{3t}) / (e^{4t} - 1).

    Both sides are divided by t first so the denominator is invertible.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    num = TruncatedSeries(Fraction(1 - 3**j, math.factorial(j)) for j in range(k + 1))
    den = TruncatedSeries(Fraction(4 ** (j + 1), math.factorial(j + 1)) for j in range(k + 1))
    return (num / den)[k] * math.factorial(k)
