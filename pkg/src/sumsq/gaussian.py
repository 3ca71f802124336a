"""Gaussian integers, prime splitting and norm-power sums over Z[i]."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .arith import Factorization, as_factorization, is_prime

NONRESIDUE_TRIES = 128


@dataclass(frozen=True)
class GaussianInt:
    re: int
    im: int = 0

    def __add__(self, other):
        other = _coerce(other)
        return GaussianInt(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianInt(-self.re, -self.im)

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __mul__(self, other):
        other = _coerce(other)
        a, b, c, d = self.re, self.im, other.re, other.im
        return GaussianInt(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative powers are not Gaussian integers in general")
        result, base = GaussianInt(1), self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def conjugate(self) -> "GaussianInt":
        return GaussianInt(self.re, -self.im)

    def norm(self) -> int:
        return self.re * self.re + self.im * self.im

    def __str__(self):
        sign = "-" if self.im < 0 else "+"
        return f"{self.re}{sign}{abs(self.im)}i"

    @classmethod
    def parse(cls, text: str) -> "GaussianInt":
        text = text.strip().replace(" ", "")
        if not text.endswith("i"):
            return cls(int(text))
        body = text[:-1]
        cut = max(body.rfind("+"), body.rfind("-"))
        if cut <= 0:
            return cls(0, int(body + "1") if body in ("", "+", "-") else int(body))
        im = body[cut:]
        return cls(int(body[:cut]), int(im + "1") if im in ("+", "-") else int(im))


def _coerce(x) -> GaussianInt:
    if isinstance(x, GaussianInt):
        return x
    if isinstance(x, int):
        return GaussianInt(x)
    raise TypeError(f"cannot treat {x!r} as a Gaussian integer")


def sqrt_minus_one_mod(p: int) -> int:
    """Smaller root x of x^2 = -1 (mod p) for a prime p = 1 (mod 4)."""
    if p % 4 != 1:
        raise ValueError(f"-1 is a square mod p only for p = 1 mod 4; got {p}")
    for c in range(2, 2 + NONRESIDUE_TRIES):
        x = pow(c, (p - 1) // 4, p)
        if x * x % p == p - 1:
            return min(x, p - x)
    raise ArithmeticError(f"no quadratic non-residue among {NONRESIDUE_TRIES} candidates mod {p}; is {p} prime?")


def split_prime(p: int) -> GaussianInt:
    """An element of norm p: 1+i for p = 2, otherwise the associate a+bi with a > b > 0."""
    if p == 2:
        return GaussianInt(1, 1)
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if p % 4 != 1:
        raise ValueError(f"{p} is inert in Z[i]; nothing has norm {p}")
    # Hermite-Serret: run Euclid on (p, x) until the remainder drops below sqrt(p).
    a, b = p, sqrt_minus_one_mod(p)
    root = math.isqrt(p)
    while b > root:
        a, b = b, a % b
    c = math.isqrt(p - b * b)
    if c * c + b * b != p:
        raise ArithmeticError(f"failed to split {p}")
    return GaussianInt(max(b, c), min(b, c))


def _check_t(t: int) -> None:
    if t <= 0 or t % 4:
        raise ValueError(f"exponent t must be a positive multiple of 4 (units of Z[i]); got {t}")


def _local_coefficient(p: int, e: int, t: int) -> GaussianInt:
    if p == 2:
        return GaussianInt(1, 1) ** (t * e)
    if p % 4 == 3:
        return GaussianInt(p ** (t * e // 2)) if e % 2 == 0 else GaussianInt(0)
    pi = split_prime(p)
    a, b = pi ** t, pi.conjugate() ** t
    total = GaussianInt(0)
    for j in range(e + 1):
        total = total + a ** j * b ** (e - j)
    return total


def norm_power_sum(f: Factorization | int, t: int) -> int:
    """Sum of d^t over all d in Z[i] with norm m, computed one prime at a time.

    Requires 4 | t so the value does not depend on the choice of associates.
    """
    _check_t(t)
    if isinstance(f, int):
        f = as_factorization(f)
    acc = GaussianInt(1)
    for p, e in f:
        acc = acc * _local_coefficient(p, e, t)
        if acc.re == 0 and acc.im == 0:
            return 0
    if acc.im != 0:
        raise ArithmeticError(f"norm-power sum for {f} has nonzero imaginary part")
    return 4 * acc.re


def enumerate_norm(m: int) -> list[GaussianInt]:
    """All a+bi with a^2 + b^2 = m, by scanning a."""
    if m < 1:
        raise ValueError("m must be positive")
    out = []
    r = math.isqrt(m)
    for a in range(-r, r + 1):
        rest = m - a * a
        b = math.isqrt(rest)
        if b * b == rest:
            out.append(GaussianInt(a, b))
            if b:
                out.append(GaussianInt(a, -b))
    return out


def brute_norm_power_sum(m: int, t: int) -> GaussianInt:
    """Sum of d^t over enumerate_norm(m); returned as a Gaussian integer so the imaginary part can be checked."""
    total = GaussianInt(0)
    for d in enumerate_norm(m):
        total = total + d ** t
    return total
