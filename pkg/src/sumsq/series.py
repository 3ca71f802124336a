"""Exact truncated power series with rational coefficients.

A ``TruncatedSeries`` of order N knows the coefficients of q^0 .. q^N and
nothing beyond.  Combining two series truncates to the smaller order, and
asking for a coefficient past the order is an error rather than a zero.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Iterable, Mapping, Union

Scalar = Union[int, Fraction]


def fmt_rational(x: Scalar) -> str:
    """Serialize as "p/q" in lowest terms, or "p" when the denominator is 1."""
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(s: str) -> Fraction:
    return Fraction(s.strip())


def _pack(xs: list[int], width: int) -> int:
    return int.from_bytes(b"".join(x.to_bytes(width, "little") for x in xs), "little")


def _nonneg_product(a: list[int], b: list[int], n: int) -> list[int]:
    # Kronecker substitution: one big-int multiply instead of a Cauchy loop.
    if not any(a) or not any(b):
        return [0] * n
    bound = min(len(a), len(b)) * max(a) * max(b)
    width = (bound.bit_length() + 8) // 8
    prod = _pack(a, width) * _pack(b, width)
    raw = prod.to_bytes(width * (len(a) + len(b)), "little")
    return [int.from_bytes(raw[i * width:(i + 1) * width], "little") for i in range(n)]


def _int_convolve(a: list[int], b: list[int], n: int) -> list[int]:
    """First n coefficients of the product of two integer coefficient lists."""
    a, b = a[:n], b[:n]
    if len(a) * len(b) <= 4096:
        out = [0] * n
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b[: n - i]):
                    out[i + j] += x * y
        return out
    ap = [max(x, 0) for x in a]
    bp = [max(y, 0) for y in b]
    an = [max(-x, 0) for x in a]
    bn = [max(-y, 0) for y in b]
    pos = [u + v for u, v in zip(_nonneg_product(ap, bp, n), _nonneg_product(an, bn, n))]
    neg = [u + v for u, v in zip(_nonneg_product(ap, bn, n), _nonneg_product(an, bp, n))]
    return [u - v for u, v in zip(pos, neg)]


class TruncatedSeries:
    """Coefficients c_0..c_N of a power series in q, stored as Fractions."""

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Iterable[Scalar], order: int | None = None):
        cs = tuple(Fraction(c) for c in coeffs)
        if order is not None:
            if order < 0:
                raise ValueError("order must be non-negative")
            cs = cs[: order + 1] + (Fraction(0),) * (order + 1 - len(cs))
        if not cs:
            raise ValueError("a truncated series needs at least the constant term")
        self._coeffs = cs

    @classmethod
    def zero(cls, order: int) -> "TruncatedSeries":
        return cls((), order)

    @classmethod
    def one(cls, order: int) -> "TruncatedSeries":
        return cls((1,), order)

    @classmethod
    def from_terms(cls, terms: Mapping[int, Scalar], order: int) -> "TruncatedSeries":
        cs = [Fraction(0)] * (order + 1)
        for e, c in terms.items():
            if 0 <= e <= order:
                cs[e] += Fraction(c)
        return cls(cs)

    @property
    def order(self) -> int:
        return len(self._coeffs) - 1

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return self._coeffs

    def __len__(self) -> int:
        return len(self._coeffs)

    def __getitem__(self, m: int) -> Fraction:
        if not isinstance(m, int):
            raise TypeError("series index must be an int")
        if m < 0 or m > self.order:
            raise IndexError(f"coefficient of q^{m} is beyond truncation order {self.order}")
        return self._coeffs[m]

    def __iter__(self):
        return iter(self._coeffs)

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self._coeffs)

    def integer_coeffs(self) -> list[int]:
        if not self.is_integral():
            raise ValueError("series has non-integral coefficients")
        return [c.numerator for c in self._coeffs]

    def truncate(self, order: int) -> "TruncatedSeries":
        if order > self.order:
            raise ValueError(f"cannot extend a series of order {self.order} to {order}")
        return TruncatedSeries(self._coeffs[: order + 1])

    # arithmetic

    def __add__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        n = min(self.order, other.order) + 1
        return TruncatedSeries(a + b for a, b in zip(self._coeffs[:n], other._coeffs[:n]))

    def __neg__(self):
        return TruncatedSeries(-c for c in self._coeffs)

    def __sub__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self + (-other)

    def scale(self, c: Scalar) -> "TruncatedSeries":
        c = Fraction(c)
        return TruncatedSeries(c * x for x in self._coeffs)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        n = min(self.order, other.order) + 1
        if self.is_integral() and other.is_integral():
            return TruncatedSeries(
                _int_convolve(self.integer_coeffs(), other.integer_coeffs(), n)
            )
        out = [Fraction(0)] * n
        a, b = self._coeffs[:n], other._coeffs[:n]
        for i, x in enumerate(a):
            if x:
                for j in range(n - i):
                    if b[j]:
                        out[i + j] += x * b[j]
        return TruncatedSeries(out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, e: int) -> "TruncatedSeries":
        if not isinstance(e, int) or e < 0:
            raise ValueError("exponent must be a non-negative int")
        result = TruncatedSeries.one(self.order)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def inverse(self) -> "TruncatedSeries":
        """Multiplicative inverse; the constant term must be nonzero."""
        c0 = self._coeffs[0]
        if c0 == 0:
            raise ZeroDivisionError("series with zero constant term is not invertible")
        n = len(self._coeffs)
        inv = [Fraction(0)] * n
        inv[0] = 1 / c0
        for m in range(1, n):
            s = sum(self._coeffs[j] * inv[m - j] for j in range(1, m + 1))
            inv[m] = -s / c0
        return TruncatedSeries(inv)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(1 / Fraction(other))
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self * other.inverse()

    def dilate(self, r: int) -> "TruncatedSeries":
        """f(q) -> f(q^r), keeping the same truncation order."""
        if r < 1:
            raise ValueError("dilation factor must be positive")
        cs = [Fraction(0)] * len(self._coeffs)
        for m in range(0, self.order // r + 1):
            cs[m * r] = self._coeffs[m]
        return TruncatedSeries(cs)

    def shift(self, k: int) -> "TruncatedSeries":
        """Multiply by q^k, keeping the same truncation order."""
        if k < 0:
            raise ValueError("shift must be non-negative")
        return TruncatedSeries((Fraction(0),) * k + self._coeffs, self.order)

    # comparison and output

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self):
        return hash(self._coeffs)

    def __repr__(self):
        return f"TruncatedSeries({self.pretty()!s}, order={self.order})"

    def pretty(self, var: str = "q") -> str:
        parts: list[str] = []
        for m, c in enumerate(self._coeffs):
            if c == 0:
                continue
            mag = abs(c)
            if m == 0:
                body = fmt_rational(mag)
            else:
                mono = var if m == 1 else f"{var}^{m}"
                body = mono if mag == 1 else f"{fmt_rational(mag)}*{mono}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if c > 0 else f"- {body}")
        head = " ".join(parts) if parts else "0"
        return f"{head} + O({var}^{self.order + 1})"

    def to_json(self) -> dict:
        return {"order": self.order, "coeffs": [fmt_rational(c) for c in self._coeffs]}

    @classmethod
    def from_json(cls, data: dict | str) -> "TruncatedSeries":
        if isinstance(data, str):
            data = json.loads(data)
        coeffs = [parse_rational(s) for s in data["coeffs"]]
        if len(coeffs) != data["order"] + 1:
            raise ValueError("coefficient count does not match order")
        return cls(coeffs)


def series_add(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    return a + b


def series_scale(a: TruncatedSeries, c: Scalar) -> TruncatedSeries:
    return a.scale(c)


def series_mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    return a * b


def series_pow(a: TruncatedSeries, n: int) -> TruncatedSeries:
    if n < 1:
        raise ValueError("power must be at least 1")
    return a ** n
