"""Checks behind the classification of elementary theta_n.

Everything here is exact: dimensions, coefficient matrices and their
determinants, the a_3 table, decompositions of theta_n over the
Eisenstein + CM basis, and certificates bundling the witnesses.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction

from . import linalg
from .qseries import cm_form, eisenstein_E, eisenstein_E1, eisenstein_E2, eta12_2z, theta_series
from .repnum import ELEMENTARY_N, eisenstein_c
from .series import TruncatedSeries, fmt_rational, parse_rational

DEFAULT_CHECKED_ORDER = 200


class VerificationError(Exception):
    """Two independent routes to the same quantity disagreed."""


def _check_weight(k: int) -> None:
    if k < 1:
        raise ValueError(f"weight must be positive; got {k}")


def dim_modular(k: int) -> int:
    _check_weight(k)
    return (k + 2) // 2 if k % 2 == 0 else (k + 1) // 2


def dim_cusp(k: int) -> int:
    _check_weight(k)
    return max(0, (k - 4) // 2) if k % 2 == 0 else max(0, (k - 3) // 2)


def dim_cm(k: int) -> int:
    _check_weight(k)
    return 1 if k % 4 == 1 and k >= 5 else 0


def dim_eisenstein(k: int) -> int:
    return dim_modular(k) - dim_cusp(k)


# coefficient matrices


@dataclass(frozen=True)
class CoefficientMatrix:
    entries: tuple[tuple[Fraction, ...], ...]
    row_labels: tuple[str, ...]
    col_labels: tuple[str, ...]

    def __post_init__(self):
        if len(self.entries) != len(self.row_labels):
            raise ValueError("row labels do not match rows")
        if any(len(r) != len(self.col_labels) for r in self.entries):
            raise ValueError("column labels do not match columns")

    def determinant(self) -> Fraction:
        return linalg.bareiss_det(self.entries)

    def to_json(self) -> dict:
        return {
            "rows": list(self.row_labels),
            "cols": list(self.col_labels),
            "entries": [[fmt_rational(x) for x in r] for r in self.entries],
        }


def matrix_kind(n: int) -> str:
    if n % 2 or n < 4:
        raise ValueError(f"determinant test needs even n >= 4; got {n}")
    if n % 4 == 0:
        return "M"
    if n % 8 == 6:
        return "M'"
    if n < 10:
        raise ValueError(f"no determinant test for n={n}")
    return "M''"


def _basis_rows(n: int, N: int) -> list[tuple[str, TruncatedSeries]]:
    k = n // 2
    kind = matrix_kind(n)
    if kind == "M":
        e = eisenstein_E(k, N)
        return [("E(q)", e), ("E(q^2)", e.dilate(2)), ("E(q^4)", e.dilate(4))]
    rows = [("E1", eisenstein_E1(k, N)), ("E2", eisenstein_E2(k, N))]
    if kind == "M''":
        rows.append(("C", cm_form(k, N)))
    return rows


def coefficient_matrix(n: int) -> CoefficientMatrix:
    """Coefficients of theta_n and the basis forms at q^1..q^size, read off the series."""
    kind = matrix_kind(n)
    size = 3 if kind == "M'" else 4
    rows = [(f"theta_{n}", theta_series(n, size))] + _basis_rows(n, size)
    return CoefficientMatrix(
        tuple(tuple(s[m] for m in range(1, size + 1)) for _, s in rows),
        tuple(label for label, _ in rows),
        tuple(f"q^{m}" for m in range(1, size + 1)),
    )


def printed_matrix(n: int) -> CoefficientMatrix:
    """The same matrix assembled from closed-form entries instead of series."""
    kind = matrix_kind(n)
    k = n // 2
    c = math.comb
    theta = [2 * n, 4 * c(n, 2), 8 * c(n, 3), 16 * c(n, 4) + 2 * n]
    if kind == "M":
        rows = [
            theta,
            [1, 1 + 2 ** (k - 1), 1 + 3 ** (k - 1), 1 + 2 ** (k - 1) + 4 ** (k - 1)],
            [0, 1, 0, 1 + 2 ** (k - 1)],
            [0, 0, 0, 1],
        ]
        labels = (f"theta_{n}", "E(q)", "E(q^2)", "E(q^4)")
    elif kind == "M'":
        rows = [theta[:3], [1, 2 ** (k - 1), -1 + 3 ** (k - 1)], [1, 1, 1 - 3 ** (k - 1)]]
        labels = (f"theta_{n}", "E1", "E2")
    else:
        rows = [
            theta,
            [1, 2 ** (k - 1), -1 + 3 ** (k - 1), 4 ** (k - 1)],
            [1, 1, 1 - 3 ** (k - 1), 1],
            [1, (-4) ** ((n - 2) // 8), 0, 2 ** ((n - 2) // 2)],
        ]
        labels = (f"theta_{n}", "E1", "E2", "C")
    size = len(rows)
    return CoefficientMatrix(
        tuple(tuple(Fraction(x) for x in r) for r in rows),
        labels,
        tuple(f"q^{m}" for m in range(1, size + 1)),
    )


def closed_form_det(n: int) -> Fraction | None:
    """Polynomial-exponential closed form of the determinant; None for M''."""
    kind = matrix_kind(n)
    k = n // 2
    if kind == "M":
        return Fraction(-2 * n - 2 * n * 3 ** (k - 1)) + Fraction(8 * n * (n - 1) * (n - 2), 6)
    if kind == "M'":
        n3, n2 = Fraction(n) ** 3, Fraction(n) ** 2
        return (
            (Fraction(4, 3) * n3 - 8 * n2 + Fraction(26, 3) * n)
            + 2 ** (k - 1) * (Fraction(-4, 3) * n3 + 4 * n2 - Fraction(2, 3) * n)
            + 3 ** (k - 1) * (4 * n2 - 6 * n)
            + 6 ** (k - 1) * (-2 * n)
        )
    return None


def printed_m_prime_expansion(n: int) -> Fraction:
    """The M' expansion as usually printed, which omits the +8 C(n,3) cofactor term."""
    k = n // 2
    n3, n2 = Fraction(n) ** 3, Fraction(n) ** 2
    return (
        (-4 * n2 + 6 * n)
        + 2 ** (k - 1) * (Fraction(-4, 3) * n3 + 4 * n2 - Fraction(2, 3) * n)
        + 3 ** (k - 1) * (4 * n2 - 6 * n)
        + 6 ** (k - 1) * (-2 * n)
    )


def det_test(n: int) -> Fraction:
    """Determinant of the coefficient matrix for theta_n.

    The matrix read from series, the matrix built from closed-form entries
    (expanded by cofactors) and the closed-form determinant must all agree.
    """
    series_det = coefficient_matrix(n).determinant()
    entry_det = linalg.laplace_det(printed_matrix(n).entries)
    if series_det != entry_det:
        raise VerificationError(f"n={n}: series matrix det {series_det} != entry formula det {entry_det}")
    closed = closed_form_det(n)
    if closed is not None and closed != series_det:
        raise VerificationError(f"n={n}: matrix det {series_det} != closed form {closed}")
    return series_det


# the a_3 coefficient of the cuspidal part


@dataclass(frozen=True)
class A3Row:
    n: int
    c3: Fraction
    r3: int
    a3: Fraction


def r3(n: int) -> int:
    return int(theta_series(n, 3)[3])


def a3(n: int) -> Fraction:
    """Coefficient of q^3 in theta_n minus its Eisenstein part."""
    if n % 2 or n < 4:
        raise ValueError(f"a3 needs even n >= 4; got {n}")
    return r3(n) - eisenstein_c(n, 3)


def a3_table(n_lo: int, n_hi: int) -> list[A3Row]:
    rows = []
    for n in range(n_lo, n_hi + 1):
        if n % 2 or n < 4:
            continue
        c3 = eisenstein_c(n, 3)
        r = r3(n)
        rows.append(A3Row(n, c3, r, r - c3))
    return rows


def format_table_text(rows: list[A3Row]) -> str:
    header = ("n", "c_3", "r_n(3)", "a_3 = r_n(3) - c_3")
    body = [(str(r.n), fmt_rational(r.c3), str(r.r3), fmt_rational(r.a3)) for r in rows]
    widths = [max(len(x) for x in col) for col in zip(header, *body)]
    lines = ["  ".join(x.rjust(w) for x, w in zip(line, widths)) for line in [header, *body]]
    return "\n".join(lines)


def format_table_csv(rows: list[A3Row]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["n", "c3", "r3", "a3"])
    for r in rows:
        w.writerow([r.n, fmt_rational(r.c3), r.r3, fmt_rational(r.a3)])
    return buf.getvalue()


# decompositions


def candidate_basis(n: int, N: int, extended: bool = False) -> list[tuple[str, TruncatedSeries]]:
    """Eisenstein (+ CM) forms of weight n/2 to order N.

    ``extended`` adds eta^12(2z), which only makes sense at n = 12.
    """
    if n % 2 or n < 2:
        raise ValueError(f"n must be even and positive; got {n}")
    k = n // 2
    if k % 2 == 0:
        e = eisenstein_E(k, N)
        basis = [("E(q)", e), ("E(q^2)", e.dilate(2)), ("E(q^4)", e.dilate(4))]
    else:
        basis = [("E1", eisenstein_E1(k, N)), ("E2", eisenstein_E2(k, N))]
        if dim_cm(k):
            basis.append(("C", cm_form(k, N)))
    if extended:
        if n != 12:
            raise ValueError("the extended basis with eta^12(2z) is only defined for n = 12")
        basis.append(("eta12(2z)", eta12_2z(N)))
    return basis


@dataclass(frozen=True)
class Decomposition:
    n: int
    labels: tuple[str, ...]
    coefficients: tuple[Fraction, ...] | None
    first_failing_power: int | None
    checked_order: int

    @property
    def consistent(self) -> bool:
        return self.coefficients is not None

    def as_dict(self) -> dict[str, Fraction]:
        if self.coefficients is None:
            raise ValueError(f"theta_{self.n} is not in the span of {self.labels}")
        return dict(zip(self.labels, self.coefficients))

    def recombine(self, N: int | None = None) -> TruncatedSeries:
        N = self.checked_order if N is None else N
        basis = candidate_basis(self.n, N, extended=any(x.startswith("eta") for x in self.labels))
        total = TruncatedSeries.zero(N)
        for c, (_, s) in zip(self.as_dict().values(), basis):
            total = total + s.scale(c)
        return total


def decompose_theta(n: int, N: int = DEFAULT_CHECKED_ORDER, extended: bool = False) -> Decomposition:
    """Write theta_n in the candidate basis, matching coefficients of q^0..q^N.

    Returns the coefficients when the system is consistent, otherwise the
    first q-power at which it fails.
    """
    basis = candidate_basis(n, N, extended)
    if N < len(basis) + 2:
        raise linalg.UnderdeterminedSystem(f"order {N} too small for a basis of {len(basis)} forms")
    theta = theta_series(n, N)
    eqs = [[s[m] for _, s in basis] for m in range(N + 1)]
    labels = tuple(label for label, _ in basis)
    try:
        coeffs = linalg.solve_incremental(eqs, list(theta))
    except linalg.InconsistentSystem as exc:
        return Decomposition(n, labels, None, exc.row, N)
    return Decomposition(n, labels, tuple(coeffs), None, N)


# certificates

ELEMENTARY = "elementary"
NOT_ELEMENTARY = "not_elementary"


@dataclass(frozen=True)
class ElementarityCertificate:
    n: int
    verdict: str
    witness_kind: str
    values: tuple[Fraction, ...]
    checked_order: int
    basis: tuple[str, ...] = field(default=())

    def check(self) -> bool:
        """Re-derive the witness from scratch and compare."""
        if self.verdict == ELEMENTARY:
            if self.witness_kind != "decomposition":
                return False
            d = Decomposition(self.n, self.basis, self.values, None, self.checked_order)
            return d.recombine() == theta_series(self.n, self.checked_order)
        if self.witness_kind != "determinant+a3" or len(self.values) != 2:
            return False
        det, a = self.values
        return (
            det != 0
            and a != 0
            and det == coefficient_matrix(self.n).determinant()
            and a == r3(self.n) - eisenstein_c(self.n, 3)
        )

    def to_json(self) -> dict:
        out = {
            "n": self.n,
            "verdict": self.verdict,
            "witness_kind": self.witness_kind,
            "values": [fmt_rational(v) for v in self.values],
            "checked_order": self.checked_order,
        }
        if self.basis:
            out["basis"] = list(self.basis)
        return out

    @classmethod
    def from_json(cls, data: dict | str) -> "ElementarityCertificate":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(
            n=int(data["n"]),
            verdict=data["verdict"],
            witness_kind=data["witness_kind"],
            values=tuple(parse_rational(v) for v in data["values"]),
            checked_order=int(data["checked_order"]),
            basis=tuple(data.get("basis", ())),
        )


def elementarity(n: int, checked_order: int = DEFAULT_CHECKED_ORDER) -> ElementarityCertificate:
    """Certify whether theta_n is a combination of Eisenstein series and CM forms.

    Elementary cases carry a decomposition checked to ``checked_order``;
    the others carry both the determinant and the a_3 witness, which must
    agree.
    """
    if n % 2 or n < 2:
        raise ValueError(f"n must be even and positive; got {n}")
    dec = decompose_theta(n, checked_order)
    det = det_test(n) if n >= 4 else None
    a = a3(n) if n >= 4 else None
    if dec.consistent:
        if (det is not None and det != 0) or (a is not None and a != 0):
            raise VerificationError(f"n={n}: decomposition exists but det={det}, a3={a}")
        return ElementarityCertificate(
            n, ELEMENTARY, "decomposition", dec.coefficients, checked_order, dec.labels
        )
    if det == 0 or a == 0:
        raise VerificationError(f"n={n}: no decomposition but det={det}, a3={a}")
    return ElementarityCertificate(n, NOT_ELEMENTARY, "determinant+a3", (det, a), checked_order)


def verify_range(lo: int, hi: int, checked_order: int = DEFAULT_CHECKED_ORDER) -> list[ElementarityCertificate]:
    return [elementarity(n, checked_order) for n in range(lo, hi + 1) if n % 2 == 0 and n >= 2]


__all__ = [
    "A3Row",
    "CoefficientMatrix",
    "Decomposition",
    "ELEMENTARY_N",
    "ElementarityCertificate",
    "VerificationError",
    "a3",
    "a3_table",
    "candidate_basis",
    "closed_form_det",
    "coefficient_matrix",
    "decompose_theta",
    "det_test",
    "dim_cm",
    "dim_cusp",
    "dim_eisenstein",
    "dim_modular",
    "elementarity",
    "printed_matrix",
    "verify_range",
]
