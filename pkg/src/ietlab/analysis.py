"""Exact number-theoretic primitives and the report generators that set the
computed counts against the asymptotic constants.

Everything counted here is exact; the only non-rational quantity is pi,
which enters displayed ratios at 50 digits and is never asserted against.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath

from . import sturmian, triet

RATIO_DIGITS = 50
LOWER_CONST = Fraction(17, 48)
UPPER_CONST = Fraction(2)


def totient(n: int) -> int:
    """Euler totient via trial-division factorization."""
    if n < 1:
        raise ValueError("n must be >= 1")
    result, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1 if p == 2 else 2
    if m > 1:
        result -= result // m
    return result


def totient_sum(n: int) -> int:
    """Exact partial sum of the totient up to n."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return sum(totient(k) for k in range(1, n + 1))


def _prime_divisors(q: int) -> list[int]:
    out, m, p = [], q, 2
    while p * p <= m:
        if m % p == 0:
            out.append(p)
            while m % p == 0:
                m //= p
        p += 1 if p == 2 else 2
    if m > 1:
        out.append(m)
    return out


def coprime_in_range(q: int, j: int, i: int) -> int:
    """Exact count of integers p with j <= p <= i and gcd(p, q) = 1, by
    inclusion-exclusion over the prime divisors of q."""
    if q < 1:
        raise ValueError("q must be >= 1")
    if j > i:
        raise ValueError("need j <= i")
    primes = _prime_divisors(q)

    def count_up_to(x: int) -> int:
        total = 0
        for mask in range(1 << len(primes)):
            d, bits = 1, 0
            for k, p in enumerate(primes):
                if mask >> k & 1:
                    d *= p
                    bits += 1
            total += (-1) ** bits * (x // d)
        return total

    return count_up_to(i) - count_up_to(j - 1)


@dataclass(frozen=True)
class BoundsRow:
    """One row of the ratio table: exact count plus pi^2 * count / N^4."""

    n: int
    count: int
    ratio: str  # 50-digit decimal
    lower_const: Fraction = LOWER_CONST
    upper_const: Fraction = UPPER_CONST

    @property
    def ratio_3sf(self) -> str:
        with mpmath.workdps(RATIO_DIGITS):
            return mpmath.nstr(mpmath.mpf(self.ratio), 3)


def ratio_string(count: int, n: int, digits: int = RATIO_DIGITS) -> str:
    with mpmath.workdps(digits):
        return mpmath.nstr(mpmath.pi ** 2 * count / n ** 4, digits)


def bounds_table(max_n: int, workers: int = 1) -> list[BoundsRow]:
    """Ratio rows for N = 1..max_n from the enumeration engine."""
    if max_n < 1:
        raise ValueError("max_n must be >= 1")
    rows = []
    for n in range(1, max_n + 1):
        count = triet.count_factors(n, workers=workers)
        rows.append(BoundsRow(n, count, ratio_string(count, n)))
    return rows


@dataclass(frozen=True)
class PropLowerReport:
    """Both sides of the doubled tail-count comparison, exactly.

    lhs is the ternary count; rhs doubles the number of binary factors of
    length N - b with at least b ones, summed over b <= N/2.  The report
    records whether lhs >= rhs and never asserts it: the doubling counts
    letter-swap-symmetric words twice, so small lengths fail.
    """

    n: int
    lhs: int
    rhs: int
    holds: bool


def prop_lower_report(n: int) -> PropLowerReport:
    if n < 0:
        raise ValueError("n must be non-negative")
    lhs = triet.count_factors(n)
    rhs = 2 * sum(sturmian.h_count(n - b, b) for b in range(n // 2 + 1))
    return PropLowerReport(n, lhs, rhs, lhs >= rhs)


def bounds_csv_rows(rows: list[BoundsRow], reports: list[PropLowerReport]) -> list[list[str]]:
    """Delimited form of the two reports, row-aligned by N."""
    by_n = {r.n: r for r in reports}
    out = [
        [
            "n",
            "count",
            "pi2_count_over_n4",
            "lower_const",
            "upper_const",
            "prop_lower_rhs",
            "prop_lower_holds",
        ]
    ]
    for row in rows:
        rep = by_n.get(row.n)
        out.append(
            [
                str(row.n),
                str(row.count),
                row.ratio,
                str(row.lower_const),
                str(row.upper_const),
                "" if rep is None else str(rep.rhs),
                "" if rep is None else str(rep.holds).lower(),
            ]
        )
    return out
