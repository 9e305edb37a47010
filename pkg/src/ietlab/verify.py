"""Named verification suites: exact reproduction checks runnable from the
command line (``ietlab verify``) and reused by the acceptance tests."""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from . import amicable, analysis, atlas, sturmian, triet
from .exact import QuadraticReal

#: exact counts for lengths 1..10, as tabulated
REFERENCE_COUNTS = (3, 9, 25, 55, 113, 199, 339, 531, 809, 1165)

#: tabulated values of pi^2 * count / N^4 at three significant figures
REFERENCE_RATIOS = ("29.6", "5.55", "3.05", "2.12", "1.78", "1.52", "1.39", "1.28", "1.22", "1.15")

REFERENCE_SET_LEN2 = {"AA", "AB", "AC", "BA", "BB", "BC", "CA", "CB", "CC"}

#: reference region lists for length 2; the fourth list is printed with a
#: repeated AC where CA is expected, so it is handled as a flagged variant
REFERENCE_REGIONS_LEN2 = (
    ("AC", "BC", "CA", "CB", "CC"),
    ("AC", "BB", "BC", "CA", "CB"),
    ("AB", "AC", "BA", "BB", "CA"),
)
REFERENCE_REGION4_LEN2_PRINTED = ("AA", "AB", "AC", "BA", "AC")
REFERENCE_REGION4_LEN2_EXPECTED = ("AA", "AB", "AC", "BA", "CA")

REFERENCE_LINES_LEN2 = (
    (Fraction(2), Fraction(-1), Fraction(0)),  # ell = 2*eps
    (Fraction(2), Fraction(0), Fraction(1)),   # eps = 1/2
    (Fraction(2), Fraction(1), Fraction(2)),   # ell = 2*(1 - eps)
)

REFERENCE_REGIONS_LEN3 = (
    ("AAC", "ABA", "ACA", "BAC", "CAA", "CAB", "CAC"),
    ("ABA", "ABB", "ACA", "BAC", "BBA", "CAB", "CAC"),
    ("ABB", "ACA", "BAC", "BBA", "BBB", "CAB", "CAC"),
    ("ABB", "ACA", "BAB", "BAC", "BBA", "BBB", "CAB"),
    ("ABA", "ABB", "ACA", "BAB", "BAC", "BBA", "CAB"),
    ("AAC", "ABA", "ACA", "BAB", "BAC", "CAA", "CAB"),
    ("AAB", "AAC", "ABA", "ACA", "BAA", "BAB", "CAA"),
    ("AAA", "AAB", "AAC", "ABA", "ACA", "BAA", "CAA"),
)


@dataclass(frozen=True)
class CheckResult:
    name: str
    ok: bool
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        return f"{status} {self.name}" + (f": {self.detail}" if self.detail else "")


def _check(name: str, ok: bool, detail: str = "") -> CheckResult:
    return CheckResult(name, bool(ok), detail)


def _some(items) -> str:
    return str(items) if items else ""


def suite_paper_table(max_n: Optional[int] = None) -> list[CheckResult]:
    """Exact counts for lengths 1..10 within the runtime budget."""
    top = min(max_n or 10, 10)
    started = time.monotonic()
    counts = [triet.count_factors(n) for n in range(1, top + 1)]
    elapsed = time.monotonic() - started
    out = []
    for n, count in enumerate(counts, start=1):
        out.append(
            _check(
                f"count length {n}",
                count == REFERENCE_COUNTS[n - 1],
                f"{count} (expected {REFERENCE_COUNTS[n - 1]})",
            )
        )
    out.append(_check("table runtime <= 60 s", elapsed <= 60, f"{elapsed:.1f} s"))
    return out


def suite_sets(max_n: Optional[int] = None) -> list[CheckResult]:
    """Explicit factor sets for lengths 2 and 3."""
    got2 = set(triet.enumerate_factors(2))
    all3 = {a + b + c for a in "ABC" for b in "ABC" for c in "ABC"}
    got3 = set(triet.enumerate_factors(3))
    return [
        _check("set of length 2", got2 == REFERENCE_SET_LEN2, f"{len(got2)} words"),
        _check("set of length 3", got3 == all3 - {"ABC", "CBA"}, f"{len(got3)} words"),
    ]


def suite_sturmian_count(max_n: Optional[int] = None) -> list[CheckResult]:
    """Enumerated binary factor sets match the closed-form count."""
    top = max_n or 60
    started = time.monotonic()
    bad = [
        m
        for m in range(0, top + 1)
        if len(sturmian.all_factors(m)) != sturmian.lipatov(m)
    ]
    elapsed = time.monotonic() - started
    return [
        _check(
            f"set size equals closed form for all M <= {top}",
            not bad,
            f"mismatches at {bad}" if bad else "exact",
        ),
        _check("count runtime <= 30 s", elapsed <= 30, f"{elapsed:.1f} s"),
    ]


def suite_classes(max_n: Optional[int] = None) -> list[CheckResult]:
    """Class cardinality M + 1 and the exact intersection size."""
    top = max_n or 30
    size_bad, inter_bad = [], []
    for m in range(1, top + 1):
        for i in range(sturmian.class_count(m)):
            cls = sturmian.class_factors(m, i)
            if len(cls.factors) != m + 1:
                size_bad.append((m, i))
            expected = cls.left.denominator + cls.right.denominator - m - 1
            if cls.intersection_size != expected:
                inter_bad.append((m, i))
    return [
        _check(f"every class up to order {top} has M+1 factors", not size_bad, _some(size_bad)),
        _check(
            f"intersection size q_i + q_(i+1) - M - 1 up to order {top}",
            not inter_bad,
            _some(inter_bad),
        ),
    ]


def suite_letter_bounds(max_n: Optional[int] = None) -> list[CheckResult]:
    """Zero-count bounds hold for every factor of every class."""
    top = max_n or 20
    try:
        for m in range(1, top + 1):
            for i in range(sturmian.class_count(m)):
                sturmian.letter_bounds(m, i, verify=True)
    except AssertionError as exc:
        return [_check(f"letter bounds up to order {top}", False, str(exc))]
    return [_check(f"letter bounds up to order {top}", True, "exhaustive")]


def suite_pair_identity(max_n: Optional[int] = None) -> list[CheckResult]:
    """Pair-scan totals equal the enumeration counts (two independent paths)."""
    top = min(max_n or 7, 12)
    out = []
    for n in range(0, top + 1):
        total = sum(amicable.count_pairs(n + b, b) for b in range(n + 1))
        direct = triet.count_factors(n)
        out.append(
            _check(
                f"pair-sum identity at length {n}",
                total == direct,
                f"pairs {total}, enumeration {direct}",
            )
        )
    by_b_ok = True
    for n in range(0, min(top, 7) + 1):
        direct = triet.count_by_b(n)
        for b in range(n + 1):
            if amicable.count_pairs(n + b, b) != direct.get(b, 0):
                by_b_ok = False
    out.append(_check("per-b pair counts match the enumeration partition", by_b_ok))
    return out


def suite_pair_bounds(max_n: Optional[int] = None) -> list[CheckResult]:
    """Per-class pair bound M - b (for b >= 1) and the admissible-count cap."""
    top = max_n or 12
    try:
        for m in range(1, top + 1):
            for b in range(m // 2 + 1):
                amicable.z_count(m, b, verify=True)
                for i in range(sturmian.class_count(m)):
                    amicable.class_pair_count(m, i, b, verify=True)
    except AssertionError as exc:
        return [_check(f"pair bounds up to order {top}", False, str(exc))]
    degenerate_ok = all(
        amicable.class_pair_count(m, i, 0) == m + 1
        for m in range(1, min(top, 8) + 1)
        for i in range(sturmian.class_count(m))
    )
    return [
        _check(f"pair bounds up to order {top}", True, "exhaustive for b >= 1"),
        _check(
            "degenerate b = 0 pairs per class equal M + 1 recolorings",
            degenerate_ok,
        ),
    ]


def _region_sets(length: int) -> list[frozenset[str]]:
    return [frozenset(r.factor_list) for r in atlas.subdivide(length)]


def suite_atlas(max_n: Optional[int] = None) -> list[CheckResult]:
    """Atlas against enumeration, tabulated boundary lines and region lists."""
    top = max_n or 6
    out = []
    for n in range(1, top + 1):
        union = atlas.union_factors(atlas.subdivide(n))
        direct = set(triet.enumerate_factors(n))
        out.append(
            _check(
                f"atlas union equals enumeration at length {n}",
                union == direct,
                f"{len(union)} vs {len(direct)} words",
            )
        )
    built = atlas.build_atlas(2)
    got_lines = {(ln.a, ln.b, ln.c) for ln in built.lines}
    out.append(
        _check(
            "three boundary lines at length 2",
            got_lines == set(REFERENCE_LINES_LEN2),
            str(sorted(got_lines)),
        )
    )
    region_sets2 = _region_sets(2)
    out.append(_check("four regions at length 2", len(region_sets2) == 4, f"{len(region_sets2)} regions"))
    for ref in REFERENCE_REGIONS_LEN2:
        out.append(
            _check(
                f"length-2 region list {{{' '.join(ref)}}} present",
                frozenset(ref) in region_sets2,
            )
        )
    printed4 = frozenset(REFERENCE_REGION4_LEN2_PRINTED)
    expected4 = frozenset(REFERENCE_REGION4_LEN2_EXPECTED)
    out.append(
        _check(
            "fourth length-2 region (flagged reference discrepancy)",
            expected4 in region_sets2 and printed4 not in region_sets2,
            "reference list repeats AC and omits CA; computed region holds "
            + " ".join(sorted(expected4)),
        )
    )
    region_sets3 = _region_sets(3)
    out.append(
        _check("sixteen regions at length 3", len(region_sets3) == 16, f"{len(region_sets3)} regions")
    )
    for k, ref in enumerate(REFERENCE_REGIONS_LEN3, start=1):
        out.append(
            _check(f"length-3 region list {k} present", frozenset(ref) in region_sets3)
        )
    mirrored = {frozenset(triet.mirror(w) for w in s) for s in region_sets3}
    out.append(
        _check("length-3 region lists closed under A<->C", mirrored == set(region_sets3))
    )
    return out


def suite_ratios(max_n: Optional[int] = None) -> list[CheckResult]:
    """Displayed ratios match the tabulated row at three significant figures."""
    top = min(max_n or 10, 10)
    rows = analysis.bounds_table(top)
    out = []
    for row in rows:
        out.append(
            _check(
                f"ratio at length {row.n}",
                row.ratio_3sf == REFERENCE_RATIOS[row.n - 1],
                f"{row.ratio_3sf} (expected {REFERENCE_RATIOS[row.n - 1]})",
            )
        )
    return out


def suite_reports(max_n: Optional[int] = None) -> list[CheckResult]:
    """Report generation: constants displayed, both sides exact."""
    top = max_n or 10
    rows = analysis.bounds_table(min(top, 10))
    consts_ok = all(
        row.lower_const == Fraction(17, 48) and row.upper_const == 2 for row in rows
    )
    out = [_check("bounds rows carry the constants 17/48 and 2", consts_ok)]
    reports = [analysis.prop_lower_report(n) for n in range(0, min(top, 10) + 1)]
    exact_ok = all(isinstance(r.lhs, int) and isinstance(r.rhs, int) for r in reports)
    out.append(_check("doubled tail-count report generated exactly", exact_ok))
    small = {r.n: r.holds for r in reports}
    out.append(
        _check(
            "small-length failures recorded, not asserted",
            small.get(0) is False and small.get(1) is False and small.get(2) is False,
            str([(r.n, r.lhs, r.rhs) for r in reports[:3]]),
        )
    )
    return out


def _random_params(rng: random.Random) -> triet.IetParams:
    while True:
        d = rng.choice((2, 3, 5, 6, 7, 10, 11, 13))
        b = rng.choice((-2, -1, 1, 2))
        c = rng.randrange(3, 40)
        root = d ** 0.5
        lo, hi = -b * root, c - b * root
        if hi < lo:
            lo, hi = hi, lo
        candidates = [a for a in range(int(lo) - 1, int(hi) + 2) if lo < a < hi]
        if not candidates:
            continue
        eps = QuadraticReal(rng.choice(candidates), b, c, d)
        if not (Fraction(0) < eps < Fraction(1)) or eps.is_rational:
            continue
        feps = float(eps)
        low = max(feps, 1 - feps)
        ell = Fraction(round((low + 1) / 2 * 128), 128)
        try:
            x0 = ell * Fraction(rng.randrange(0, 8), 8)
            return triet.IetParams(eps, QuadraticReal.from_rational(ell), QuadraticReal.from_rational(x0))
        except ValueError:
            continue


def suite_properties(max_n: Optional[int] = None) -> list[CheckResult]:
    """Structural properties of the enumerated sets and the morphism pair."""
    out = []
    closed_bad = []
    for n in range(1, 9):
        prev = set(triet.enumerate_factors(n - 1))
        for w in triet.enumerate_factors(n):
            if w[:-1] not in prev or w[1:] not in prev:
                closed_bad.append(w)
    out.append(_check("factor-closedness up to length 8", not closed_bad, _some(closed_bad[:5])))

    mirror_bad = []
    for n in range(1, 11):
        words = set(triet.enumerate_factors(n))
        if {triet.mirror(w) for w in words} != words:
            mirror_bad.append(n)
    out.append(_check("A<->C closure up to length 10", not mirror_bad, _some(mirror_bad)))

    rng = random.Random(20260809)
    orbit_ok = True
    detail = ""
    for _ in range(20):
        params = _random_params(rng)
        coded = triet.code_orbit(params, 60)
        for k in range(1, 9):
            for i in range(len(coded) - k + 1):
                if not triet.is_factor(coded[i : i + k]):
                    orbit_ok = False
                    detail = f"window {coded[i:i + k]} of {params}"
    out.append(_check("orbit windows (20 random parameter triples)", orbit_ok, detail))

    round_bad = []
    for n in range(0, 8):
        for w in triet.enumerate_factors(n):
            if amicable.merge(amicable.sigma01(w), amicable.sigma10(w)) != w:
                round_bad.append(w)
    out.append(_check("morphism round trip up to length 7", not round_bad, _some(round_bad[:5])))

    wit_bad = []
    for n in range(0, 7):
        for w in triet.enumerate_factors(n):
            cert = triet.witness(w)
            if cert is None:
                wit_bad.append(w)
                continue
            eps, ell, x = cert.sample
            if not triet.word_constraints(w).holds_at(eps, ell, x):
                wit_bad.append(w)
    out.append(_check("witness samples satisfy their systems up to length 6", not wit_bad, _some(wit_bad[:5])))
    return out


SUITES: dict[str, Callable[[Optional[int]], list[CheckResult]]] = {
    "paper-table": suite_paper_table,
    "sets": suite_sets,
    "sturmian-count": suite_sturmian_count,
    "classes": suite_classes,
    "letter-bounds": suite_letter_bounds,
    "pair-identity": suite_pair_identity,
    "pair-bounds": suite_pair_bounds,
    "atlas": suite_atlas,
    "ratios": suite_ratios,
    "reports": suite_reports,
    "properties": suite_properties,
}


def run_suite(name: str, max_n: Optional[int] = None) -> list[CheckResult]:
    if name == "all":
        results = []
        for suite in SUITES.values():
            results.extend(suite(max_n))
        return results
    suite = SUITES.get(name)
    if suite is None:
        raise ValueError(f"unknown suite {name!r}; choose from {sorted(SUITES)} or 'all'")
    return suite(max_n)
