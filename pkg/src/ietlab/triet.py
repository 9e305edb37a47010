"""Three-interval machinery: the exchange transformation, exact orbit
coding, the strict-feasibility factor test, and the pruned enumeration /
counting engine for ternary factor sets."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .exact import (
    AffineForm,
    Constraint,
    IDX_ELL,
    IDX_EPS,
    IDX_X,
    Interval,
    QuadraticReal,
    Row,
    StrictSystem,
    coerce_exact,
    eliminate_rows,
    project_rows_to_eps,
    substitute_rows,
    univariate_interval,
)

ALPHABET = "ABC"
TernaryWord = str

_MIRROR = str.maketrans("AC", "CA")


class EnumerationLimitError(RuntimeError):
    """Raised when enumeration would exceed a configured resource limit."""


def mirror(word: str) -> str:
    """Interchange the letters A and C."""
    return word.translate(_MIRROR)


@dataclass(frozen=True)
class IetParams:
    """Validated parameter triple for the exchange of three intervals:
    eps irrational in (0, 1), max(eps, 1 - eps) < ell < 1, 0 <= x0 < ell."""

    epsilon: QuadraticReal
    ell: QuadraticReal
    x0: QuadraticReal

    def __post_init__(self):
        eps = coerce_exact(self.epsilon)
        ell = coerce_exact(self.ell)
        x0 = coerce_exact(self.x0)
        if eps is None or ell is None or x0 is None:
            raise TypeError("parameters must be exact numbers")
        object.__setattr__(self, "epsilon", eps)
        object.__setattr__(self, "ell", ell)
        object.__setattr__(self, "x0", x0)
        if not (Fraction(0) < eps and eps < Fraction(1)):
            raise ValueError("epsilon must lie in (0, 1)")
        if not eps.is_irrational:
            raise ValueError("epsilon must be irrational")
        one_minus = -eps + 1
        if not (ell > eps and ell > one_minus and ell < Fraction(1)):
            raise ValueError("ell must satisfy max(eps, 1 - eps) < ell < 1")
        if not (x0 >= Fraction(0) and x0 < ell):
            raise ValueError("x0 must lie in [0, ell)")

    @property
    def d1(self) -> QuadraticReal:
        return self.epsilon

    @property
    def d2(self) -> QuadraticReal:
        return self.ell + self.epsilon - 1


def _letter(params: IetParams, x) -> str:
    if x < params.d2:
        return "A"
    if x < params.epsilon:
        return "B"
    return "C"


def transform(params: IetParams, x):
    """One application of the exchange; exact branch selection."""
    x = coerce_exact(x)
    if x is None:
        raise TypeError("x must be an exact number")
    if x < Fraction(0) or x >= params.ell:
        raise ValueError("x out of domain")
    letter = _letter(params, x)
    if letter == "A":
        return x + (1 - params.epsilon)
    if letter == "B":
        return x + (1 - 2 * params.epsilon)
    return x - params.epsilon


def code_orbit(params: IetParams, n: int) -> str:
    """First n letters of the orbit coding started at x0."""
    if n < 0:
        raise ValueError("length must be non-negative")
    x = params.x0
    out = []
    for _ in range(n):
        out.append(_letter(params, x))
        x = transform(params, x)
    return "".join(out)


# ---------------------------------------------------------------------------
# Feasibility of a ternary word as an orbit coding
# ---------------------------------------------------------------------------

# Parameter box: eps > 0, 1 - eps > 0, ell - eps > 0, ell - (1 - eps) > 0,
# 1 - ell > 0, x >= 0.  Rows are (c0, ce, cl, cx, strict).
_BOX_ROWS: tuple[Row, ...] = (
    (0, 1, 0, 0, True),
    (1, -1, 0, 0, True),
    (0, -1, 1, 0, True),
    (-1, 1, 1, 0, True),
    (1, 0, -1, 0, True),
    (0, 0, 0, 1, False),
)


def _word_rows(word: str) -> list[Row]:
    """Constraint rows placing every orbit point of the word in its letter's
    half-open interval (lower bounds non-strict, upper bounds strict).

    After j steps the orbit point is x + (a + b) - (a + 2b + c)*eps where
    a, b, c count the letters A, B, C seen so far.
    """
    rows = list(_BOX_ROWS)
    a = b = c = 0
    for ch in word:
        p0, pe = a + b, -(a + 2 * b + c)  # orbit point: p0 + pe*eps + x
        if ch == "A":
            # 0 <= point < ell - 1 + eps
            rows.append((p0, pe, 0, 1, False))
            rows.append((-1 - p0, 1 - pe, 1, -1, True))
            a += 1
        elif ch == "B":
            # ell - 1 + eps <= point < eps
            rows.append((p0 + 1, pe - 1, -1, 1, False))
            rows.append((-p0, 1 - pe, 0, -1, True))
            b += 1
        elif ch == "C":
            # eps <= point < ell
            rows.append((p0, pe - 1, 0, 1, False))
            rows.append((-p0, -pe, 1, -1, True))
            c += 1
        else:
            raise ValueError(f"invalid letter {ch!r}; alphabet is ABC")
    return rows


def word_constraints(word: str) -> StrictSystem:
    """The full membership system of a word, as an inspectable object."""
    cons = []
    for c0, ce, cl, cx, strict in _word_rows(word):
        cons.append(Constraint(AffineForm(c0, ce, cl, cx), strict))
    return StrictSystem(tuple(cons))


_EPS_INTERVAL_CACHE: dict[str, Interval] = {}


def epsilon_interval(word: str) -> Interval:
    """Exact projection of the word's system onto the eps axis."""
    cached = _EPS_INTERVAL_CACHE.get(word)
    if cached is None:
        cached = project_rows_to_eps(_word_rows(word))
        _EPS_INTERVAL_CACHE[word] = cached
    return cached


def is_factor(word: str) -> bool:
    """True iff the word occurs in some coding orbit.

    The criterion is a positive-length eps projection: the projection has
    rational endpoints, so a degenerate projection pins eps to a rational,
    which the parameter constraints exclude; a positive-length interval
    contains irrational eps, and projection exactness supplies ell and x.
    """
    return epsilon_interval(word).positive_length


@dataclass(frozen=True)
class FactorWitness:
    """Certificate that a word is realizable: the exact eps projection, a
    rational interior sample, and its safety margin.

    ``min_slack`` is the distance from the sample's eps to the nearest
    endpoint of the projection interval, so any irrational eps closer to the
    sample than min_slack extends to full parameters realizing the word.
    """

    word: str
    epsilon_interval: Interval
    sample: tuple[Fraction, Fraction, Fraction]
    min_slack: Fraction


def witness(word: str) -> Optional[FactorWitness]:
    """Witness for a factor, or None when the word is not realizable."""
    interval = epsilon_interval(word)
    if not interval.positive_length:
        return None
    rows = _word_rows(word)
    r1 = eliminate_rows(rows, IDX_X)
    assert r1 is not None
    eps = interval.midpoint()
    ell = univariate_interval(substitute_rows(r1, IDX_EPS, eps), IDX_ELL).midpoint()
    assert ell is not None
    rows_x = substitute_rows(substitute_rows(rows, IDX_EPS, eps), IDX_ELL, ell)
    x = univariate_interval(rows_x, IDX_X).midpoint()
    assert x is not None
    slack = min(eps - interval.lo, interval.hi - eps)
    return FactorWitness(word, interval, (eps, ell, x), slack)


# ---------------------------------------------------------------------------
# Enumeration: depth-first extension of feasible prefixes
# ---------------------------------------------------------------------------


def _complete(prefix: str, length: int, counter: Optional[list], limit: Optional[int]) -> list[str]:
    out = []
    stack = [prefix]
    while stack:
        w = stack.pop()
        if len(w) == length:
            out.append(w)
            if limit is not None and counter is not None:
                counter[0] += 1
                if counter[0] > limit:
                    raise EnumerationLimitError(
                        f"resource limit exceeded: more than {limit} words of length {length}"
                    )
            continue
        for ch in ALPHABET:
            child = w + ch
            if is_factor(child):
                stack.append(child)
    return out


def _subtree_job(args: tuple[str, int, Optional[int]]) -> list[str]:
    prefix, length, limit = args
    return _complete(prefix, length, [0], limit)


def enumerate_factors(
    length: int, workers: int = 1, limit: Optional[int] = None
) -> list[str]:
    """All realizable words of the given length, sorted A < B < C.

    Depth-first extension of feasible prefixes; pruning is sound because
    every subword of a realizable word is realizable.  The result does not
    depend on the worker count.  A configured ``limit`` on the number of
    enumerated words aborts with EnumerationLimitError, never silently.
    """
    if length < 0:
        raise ValueError("length must be non-negative")
    if not is_factor(""):
        return []
    seed_depth = 2
    if workers <= 1 or length <= seed_depth:
        words = _complete("", length, [0], limit)
        return sorted(words)
    seeds = enumerate_factors(seed_depth)
    jobs = [(seed, length, limit) for seed in seeds]
    words: list[str] = []
    with ProcessPoolExecutor(max_workers=workers) as pool:
        for chunk in pool.map(_subtree_job, jobs):
            words.extend(chunk)
    if limit is not None and len(words) > limit:
        raise EnumerationLimitError(
            f"resource limit exceeded: more than {limit} words of length {length}"
        )
    return sorted(words)


def count_factors(length: int, workers: int = 1, limit: Optional[int] = None) -> int:
    return len(enumerate_factors(length, workers=workers, limit=limit))


def count_by_b(length: int) -> dict[int, int]:
    """Partition of the length-N count by the number of letters B."""
    counts: dict[int, int] = {}
    for w in enumerate_factors(length):
        b = w.count("B")
        counts[b] = counts.get(b, 0) + 1
    return dict(sorted(counts.items()))
