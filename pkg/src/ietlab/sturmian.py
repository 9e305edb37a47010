"""Two-interval machinery: mechanical words, Farey sequences, periodic
codings of rational rotations, class factor sets, and exact counting."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

BinaryWord = str
FareyFraction = Fraction


def mechanical_word(alpha, beta, n: int, variant: str = "lower") -> str:
    """Length-n mechanical word: successive floor (or ceiling) differences
    of k*alpha + beta."""
    alpha, beta = Fraction(alpha), Fraction(beta)
    if not 0 <= alpha <= 1:
        raise ValueError("alpha must lie in [0, 1]")
    if not 0 <= beta < 1:
        raise ValueError("beta must lie in [0, 1)")
    if n < 0:
        raise ValueError("length must be non-negative")
    if variant == "lower":
        step = math.floor
    elif variant == "upper":
        step = math.ceil
    else:
        raise ValueError(f"unknown variant {variant!r}")
    prev = step(beta)
    out = []
    for k in range(1, n + 1):
        cur = step(k * alpha + beta)
        out.append(str(cur - prev))
        prev = cur
    return "".join(out)


def farey(order: int) -> list[Fraction]:
    """All reduced fractions in [0, 1] with denominator <= order, increasing."""
    if order < 1:
        raise ValueError("order must be >= 1")
    a, b, c, d = 0, 1, 1, order
    out = [Fraction(0, 1)]
    while c <= order:
        k = (order + b) // d
        a, b, c, d = c, d, k * c - a, k * d - b
        out.append(Fraction(a, b))
    return out


def class_count(order: int) -> int:
    return len(farey(order)) - 1


@lru_cache(maxsize=None)
def periodic_coding(f: Fraction) -> str:
    """Primitive coding word of the orbit of 0 under the two-interval
    exchange with rational left-interval length f = p/q.

    The endpoints degenerate gracefully: 0/1 gives "1" and 1/1 gives "0".
    """
    f = Fraction(f)
    if not 0 <= f <= 1:
        raise ValueError("fraction must lie in [0, 1]")
    x = Fraction(0)
    out = []
    for _ in range(f.denominator):
        if x < f:
            out.append("0")
            x = x + 1 - f
        else:
            out.append("1")
            x = x - f
    return "".join(out)


def _cyclic_factors(word: str, length: int) -> frozenset[str]:
    """Length-``length`` factors of the periodic repetition of ``word``."""
    if length == 0:
        return frozenset({""})
    tiled = word * (length // len(word) + 2)
    return frozenset(tiled[i : i + length] for i in range(len(word)))


@dataclass(frozen=True)
class SturmianClass:
    """Factor set shared by all parameters between two consecutive Farey
    fractions of the given order."""

    order: int
    left: Fraction
    right: Fraction
    factors: frozenset[str]

    @property
    def intersection_size(self) -> int:
        left_side = _cyclic_factors(periodic_coding(self.left), self.order)
        return len(left_side & _cyclic_factors(periodic_coding(self.right), self.order))


def class_factors(order: int, index: int) -> SturmianClass:
    """Class number ``index``: union of the cyclic factor sets of the two
    bounding periodic codings; always order + 1 words."""
    seq = farey(order)
    if not 0 <= index <= len(seq) - 2:
        raise IndexError(f"class index {index} out of range for order {order}")
    left, right = seq[index], seq[index + 1]
    factors = _cyclic_factors(periodic_coding(left), order) | _cyclic_factors(
        periodic_coding(right), order
    )
    return SturmianClass(order, left, right, factors)


@lru_cache(maxsize=None)
def all_factors(order: int) -> frozenset[str]:
    """Every binary word of the given length realized by some class."""
    if order < 0:
        raise ValueError("order must be non-negative")
    if order == 0:
        return frozenset({""})
    out: set[str] = set()
    for f in farey(order):
        out |= _cyclic_factors(periodic_coding(f), order)
    return frozenset(out)


def _totients_up_to(n: int) -> list[int]:
    phi = list(range(n + 1))
    for p in range(2, n + 1):
        if phi[p] == p:  # p prime
            for m in range(p, n + 1, p):
                phi[m] -= phi[m] // p
    return phi


def lipatov(order: int) -> int:
    """Closed-form count of the words in all_factors(order)."""
    if order < 0:
        raise ValueError("order must be non-negative")
    phi = _totients_up_to(order)
    return 1 + sum((order + 1 - k) * phi[k] for k in range(1, order + 1))


def is_sturmian_factor(word: str) -> bool:
    if any(ch not in "01" for ch in word):
        raise ValueError("word must be over alphabet {0, 1}")
    return word in all_factors(len(word))


def is_balanced(word: str) -> bool:
    """Balance check: ones-counts of equal-length windows differ by at most 1.
    Independent of the class enumeration; used as a cross-check oracle."""
    n = len(word)
    ones = [0] * (n + 1)
    for i, ch in enumerate(word):
        ones[i + 1] = ones[i] + (ch == "1")
    for k in range(1, n):
        counts = [ones[i + k] - ones[i] for i in range(n - k + 1)]
        if max(counts) - min(counts) > 1:
            return False
    return True


def letter_bounds(order: int, index: int, verify: bool = False) -> tuple[int, int]:
    """The two admissible zero-counts for factors of a class: floor(M*f) and
    floor(M*f) + 1 for the class's left fraction f."""
    seq = farey(order)
    if not 0 <= index <= len(seq) - 2:
        raise IndexError(f"class index {index} out of range for order {order}")
    f = seq[index]
    low = (order * f.numerator) // f.denominator
    bounds = (low, low + 1)
    if verify:
        for w in class_factors(order, index).factors:
            zeros = w.count("0")
            if zeros not in bounds:
                raise AssertionError(
                    f"factor {w} of class {index} (order {order}) has {zeros} zeros, "
                    f"outside {bounds}"
                )
    return bounds


def h_count(order: int, min_ones: int) -> int:
    """Number of length-``order`` factors with at least ``min_ones`` ones."""
    if order < 0 or min_ones < 0:
        raise ValueError("arguments must be non-negative")
    return sum(1 for w in all_factors(order) if w.count("1") >= min_ones)
