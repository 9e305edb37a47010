"""Morphisms between the ternary and binary alphabets, deterministic pair
merging, amicability tests, and pair counting (global and per class)."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

from . import sturmian, triet

_SIGMA01 = {"A": "0", "B": "01", "C": "1"}
_SIGMA10 = {"A": "0", "B": "10", "C": "1"}


def _apply(table: dict[str, str], word: str) -> str:
    try:
        return "".join(table[ch] for ch in word)
    except KeyError as exc:
        raise ValueError(f"invalid letter {exc.args[0]!r}; alphabet is ABC") from exc


def sigma01(word: str) -> str:
    """A -> 0, B -> 01, C -> 1."""
    return _apply(_SIGMA01, word)


def sigma10(word: str) -> str:
    """A -> 0, B -> 10, C -> 1."""
    return _apply(_SIGMA10, word)


def merge(w1: str, w2: str) -> Optional[str]:
    """The unique ternary word mapping to (w1, w2) under the two morphisms,
    or None when no such word exists.

    Deterministic scan: aligned (0,0) reads A, (1,1) reads C, (0,1) must open
    a B block consuming "01" from w1 and "10" from w2, and (1,0) cannot start
    any letter image.
    """
    if len(w1) != len(w2):
        raise ValueError("length mismatch")
    n = len(w1)
    out = []
    i = 0
    while i < n:
        x, y = w1[i], w2[i]
        if x == "0" and y == "0":
            out.append("A")
            i += 1
        elif x == "1" and y == "1":
            out.append("C")
            i += 1
        elif x == "0" and y == "1":
            if i + 1 < n and w1[i + 1] == "1" and w2[i + 1] == "0":
                out.append("B")
                i += 2
            else:
                return None
        else:
            return None
    return "".join(out)


def is_b_amicable(w1: str, w2: str, b: int) -> bool:
    """True iff the pair merges to a realizable ternary word with exactly b
    letters B."""
    merged = merge(w1, w2)
    if merged is None or merged.count("B") != b:
        return False
    return triet.is_factor(merged)


@dataclass(frozen=True)
class AmicablePair:
    w1: str
    w2: str
    merged: str
    b: int

    @classmethod
    def from_factor(cls, word: str) -> "AmicablePair":
        if not triet.is_factor(word):
            raise ValueError(f"{word!r} is not a realizable ternary word")
        return cls(sigma01(word), sigma10(word), word, word.count("B"))


@lru_cache(maxsize=None)
def pair_counts_by_b(length: int) -> dict[int, int]:
    """Scan all ordered pairs of binary factors of one length; bucket the
    amicable ones by the B-count of the merged word."""
    factors = sorted(sturmian.all_factors(length))
    counts: dict[int, int] = {}
    for w1 in factors:
        for w2 in factors:
            merged = merge(w1, w2)
            if merged is not None and triet.is_factor(merged):
                b = merged.count("B")
                counts[b] = counts.get(b, 0) + 1
    return dict(sorted(counts.items()))


def count_pairs(length: int, b: int) -> int:
    """Number of ordered b-amicable pairs of the given length, computed by
    the pair scan (independent of the enumeration engine)."""
    if not length >= b >= 0:
        raise ValueError("need length >= b >= 0")
    return pair_counts_by_b(length).get(b, 0)


def class_pair_count(length: int, index: int, b: int, verify: bool = False) -> int:
    """Number of b-amicable pairs with both components in one class; with
    verify=True asserts the count never exceeds length - b.

    The bound is a statement about b >= 1.  At b = 0 the pairs are the
    degenerate (w, w) recolorings 0 -> A, 1 -> C, every one of which is
    realizable, so each class holds exactly length + 1 of them and the
    verification is skipped.
    """
    if 2 * b > length:
        raise ValueError("need 2*b <= length")
    factors = sorted(sturmian.class_factors(length, index).factors)
    count = 0
    for w1 in factors:
        for w2 in factors:
            if is_b_amicable(w1, w2, b):
                count += 1
    if verify and b >= 1 and count > length - b:
        raise AssertionError(
            f"class {index} of order {length} holds {count} {b}-amicable pairs, "
            f"above the bound {length - b}"
        )
    return count


def z_count(length: int, b: int, verify: bool = False) -> int:
    """Number of classes of the given order containing at least one
    b-amicable pair; with verify=True asserts the letter-count bound
    b <= min(floor(M*f) + 1, M - floor(M*f)) for every counted class."""
    if length < 1:
        raise ValueError("length must be >= 1")
    if 2 * b > length:
        return 0
    count = 0
    for index in range(sturmian.class_count(length)):
        if class_pair_count(length, index, b) >= 1:
            count += 1
            if verify:
                low, _ = sturmian.letter_bounds(length, index)
                floor_mf = low
                cap = min(floor_mf + 1, length - floor_mf)
                if b > cap:
                    raise AssertionError(
                        f"class {index} of order {length} holds a {b}-amicable pair "
                        f"but the admissible-count cap is {cap}"
                    )
    return count
