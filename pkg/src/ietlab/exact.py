"""Exact arithmetic substrate.

Arbitrary-precision rationals (stdlib ``Fraction``), quadratic irrationals
``(a + b*sqrt(d))/c`` with exact total comparison, affine forms in the three
parameter variables ``eps``, ``ell``, ``x``, and feasibility of conjunctions
of strict / non-strict linear inequalities by Fourier-Motzkin elimination.
No floating point enters any comparison or projection.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Union

Rational = Fraction

#: variable -> coefficient slot inside a row tuple (c0, ce, cl, cx, strict)
VAR_SLOT = {"eps": 1, "ell": 2, "x": 3}

IDX_EPS, IDX_ELL, IDX_X = 1, 2, 3


def _sqfree(n: int) -> tuple[int, int]:
    """Split n >= 0 as s*s*r with r square-free; return (s, r)."""
    if n in (0, 1):
        return 1, n
    s, r, m, p = 1, 1, n, 2
    while p * p <= m:
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            s *= p ** (e // 2)
            if e % 2:
                r *= p
        p += 1 if p == 2 else 2
    if m > 1:
        r *= m
    return s, r


class QuadraticReal:
    """Exact real number of the form (a + b*sqrt(d))/c.

    Canonical form: c > 0, d square-free, gcd(a, b, c) = 1, and d in {0, 1}
    collapses into the rational part (so ``b == 0`` iff the value is
    rational).  Values sharing one radicand, or with at least one rational
    side, compare exactly; comparing two irrationals with distinct radicands
    raises ``ValueError("incomparable radicands")``.
    """

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a: int, b: int = 0, c: int = 1, d: int = 0):
        if c == 0:
            raise ZeroDivisionError("zero denominator")
        if d < 0:
            raise ValueError("negative radicand")
        if c < 0:
            a, b, c = -a, -b, -c
        if b:
            s, r = _sqfree(d)
            b *= s
            d = r
        else:
            d = 0
        if d in (0, 1):
            a += b * d
            b = 0
            d = 0
        g = math.gcd(a, b, c)
        if g > 1:
            a //= g
            b //= g
            c //= g
        self.a = a
        self.b = b
        self.c = c
        self.d = d

    @classmethod
    def from_rational(cls, value: Union[int, Fraction]) -> "QuadraticReal":
        f = Fraction(value)
        return cls(f.numerator, 0, f.denominator, 0)

    @classmethod
    def sqrt(cls, d: int) -> "QuadraticReal":
        return cls(0, 1, 1, d)

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    @property
    def is_irrational(self) -> bool:
        return self.b != 0

    def as_fraction(self) -> Fraction:
        if self.b:
            raise ValueError("irrational value has no rational form")
        return Fraction(self.a, self.c)

    def sign(self) -> int:
        """Exact sign, by sign analysis and squaring."""
        a, b, d = self.a, self.b, self.d
        if b == 0:
            return (a > 0) - (a < 0)
        if a == 0:
            return (b > 0) - (b < 0)
        if a > 0 and b > 0:
            return 1
        if a < 0 and b < 0:
            return -1
        lhs, rhs = a * a, b * b * d
        if lhs == rhs:
            return 0
        return 1 if (a > 0) == (lhs > rhs) else -1

    # -- arithmetic (closed for a single radicand mixed with rationals) --

    def _binary(self, other, mul: bool):
        other = coerce_exact(other)
        if other is None:
            return None
        if self.b and other.b and self.d != other.d:
            raise ValueError("incomparable radicands")
        d = self.d or other.d
        a1, b1 = Fraction(self.a, self.c), Fraction(self.b, self.c)
        a2, b2 = Fraction(other.a, other.c), Fraction(other.b, other.c)
        if mul:
            ra = a1 * a2 + b1 * b2 * d
            rb = a1 * b2 + a2 * b1
        else:
            ra, rb = a1 + a2, b1 + b2
        den = math.lcm(ra.denominator, rb.denominator)
        return QuadraticReal(
            ra.numerator * (den // ra.denominator),
            rb.numerator * (den // rb.denominator),
            den,
            d,
        )

    def __add__(self, other):
        out = self._binary(other, mul=False)
        return NotImplemented if out is None else out

    __radd__ = __add__

    def __neg__(self):
        return QuadraticReal(-self.a, -self.b, self.c, self.d)

    def __sub__(self, other):
        other = coerce_exact(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = coerce_exact(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        out = self._binary(other, mul=True)
        return NotImplemented if out is None else out

    __rmul__ = __mul__

    # -- exact total order --

    def _cmp(self, other) -> int:
        other = coerce_exact(other)
        if other is None:
            raise TypeError(f"cannot compare QuadraticReal with {type(other)!r}")
        return (self - other).sign()

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __eq__(self, other):
        other = coerce_exact(other)
        if other is None:
            return NotImplemented
        return (self.a, self.b, self.c, self.d) == (other.a, other.b, other.c, other.d)

    def __hash__(self):
        if self.b == 0:
            return hash(Fraction(self.a, self.c))
        return hash((self.a, self.b, self.c, self.d))

    def __bool__(self):
        return self.sign() != 0

    def __float__(self):
        return (self.a + self.b * math.sqrt(self.d)) / self.c

    def __str__(self):
        return format_exact(self)

    def __repr__(self):
        return f"QuadraticReal(a={self.a}, b={self.b}, c={self.c}, d={self.d})"


def coerce_exact(value) -> Optional[QuadraticReal]:
    """Coerce int / Fraction / QuadraticReal to QuadraticReal, else None."""
    if isinstance(value, QuadraticReal):
        return value
    if isinstance(value, (int, Fraction)):
        return QuadraticReal.from_rational(value)
    return None


def quad_cmp(u, v) -> int:
    """Exact three-way comparison; -1, 0 or +1."""
    qu = coerce_exact(u)
    if qu is None:
        raise TypeError(f"not an exact number: {u!r}")
    return qu._cmp(v)


_QUAD_RE = re.compile(
    r"^\(\s*(-?\d+)\s*([+-])\s*(\d+)\s*\*\s*sqrt\(\s*(\d+)\s*\)\s*\)\s*/\s*(-?\d+)$"
)


def parse_exact(text: str) -> QuadraticReal:
    """Parse "p/q", an integer, or "(a+b*sqrt(d))/c" with integer fields."""
    t = text.strip()
    m = _QUAD_RE.match(t)
    if m:
        a, op, b, d, c = m.groups()
        bb = int(b) if op == "+" else -int(b)
        return QuadraticReal(int(a), bb, int(c), int(d))
    try:
        return QuadraticReal.from_rational(Fraction(t))
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"cannot parse exact number {text!r}") from exc


def format_exact(value) -> str:
    """Print in the same grammar parse_exact accepts (exact round trip)."""
    v = coerce_exact(value)
    if v is None:
        raise TypeError(f"not an exact number: {value!r}")
    if v.is_rational:
        f = v.as_fraction()
        if f.denominator == 1:
            return str(f.numerator)
        return f"{f.numerator}/{f.denominator}"
    op = "+" if v.b >= 0 else "-"
    return f"({v.a}{op}{abs(v.b)}*sqrt({v.d}))/{v.c}"


# ---------------------------------------------------------------------------
# Affine forms and constraint systems over (eps, ell, x)
# ---------------------------------------------------------------------------


def _frac(v) -> Fraction:
    return v if isinstance(v, Fraction) else Fraction(v)


@dataclass(frozen=True)
class AffineForm:
    """Affine function c0 + ce*eps + cl*ell + cx*x with rational coefficients."""

    c0: Fraction = Fraction(0)
    ce: Fraction = Fraction(0)
    cl: Fraction = Fraction(0)
    cx: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "c0", _frac(self.c0))
        object.__setattr__(self, "ce", _frac(self.ce))
        object.__setattr__(self, "cl", _frac(self.cl))
        object.__setattr__(self, "cx", _frac(self.cx))

    def __add__(self, other: "AffineForm") -> "AffineForm":
        return AffineForm(
            self.c0 + other.c0, self.ce + other.ce, self.cl + other.cl, self.cx + other.cx
        )

    def __sub__(self, other: "AffineForm") -> "AffineForm":
        return AffineForm(
            self.c0 - other.c0, self.ce - other.ce, self.cl - other.cl, self.cx - other.cx
        )

    def __neg__(self) -> "AffineForm":
        return AffineForm(-self.c0, -self.ce, -self.cl, -self.cx)

    def scale(self, k) -> "AffineForm":
        k = _frac(k)
        return AffineForm(self.c0 * k, self.ce * k, self.cl * k, self.cx * k)

    __mul__ = scale
    __rmul__ = scale

    def __call__(self, eps=0, ell=0, x=0):
        """Evaluate; accepts rationals or QuadraticReal arguments."""
        value = self.c0 + self.ce * eps
        value = value + self.cl * ell
        return value + self.cx * x

    def coefficients(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return (self.c0, self.ce, self.cl, self.cx)

    def __str__(self):
        parts = []
        for coeff, name in ((self.c0, ""), (self.ce, "eps"), (self.cl, "ell"), (self.cx, "x")):
            if coeff == 0:
                continue
            mag = abs(coeff)
            txt = name if (mag == 1 and name) else (f"{mag}*{name}" if name else str(mag))
            parts.append(("- " if coeff < 0 else ("+ " if parts else "")) + txt)
        return " ".join(parts) if parts else "0"


@dataclass(frozen=True)
class Constraint:
    """A single inequality: form > 0 (strict) or form >= 0."""

    form: AffineForm
    strict: bool = True

    @property
    def relation(self) -> str:
        return ">0" if self.strict else ">=0"

    def holds_at(self, eps=0, ell=0, x=0) -> bool:
        value = self.form(eps, ell, x)
        sgn = value.sign() if isinstance(value, QuadraticReal) else ((value > 0) - (value < 0))
        return sgn > 0 if self.strict else sgn >= 0

    def __str__(self):
        return f"{self.form} {'>' if self.strict else '>='} 0"


@dataclass(frozen=True)
class Interval:
    """Interval with rational endpoints and open/closed flags.

    ``None`` endpoints mean unbounded on that side.  Construction normalizes
    impossible bounds to the canonical empty interval.
    """

    lo: Optional[Fraction] = None
    hi: Optional[Fraction] = None
    lo_open: bool = False
    hi_open: bool = False
    empty: bool = False

    def __post_init__(self):
        if self.empty:
            object.__setattr__(self, "lo", None)
            object.__setattr__(self, "hi", None)
            object.__setattr__(self, "lo_open", False)
            object.__setattr__(self, "hi_open", False)
            return
        if self.lo is not None and self.hi is not None:
            if self.lo > self.hi or (self.lo == self.hi and (self.lo_open or self.hi_open)):
                object.__setattr__(self, "empty", True)
                object.__setattr__(self, "lo", None)
                object.__setattr__(self, "hi", None)
                object.__setattr__(self, "lo_open", False)
                object.__setattr__(self, "hi_open", False)

    @classmethod
    def nothing(cls) -> "Interval":
        return cls(empty=True)

    @property
    def positive_length(self) -> bool:
        return not self.empty and (self.lo is None or self.hi is None or self.lo < self.hi)

    def contains(self, value) -> bool:
        if self.empty:
            return False
        if self.lo is not None:
            if value < self.lo or (self.lo_open and value == self.lo):
                return False
        if self.hi is not None:
            if value > self.hi or (self.hi_open and value == self.hi):
                return False
        return True

    def midpoint(self) -> Optional[Fraction]:
        """Interior rational point: midpoint, or endpoint +/- 1 when half-infinite."""
        if self.empty:
            return None
        if self.lo is None and self.hi is None:
            return Fraction(0)
        if self.lo is None:
            return self.hi - 1
        if self.hi is None:
            return self.lo + 1
        return (self.lo + self.hi) / 2

    def __str__(self):
        if self.empty:
            return "(empty)"
        left = "(" if (self.lo_open or self.lo is None) else "["
        right = ")" if (self.hi_open or self.hi is None) else "]"
        lo = "-inf" if self.lo is None else str(self.lo)
        hi = "+inf" if self.hi is None else str(self.hi)
        return f"{left}{lo}, {hi}{right}"


# ---------------------------------------------------------------------------
# Row engine: integer-normalized constraints and Fourier-Motzkin steps
# ---------------------------------------------------------------------------

# A row is (c0, ce, cl, cx, strict) with integer coefficients, understood as
# c0 + ce*eps + cl*ell + cx*x > 0 (or >= 0 when strict is False).
Row = tuple[int, int, int, int, bool]


def _normalize_row(c0: int, ce: int, cl: int, cx: int, strict: bool) -> Row:
    g = math.gcd(c0, ce, cl, cx)
    if g > 1:
        return (c0 // g, ce // g, cl // g, cx // g, strict)
    return (c0, ce, cl, cx, strict)


def row_from_constraint(con: Constraint) -> Row:
    c0, ce, cl, cx = con.form.coefficients()
    den = math.lcm(c0.denominator, ce.denominator, cl.denominator, cx.denominator)
    return _normalize_row(
        c0.numerator * (den // c0.denominator),
        ce.numerator * (den // ce.denominator),
        cl.numerator * (den // cl.denominator),
        cx.numerator * (den // cx.denominator),
        con.strict,
    )


def _constraint_from_row(row: Row) -> Constraint:
    c0, ce, cl, cx, strict = row
    return Constraint(AffineForm(c0, ce, cl, cx), strict)


def _absorb(row: Row, keep: dict) -> bool:
    """Add a row to the dominance-deduplicated pool.

    Rows sharing a direction keep only the tightest offset (strictness wins
    ties).  Constant rows are checked immediately: returns False when the row
    is an unsatisfiable constant, True otherwise.
    """
    c0, ce, cl, cx, strict = row
    if ce == 0 and cl == 0 and cx == 0:
        return c0 > 0 or (c0 == 0 and not strict)
    g = math.gcd(ce, cl, cx)
    key = (ce // g, cl // g, cx // g)
    cur = keep.get(key)
    if cur is None:
        keep[key] = (c0, g, strict)
        return True
    c0b, gb, sb = cur
    lhs, rhs = c0 * gb, c0b * g
    if lhs < rhs:
        keep[key] = (c0, g, strict)
    elif lhs == rhs and strict and not sb:
        keep[key] = (c0b, gb, True)
    return True


def _pool_rows(keep: dict) -> list[Row]:
    out = []
    for (de, dl, dx), (c0, g, strict) in keep.items():
        out.append(_normalize_row(c0, de * g, dl * g, dx * g, strict))
    return out


def eliminate_rows(rows: Iterable[Row], slot: int) -> Optional[list[Row]]:
    """One exact Fourier-Motzkin step; None signals an infeasible system.

    A combined row is strict iff either parent is strict, which makes the
    projection exact over the reals for mixedly strict systems.
    """
    pos, neg = [], []
    keep: dict = {}
    for row in rows:
        k = row[slot]
        if k > 0:
            pos.append(row)
        elif k < 0:
            neg.append(row)
        elif not _absorb(row, keep):
            return None
    for p in pos:
        kp = p[slot]
        for n in neg:
            kn = -n[slot]
            combo = (
                kn * p[0] + kp * n[0],
                kn * p[1] + kp * n[1],
                kn * p[2] + kp * n[2],
                kn * p[3] + kp * n[3],
                p[4] or n[4],
            )
            if not _absorb(combo, keep):
                return None
    return _pool_rows(keep)


def substitute_rows(rows: Iterable[Row], slot: int, value: Fraction) -> list[Row]:
    """Pin one variable to an exact rational value."""
    num, den = value.numerator, value.denominator
    out = []
    for row in rows:
        k = row[slot]
        if k == 0:
            out.append(row)
            continue
        scaled = [row[0] * den, row[1] * den, row[2] * den, row[3] * den]
        scaled[0] += k * num
        scaled[slot] = 0
        out.append(_normalize_row(scaled[0], scaled[1], scaled[2], scaled[3], row[4]))
    return out


def univariate_interval(rows: Iterable[Row], slot: int) -> Interval:
    """Solution interval of rows that involve at most the given variable."""
    lo = hi = None
    lo_open = hi_open = False
    for row in rows:
        k = row[slot]
        c0, strict = row[0], row[4]
        if k == 0:
            if any(row[s] for s in (IDX_EPS, IDX_ELL, IDX_X)):
                raise ValueError("rows are not univariate")
            if c0 < 0 or (c0 == 0 and strict):
                return Interval.nothing()
            continue
        bound = Fraction(-c0, k)
        if k > 0:
            if lo is None or bound > lo:
                lo, lo_open = bound, strict
            elif bound == lo:
                lo_open = lo_open or strict
        else:
            if hi is None or bound < hi:
                hi, hi_open = bound, strict
            elif bound == hi:
                hi_open = hi_open or strict
    return Interval(lo, hi, lo_open, hi_open)


def project_rows_to_eps(rows: Iterable[Row]) -> Interval:
    """Exact projection to the eps axis: eliminate x, then ell."""
    r1 = eliminate_rows(rows, IDX_X)
    if r1 is None:
        return Interval.nothing()
    r2 = eliminate_rows(r1, IDX_ELL)
    if r2 is None:
        return Interval.nothing()
    return univariate_interval(r2, IDX_EPS)


@dataclass(frozen=True)
class StrictSystem:
    """Conjunction of strict / non-strict affine inequalities in (eps, ell, x)."""

    constraints: tuple[Constraint, ...] = ()

    @classmethod
    def of(cls, *constraints: Constraint) -> "StrictSystem":
        return cls(tuple(constraints))

    def rows(self) -> list[Row]:
        return [row_from_constraint(c) for c in self.constraints]

    def eliminate(self, var: str) -> "StrictSystem":
        """Project out one variable; contradictions stay visible as constant rows."""
        slot = VAR_SLOT.get(var)
        if slot is None:
            raise ValueError(f"unknown variable {var!r}; expected one of {sorted(VAR_SLOT)}")
        pos, neg = [], []
        keep: dict = {}
        bad: list[Row] = []

        def absorb_or_flag(row: Row) -> None:
            if not _absorb(row, keep):
                bad.append(row)

        for row in self.rows():
            k = row[slot]
            if k > 0:
                pos.append(row)
            elif k < 0:
                neg.append(row)
            else:
                absorb_or_flag(row)
        for p in pos:
            kp = p[slot]
            for n in neg:
                kn = -n[slot]
                absorb_or_flag(
                    (
                        kn * p[0] + kp * n[0],
                        kn * p[1] + kp * n[1],
                        kn * p[2] + kp * n[2],
                        kn * p[3] + kp * n[3],
                        p[4] or n[4],
                    )
                )
        out = [_constraint_from_row(r) for r in sorted(bad) + sorted(_pool_rows(keep))]
        return StrictSystem(tuple(out))

    def epsilon_projection(self) -> Interval:
        return project_rows_to_eps(self.rows())

    def feasible(self) -> bool:
        return not self.epsilon_projection().empty

    def holds_at(self, eps=0, ell=0, x=0) -> bool:
        return all(c.holds_at(eps, ell, x) for c in self.constraints)

    def witness(self) -> Optional[tuple[Fraction, Fraction, Fraction]]:
        """Rational (eps, ell, x) satisfying the system, by back-substituting
        interval midpoints through the elimination stages; None if infeasible."""
        rows0 = self.rows()
        r1 = eliminate_rows(rows0, IDX_X)
        if r1 is None:
            return None
        r2 = eliminate_rows(r1, IDX_ELL)
        if r2 is None:
            return None
        eps = univariate_interval(r2, IDX_EPS).midpoint()
        if eps is None:
            return None
        ell = univariate_interval(substitute_rows(r1, IDX_EPS, eps), IDX_ELL).midpoint()
        if ell is None:
            return None
        rows_x = substitute_rows(substitute_rows(rows0, IDX_EPS, eps), IDX_ELL, ell)
        x = univariate_interval(rows_x, IDX_X).midpoint()
        if x is None:
            return None
        return (eps, ell, x)

    def __str__(self):
        return "{" + ", ".join(str(c) for c in self.constraints) + "}"


def eliminate(system: StrictSystem, var: str) -> StrictSystem:
    """Exact Fourier-Motzkin projection of one variable."""
    return system.eliminate(var)


def epsilon_projection(system: StrictSystem) -> Interval:
    """Exact projection of the solution set onto the eps axis."""
    return system.epsilon_projection()
