"""Subdivision of the parameter triangle into maximal regions carrying a
constant factor list of a given word length.

The domain of the exchange is cut by the backward orbits of its two
discontinuities.  Both discontinuities and all their preimages are affine
functions of (eps, ell), so three kinds of decisions have to hold uniformly
on a region before its factor list is constant:

  * the inverse branch taken by each backward step (the preimage lies in
    the image of exactly one of the three intervals),
  * the total order of all division points inside the domain,
  * the forward coding of the midpoint of every resulting subinterval.

Each decision is the sign of an affine form.  Starting from the open
parameter triangle, a region is split along the zero line of the first form
whose sign is not constant on it; on a fully resolved leaf the subinterval
midpoints are coded symbolically and yield the region's factor list
(generically 2N + 1 words).  All geometry is exact rational arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Optional, Sequence

from .exact import AffineForm

# Affine forms in (eps, ell) as integer triples (c0, ce, cl).
Form = tuple[int, int, int]
Point = tuple[Fraction, Fraction]

_ZERO: Form = (0, 0, 0)
_EPS: Form = (0, 1, 0)  # d1
_D2: Form = (-1, 1, 1)  # ell - 1 + eps
_ELL: Form = (0, 0, 1)
_ELL_MINUS_EPS: Form = (0, -1, 1)
_ONE_MINUS_EPS: Form = (1, -1, 0)


class AtlasError(RuntimeError):
    """Refinement could not resolve a region within the configured depth."""


class _SplitNeeded(Exception):
    def __init__(self, form: Form):
        self.form = form


def _f_add(u: Form, v: Form) -> Form:
    return (u[0] + v[0], u[1] + v[1], u[2] + v[2])


def _f_sub(u: Form, v: Form) -> Form:
    return (u[0] - v[0], u[1] - v[1], u[2] - v[2])


def _vertex_value_sign(form: Form, vertex: Point) -> int:
    c0, ce, cl = form
    e, l = vertex
    v = (
        c0 * e.denominator * l.denominator
        + ce * e.numerator * l.denominator
        + cl * l.numerator * e.denominator
    )
    return (v > 0) - (v < 0)


def _region_sign(form: Form, poly: Sequence[Point]) -> int:
    """Sign of an affine form on the interior of a convex polygon: +1, -1,
    0 (identically zero), or a _SplitNeeded exception when mixed."""
    has_pos = has_neg = False
    for vertex in poly:
        s = _vertex_value_sign(form, vertex)
        if s > 0:
            has_pos = True
        elif s < 0:
            has_neg = True
        if has_pos and has_neg:
            raise _SplitNeeded(form)
    if has_pos:
        return 1
    if has_neg:
        return -1
    return 0


def _eval_form(form: Form, vertex: Point) -> Fraction:
    c0, ce, cl = form
    return c0 + ce * vertex[0] + cl * vertex[1]


def _polygon_area2(poly: Sequence[Point]) -> Fraction:
    total = Fraction(0)
    n = len(poly)
    for i in range(n):
        x1, y1 = poly[i]
        x2, y2 = poly[(i + 1) % n]
        total += x1 * y2 - x2 * y1
    return total


def _tidy_polygon(points: list[Point]) -> Optional[tuple[Point, ...]]:
    """Drop repeated and collinear vertices; None when the area vanishes."""
    uniq: list[Point] = []
    for p in points:
        if not uniq or p != uniq[-1]:
            uniq.append(p)
    if len(uniq) > 1 and uniq[0] == uniq[-1]:
        uniq.pop()
    if len(uniq) < 3:
        return None
    out: list[Point] = []
    n = len(uniq)
    for i in range(n):
        a, b, c = uniq[i - 1], uniq[i], uniq[(i + 1) % n]
        cross = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
        if cross != 0:
            out.append(b)
    if len(out) < 3 or _polygon_area2(out) <= 0:
        return None
    return tuple(out)


def _clip(poly: Sequence[Point], form: Form, side: int) -> Optional[tuple[Point, ...]]:
    """Intersect a convex polygon with the half-plane side*form >= 0."""
    vals = [side * _eval_form(form, v) for v in poly]
    out: list[Point] = []
    n = len(poly)
    for i in range(n):
        a, fa = poly[i], vals[i]
        b, fb = poly[(i + 1) % n], vals[(i + 1) % n]
        if fa >= 0:
            out.append(a)
        if (fa > 0 > fb) or (fa < 0 < fb):
            t = fa / (fa - fb)
            out.append((a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])))
    if not out:
        return None
    return _tidy_polygon(out)


def canonical_polygon(poly: Sequence[Point]) -> tuple[Point, ...]:
    """Rotation-normalized vertex cycle (smallest vertex first)."""
    pts = list(poly)
    start = min(range(len(pts)), key=lambda i: pts[i])
    return tuple(pts[start:] + pts[:start])


@dataclass(frozen=True)
class BoundaryLine:
    """Line a*eps + b*ell = c with normalized integer coefficients."""

    a: Fraction
    b: Fraction
    c: Fraction

    @classmethod
    def from_form(cls, form: Form) -> "BoundaryLine":
        c0, ce, cl = form
        if ce == 0 and cl == 0:
            raise ValueError("constant form has no zero line")
        g = math.gcd(c0, ce, cl)
        c0, ce, cl = c0 // g, ce // g, cl // g
        lead = ce if ce != 0 else cl
        if lead < 0:
            c0, ce, cl = -c0, -ce, -cl
        return cls(Fraction(ce), Fraction(cl), Fraction(-c0))

    def __str__(self):
        return f"{self.a}*eps + {self.b}*ell = {self.c}"


@dataclass(frozen=True)
class ParamRegion:
    """Open convex polygon of parameters with its constant factor list."""

    polygon: tuple[Point, ...]
    division_points: tuple[AffineForm, ...]
    factor_list: tuple[str, ...]

    def sample(self) -> Point:
        """An interior rational point (the vertex centroid)."""
        n = len(self.polygon)
        return (
            sum(v[0] for v in self.polygon) / n,
            sum(v[1] for v in self.polygon) / n,
        )


@dataclass(frozen=True)
class Atlas:
    length: int
    regions: tuple[ParamRegion, ...]
    lines: tuple[BoundaryLine, ...]


def _backward(form: Form, sign) -> Form:
    """Preimage of a division point, choosing the inverse branch by the
    image intervals [0, ell-eps), [ell-eps, 1-eps), [1-eps, ell)."""
    if sign(_f_sub(form, _ELL_MINUS_EPS)) < 0:
        return _f_add(form, (0, 1, 0))
    if sign(_f_sub(form, _ONE_MINUS_EPS)) < 0:
        return _f_add(form, (-1, 2, 0))
    return _f_add(form, (-1, 1, 0))


def _code_cell(lo: Form, hi: Form, length: int, sign) -> str:
    """Forward coding of the cell midpoint; tracks twice the orbit point so
    every decision stays in integer coefficients."""
    q = _f_add(lo, hi)  # 2 * midpoint
    letters = []
    for _ in range(length):
        if sign(_f_sub(q, (-2, 2, 2))) < 0:  # point < ell - 1 + eps
            letters.append("A")
            q = _f_add(q, (2, -2, 0))
        elif sign(_f_sub(q, (0, 2, 0))) < 0:  # point < eps
            letters.append("B")
            q = _f_add(q, (2, -4, 0))
        else:
            letters.append("C")
            q = _f_add(q, (0, -2, 0))
    return "".join(letters)


def _pipeline(poly: Sequence[Point], length: int) -> tuple[list[Form], list[str]]:
    """Resolve one region completely or raise _SplitNeeded."""

    def sign(form: Form) -> int:
        return _region_sign(form, poly)

    points: list[Form] = [_EPS, _D2]
    cur1, cur2 = _EPS, _D2
    for _ in range(length - 1):
        cur1 = _backward(cur1, sign)
        cur2 = _backward(cur2, sign)
        points.append(cur1)
        points.append(cur2)

    uniq = list(dict.fromkeys(points))
    for p in list(uniq):
        s = sign(p)
        if s < 0 or sign(_f_sub(_ELL, p)) <= 0:
            raise AtlasError(f"division point {p} escaped the domain")
        if s == 0:
            uniq.remove(p)  # coincides with the left endpoint of the domain

    # Resolve every pairwise order explicitly; a mixed pair splits the region.
    ranks = []
    for i, u in enumerate(uniq):
        rank = 0
        for j, v in enumerate(uniq):
            if i != j and sign(_f_sub(u, v)) > 0:
                rank += 1
        ranks.append(rank)
    ordered = [form for _, form in sorted(zip(ranks, uniq))]

    bounds = [_ZERO] + ordered + [_ELL]
    words = [
        _code_cell(lo, hi, length, sign) for lo, hi in zip(bounds, bounds[1:])
    ]
    if len(set(words)) != len(words):
        raise AtlasError("distinct cells coded to the same word")
    return ordered, sorted(words)


def _centroid_key(region: ParamRegion):
    return region.sample()


@lru_cache(maxsize=None)
def build_atlas(length: int, max_depth: int = 64) -> Atlas:
    """Refine the parameter triangle for one word length."""
    if length < 1:
        raise ValueError("length must be >= 1")
    triangle: tuple[Point, ...] = (
        (Fraction(0), Fraction(1)),
        (Fraction(1, 2), Fraction(1, 2)),
        (Fraction(1), Fraction(1)),
    )
    stack: list[tuple[tuple[Point, ...], int]] = [(triangle, 0)]
    regions: list[ParamRegion] = []
    lines: set[BoundaryLine] = set()
    while stack:
        poly, depth = stack.pop()
        try:
            forms, words = _pipeline(poly, length)
        except _SplitNeeded as split:
            if depth >= max_depth:
                raise AtlasError(
                    f"refinement depth cap {max_depth} exceeded at length {length}"
                ) from None
            lines.add(BoundaryLine.from_form(split.form))
            for side in (1, -1):
                half = _clip(poly, split.form, side)
                if half is not None:
                    stack.append((half, depth + 1))
            continue
        division = tuple(AffineForm(c0, ce, cl) for c0, ce, cl in forms)
        regions.append(
            ParamRegion(canonical_polygon(poly), division, tuple(words))
        )
    regions.sort(key=_centroid_key)
    ordered_lines = tuple(sorted(lines, key=lambda ln: (ln.a, ln.b, ln.c)))
    return Atlas(length, tuple(regions), ordered_lines)


def subdivide(length: int, max_depth: int = 64) -> list[ParamRegion]:
    """Maximal parameter regions with constant factor lists of one length."""
    return list(build_atlas(length, max_depth).regions)


def union_factors(regions: Iterable[ParamRegion]) -> set[str]:
    """Union of all region factor lists."""
    out: set[str] = set()
    for region in regions:
        out.update(region.factor_list)
    return out


def coded_list_at(eps, ell, length: int) -> list[str]:
    """Factor list at one exact rational parameter point, computed by direct
    interval arithmetic (numeric cross-check of the symbolic pipeline)."""
    eps, ell = Fraction(eps), Fraction(ell)
    if not (0 < eps < 1 and max(eps, 1 - eps) < ell < 1):
        raise ValueError("parameters outside the admissible triangle")
    d2 = ell - 1 + eps

    def back(y: Fraction) -> Fraction:
        if y < ell - eps:
            return y + eps
        if y < 1 - eps:
            return y + 2 * eps - 1
        return y + eps - 1

    points = {eps, d2}
    y1, y2 = eps, d2
    for _ in range(length - 1):
        y1, y2 = back(y1), back(y2)
        points.add(y1)
        points.add(y2)
    bounds = [Fraction(0)] + sorted(p for p in points if p != 0) + [ell]
    words = []
    for lo, hi in zip(bounds, bounds[1:]):
        x = (lo + hi) / 2
        letters = []
        for _ in range(length):
            if x < d2:
                letters.append("A")
                x += 1 - eps
            elif x < eps:
                letters.append("B")
                x += 1 - 2 * eps
            else:
                letters.append("C")
                x -= eps
        words.append("".join(letters))
    return sorted(words)


# ---------------------------------------------------------------------------
# Emission
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SvgOptions:
    stroke_width: float = 0.003
    font_size: float = 0.024
    labels: bool = True
    legend: bool = True
    legend_limit: int = 24


_PALETTE = ("#dbeafe", "#dcfce7", "#fef9c3", "#fde8e8", "#ede9fe", "#ffe4e6")


def _fmt(value: Fraction) -> str:
    return f"{float(value):.6f}"


def emit_json(regions: Sequence[ParamRegion], length: Optional[int] = None) -> dict:
    """JSON document mirroring the atlas exactly (vertices as "p/q" strings)."""
    if length is None:
        if regions and regions[0].factor_list:
            length = len(regions[0].factor_list[0])
        else:
            raise ValueError("length is required for an empty region list")
    return {
        "length": length,
        "regions": [
            {
                "vertices": [[str(e), str(l)] for e, l in region.polygon],
                "factors": list(region.factor_list),
            }
            for region in regions
        ],
    }


def emit_svg(
    regions: Sequence[ParamRegion],
    options: Optional[SvgOptions] = None,
    length: Optional[int] = None,
) -> str:
    """Deterministic SVG of the parameter triangle, its subdivision, region
    labels, and a legend of factor lists.  The viewBox is the unit square;
    the ell axis points up (ell = 1 at the top)."""
    opt = options or SvgOptions()
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" viewBox="0 0 1 1">',
        '<rect x="0" y="0" width="1" height="1" fill="#ffffff"/>',
    ]

    def xy(e: Fraction, l: Fraction) -> tuple[str, str]:
        return _fmt(e), _fmt(1 - l)

    for i, region in enumerate(regions):
        pts = " ".join(",".join(xy(e, l)) for e, l in region.polygon)
        fill = _PALETTE[i % len(_PALETTE)]
        out.append(
            f'<polygon points="{pts}" fill="{fill}" stroke="#333333" '
            f'stroke-width="{opt.stroke_width}"/>'
        )
    triangle = "0.000000,0.000000 0.500000,0.500000 1.000000,0.000000"
    out.append(
        f'<polygon points="{triangle}" fill="none" stroke="#000000" '
        f'stroke-width="{opt.stroke_width * 1.5}"/>'
    )
    if opt.labels:
        for i, region in enumerate(regions):
            ce, cl = region.sample()
            x, y = xy(ce, cl)
            out.append(
                f'<text x="{x}" y="{y}" font-size="{opt.font_size}" '
                f'text-anchor="middle" font-family="monospace">{i + 1}</text>'
            )
    if opt.legend:
        y = 0.56
        shown = list(regions)[: opt.legend_limit]
        for i, region in enumerate(shown):
            text = f"{i + 1}: {' '.join(region.factor_list)}"
            out.append(
                f'<text x="0.02" y="{y:.6f}" font-size="{opt.font_size}" '
                f'font-family="monospace">{text}</text>'
            )
            y += opt.font_size * 1.3
        if len(regions) > len(shown):
            out.append(
                f'<text x="0.02" y="{y:.6f}" font-size="{opt.font_size}" '
                f'font-family="monospace">... {len(regions) - len(shown)} more</text>'
            )
    out.append("</svg>")
    return "\n".join(out) + "\n"
