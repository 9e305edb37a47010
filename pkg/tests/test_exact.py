import random
from decimal import Decimal, getcontext
from fractions import Fraction

import pytest

from ietlab.exact import (
    AffineForm,
    Constraint,
    Interval,
    QuadraticReal,
    StrictSystem,
    eliminate,
    epsilon_projection,
    format_exact,
    parse_exact,
    quad_cmp,
)

getcontext().prec = 80


def approx(q: QuadraticReal) -> Decimal:
    return (Decimal(q.a) + Decimal(q.b) * Decimal(q.d).sqrt()) / Decimal(q.c)


class TestRational:
    def test_field_laws_randomized(self):
        rng = random.Random(7)
        for _ in range(300):
            a, b, c = (
                Fraction(rng.randrange(-40, 40), rng.randrange(1, 20)) for _ in range(3)
            )
            assert (a + b) + c == a + (b + c)
            assert a + b == b + a
            assert (a * b) * c == a * (b * c)
            assert a * (b + c) == a * b + a * c

    def test_canonical_form_idempotent(self):
        f = Fraction(6, -4)
        assert (f.numerator, f.denominator) == (-3, 2)
        assert Fraction(f.numerator, f.denominator) == f


class TestQuadraticReal:
    def test_canonicalization(self):
        assert QuadraticReal(0, 1, 1, 8) == QuadraticReal(0, 2, 1, 2)
        assert QuadraticReal(1, 3, 2, 1) == QuadraticReal.from_rational(2)
        assert QuadraticReal(2, 5, 4, 0) == QuadraticReal.from_rational(Fraction(1, 2))
        assert QuadraticReal(2, 2, 4, 5) == QuadraticReal(1, 1, 2, 5)
        assert QuadraticReal(1, 0, -2).as_fraction() == Fraction(-1, 2)

    def test_cmp_sqrt2_vs_decimal(self):
        # compare 2*100^2 against 141^2
        assert quad_cmp(QuadraticReal.sqrt(2), Fraction(141, 100)) > 0

    def test_cmp_identical(self):
        golden = QuadraticReal(1, 1, 2, 5)
        assert quad_cmp(golden, golden) == 0

    def test_cmp_golden_vs_8_5(self):
        # sign bookkeeping: 5*5^2 against (16-5)^2
        assert quad_cmp(QuadraticReal(1, 1, 2, 5), Fraction(8, 5)) > 0

    def test_incomparable_radicands(self):
        with pytest.raises(ValueError, match="incomparable radicands"):
            quad_cmp(QuadraticReal.sqrt(2), QuadraticReal.sqrt(3))

    def test_rational_side_always_comparable(self):
        assert QuadraticReal.sqrt(2) > QuadraticReal.from_rational(1)
        assert QuadraticReal.from_rational(Fraction(3, 2)) > QuadraticReal.sqrt(2)

    def test_golden_ratio_square(self):
        golden = QuadraticReal(1, 1, 2, 5)
        assert golden * golden == golden + 1

    def test_cmp_randomized_against_decimal(self):
        rng = random.Random(2026)
        for _ in range(1000):
            d = rng.choice((0, 2, 3, 5, 6, 7, 10, 13, 30))
            u = QuadraticReal(rng.randrange(-50, 51), rng.randrange(-50, 51), rng.randrange(1, 50), d)
            v = QuadraticReal(rng.randrange(-50, 51), rng.randrange(-50, 51), rng.randrange(1, 50), d)
            got = quad_cmp(u, v)
            diff = approx(u) - approx(v)
            if got == 0:
                assert (u.a, u.b, u.c, u.d) == (v.a, v.b, v.c, v.d)
            else:
                assert abs(diff) > Decimal("1e-40")
                assert (diff > 0) == (got > 0)

    def test_arithmetic_matches_decimal(self):
        rng = random.Random(11)
        for _ in range(200):
            d = rng.choice((2, 3, 5, 7))
            u = QuadraticReal(rng.randrange(-9, 10), rng.randrange(-9, 10), rng.randrange(1, 9), d)
            v = QuadraticReal(rng.randrange(-9, 10), rng.randrange(-9, 10), rng.randrange(1, 9), d)
            assert abs(approx(u + v) - (approx(u) + approx(v))) < Decimal("1e-60")
            assert abs(approx(u * v) - (approx(u) * approx(v))) < Decimal("1e-55")

    def test_irrationality_flag(self):
        assert QuadraticReal(-1, 1, 2, 5).is_irrational
        assert not QuadraticReal(3, 0, 2, 5).is_irrational
        assert not QuadraticReal(1, 2, 1, 4).is_irrational  # sqrt(4) folds away


class TestParsing:
    @pytest.mark.parametrize(
        "text",
        ["3/4", "-3/4", "7", "0", "(-1+1*sqrt(5))/2", "(3-2*sqrt(7))/5", "(0+1*sqrt(2))/1"],
    )
    def test_round_trip(self, text):
        value = parse_exact(text)
        assert parse_exact(format_exact(value)) == value

    def test_canonical_output(self):
        assert format_exact(parse_exact("6/4")) == "3/2"
        assert format_exact(parse_exact("(2+2*sqrt(8))/4")) == "(1+2*sqrt(2))/2"

    @pytest.mark.parametrize("text", ["", "abc", "1/0", "(1+sqrt(5))/2", "sqrt(5)"])
    def test_rejects_malformed(self, text):
        with pytest.raises(ValueError):
            parse_exact(text)


class TestAffineForm:
    def test_arithmetic(self):
        f = AffineForm(1, -2, 0, 1)  # 1 - 2*eps + x
        g = AffineForm(0, 1, 1, 0)
        assert f + g == AffineForm(1, -1, 1, 1)
        assert f - g == AffineForm(1, -3, -1, 1)
        assert f.scale(Fraction(1, 2)) == AffineForm(Fraction(1, 2), -1, 0, Fraction(1, 2))

    def test_evaluation(self):
        f = AffineForm(1, -2, 0, 1)
        assert f(eps=Fraction(1, 4), x=Fraction(1, 8)) == Fraction(5, 8)
        golden = QuadraticReal(1, 1, 2, 5)
        assert f(eps=golden, x=0) == QuadraticReal(0, -1, 1, 5)  # -sqrt(5)

    def test_str(self):
        assert str(AffineForm(1, -2, 0, 1)) == "1 - 2*eps + x"
        assert str(AffineForm()) == "0"


def _system(*rows):
    cons = []
    for c0, ce, cl, cx, strict in rows:
        cons.append(Constraint(AffineForm(c0, ce, cl, cx), strict))
    return StrictSystem(tuple(cons))


class TestElimination:
    def test_bounded_x_eliminates_to_nothing(self):
        # x >= 0 and x < 1: projection is the whole plane
        sys = _system((0, 0, 0, 1, False), (1, 0, 0, -1, True))
        assert eliminate(sys, "x").constraints == ()

    def test_empty_open_interval_leaves_contradiction(self):
        # x > eps and x < eps
        sys = _system((0, -1, 0, 1, True), (0, 1, 0, -1, True))
        out = eliminate(sys, "x")
        assert Constraint(AffineForm(0, 0, 0, 0), True) in out.constraints

    def test_unknown_variable(self):
        with pytest.raises(ValueError):
            eliminate(_system(), "y")

    def test_strictness_of_combined_rows(self):
        # x > eps combined with x <= 1 gives 1 - eps > 0 (strict wins)
        sys = _system((0, -1, 0, 1, True), (1, 0, 0, -1, False))
        out = eliminate(sys, "x")
        assert out.constraints == (Constraint(AffineForm(1, -1, 0, 0), True),)

    def test_dominance_keeps_tightest_parallel_constraint(self):
        sys = _system((0, 1, 0, 0, False), (-1, 2, 0, 0, False))  # eps >= 0, eps >= 1/2
        out = eliminate(sys, "x")
        assert out.constraints == (Constraint(AffineForm(-1, 2, 0, 0), False),)

    def test_single_letter_membership_projects_to_unit_interval(self):
        from ietlab.triet import word_constraints

        reduced = word_constraints("C").eliminate("x").eliminate("ell")
        iv = reduced.epsilon_projection()
        assert (iv.lo, iv.hi, iv.lo_open, iv.hi_open) == (0, 1, True, True)

    def test_length_one_b_word_has_thick_projection(self):
        from ietlab.triet import word_constraints

        iv = word_constraints("B").epsilon_projection()
        assert iv.positive_length
        assert iv.lo >= 0 and iv.hi <= 1


class TestEpsilonProjection:
    def test_open_unit_interval(self):
        sys = _system((0, 1, 0, 0, True), (1, -1, 0, 0, True))
        iv = epsilon_projection(sys)
        assert (iv.lo, iv.hi, iv.lo_open, iv.hi_open) == (0, 1, True, True)
        assert iv.positive_length

    def test_degenerate_point(self):
        sys = _system((-1, 2, 0, 0, False), (1, -2, 0, 0, False))
        iv = epsilon_projection(sys)
        assert not iv.empty
        assert iv.lo == iv.hi == Fraction(1, 2)
        assert not iv.positive_length
        assert not iv.contains(QuadraticReal(1, 1, 3, 2))  # no irrational inside

    def test_infeasible(self):
        sys = _system((0, -1, 0, 1, True), (0, 1, 0, -1, True))
        assert epsilon_projection(sys).empty

    def test_strict_boundary_point_excluded(self):
        # x > eps, x <= 1 projects to eps < 1; the boundary never satisfies it
        sys = _system((0, -1, 0, 1, True), (1, 0, 0, -1, False))
        iv = epsilon_projection(sys)
        assert iv.hi == 1 and iv.hi_open
        assert not iv.contains(Fraction(1))
        relaxed = _system((0, -1, 0, 1, False), (1, 0, 0, -1, False))
        assert epsilon_projection(relaxed).contains(Fraction(1))

    def test_unbounded_side(self):
        sys = _system((0, 1, 0, 0, False),)  # eps >= 0
        iv = epsilon_projection(sys)
        assert iv.lo == 0 and iv.hi is None
        assert iv.positive_length and iv.midpoint() == 1


class TestInterval:
    def test_empty_normalization(self):
        assert Interval(Fraction(1), Fraction(0)).empty
        assert Interval(Fraction(1), Fraction(1), lo_open=True).empty
        assert not Interval(Fraction(1), Fraction(1)).empty

    def test_midpoints(self):
        assert Interval(Fraction(0), Fraction(1)).midpoint() == Fraction(1, 2)
        assert Interval(lo=Fraction(2)).midpoint() == 3
        assert Interval(hi=Fraction(2)).midpoint() == 1
        assert Interval.nothing().midpoint() is None


GRID = [Fraction(k, 3) for k in range(-3, 4)]


def _random_system(rng):
    rows = []
    for _ in range(rng.randrange(2, 6)):
        rows.append(
            (
                rng.randrange(-3, 4),
                rng.randrange(-3, 4),
                rng.randrange(-3, 4),
                rng.randrange(-3, 4),
                rng.random() < 0.5,
            )
        )
    return _system(*rows)


class TestSoundness:
    def test_projection_contains_every_grid_witness(self):
        rng = random.Random(99)
        for _ in range(120):
            sys = _random_system(rng)
            iv = sys.epsilon_projection()
            for e in GRID:
                for l in GRID:
                    for x in GRID:
                        if sys.holds_at(e, l, x):
                            assert iv.contains(e), f"{sys} lost witness ({e},{l},{x})"

    def test_witness_extraction_is_self_consistent(self):
        rng = random.Random(100)
        nonempty = 0
        for _ in range(200):
            sys = _random_system(rng)
            point = sys.witness()
            if sys.epsilon_projection().empty:
                assert point is None
            else:
                assert point is not None
                nonempty += 1
                assert sys.holds_at(*point), f"{sys} witness {point} fails"
        assert nonempty > 20  # the sample must exercise the feasible branch
