"""Exact toolkit for words coding exchanges of two and three intervals."""

from .exact import (
    AffineForm,
    Constraint,
    Interval,
    QuadraticReal,
    Rational,
    StrictSystem,
    eliminate,
    epsilon_projection,
    format_exact,
    parse_exact,
    quad_cmp,
)
from .sturmian import (
    SturmianClass,
    all_factors,
    class_factors,
    farey,
    h_count,
    is_sturmian_factor,
    letter_bounds,
    lipatov,
    mechanical_word,
    periodic_coding,
)
from .triet import (
    EnumerationLimitError,
    FactorWitness,
    IetParams,
    code_orbit,
    count_by_b,
    count_factors,
    enumerate_factors,
    is_factor,
    transform,
    witness,
    word_constraints,
)
from .amicable import (
    AmicablePair,
    class_pair_count,
    count_pairs,
    is_b_amicable,
    merge,
    sigma01,
    sigma10,
    z_count,
)
from .atlas import Atlas, BoundaryLine, ParamRegion, build_atlas, emit_json, emit_svg, subdivide, union_factors
from .analysis import BoundsRow, PropLowerReport, bounds_table, coprime_in_range, prop_lower_report, totient, totient_sum

__version__ = "0.1.0"
