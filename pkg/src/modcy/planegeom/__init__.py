"""Projective geometry over F_p and Q: enumeration, counting, chord-tangent law."""

from .curves import (
    BIDEGREE_EXPONENTS,
    COUNTERS,
    CUBIC_EXPONENTS,
    EXPONENTS,
    PlaneCurve,
    count_points,
    is_smooth,
    on_curve_points,
    rational_line_components,
    singular_points,
    singular_points_bruteforce,
)
from .field import Fp2, PrimeField, chi_table
from .grouplaw import CubicWithOrigin, cubic_add, cubic_neg, cubic_order, third_intersection
from .points import P1P1, P2, ProjPoint, as_point, p1p1_points, projective_points
from .weierstrass import general_trace, weierstrass_trace, weierstrass_traces

__all__ = [
    "BIDEGREE_EXPONENTS", "COUNTERS", "CUBIC_EXPONENTS", "EXPONENTS", "P1P1", "P2",
    "CubicWithOrigin", "Fp2", "PlaneCurve", "PrimeField", "ProjPoint", "as_point",
    "chi_table", "count_points", "cubic_add", "cubic_neg", "cubic_order", "general_trace",
    "is_smooth", "on_curve_points", "p1p1_points", "projective_points",
    "rational_line_components", "singular_points", "singular_points_bruteforce",
    "third_intersection", "weierstrass_trace", "weierstrass_traces",
]
