"""Incidence data for the level-N constructions (plane cubics and (2,2)-forms).

Points of P1xP1 are written in affine notation through ``pt22``: ``(u, v)``
with ``None`` standing for infinity.
"""

from __future__ import annotations

from .linsys import Condition, LinearSystem, Ruling, solve_conditions
from .planegeom.points import P1P1, P2, ProjPoint


def _p1(u):
    return (1, 0) if u is None else (u, 1)


def pt22(u, v) -> ProjPoint:
    return ProjPoint(_p1(u) + _p1(v), P1P1)


def ruling(factor: int, value) -> Ruling:
    """Ruling line {value} x P1 (factor 0) or P1 x {value} (factor 1)."""
    return Ruling(factor, _p1(value))


through, tangent, inflect = Condition.through, Condition.tangent, Condition.inflection

LINE_X, LINE_Y, LINE_Z = (1, 0, 0), (0, 1, 0), (0, 0, 1)

# Level 2 web: cubics through the frame with prescribed tangents at o and x.
LEVEL2_CUBIC = (
    through("0:0:1"), through("0:1:0"), through("1:0:0"), through("1:1:1"),
    tangent(LINE_Y, "0:0:1"),
    tangent(LINE_Z, "0:1:0"),
)

# Level 3 net: tangent to the coordinate triangle at its vertices, through (1:1:1).
LEVEL3_CUBIC = (
    tangent(LINE_Z, "0:1:0"),
    tangent(LINE_X, "0:0:1"),
    tangent(LINE_Y, "1:0:0"),
    through("1:1:1"),
)

LEVEL4_CUBIC = (
    through("0:1:0"), through("0:0:1"), through("1:1:1"), through("1:0:1"),
    inflect(LINE_Z, "0:1:0"),
    tangent(LINE_X, "0:0:1"),
    tangent(LINE_Y, "1:0:1"),
)

# Each tangency point lies on its line: (0:1:-1) on X+Y+Z=0 and (1:0:-1) on Y=0.
LEVEL5_CUBIC = (
    through("0:1:0"), through("0:1:-1"), through("1:0:-1"), through("0:0:1"),
    inflect(LINE_Z, "0:1:0"),
    tangent((1, 1, 1), "0:1:-1"),
    tangent(LINE_Y, "1:0:-1"),
)

LEVEL2_22 = (
    Condition("through", pt22(0, 0)), Condition("through", pt22(1, 1)),
    Condition("through", pt22(None, None)),
    Condition("tangent", pt22(0, 0), ruling(0, 0)),
)

LEVEL3_22 = (
    Condition("tangent", pt22(0, 0), ruling(0, 0)),
    Condition("tangent", pt22(1, 1), ruling(1, 1)),
    Condition("through", pt22(1, 0)), Condition("through", pt22(None, None)),
)

LEVEL4_22 = (
    Condition("tangent", pt22(0, 0), ruling(0, 0)),
    Condition("tangent", pt22(1, 1), ruling(0, 1)),
    Condition("through", pt22(None, None)),
)

LEVEL5_22 = (
    Condition("tangent", pt22(1, 0), ruling(1, 0)),
    Condition("tangent", pt22(0, 1), ruling(0, 0)),
    Condition("through", pt22(None, 1)), Condition("through", pt22(None, None)),
    Condition("through", pt22(1, None)),
)

CONDITIONS = {
    "level2_cubic": (P2, LEVEL2_CUBIC),
    "level3_cubic": (P2, LEVEL3_CUBIC),
    "level4_cubic": (P2, LEVEL4_CUBIC),
    "level5_cubic": (P2, LEVEL5_CUBIC),
    "level2_22": (P1P1, LEVEL2_22),
    "level3_22": (P1P1, LEVEL3_22),
    "level4_22": (P1P1, LEVEL4_22),
    "level5_22": (P1P1, LEVEL5_22),
}

# Expected spans of the constructions, as polynomial strings. The level-4 entry
# is not what the conditions cut out; see LEVEL4_SOLVED_SPAN.
REFERENCE_SPANS = {
    "level2_cubic": ("X^2*Y - X*Y*Z", "X^2*Z - X*Y*Z", "Y^2*Z - X*Y*Z", "Y*Z^2 - X*Y*Z"),
    "level3_cubic": ("X^2*Y - X*Y*Z", "Y^2*Z - X*Y*Z", "Z^2*X - X*Y*Z"),
    "level4_cubic": ("Y*Z*(Y - Z)", "X*(X - Z)^2"),
    "level5_cubic": ("Y*Z*(X + Y + Z)", "Y*Z*(Y + Z) - X*(X + Z)^2"),
}

# The level-4 span that the conditions actually cut out.
LEVEL4_SOLVED_SPAN = ("X*(X - Z)^2", "Y*Z*(X - Y)")

# (origin, marked point, expected order of the marked point)
TORSION = {
    "level2_cubic": ("0:0:1", "0:1:0", 2),
    "level3_cubic": ("1:0:0", "0:1:0", 3),
    "level4_cubic": ("0:1:0", "1:0:1", 4),
    "level5_cubic": ("0:1:0", "0:1:-1", 5),
}

_SYSTEMS: dict[str, LinearSystem] = {}


def system(name: str, bad_primes=()) -> LinearSystem:
    """Solved linear system for a named construction (cached per bad-prime set)."""
    key = f"{name}|{sorted(bad_primes)}"
    if key not in _SYSTEMS:
        ambient, conds = CONDITIONS[name]
        _SYSTEMS[key] = solve_conditions(ambient, conds, bad_primes)
    return _SYSTEMS[key]
