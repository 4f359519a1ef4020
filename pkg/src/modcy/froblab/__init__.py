"""Fibre families mod p, trace scans, moment sums and exact fits."""

from .basis import evaluate_term, parse_basis
from .calculus import rankin_trace, rankin_weight, shimura_trace, sym_trace
from .families import CUBIC_FAMILIES, FAMILIES, Family, get_family
from .fitting import FitModel, ValidationReport, fit, validate
from .kummer import KummerCounts, kummer_counts, kummer_orbit_counts
from .scan import CacheStore, MomentReport, TraceRecord, TraceTable, moment, moment_value, scan

__all__ = [
    "CUBIC_FAMILIES", "FAMILIES", "CacheStore", "Family", "FitModel", "KummerCounts",
    "MomentReport", "TraceRecord", "TraceTable", "ValidationReport", "evaluate_term", "fit",
    "get_family", "kummer_counts", "kummer_orbit_counts", "moment", "moment_value",
    "parse_basis", "rankin_trace", "rankin_weight", "scan", "shimura_trace", "sym_trace",
    "validate",
]
