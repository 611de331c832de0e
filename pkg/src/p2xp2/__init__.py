"""Weighted P2xP2 formats for Fano 3-folds.

Exact Hilbert series arithmetic, key varieties from grading vectors,
regular-pullback models with quotient-point screening, Type I projection
degree calculus and a catalogue search with fixture reports.
"""

from .series import (
    DenominatorProduct,
    DimensionMismatchError,
    HilbertSeries,
    IntPolynomial,
    PresentationError,
    gorenstein_symmetry_check,
    normalize_series,
    present_over,
    reduced_value_at_one,
    series_equal,
    series_expand,
    series_scale,
)
from .key_variety import (
    CoxBigrading,
    WeightData,
    WeightDataError,
    WeightMatrix,
    canonicalize_weights,
    cox_bigrading,
    key_series,
    szendroi_numerator,
    weight_matrix,
    wellform,
)
from .fano_model import (
    FanoModel,
    QuotientPoint,
    fano_index,
    find_pullback,
    orbifold_screen,
    point_on_model,
    solve_ambient,
    terminal_quotient_check,
)
from .unprojection import (
    SkewPfaffianData,
    TomJerryPattern,
    UnprojectionLedger,
    ci_euler,
    euler_ledger,
    hilbert_burch_numerator,
    node_count,
    pattern_feasible,
    pfaffian_degrees,
    pfaffian_numerator,
    project_type_one,
    unprojection_degree,
)
from .enumeration import (
    CandidateRecord,
    DatabaseEntry,
    SeriesDatabase,
    enumerate_formats,
    match_database,
    run_search,
)

__version__ = "0.1.0"

__all__ = [
    "CandidateRecord",
    "CoxBigrading",
    "DatabaseEntry",
    "DenominatorProduct",
    "DimensionMismatchError",
    "FanoModel",
    "HilbertSeries",
    "IntPolynomial",
    "PresentationError",
    "QuotientPoint",
    "SeriesDatabase",
    "SkewPfaffianData",
    "TomJerryPattern",
    "UnprojectionLedger",
    "WeightData",
    "WeightDataError",
    "WeightMatrix",
    "canonicalize_weights",
    "ci_euler",
    "cox_bigrading",
    "enumerate_formats",
    "euler_ledger",
    "fano_index",
    "find_pullback",
    "gorenstein_symmetry_check",
    "hilbert_burch_numerator",
    "key_series",
    "match_database",
    "node_count",
    "normalize_series",
    "orbifold_screen",
    "pattern_feasible",
    "pfaffian_degrees",
    "pfaffian_numerator",
    "point_on_model",
    "present_over",
    "project_type_one",
    "reduced_value_at_one",
    "run_search",
    "series_equal",
    "series_expand",
    "series_scale",
    "solve_ambient",
    "szendroi_numerator",
    "terminal_quotient_check",
    "unprojection_degree",
    "weight_matrix",
    "wellform",
]
