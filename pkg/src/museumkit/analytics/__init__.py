from .sus import (
    SusResponse,
    SusSummary,
    SusError,
    sus_score,
    sus_subscales,
    sus_summary,
    percentile_for_score,
    grade_for_percentile,
    adjective_for_score,
    read_sus_csv,
)
from .shapiro import SwReport, ShapiroError, shapiro_wilk
from .mannwhitney import MwuReport, MwuError, mann_whitney_u, read_comparison_csv

__all__ = [
    "SusResponse",
    "SusSummary",
    "SusError",
    "sus_score",
    "sus_subscales",
    "sus_summary",
    "percentile_for_score",
    "grade_for_percentile",
    "adjective_for_score",
    "read_sus_csv",
    "SwReport",
    "ShapiroError",
    "shapiro_wilk",
    "MwuReport",
    "MwuError",
    "mann_whitney_u",
    "read_comparison_csv",
]
