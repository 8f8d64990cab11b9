"""Exact genus distributions for ladder-surface sets and ladder graph families."""

from .families import build_table, family_distribution
from .graphfam import compose_ladder, genus_poly, poly_product
from .seqcore import (
    GenusDistribution,
    ModeInterval,
    ShiftedTerm,
    combine,
    criterion_window,
    is_log_concave,
    is_unimodal,
    mode_interval,
    window_unimodality_check,
)

__version__ = "0.1.0"

__all__ = [
    "GenusDistribution",
    "ModeInterval",
    "ShiftedTerm",
    "build_table",
    "combine",
    "compose_ladder",
    "criterion_window",
    "family_distribution",
    "genus_poly",
    "is_log_concave",
    "is_unimodal",
    "mode_interval",
    "poly_product",
    "window_unimodality_check",
]
