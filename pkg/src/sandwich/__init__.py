"""
E-normal subgroups: their levels, the sandwich containments, and the
triangular column reductions behind them.
"""

from .levels import SubgroupHandle, LevelResult, level_of, is_E_normal, sandwich_check
from .reductions import (
    ReductionResult,
    ColumnReducer,
    find_unimodular_shift,
    reduce_first_entry,
    reduce_two_columns,
    is_upper_unitriangular,
    has_ueu_support,
    sweep_reductions,
)

__all__ = [
    # Levels
    "SubgroupHandle",
    "LevelResult",
    "level_of",
    "is_E_normal",
    "sandwich_check",
    # Reductions
    "ReductionResult",
    "ColumnReducer",
    "find_unimodular_shift",
    "reduce_first_entry",
    "reduce_two_columns",
    "is_upper_unitriangular",
    "has_ueu_support",
    "sweep_reductions",
]
