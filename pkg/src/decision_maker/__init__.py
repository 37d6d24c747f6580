"""
Decision maker: picks one plausible patch when the budget expires.
"""

from .rules import (
    DecisionError,
    DmThresholds,
    decide,
    decide_with_trace,
    parse_dm_thresholds,
    serialize_dm_thresholds,
)

__all__ = [
    'DecisionError',
    'DmThresholds',
    'decide',
    'decide_with_trace',
    'parse_dm_thresholds',
    'serialize_dm_thresholds',
]
