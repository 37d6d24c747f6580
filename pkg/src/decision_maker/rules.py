"""
Rule-based choice of one patch among non-dominated candidates.

Cascade (each filter falls back to the argmin set if nobody passes):
    1. AWT < awt_max_s
    2. %WT>55 < wt55_pct_max
    3. ATT < att_max_s
    4. %TT>70 < tt70_pct_max
    5. lowest LWT, then lowest LTT
    6. fewest parameters changed from the original configuration
    7. lowest evaluation index
"""

import logging
from dataclasses import dataclass, fields
from typing import Callable, List, Sequence, Tuple

from ..config_model import Configuration, hamming_distance
from ..repair_engine import ArchiveEntry
from ..utils.keyvalue import KeyValueError, format_key_values, parse_key_values

logger = logging.getLogger(__name__)


class DecisionError(ValueError):
    """The decision maker cannot choose (e.g. no candidates)."""


@dataclass(frozen=True)
class DmThresholds:
    """Pass limits used by the decision maker."""

    awt_max_s: float = 25.0
    wt55_pct_max: float = 10.0
    att_max_s: float = 45.0
    tt70_pct_max: float = 10.0

    def __post_init__(self):
        for f in fields(self):
            if getattr(self, f.name) <= 0:
                raise DecisionError(f"{f.name} must be positive")


def parse_dm_thresholds(text: str) -> DmThresholds:
    """
    Parse a key=value thresholds file; omitted keys keep their defaults.

    Raises:
        DecisionError: Unknown key or bad value
    """
    try:
        raw = parse_key_values(text)
    except KeyValueError as e:
        raise DecisionError(str(e)) from None
    known = {f.name for f in fields(DmThresholds)}
    values = {}
    for key, value in raw.items():
        if key not in known:
            raise DecisionError(f"unknown threshold '{key}'")
        try:
            values[key] = float(value)
        except ValueError:
            raise DecisionError(f"bad value for '{key}': {value!r}") from None
    return DmThresholds(**values)


def serialize_dm_thresholds(thresholds: DmThresholds) -> str:
    return format_key_values({f.name: float(getattr(thresholds, f.name)) for f in fields(thresholds)})


def _label(entry: ArchiveEntry) -> str:
    return f"#{entry.eval_index}"


def _threshold_stage(candidates: List[ArchiveEntry], name: str,
                     metric: Callable[[ArchiveEntry], float], limit: float,
                     trace: List[str]) -> List[ArchiveEntry]:
    passing = [c for c in candidates if metric(c) < limit]
    if passing:
        kept = passing
        rule = f"{name} < {limit:g}"
    else:
        best = min(metric(c) for c in candidates)
        kept = [c for c in candidates if metric(c) == best]
        rule = f"no candidate with {name} < {limit:g}, kept lowest {name} ({best:.3f})"
    _trace_stage(candidates, kept, rule, trace)
    return kept


def _argmin_stage(candidates: List[ArchiveEntry], name: str,
                  key: Callable[[ArchiveEntry], float], trace: List[str]) -> List[ArchiveEntry]:
    best = min(key(c) for c in candidates)
    kept = [c for c in candidates if key(c) == best]
    _trace_stage(candidates, kept, f"lowest {name} ({best:g})", trace)
    return kept


def _trace_stage(before: List[ArchiveEntry], after: List[ArchiveEntry], rule: str,
                 trace: List[str]) -> None:
    kept_ids = {id(c) for c in after}
    dropped = [c for c in before if id(c) not in kept_ids]
    if dropped:
        trace.append(f"{rule}: eliminated {', '.join(_label(c) for c in dropped)}")
    else:
        trace.append(f"{rule}: kept all {len(before)}")


def decide_with_trace(candidates: Sequence[ArchiveEntry], original: Configuration,
                      thresholds: DmThresholds = DmThresholds()) -> Tuple[ArchiveEntry, List[str]]:
    """
    Choose one patch and explain which stage eliminated which candidate.

    Args:
        candidates: Non-dominated archive entries (suite-worst metrics)
        original: The misconfigured configuration
        thresholds: Stage limits

    Returns:
        (chosen entry, human-readable trace lines)

    Raises:
        DecisionError: Empty candidate set
    """
    if not candidates:
        raise DecisionError("decision maker needs at least one candidate")

    remaining = sorted(candidates, key=lambda e: e.eval_index)
    trace = [f"candidates: {', '.join(_label(c) for c in remaining)}"]

    stages = (
        ('AWT', lambda e: e.score.metrics.awt_s, thresholds.awt_max_s),
        ('%WT>55', lambda e: e.score.metrics.pct_wt_gt55, thresholds.wt55_pct_max),
        ('ATT', lambda e: e.score.metrics.att_s, thresholds.att_max_s),
        ('%TT>70', lambda e: e.score.metrics.pct_tt_gt70, thresholds.tt70_pct_max),
    )
    for name, metric, limit in stages:
        remaining = _threshold_stage(remaining, name, metric, limit, trace)

    remaining = _argmin_stage(remaining, 'LWT', lambda e: e.score.metrics.lwt_s, trace)
    remaining = _argmin_stage(remaining, 'LTT', lambda e: e.score.metrics.ltt_s, trace)
    remaining = _argmin_stage(remaining, 'hamming distance',
                              lambda e: hamming_distance(e.patch, original), trace)

    chosen = remaining[0]
    if len(remaining) > 1:
        trace.append(f"tie: chose lowest evaluation index {_label(chosen)}")
    trace.append(f"selected {_label(chosen)}")
    return chosen, trace


def decide(candidates: Sequence[ArchiveEntry], original: Configuration,
           thresholds: DmThresholds = DmThresholds()) -> ArchiveEntry:
    """Choose one patch among the candidates (see decide_with_trace)."""
    chosen, trace = decide_with_trace(candidates, original, thresholds)
    for line in trace:
        logger.debug(f"[INFO] DM {line}")
    return chosen
