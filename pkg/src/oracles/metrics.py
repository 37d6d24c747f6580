"""
Functional-performance metrics of a simulation run.
"""

from dataclasses import astuple, dataclass
from typing import Iterable, Tuple

import numpy as np

from ..elevator_sim import SimResult

WAIT_LIMIT_S = 55.0
TRANSIT_LIMIT_S = 70.0

METRIC_NAMES = ('awt_s', 'lwt_s', 'pct_wt_gt55', 'att_s', 'ltt_s', 'pct_tt_gt70')
METRIC_LABELS = ('AWT', 'LWT', '%WT>55', 'ATT', 'LTT', '%TT>70')


@dataclass(frozen=True)
class MetricVector:
    """The six timing metrics; every metric is 'lower is better'."""

    awt_s: float
    lwt_s: float
    pct_wt_gt55: float
    att_s: float
    ltt_s: float
    pct_tt_gt70: float

    def as_tuple(self) -> Tuple[float, ...]:
        return astuple(self)

    def as_dict(self) -> dict:
        return dict(zip(METRIC_NAMES, self.as_tuple()))

    @classmethod
    def from_values(cls, values: Iterable[float]) -> 'MetricVector':
        return cls(*(float(v) for v in values))


def compute_metrics(result: SimResult) -> MetricVector:
    """
    Compute AWT, LWT, %WT>55, ATT, LTT and %TT>70 of one run.

    Unserved passengers count with their waiting time truncated at the
    horizon. Transit metrics cover the passengers that boarded; when nobody
    boarded they are 0.

    Raises:
        ValueError: If the result holds no passengers
    """
    if len(result) == 0:
        raise ValueError(f"cannot compute metrics of empty result '{result.test_id}'")

    waits = result.waiting_times()
    transits = result.transit_times()

    if transits.size:
        att, ltt = float(transits.mean()), float(transits.max())
        pct_tt = 100.0 * float(np.count_nonzero(transits > TRANSIT_LIMIT_S)) / transits.size
    else:
        att = ltt = pct_tt = 0.0

    return MetricVector(
        awt_s=float(waits.mean()),
        lwt_s=float(waits.max()),
        pct_wt_gt55=100.0 * float(np.count_nonzero(waits > WAIT_LIMIT_S)) / waits.size,
        att_s=att,
        ltt_s=ltt,
        pct_tt_gt70=pct_tt,
    )


def worst_metrics(vectors: Iterable[MetricVector]) -> MetricVector:
    """Per-metric maximum over several runs."""
    rows = np.array([v.as_tuple() for v in vectors], dtype=float)
    if rows.size == 0:
        raise ValueError("no metric vectors to aggregate")
    return MetricVector.from_values(rows.max(axis=0))
