"""
Oracle thresholds and confidence values.

Each oracle maps its metric to a confidence in [-1, 0]:

    conf = -min(1, max(0, (value - threshold) / scale))

0 means the oracle passes, -1 the most severe contemplated failure.
"""

import logging
from dataclasses import dataclass
from typing import Dict, Iterable, Tuple

from ..utils.keyvalue import KeyValueError, format_key_values, parse_key_values
from .metrics import MetricVector, worst_metrics

logger = logging.getLogger(__name__)

ORACLE_NAMES = ('awt', 'lwt', 'wt55', 'att', 'ltt', 'tt70')

DEFAULT_THRESHOLDS = {'awt': 25.0, 'lwt': 120.0, 'wt55': 10.0, 'att': 45.0, 'ltt': 120.0, 'tt70': 10.0}
DEFAULT_SCALES = {'awt': 60.0, 'lwt': 300.0, 'wt55': 25.0, 'att': 60.0, 'ltt': 300.0, 'tt70': 25.0}


class OracleSpecError(ValueError):
    """Malformed oracle specification."""


@dataclass(frozen=True)
class OracleEntry:
    """Pass boundary and violation normalizer of one oracle."""

    threshold: float
    severity_scale: float

    def __post_init__(self):
        if self.severity_scale <= 0:
            raise OracleSpecError(f"severity_scale must be > 0, got {self.severity_scale}")


def confidence(metric_value: float, entry: OracleEntry) -> float:
    """Confidence of one oracle for one metric value, in [-1, 0]."""
    violation = (metric_value - entry.threshold) / entry.severity_scale
    # +0.0 turns the -0.0 of a pass into 0.0
    return -min(1.0, max(0.0, violation)) + 0.0


@dataclass(frozen=True)
class OracleSpec:
    """The six oracles in metric order (AWT, LWT, %WT>55, ATT, LTT, %TT>70)."""

    entries: Tuple[OracleEntry, ...]

    def __post_init__(self):
        if len(self.entries) != len(ORACLE_NAMES):
            raise OracleSpecError(f"expected {len(ORACLE_NAMES)} oracle entries, got {len(self.entries)}")

    @property
    def k(self) -> int:
        return len(self.entries)

    def entry(self, name: str) -> OracleEntry:
        return self.entries[ORACLE_NAMES.index(name)]

    def confidences(self, metrics: MetricVector) -> Tuple[float, ...]:
        return tuple(confidence(v, e) for v, e in zip(metrics.as_tuple(), self.entries))


def default_oracle_spec() -> OracleSpec:
    """Operational thresholds of the oracles."""
    return OracleSpec(tuple(OracleEntry(DEFAULT_THRESHOLDS[n], DEFAULT_SCALES[n]) for n in ORACLE_NAMES))


def experiment_oracle_spec() -> OracleSpec:
    """All thresholds 0: every patch fails, and improvement is measured by severity."""
    return OracleSpec(tuple(OracleEntry(0.0, DEFAULT_SCALES[n]) for n in ORACLE_NAMES))


def parse_oracle_spec(text: str) -> OracleSpec:
    """
    Parse `<oracle>.threshold = x` / `<oracle>.scale = y` lines.

    Omitted keys keep the default operational values.

    Raises:
        OracleSpecError: Unknown oracle or field, bad number, non-positive scale
    """
    try:
        raw = parse_key_values(text)
    except KeyValueError as e:
        raise OracleSpecError(str(e)) from None

    thresholds = dict(DEFAULT_THRESHOLDS)
    scales = dict(DEFAULT_SCALES)
    for key, value in raw.items():
        oracle, _, attr = key.partition('.')
        if oracle not in ORACLE_NAMES or attr not in ('threshold', 'scale'):
            raise OracleSpecError(f"unknown oracle key '{key}'")
        try:
            number = float(value)
        except ValueError:
            raise OracleSpecError(f"bad number for '{key}': {value!r}") from None
        (thresholds if attr == 'threshold' else scales)[oracle] = number

    return OracleSpec(tuple(OracleEntry(thresholds[n], scales[n]) for n in ORACLE_NAMES))


def serialize_oracle_spec(spec: OracleSpec) -> str:
    values: Dict[str, float] = {}
    for name, entry in zip(ORACLE_NAMES, spec.entries):
        values[f"{name}.threshold"] = float(entry.threshold)
        values[f"{name}.scale"] = float(entry.severity_scale)
    return format_key_values(values)


@dataclass(frozen=True)
class ScoreVector:
    """Per-oracle confidences of a patch plus the suite-worst metrics behind them."""

    conf: Tuple[float, ...]
    metrics: MetricVector

    def __post_init__(self):
        conf = tuple(float(c) for c in self.conf)
        if any(c < -1.0 or c > 0.0 for c in conf):
            raise ValueError(f"confidence values must lie in [-1, 0]: {conf}")
        object.__setattr__(self, 'conf', conf)

    @property
    def k(self) -> int:
        return len(self.conf)


def score_from_metrics(metrics: MetricVector, spec: OracleSpec) -> ScoreVector:
    return ScoreVector(conf=spec.confidences(metrics), metrics=metrics)


def aggregate_scores(per_case: Iterable[MetricVector], spec: OracleSpec) -> ScoreVector:
    """
    Suite score: per oracle the minimum confidence over the test cases.

    Confidence is non-increasing in every metric, so scoring the per-metric
    worst case gives exactly the per-oracle minimum.
    """
    return score_from_metrics(worst_metrics(per_case), spec)


def all_pass(score: ScoreVector) -> bool:
    """True when every oracle passes on every test case."""
    return all(c == 0.0 for c in score.conf)
