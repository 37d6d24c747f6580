"""
Test oracles: timing metrics, confidence values and suite scoring.
"""

from .confidence import (
    DEFAULT_SCALES,
    DEFAULT_THRESHOLDS,
    ORACLE_NAMES,
    OracleEntry,
    OracleSpec,
    OracleSpecError,
    ScoreVector,
    aggregate_scores,
    all_pass,
    confidence,
    default_oracle_spec,
    experiment_oracle_spec,
    parse_oracle_spec,
    score_from_metrics,
    serialize_oracle_spec,
)
from .metrics import METRIC_LABELS, METRIC_NAMES, MetricVector, compute_metrics, worst_metrics
from .suite import SuiteEvaluationError, SuiteEvaluator, score_suite

__all__ = [
    'DEFAULT_SCALES',
    'DEFAULT_THRESHOLDS',
    'ORACLE_NAMES',
    'OracleEntry',
    'OracleSpec',
    'OracleSpecError',
    'ScoreVector',
    'aggregate_scores',
    'all_pass',
    'confidence',
    'default_oracle_spec',
    'experiment_oracle_spec',
    'parse_oracle_spec',
    'score_from_metrics',
    'serialize_oracle_spec',
    'METRIC_LABELS',
    'METRIC_NAMES',
    'MetricVector',
    'compute_metrics',
    'worst_metrics',
    'SuiteEvaluationError',
    'SuiteEvaluator',
    'score_suite',
]
