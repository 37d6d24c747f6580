"""
Evaluation harness: hypervolume, rank statistics and multi-run experiments.
"""

from ..repair_engine import FrontSnapshot, non_dominated_filter
from .experiment import (
    MODE_LABELS,
    ExperimentConfig,
    ExperimentError,
    ExperimentReport,
    ManualResult,
    RunOutcome,
    evaluate_manual_patches,
    run_experiment,
    run_single,
)
from .hypervolume import hypervolume
from .report import (
    ExperimentSummary,
    ManualComparison,
    ModeComparison,
    SuspiciousnessSummary,
    build_summary,
    compare_modes,
    compare_with_manual,
    hv_stats_table,
    hv_table,
    metric_means_table,
    metric_stats_table,
    suspiciousness_summary,
    write_report,
)
from .statistics import (
    EFFECT_CATEGORIES,
    EFFECT_LEVELS,
    StatisticsError,
    StatResult,
    compare_samples,
    effect_category,
    romano_category,
    vargha_delaney_a12,
    wilcoxon_rank_sum,
)

__all__ = [
    'MODE_LABELS',
    'ExperimentConfig',
    'ExperimentError',
    'ExperimentReport',
    'ManualResult',
    'RunOutcome',
    'evaluate_manual_patches',
    'run_experiment',
    'run_single',
    'hypervolume',
    'ExperimentSummary',
    'ManualComparison',
    'ModeComparison',
    'SuspiciousnessSummary',
    'build_summary',
    'compare_modes',
    'compare_with_manual',
    'hv_stats_table',
    'hv_table',
    'metric_means_table',
    'metric_stats_table',
    'suspiciousness_summary',
    'write_report',
    'EFFECT_CATEGORIES',
    'EFFECT_LEVELS',
    'StatisticsError',
    'StatResult',
    'compare_samples',
    'effect_category',
    'romano_category',
    'vargha_delaney_a12',
    'wilcoxon_rank_sum',
    'FrontSnapshot',
    'non_dominated_filter',
]
