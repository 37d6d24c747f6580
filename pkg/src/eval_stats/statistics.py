"""
Statistics for comparing repair techniques over repeated runs.

- Vargha-Delaney A12: probability that a value drawn from A is larger than
  one drawn from B (ties count half).
- Effect-size categories on d = 2|A12 - 0.5|:
  negligible (d < 0.147), small (d < 0.33), medium (d < 0.474), large.
- Wilcoxon rank-sum (Mann-Whitney U) test through scipy: exact null distribution for small
  tie-free samples, normal approximation with tie and continuity correction
  otherwise.
"""

import logging
from bisect import bisect_right
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy import stats

logger = logging.getLogger(__name__)

EFFECT_LEVELS = (0.147, 0.33, 0.474)
EFFECT_CATEGORIES = ('negligible', 'small', 'medium', 'large')
EXACT_MAX_N = 20
ALTERNATIVES = ('two-sided', 'greater', 'less')


class StatisticsError(ValueError):
    """Invalid input to a statistic (empty sample, point below reference...)."""


@dataclass(frozen=True)
class StatResult:
    """Effect size and significance of A versus B."""

    a12: float
    p_value: float
    effect_category: str

    @property
    def significant(self) -> bool:
        return self.p_value < 0.05


def _as_sample(values: Sequence[float], name: str) -> np.ndarray:
    sample = np.asarray(values, dtype=float).ravel()
    if sample.size == 0:
        raise StatisticsError(f"sample {name} is empty")
    return sample


def vargha_delaney_a12(sample_a: Sequence[float], sample_b: Sequence[float]) -> float:
    """
    A12 = (#{a > b} + 0.5 * #{a == b}) / (|A| * |B|) over all pairs.

    Raises:
        StatisticsError: Empty sample
    """
    a = _as_sample(sample_a, 'A')
    b = _as_sample(sample_b, 'B')
    greater = np.count_nonzero(a[:, None] > b[None, :])
    equal = np.count_nonzero(a[:, None] == b[None, :])
    return (greater + 0.5 * equal) / (a.size * b.size)


def romano_category(d: float) -> str:
    """Effect-size category of d = 2|A12 - 0.5|."""
    return EFFECT_CATEGORIES[bisect_right(EFFECT_LEVELS, abs(d))]


def effect_category(a12: float) -> str:
    return romano_category(2.0 * abs(a12 - 0.5))


def wilcoxon_rank_sum(sample_a: Sequence[float], sample_b: Sequence[float],
                      alternative: str = 'two-sided') -> float:
    """
    Wilcoxon rank-sum test of A against B.

    Small tie-free samples (combined size up to EXACT_MAX_N) use the exact
    null distribution; otherwise the normal approximation with tie and
    continuity correction.

    Args:
        sample_a: First sample
        sample_b: Second sample
        alternative: 'two-sided', 'greater' (A tends to be larger) or 'less'

    Returns:
        p-value (1.0 when every value is identical)

    Raises:
        StatisticsError: Empty sample or unknown alternative
    """
    if alternative not in ALTERNATIVES:
        raise StatisticsError(f"unknown alternative '{alternative}', expected one of {ALTERNATIVES}")
    a = _as_sample(sample_a, 'A')
    b = _as_sample(sample_b, 'B')

    combined = np.concatenate([a, b])
    if np.all(combined == combined[0]):
        return 1.0

    has_ties = np.unique(combined).size < combined.size
    method = 'exact' if combined.size <= EXACT_MAX_N and not has_ties else 'asymptotic'
    result = stats.mannwhitneyu(a, b, alternative=alternative, method=method, use_continuity=True)
    return float(result.pvalue)


def compare_samples(sample_a: Sequence[float], sample_b: Sequence[float]) -> StatResult:
    """A12, two-sided rank-sum p-value and effect category of A versus B."""
    a12 = vargha_delaney_a12(sample_a, sample_b)
    return StatResult(
        a12=a12,
        p_value=wilcoxon_rank_sum(sample_a, sample_b),
        effect_category=effect_category(a12),
    )
