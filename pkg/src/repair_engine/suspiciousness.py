"""
Parameter suspiciousness.

A parameter's suspiciousness estimates how much it influences performance:

    ss_i = (P_i + N_i) / (P_i + N_i + S_i)

where P, N and S count mutations of the parameter that had a positive, a
negative or no impact. Until a parameter has been mutated n_susp times it
keeps its prior score (0.5 unless configured otherwise).
"""

import logging
from enum import Enum
from typing import Dict, Iterable, Mapping, Optional, Sequence

import numpy as np

from ..config_model import ParameterSpace
from ..utils.keyvalue import KeyValueError, parse_key_values

logger = logging.getLogger(__name__)

NEUTRAL_SCORE = 0.5


class Impact(str, Enum):
    """Effect of a patch compared with its parent."""

    POSITIVE = 'positive'
    NEGATIVE = 'negative'
    NONE = 'none'


class SuspTracker:
    """Per-parameter impact counters."""

    def __init__(self, n_params: int, n_susp: int = 5, priors: Optional[Sequence[float]] = None):
        if n_params < 1:
            raise ValueError("n_params must be >= 1")
        if n_susp < 1:
            raise ValueError("n_susp must be >= 1")
        self.n_susp = n_susp
        self.positive = np.zeros(n_params, dtype=np.int64)
        self.negative = np.zeros(n_params, dtype=np.int64)
        self.no_impact = np.zeros(n_params, dtype=np.int64)
        if priors is None:
            self.priors = np.full(n_params, NEUTRAL_SCORE)
        else:
            self.priors = np.asarray(priors, dtype=float)
            if self.priors.shape != (n_params,):
                raise ValueError(f"expected {n_params} priors, got {self.priors.shape}")

    def __len__(self) -> int:
        return len(self.positive)

    @property
    def times_mutated(self) -> np.ndarray:
        return self.positive + self.negative + self.no_impact

    def score(self, i: int) -> float:
        return suspiciousness(self, i)

    def scores(self) -> np.ndarray:
        return np.array([suspiciousness(self, i) for i in range(len(self))])

    def record(self, mutated: Iterable[int], impact: Impact) -> None:
        counters = {
            Impact.POSITIVE: self.positive,
            Impact.NEGATIVE: self.negative,
            Impact.NONE: self.no_impact,
        }[Impact(impact)]
        for i in mutated:
            counters[i] += 1

    def as_frame_rows(self, names: Sequence[str]) -> list:
        return [
            {
                'parameter': name,
                'positive': int(self.positive[i]),
                'negative': int(self.negative[i]),
                'no_impact': int(self.no_impact[i]),
                'times_mutated': int(self.times_mutated[i]),
                'suspiciousness': suspiciousness(self, i),
            }
            for i, name in enumerate(names)
        ]


def suspiciousness(tracker: SuspTracker, i: int) -> float:
    """Suspiciousness of parameter i in [0, 1]."""
    p, n, s = int(tracker.positive[i]), int(tracker.negative[i]), int(tracker.no_impact[i])
    if p + n + s < tracker.n_susp:
        return float(tracker.priors[i])
    return (p + n) / (p + n + s)


def update_suspiciousness(tracker: SuspTracker, mutated: Iterable[int], impact: Impact) -> SuspTracker:
    """Count the impact once for every mutated parameter."""
    tracker.record(mutated, impact)
    return tracker


def select_parameter(scores: Sequence[float], rng: np.random.Generator,
                     exclude: Iterable[int] = ()) -> int:
    """
    Roulette-wheel selection of a parameter index.

    P(i) = ss_i / sum(ss_j) over non-excluded indices. When every candidate
    scores 0 the choice is uniform over the candidates.

    Raises:
        ValueError: If every index is excluded
    """
    excluded = set(exclude)
    candidates = np.array([i for i in range(len(scores)) if i not in excluded], dtype=np.int64)
    if candidates.size == 0:
        raise ValueError("no parameter left to select: all candidates excluded")

    weights = np.asarray(scores, dtype=float)[candidates]
    total = float(weights.sum())
    if total <= 0.0:
        return int(candidates[rng.integers(candidates.size)])

    cumulative = np.cumsum(weights)
    r = rng.random() * total
    pick = int(np.searchsorted(cumulative, r, side='right'))
    return int(candidates[min(pick, candidates.size - 1)])


def priors_from_mapping(space: ParameterSpace, priors: Mapping[str, float]) -> np.ndarray:
    """Prior vector in space order; unnamed parameters keep 0.5."""
    unknown = [name for name in priors if not space.has(name)]
    if unknown:
        raise ValueError(f"prior given for unknown parameter '{unknown[0]}'")
    return np.array([float(priors.get(name, NEUTRAL_SCORE)) for name in space.names])


def parse_priors(text: str) -> Dict[str, float]:
    """
    Parse `<parameter> = <score>` lines.

    Raises:
        ValueError: Bad number or score outside [0, 1]
    """
    try:
        raw = parse_key_values(text)
    except KeyValueError as e:
        raise ValueError(str(e)) from None
    priors = {}
    for name, value in raw.items():
        try:
            score = float(value)
        except ValueError:
            raise ValueError(f"bad prior for '{name}': {value!r}") from None
        if not 0.0 <= score <= 1.0:
            raise ValueError(f"prior for '{name}' must lie in [0, 1], got {score}")
        priors[name] = score
    return priors
