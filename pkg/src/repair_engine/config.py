"""
Repair run configuration.
"""

import os
from dataclasses import dataclass, field
from typing import Dict, Optional, Tuple

MODES = ('guided', 'unguided', 'random')
EVICTION_POLICIES = ('max_awt', 'random', 'crowding')


@dataclass
class RepairConfig:
    """Settings of one repair run."""

    # Suspiciousness warm-up: mutations before a parameter leaves its prior
    n_susp: int = 5

    # Budget (evaluations beyond the initial configuration; optional wall clock)
    budget_evals: int = 500
    budget_seconds: Optional[float] = None

    seed: int = 0
    mode: str = 'guided'
    workers: Optional[int] = 1

    # Archive
    archive_cap: Optional[int] = None  # None -> 2 * number of oracles
    eviction: str = 'max_awt'
    unguided_cap: Optional[int] = None

    # Evaluation counts at which the non-dominated front is recorded
    checkpoints: Tuple[int, ...] = ()

    # Per-parameter suspiciousness used during warm-up instead of 0.5
    priors: Dict[str, float] = field(default_factory=dict)

    log_every: int = 50

    def __post_init__(self):
        self.validate()

    def validate(self) -> None:
        """
        Raises:
            ValueError: On an invalid setting
        """
        if self.n_susp < 1:
            raise ValueError(f"n_susp must be >= 1, got {self.n_susp}")
        if self.budget_evals < 1:
            raise ValueError(f"budget_evals must be >= 1, got {self.budget_evals}")
        if self.budget_seconds is not None and self.budget_seconds <= 0:
            raise ValueError(f"budget_seconds must be > 0, got {self.budget_seconds}")
        if self.mode not in MODES:
            raise ValueError(f"unknown mode '{self.mode}', expected one of {MODES}")
        if self.eviction not in EVICTION_POLICIES:
            raise ValueError(f"unknown eviction policy '{self.eviction}', expected one of {EVICTION_POLICIES}")
        if self.archive_cap is not None and self.archive_cap < 1:
            raise ValueError("archive_cap must be >= 1")
        if self.unguided_cap is not None and self.unguided_cap < 1:
            raise ValueError("unguided_cap must be >= 1")
        if self.workers is not None and self.workers < 1:
            raise ValueError("workers must be >= 1")
        if self.log_every < 1:
            raise ValueError("log_every must be >= 1")
        for name, prior in self.priors.items():
            if not 0.0 <= prior <= 1.0:
                raise ValueError(f"prior of '{name}' must lie in [0, 1], got {prior}")
        self.checkpoints = tuple(sorted(set(int(c) for c in self.checkpoints)))
        if any(c < 0 for c in self.checkpoints):
            raise ValueError("checkpoints must be non-negative evaluation counts")

    @property
    def guided(self) -> bool:
        return self.mode == 'guided'

    @classmethod
    def from_env(cls, **overrides) -> 'RepairConfig':
        """
        Load configuration from environment variables.

        Keyword arguments that are not None override the environment.
        """
        budget_seconds = os.getenv('REPAIR_BUDGET_SECONDS')
        workers = os.getenv('REPAIR_WORKERS')
        values = dict(
            n_susp=int(os.getenv('REPAIR_N_SUSP', '5')),
            budget_evals=int(os.getenv('REPAIR_BUDGET_EVALS', '500')),
            budget_seconds=float(budget_seconds) if budget_seconds else None,
            seed=int(os.getenv('REPAIR_SEED', '0')),
            mode=os.getenv('REPAIR_MODE', 'guided'),
            workers=int(workers) if workers else 1,
            log_every=int(os.getenv('REPAIR_LOG_EVERY', '50')),
        )
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)
