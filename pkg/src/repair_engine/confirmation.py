"""
Patch confirmation: regression re-test on a held-out validation suite.

A patch is confirmed when no oracle confidence falls below the value the
original configuration obtains on the same suite.
"""

import logging
from dataclasses import dataclass
from typing import List, Tuple

from ..config_model import Configuration
from ..oracles import ORACLE_NAMES, ScoreVector, SuiteEvaluator

logger = logging.getLogger(__name__)

CONFIRMATION_TOLERANCE = 1e-9


@dataclass(frozen=True)
class ConfirmationResult:
    """Verdict of a regression re-test."""

    confirmed: bool
    patch_score: ScoreVector
    original_score: ScoreVector
    regressions: Tuple[str, ...] = ()

    def describe(self) -> List[str]:
        lines = []
        for name, p, o in zip(ORACLE_NAMES, self.patch_score.conf, self.original_score.conf):
            mark = 'REGRESSION' if name in self.regressions else 'ok'
            lines.append(f"{name:>5}: patch {p:+.4f} vs original {o:+.4f} [{mark}]")
        return lines


def confirm_patch(patch: Configuration, original: Configuration,
                  evaluator: SuiteEvaluator) -> ConfirmationResult:
    """
    Re-score a patch and the original configuration on a validation suite.

    Args:
        patch: Selected patch
        original: The misconfigured configuration
        evaluator: Evaluator over the validation suite

    Returns:
        ConfirmationResult listing the oracles on which the patch regresses
    """
    patch_score = evaluator.evaluate(patch)
    original_score = evaluator.evaluate(original)
    regressions = tuple(
        name for name, p, o in zip(ORACLE_NAMES, patch_score.conf, original_score.conf)
        if p < o - CONFIRMATION_TOLERANCE
    )
    result = ConfirmationResult(
        confirmed=not regressions,
        patch_score=patch_score,
        original_score=original_score,
        regressions=regressions,
    )
    if result.confirmed:
        logger.info("[OK] Patch confirmed on the validation suite")
    else:
        logger.warning(f"[WARN] Patch regresses on validation oracle(s): {', '.join(regressions)}")
    return result
