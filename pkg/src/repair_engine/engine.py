"""
Search-based misconfiguration repair.

Main loop:
    1. evaluate the initial configuration; it seeds the archive
    2. pick a parent uniformly at random from the archive
    3. derive a patch (suspiciousness-weighted parameter choice)
    4. score the patch on the failing suite
    5. classify its impact and update suspiciousness
    6. update the archive
until every oracle passes on every test case or the budget is spent.

The unguided baseline keeps every patch in an unfiltered archive and never
updates suspiciousness. The random baseline always mutates the initial
configuration.
"""

import logging
import time
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

import numpy as np

from ..config_model import Configuration
from ..elevator_sim import Building, TestCase
from ..oracles import (
    ORACLE_NAMES,
    OracleSpec,
    SuiteEvaluator,
    all_pass,
)
from .archive import Archive, ArchiveEntry, classify_impact
from .config import RepairConfig
from .patch_generator import generate_patch
from .run_log import EvaluationRecord, FrontSnapshot, RunSummary, archive_digest
from .suspiciousness import SuspTracker, priors_from_mapping

logger = logging.getLogger(__name__)

STOP_ALL_PASS = 'all_pass'
STOP_BUDGET_EVALS = 'budget_evals'
STOP_BUDGET_SECONDS = 'budget_seconds'


@dataclass
class RunLog:
    """Everything a repair run produced."""

    config: RepairConfig
    initial: ArchiveEntry
    archive: Archive
    tracker: SuspTracker
    records: List[EvaluationRecord] = field(default_factory=list)
    snapshots: List[FrontSnapshot] = field(default_factory=list)
    stop_reason: str = ''
    evaluations: int = 0
    elapsed_s: float = 0.0

    @property
    def run_id(self) -> str:
        return f"{self.config.mode}-{self.config.seed}"

    @property
    def solved(self) -> bool:
        return self.stop_reason == STOP_ALL_PASS

    def front(self) -> List[ArchiveEntry]:
        return self.archive.front()

    def final_suspiciousness(self) -> Dict[str, float]:
        names = self.initial.patch.space.names
        return {name: float(score) for name, score in zip(names, self.tracker.scores())}

    def snapshot_at(self, checkpoint: int) -> Optional[FrontSnapshot]:
        for snapshot in self.snapshots:
            if snapshot.checkpoint == checkpoint:
                return snapshot
        return None

    def summary(self) -> RunSummary:
        front = self.front()
        return RunSummary(
            mode=self.config.mode,
            seed=self.config.seed,
            evaluations=self.evaluations,
            stop_reason=self.stop_reason,
            archive_size=len(self.archive),
            front_size=len(front),
            initial_conf=list(self.initial.score.conf),
            best_awt_s=min(e.awt_s for e in self.archive),
            suspiciousness=self.final_suspiciousness(),
        )


class RepairEngine:
    """Coordinator of one repair run; owns the archive, tracker and RNG."""

    def __init__(self, initial: Configuration, evaluator: SuiteEvaluator,
                 config: Optional[RepairConfig] = None):
        self.initial = initial
        self.evaluator = evaluator
        self.config = config or RepairConfig()
        self.space = initial.space
        self.rng = np.random.default_rng(self.config.seed)

        priors = None
        if self.config.guided and self.config.priors:
            priors = priors_from_mapping(self.space, self.config.priors)
        self.tracker = SuspTracker(len(self.space), self.config.n_susp, priors)
        # non-guided modes keep every parameter equally likely
        self.uniform_scores = np.full(len(self.space), 0.5)

        k = len(ORACLE_NAMES)
        if self.config.guided:
            cap = self.config.archive_cap or 2 * k
        else:
            cap = self.config.unguided_cap
        self.archive = Archive(cap=cap, eviction=self.config.eviction)

    def _record(self, log: RunLog, entry: ArchiveEntry, impact: str, in_archive: bool) -> None:
        log.records.append(EvaluationRecord(
            eval_index=entry.eval_index,
            parent_index=entry.parent_index,
            mutated_params=[self.space.names[i] for i in entry.mutated],
            conf=list(entry.score.conf),
            metrics=entry.score.metrics.as_dict(),
            impact=impact,
            in_archive=in_archive,
            archive_size=len(self.archive),
            archive_hash=archive_digest(self.archive.entries),
        ))

    def _snapshot(self, log: RunLog, checkpoint: int) -> None:
        log.snapshots.append(FrontSnapshot(
            run_id=log.run_id,
            checkpoint=checkpoint,
            front=[list(e.score.conf) for e in self.archive.front()],
        ))

    def _pick_parent(self, initial: ArchiveEntry) -> ArchiveEntry:
        if self.config.mode == 'random':
            return initial
        return self.archive.entries[int(self.rng.integers(len(self.archive)))]

    def run(self) -> RunLog:
        """
        Execute the search.

        Returns:
            RunLog with the final archive, per-evaluation records and snapshots

        Raises:
            SuiteEvaluationError: A simulation failed (aborts the run)
        """
        cfg = self.config
        start = time.monotonic()
        checkpoints = list(cfg.checkpoints)

        initial_score = self.evaluator.evaluate(self.initial)
        initial = ArchiveEntry(patch=self.initial, score=initial_score, eval_index=0)
        self.archive.entries.append(initial)

        log = RunLog(config=cfg, initial=initial, archive=self.archive, tracker=self.tracker)
        self._record(log, initial, 'initial', True)

        logger.info(f"[INFO] Repair run {log.run_id}: budget {cfg.budget_evals} evaluations, "
                    f"initial conf {[round(c, 3) for c in initial_score.conf]}")

        evaluations = 0
        while checkpoints and checkpoints[0] <= evaluations:
            self._snapshot(log, checkpoints.pop(0))

        if all_pass(initial_score):
            logger.warning("[WARN] Initial configuration already passes every oracle")
            log.stop_reason = STOP_ALL_PASS
        else:
            while True:
                if evaluations >= cfg.budget_evals:
                    log.stop_reason = STOP_BUDGET_EVALS
                    break
                if cfg.budget_seconds is not None and time.monotonic() - start >= cfg.budget_seconds:
                    log.stop_reason = STOP_BUDGET_SECONDS
                    break

                parent = self._pick_parent(initial)
                scores = self.tracker if cfg.guided else self.uniform_scores
                patch, mutated = generate_patch(parent.patch, scores, self.rng)
                score = self.evaluator.evaluate(patch)
                evaluations += 1

                impact = classify_impact(score, parent.score, self.archive.entries)
                if cfg.guided:
                    self.tracker.record(mutated, impact)

                candidate = ArchiveEntry(
                    patch=patch,
                    score=score,
                    eval_index=evaluations,
                    parent_index=parent.eval_index,
                    mutated=mutated,
                    parent_score=parent.score,
                )
                if cfg.guided:
                    in_archive = self.archive.update_guided(candidate, self.rng)
                else:
                    in_archive = self.archive.update_unguided(candidate, self.rng)
                self._record(log, candidate, impact.value, in_archive)

                while checkpoints and checkpoints[0] <= evaluations:
                    self._snapshot(log, checkpoints.pop(0))

                if evaluations % cfg.log_every == 0:
                    logger.info(f"[INFO] {log.run_id}: {evaluations}/{cfg.budget_evals} evaluations, "
                                f"archive {len(self.archive)}, best AWT "
                                f"{min(e.awt_s for e in self.archive):.1f}s")

                if all_pass(score):
                    log.stop_reason = STOP_ALL_PASS
                    break

        # checkpoints past an early stop see the final front
        for checkpoint in checkpoints:
            self._snapshot(log, checkpoint)

        log.evaluations = evaluations
        log.elapsed_s = time.monotonic() - start
        logger.info(f"[OK] Repair run {log.run_id} stopped ({log.stop_reason}) after "
                    f"{evaluations} evaluations in {log.elapsed_s:.1f}s; archive {len(self.archive)}")
        return log


def repair(
    initial: Configuration,
    suite: Sequence[TestCase],
    repair_config: Optional[RepairConfig] = None,
    building: Optional[Building] = None,
    oracle_spec: Optional[OracleSpec] = None,
    evaluator: Optional[SuiteEvaluator] = None,
) -> RunLog:
    """
    Repair a misconfiguration against a failing test suite.

    Args:
        initial: The misconfigured system configuration
        suite: Failing test cases
        repair_config: Search settings (defaults from RepairConfig())
        building: Installation simulated by the suite
        oracle_spec: Oracle thresholds
        evaluator: Existing evaluator to reuse (overrides suite/building/oracle_spec)

    Returns:
        RunLog of the run
    """
    repair_config = repair_config or RepairConfig()
    if evaluator is not None:
        return RepairEngine(initial, evaluator, repair_config).run()
    with SuiteEvaluator(suite, building, oracle_spec, repair_config.workers) as owned:
        return RepairEngine(initial, owned, repair_config).run()

