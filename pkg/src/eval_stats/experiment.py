"""
Multi-run experiments: repeated seeded repair runs per mode, compared by
hypervolume at checkpoints, by the decision maker's patches and against a
set of manual patches.
"""

import logging
import os
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from ..config_model import Configuration
from ..decision_maker import DmThresholds, decide_with_trace
from ..elevator_sim import Scenario
from ..oracles import MetricVector, OracleSpec, ScoreVector, SuiteEvaluator, experiment_oracle_spec
from ..repair_engine import (
    MODES,
    ArchiveEntry,
    ConfirmationResult,
    RepairConfig,
    RepairEngine,
    confirm_patch,
    non_dominated_filter,
)
from .hypervolume import hypervolume

logger = logging.getLogger(__name__)

MODE_LABELS = {'guided': 'Repair', 'unguided': 'Baseline', 'random': 'Random'}
DEFAULT_CHECKPOINT_COUNT = 5


class ExperimentError(RuntimeError):
    """A run of the experiment failed; names the mode and seed."""


@dataclass
class ExperimentConfig:
    """Settings of a multi-run experiment."""

    runs: int = 10
    budget_evals: int = 500
    modes: Tuple[str, ...] = ('guided', 'unguided')
    checkpoints: Tuple[int, ...] = ()
    base_seed: int = 0
    workers: Optional[int] = None
    n_susp: int = 5
    eviction: str = 'max_awt'
    unguided_cap: Optional[int] = None
    priors: Dict[str, float] = field(default_factory=dict)
    oracle_spec: Optional[OracleSpec] = None
    dm_thresholds: DmThresholds = field(default_factory=DmThresholds)
    confirm: bool = True

    def __post_init__(self):
        if self.runs < 1:
            raise ValueError("runs must be >= 1")
        if self.budget_evals < 1:
            raise ValueError("budget_evals must be >= 1")
        if not self.modes:
            raise ValueError("at least one mode is required")
        for mode in self.modes:
            if mode not in MODES:
                raise ValueError(f"unknown mode '{mode}', expected one of {MODES}")
        if len(set(self.modes)) != len(self.modes):
            raise ValueError("modes must not repeat")
        self.modes = tuple(self.modes)
        if self.oracle_spec is None:
            self.oracle_spec = experiment_oracle_spec()

    def resolved_checkpoints(self) -> Tuple[int, ...]:
        """Checkpoints within the budget; the final evaluation count is always one."""
        if self.checkpoints:
            points = {int(c) for c in self.checkpoints if 0 < int(c) <= self.budget_evals}
        else:
            step = max(1, self.budget_evals // DEFAULT_CHECKPOINT_COUNT)
            points = set(range(step, self.budget_evals + 1, step))
        points.add(self.budget_evals)
        return tuple(sorted(points))

    def seeds(self) -> List[int]:
        return [self.base_seed + r for r in range(self.runs)]

    def repair_config(self, mode: str, seed: int) -> RepairConfig:
        return RepairConfig(
            n_susp=self.n_susp,
            budget_evals=self.budget_evals,
            seed=seed,
            mode=mode,
            workers=1,
            eviction=self.eviction,
            unguided_cap=self.unguided_cap,
            checkpoints=self.resolved_checkpoints(),
            priors=dict(self.priors),
            log_every=max(1, self.budget_evals),
        )


@dataclass
class RunOutcome:
    """Compact, picklable result of one repair run."""

    mode: str
    seed: int
    evaluations: int
    stop_reason: str
    hv_by_checkpoint: Dict[int, float]
    final_front: List[List[float]]
    dm_eval_index: int
    dm_patch: Configuration
    dm_score: ScoreVector
    dm_trace: List[str]
    suspiciousness: Dict[str, float]
    confirmation: Optional[ConfirmationResult] = None

    @property
    def dm_metrics(self) -> MetricVector:
        return self.dm_score.metrics


@dataclass
class ManualResult:
    """Scores of the manual patches and the decision maker's pick among them."""

    names: List[str]
    scores: List[ScoreVector]
    front_names: List[str]
    hv: float
    dm_name: str
    dm_score: ScoreVector


@dataclass
class ExperimentReport:
    """Outcome of run_experiment."""

    scenario: str
    config: ExperimentConfig
    checkpoints: Tuple[int, ...]
    misconf_score: ScoreVector
    outcomes: List[RunOutcome]
    manual: Optional[ManualResult] = None

    def runs_of(self, mode: str) -> List[RunOutcome]:
        return [o for o in self.outcomes if o.mode == mode]

    def hv_samples(self, mode: str, checkpoint: int) -> List[float]:
        return [o.hv_by_checkpoint[checkpoint] for o in self.runs_of(mode)]


def run_single(scenario: Scenario, mode: str, seed: int, config: ExperimentConfig) -> RunOutcome:
    """One seeded repair run with DM choice and patch confirmation."""
    repair_config = config.repair_config(mode, seed)
    with SuiteEvaluator(scenario.suite, scenario.building, config.oracle_spec, workers=1) as evaluator:
        log = RepairEngine(scenario.misconfiguration, evaluator, repair_config).run()

    hv_by_checkpoint = {s.checkpoint: hypervolume(s.front) for s in log.snapshots}
    front = log.front()
    chosen, trace = decide_with_trace(front, scenario.misconfiguration, config.dm_thresholds)

    confirmation = None
    if config.confirm and scenario.validation_suite:
        with SuiteEvaluator(scenario.validation_suite, scenario.building, config.oracle_spec,
                            workers=1) as validator:
            confirmation = confirm_patch(chosen.patch, scenario.misconfiguration, validator)

    return RunOutcome(
        mode=mode,
        seed=seed,
        evaluations=log.evaluations,
        stop_reason=log.stop_reason,
        hv_by_checkpoint=hv_by_checkpoint,
        final_front=[list(e.score.conf) for e in front],
        dm_eval_index=chosen.eval_index,
        dm_patch=chosen.patch,
        dm_score=chosen.score,
        dm_trace=trace,
        suspiciousness=log.final_suspiciousness(),
        confirmation=confirmation,
    )


def _run_job(args) -> RunOutcome:
    scenario, mode, seed, config = args
    return run_single(scenario, mode, seed, config)


def evaluate_manual_patches(
    patches: Sequence[Tuple[str, Configuration]],
    scenario: Scenario,
    config: ExperimentConfig,
) -> ManualResult:
    """
    Score manual patches on the scenario suite, keep the non-dominated ones,
    and let the decision maker pick one of them.
    """
    if not patches:
        raise ValueError("no manual patches given")
    with SuiteEvaluator(scenario.suite, scenario.building, config.oracle_spec,
                        workers=config.workers) as evaluator:
        scores = [evaluator.evaluate(patch) for _, patch in patches]

    entries = [ArchiveEntry(patch=patch, score=score, eval_index=i + 1)
               for i, ((_, patch), score) in enumerate(zip(patches, scores))]
    front_idx = non_dominated_filter([s.conf for s in scores])
    front = [entries[i] for i in front_idx]
    chosen, _ = decide_with_trace(front, scenario.misconfiguration, config.dm_thresholds)

    names = [name for name, _ in patches]
    result = ManualResult(
        names=names,
        scores=scores,
        front_names=[names[i] for i in front_idx],
        hv=hypervolume([s.conf for s in scores]),
        dm_name=names[chosen.eval_index - 1],
        dm_score=chosen.score,
    )
    logger.info(f"[INFO] Manual patches: {len(front)}/{len(patches)} non-dominated, "
                f"HV {result.hv:.6f}, DM pick '{result.dm_name}'")
    return result


def run_experiment(
    scenario: Scenario,
    config: Optional[ExperimentConfig] = None,
    manual_patches: Optional[Sequence[Tuple[str, Configuration]]] = None,
) -> ExperimentReport:
    """
    Run every mode `config.runs` times with seeds base_seed + r.

    Args:
        scenario: Building, suite, validation suite and misconfiguration
        config: Experiment settings
        manual_patches: (name, configuration) pairs to compare against;
            defaults to the scenario's own manual patches

    Returns:
        ExperimentReport with outcomes ordered by mode then seed

    Raises:
        ExperimentError: A run failed (message names mode and seed)
    """
    config = config or ExperimentConfig()
    checkpoints = config.resolved_checkpoints()
    jobs = [(mode, seed) for mode in config.modes for seed in config.seeds()]

    logger.info("=" * 60)
    logger.info(f"EXPERIMENT: {scenario.name}")
    logger.info("=" * 60)
    logger.info(f"[INFO] Modes: {', '.join(config.modes)}; runs: {config.runs}; "
                f"budget: {config.budget_evals} evaluations; checkpoints: {list(checkpoints)}")

    with SuiteEvaluator(scenario.suite, scenario.building, config.oracle_spec,
                        workers=config.workers) as evaluator:
        misconf_score = evaluator.evaluate(scenario.misconfiguration)

    results: Dict[Tuple[str, int], RunOutcome] = {}
    workers = min(config.workers or os.cpu_count() or 1, len(jobs))
    if workers <= 1:
        for mode, seed in jobs:
            try:
                results[(mode, seed)] = run_single(scenario, mode, seed, config)
            except Exception as e:
                raise ExperimentError(f"run mode={mode} seed={seed} failed: {e}") from e
            logger.info(f"[OK] Run {mode} seed {seed} finished")
    else:
        with ProcessPoolExecutor(max_workers=workers) as executor:
            futures = {executor.submit(_run_job, (scenario, mode, seed, config)): (mode, seed)
                       for mode, seed in jobs}
            for future in as_completed(futures):
                mode, seed = futures[future]
                try:
                    results[(mode, seed)] = future.result()
                except Exception as e:
                    for other in futures:
                        other.cancel()
                    raise ExperimentError(f"run mode={mode} seed={seed} failed: {e}") from e
                logger.info(f"[OK] Run {mode} seed {seed} finished ({len(results)}/{len(jobs)})")

    patches = list(manual_patches) if manual_patches is not None else list(scenario.manual_patches)
    manual = evaluate_manual_patches(patches, scenario, config) if patches else None

    report = ExperimentReport(
        scenario=scenario.name,
        config=config,
        checkpoints=checkpoints,
        misconf_score=misconf_score,
        outcomes=[results[job] for job in jobs],
        manual=manual,
    )

    logger.info("=" * 60)
    logger.info("EXPERIMENT SUMMARY")
    logger.info("=" * 60)
    final = checkpoints[-1]
    for mode in config.modes:
        samples = report.hv_samples(mode, final)
        logger.info(f"  {mode:<10} mean final HV: {sum(samples) / len(samples):.6f}")
    if manual is not None:
        logger.info(f"  {'manual':<10} HV: {manual.hv:.6f}")
        if manual.hv > 0:
            for mode in config.modes:
                samples = report.hv_samples(mode, final)
                gain = (sum(samples) / len(samples) - manual.hv) / manual.hv * 100.0
                logger.info(f"  {mode:<10} vs manual: {gain:+.1f}% HV")
    return report
