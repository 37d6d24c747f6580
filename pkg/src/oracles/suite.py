"""
Scoring a configuration against a test suite.

Test cases of one suite are independent simulations, so they can be spread
over a process pool. The pool lives as long as the evaluator, and the suite
is shipped to each worker once through the pool initializer.
"""

import logging
import os
from concurrent.futures import ProcessPoolExecutor, as_completed
from typing import Dict, List, Optional, Sequence

from ..config_model import Configuration
from ..elevator_sim import Building, SimulationError, TestCase, simulate
from .confidence import OracleSpec, ScoreVector, aggregate_scores, default_oracle_spec
from .metrics import MetricVector, compute_metrics

logger = logging.getLogger(__name__)


class SuiteEvaluationError(RuntimeError):
    """A simulation of the suite failed; names the test case."""

    def __init__(self, test_id: str, cause: Exception):
        super().__init__(f"test case '{test_id}': {cause}")
        self.test_id = test_id
        self.cause = cause


_worker_state: Dict[str, object] = {}


def _init_worker(suite: Sequence[TestCase], building: Building, seed: int) -> None:
    _worker_state['suite'] = tuple(suite)
    _worker_state['building'] = building
    _worker_state['seed'] = seed


def _run_case(config: Configuration, index: int) -> MetricVector:
    tc = _worker_state['suite'][index]
    result = simulate(config, tc, _worker_state['building'], seed=_worker_state['seed'])
    return compute_metrics(result)


class SuiteEvaluator:
    """
    Reusable suite scorer.

    Example:
        >>> with SuiteEvaluator(suite, building, spec, workers=4) as evaluator:
        ...     score = evaluator.evaluate(config)
    """

    def __init__(
        self,
        suite: Sequence[TestCase],
        building: Optional[Building] = None,
        oracle_spec: Optional[OracleSpec] = None,
        workers: Optional[int] = 1,
        seed: int = 0,
    ):
        """
        Args:
            suite: Test cases to simulate (non-empty)
            building: Installation (defaults to the 3-car, 12-floor building)
            oracle_spec: Oracle thresholds (defaults to operational values)
            workers: Worker processes; 1 evaluates inline, None uses all cores
            seed: Simulator seed shared by every test case
        """
        if not suite:
            raise ValueError("test suite must not be empty")
        self.suite = tuple(suite)
        self.building = building or Building()
        self.oracle_spec = oracle_spec or default_oracle_spec()
        self.seed = seed
        workers = workers or os.cpu_count() or 1
        self.workers = max(1, min(workers, len(self.suite)))
        self.n_evaluations = 0
        self._pool: Optional[ProcessPoolExecutor] = None

        if self.workers > 1:
            self._pool = ProcessPoolExecutor(
                max_workers=self.workers,
                initializer=_init_worker,
                initargs=(self.suite, self.building, self.seed),
            )
            logger.debug(f"[INFO] Suite evaluator started {self.workers} workers")

    def __enter__(self) -> 'SuiteEvaluator':
        return self

    def __exit__(self, exc_type, exc_val, exc_tb) -> None:
        self.close()

    def close(self) -> None:
        if self._pool is not None:
            self._pool.shutdown(wait=True)
            self._pool = None

    def evaluate_cases(self, config: Configuration) -> List[MetricVector]:
        """
        Metrics of every test case, in suite order.

        Raises:
            SuiteEvaluationError: A simulation failed (tagged with the test-case id)
        """
        if self._pool is None:
            metrics = []
            for tc in self.suite:
                try:
                    result = simulate(config, tc, self.building, seed=self.seed)
                    metrics.append(compute_metrics(result))
                except (SimulationError, ValueError) as e:
                    raise SuiteEvaluationError(tc.id, e) from e
            return metrics

        results: List[Optional[MetricVector]] = [None] * len(self.suite)
        futures = {self._pool.submit(_run_case, config, i): i for i in range(len(self.suite))}
        for future in as_completed(futures):
            i = futures[future]
            try:
                results[i] = future.result()
            except (SimulationError, ValueError) as e:
                for other in futures:
                    other.cancel()
                raise SuiteEvaluationError(self.suite[i].id, e) from e
        return results

    def evaluate(self, config: Configuration) -> ScoreVector:
        """Suite ScoreVector of one configuration."""
        score = aggregate_scores(self.evaluate_cases(config), self.oracle_spec)
        self.n_evaluations += 1
        return score


def score_suite(
    patch: Configuration,
    suite: Sequence[TestCase],
    building: Optional[Building] = None,
    oracle_spec: Optional[OracleSpec] = None,
    workers: Optional[int] = 1,
    seed: int = 0,
) -> ScoreVector:
    """
    Score one configuration on a suite.

    Per oracle, the confidence is the minimum over the test cases; the stored
    metrics are the per-metric worst values.
    """
    with SuiteEvaluator(suite, building, oracle_spec, workers, seed) as evaluator:
        return evaluator.evaluate(patch)
