"""
Unit tests for suite evaluation.
"""

import pytest

from src.elevator_sim import Building, Passenger, TestCase, generate_traffic, simulate
from src.oracles import (
    SuiteEvaluationError,
    SuiteEvaluator,
    aggregate_scores,
    compute_metrics,
    default_oracle_spec,
    score_suite,
)


@pytest.fixture
def suite(building):
    return [
        generate_traffic('up_peak', 40, 300.0, building, seed=1, test_id='up'),
        generate_traffic('inter_floor', 40, 300.0, building, seed=2, test_id='inter'),
    ]


class TestSuiteEvaluator:
    """Test suite for SuiteEvaluator."""

    def test_matches_direct_simulation(self, suite, building, dispatcher_config):
        expected = aggregate_scores(
            [compute_metrics(simulate(dispatcher_config, tc, building)) for tc in suite],
            default_oracle_spec(),
        )
        with SuiteEvaluator(suite, building) as evaluator:
            assert evaluator.evaluate(dispatcher_config) == expected
            assert evaluator.n_evaluations == 1
            evaluator.evaluate(dispatcher_config)
            assert evaluator.n_evaluations == 2

    def test_case_metrics_in_suite_order(self, suite, building, dispatcher_config):
        with SuiteEvaluator(suite, building) as evaluator:
            metrics = evaluator.evaluate_cases(dispatcher_config)
        assert metrics[1] == compute_metrics(simulate(dispatcher_config, suite[1], building))

    def test_worker_pool_gives_same_score(self, suite, building, dispatcher_config):
        with SuiteEvaluator(suite, building, workers=1) as inline:
            expected = inline.evaluate(dispatcher_config)
        with SuiteEvaluator(suite, building, workers=2) as pooled:
            assert pooled.workers == 2
            assert pooled.evaluate(dispatcher_config) == expected

    def test_workers_capped_by_suite_size(self, suite, building):
        with SuiteEvaluator(suite[:1], building, workers=8) as evaluator:
            assert evaluator.workers == 1

    def test_empty_suite(self, building):
        with pytest.raises(ValueError):
            SuiteEvaluator([], building)

    def test_failure_names_test_case(self, dispatcher_config):
        bad = TestCase(id='too_high', passengers=(Passenger(0.0, 1, 11, 70.0),))
        with SuiteEvaluator([bad], Building(floors=8)) as evaluator:
            with pytest.raises(SuiteEvaluationError) as exc:
                evaluator.evaluate(dispatcher_config)
        assert exc.value.test_id == 'too_high'
        assert 'too_high' in str(exc.value)

    def test_score_suite(self, suite, building, dispatcher_config):
        with SuiteEvaluator(suite, building) as evaluator:
            expected = evaluator.evaluate(dispatcher_config)
        assert score_suite(dispatcher_config, suite, building) == expected
