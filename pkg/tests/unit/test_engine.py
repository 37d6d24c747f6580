"""
Unit tests for the repair loop
"""

import itertools

import pytest

from src.config_model import Configuration
from src.oracles import ScoreVector
from src.repair_engine import (
    STOP_ALL_PASS,
    STOP_BUDGET_EVALS,
    STOP_BUDGET_SECONDS,
    RepairConfig,
    RepairEngine,
    repair,
)
from tests.conftest import AnalyticEvaluator


class NeverPassingEvaluator(AnalyticEvaluator):
    """Analytic problem with one oracle that always fails."""

    def evaluate(self, config):
        score = super().evaluate(config)
        conf = score.conf[:3] + (-0.1,) + score.conf[4:]
        return ScoreVector(conf, score.metrics)


@pytest.fixture
def never_passing():
    return NeverPassingEvaluator()


@pytest.fixture
def passing_config(small_space):
    return Configuration(small_space, (1.0, 4, False, 'distributed'))


class TestRepairConfig:
    """Test suite for RepairConfig."""

    def test_defaults(self):
        config = RepairConfig()
        assert config.n_susp == 5
        assert config.budget_evals == 500
        assert config.mode == 'guided'
        assert config.guided

    @pytest.mark.parametrize("kwargs", [
        {'mode': 'bogus'},
        {'budget_evals': 0},
        {'n_susp': 0},
        {'budget_seconds': 0},
        {'eviction': 'oldest'},
        {'priors': {'weight': 1.5}},
        {'checkpoints': (-1, 5)},
        {'workers': 0},
    ])
    def test_invalid_settings(self, kwargs):
        with pytest.raises(ValueError):
            RepairConfig(**kwargs)

    def test_checkpoints_sorted_and_unique(self):
        assert RepairConfig(checkpoints=(20, 10, 10)).checkpoints == (10, 20)

    def test_from_env(self, monkeypatch):
        monkeypatch.setenv('REPAIR_BUDGET_EVALS', '42')
        monkeypatch.setenv('REPAIR_MODE', 'unguided')
        monkeypatch.setenv('REPAIR_BUDGET_SECONDS', '12.5')

        config = RepairConfig.from_env(seed=3, budget_evals=None)

        assert config.budget_evals == 42
        assert config.mode == 'unguided'
        assert config.budget_seconds == 12.5
        assert config.seed == 3

    def test_from_env_override_wins(self, monkeypatch):
        monkeypatch.setenv('REPAIR_MODE', 'unguided')
        assert RepairConfig.from_env(mode='random').mode == 'random'


class TestRepairEngine:
    """Test suite for RepairEngine.run."""

    def test_budget_stop(self, failing_config, never_passing):
        log = RepairEngine(failing_config, never_passing, RepairConfig(budget_evals=25, seed=1)).run()

        assert log.stop_reason == STOP_BUDGET_EVALS
        assert log.evaluations == 25
        assert len(log.records) == 26
        assert log.records[0].impact == 'initial'
        assert log.records[0].eval_index == 0
        assert [r.eval_index for r in log.records] == list(range(26))
        assert never_passing.n_evaluations == 26

    def test_records_name_mutated_parameters(self, failing_config, never_passing, small_space):
        log = RepairEngine(failing_config, never_passing, RepairConfig(budget_evals=20)).run()
        for record in log.records[1:]:
            assert record.mutated_params
            assert set(record.mutated_params) <= set(small_space.names)
            assert len(set(record.mutated_params)) == len(record.mutated_params)
            assert record.impact in ('positive', 'negative', 'none')

    def test_solves_analytic_problem(self, failing_config, analytic_evaluator):
        log = RepairEngine(failing_config, analytic_evaluator,
                           RepairConfig(budget_evals=3000, seed=0)).run()

        assert log.stop_reason == STOP_ALL_PASS
        assert log.solved
        assert log.evaluations <= 3000
        winner = log.records[-1]
        assert all(c == 0.0 for c in winner.conf)

    def test_initial_already_passing(self, passing_config, analytic_evaluator):
        log = RepairEngine(passing_config, analytic_evaluator,
                           RepairConfig(budget_evals=10, checkpoints=(0, 5))).run()

        assert log.stop_reason == STOP_ALL_PASS
        assert log.evaluations == 0
        assert len(log.records) == 1
        assert [s.checkpoint for s in log.snapshots] == [0, 5]
        assert log.snapshots[1].front == [[0.0] * 6]

    def test_deterministic_for_seed(self, failing_config):
        def run():
            return RepairEngine(failing_config, NeverPassingEvaluator(),
                                RepairConfig(budget_evals=40, seed=11)).run()

        first, second = run(), run()
        assert [r.model_dump() for r in first.records] == [r.model_dump() for r in second.records]

    def test_seed_changes_trajectory(self, failing_config):
        logs = [RepairEngine(failing_config, NeverPassingEvaluator(),
                             RepairConfig(budget_evals=40, seed=seed)).run() for seed in (1, 2)]
        assert [r.model_dump() for r in logs[0].records] != [r.model_dump() for r in logs[1].records]

    def test_guided_archive_is_capped_and_non_dominated(self, failing_config, never_passing):
        engine = RepairEngine(failing_config, never_passing, RepairConfig(budget_evals=200, seed=4))
        log = engine.run()

        assert len(log.archive) <= 12
        assert log.archive.is_non_dominated()
        assert all(r.archive_size <= 12 for r in log.records)

    def test_unguided_keeps_every_patch(self, failing_config, never_passing):
        log = RepairEngine(failing_config, never_passing,
                           RepairConfig(budget_evals=30, mode='unguided')).run()

        assert len(log.archive) == log.evaluations + 1
        assert log.tracker.times_mutated.sum() == 0
        assert all(r.in_archive for r in log.records)

    def test_unguided_cap(self, failing_config, never_passing):
        log = RepairEngine(failing_config, never_passing,
                           RepairConfig(budget_evals=30, mode='unguided', unguided_cap=5)).run()
        assert len(log.archive) == 5

    def test_random_mode_mutates_initial(self, failing_config, never_passing):
        log = RepairEngine(failing_config, never_passing,
                           RepairConfig(budget_evals=30, mode='random')).run()

        assert all(r.parent_index == 0 for r in log.records[1:])
        assert log.tracker.times_mutated.sum() == 0

    def test_guided_updates_suspiciousness(self, failing_config, never_passing):
        log = RepairEngine(failing_config, never_passing, RepairConfig(budget_evals=30)).run()
        mutations = sum(len(r.mutated_params) for r in log.records[1:])
        assert log.tracker.times_mutated.sum() == mutations

    def test_checkpoints(self, failing_config, never_passing):
        log = RepairEngine(failing_config, never_passing,
                           RepairConfig(budget_evals=20, checkpoints=(0, 10, 20))).run()

        assert [s.checkpoint for s in log.snapshots] == [0, 10, 20]
        assert log.snapshot_at(10).run_id == 'guided-0'
        assert log.snapshot_at(0).front == [list(log.initial.score.conf)]
        assert log.snapshot_at(7) is None

    def test_checkpoint_beyond_budget_gets_final_front(self, failing_config, never_passing):
        log = RepairEngine(failing_config, never_passing,
                           RepairConfig(budget_evals=10, checkpoints=(50,))).run()
        final = sorted(list(e.score.conf) for e in log.front())
        assert sorted(log.snapshot_at(50).front) == final

    def test_wall_clock_budget(self, failing_config, never_passing, mocker):
        clock = mocker.patch('src.repair_engine.engine.time')
        clock.monotonic.side_effect = itertools.count(0.0, 1.0)

        log = RepairEngine(failing_config, never_passing,
                           RepairConfig(budget_evals=100, budget_seconds=2.5)).run()

        assert log.stop_reason == STOP_BUDGET_SECONDS
        assert log.evaluations == 2

    def test_evaluator_called_once_per_evaluation(self, failing_config, never_passing, mocker):
        spy = mocker.spy(never_passing, 'evaluate')
        log = RepairEngine(failing_config, never_passing, RepairConfig(budget_evals=15)).run()
        assert spy.call_count == log.evaluations + 1

    def test_priors_steer_first_mutation(self, failing_config, never_passing):
        priors = {'weight': 0.0, 'stops': 0.0, 'zoning': 0.0, 'parking': 1.0}
        log = RepairEngine(failing_config, never_passing,
                           RepairConfig(budget_evals=1, priors=priors)).run()
        assert log.records[1].mutated_params[0] == 'parking'

    def test_unknown_prior_rejected(self, failing_config, never_passing):
        with pytest.raises(ValueError, match="unknown parameter"):
            RepairEngine(failing_config, never_passing, RepairConfig(priors={'speed': 0.9}))

    def test_summary(self, failing_config, never_passing, small_space):
        log = RepairEngine(failing_config, never_passing,
                           RepairConfig(budget_evals=12, seed=5)).run()
        summary = log.summary()

        assert summary.mode == 'guided'
        assert summary.seed == 5
        assert summary.evaluations == 12
        assert summary.stop_reason == STOP_BUDGET_EVALS
        assert summary.archive_size == len(log.archive)
        assert summary.front_size == len(log.front())
        assert set(summary.suspiciousness) == set(small_space.names)
        assert summary.best_awt_s == min(e.awt_s for e in log.archive)

    def test_final_suspiciousness_in_unit_interval(self, failing_config, never_passing):
        log = RepairEngine(failing_config, never_passing, RepairConfig(budget_evals=60, n_susp=2)).run()
        assert all(0.0 <= s <= 1.0 for s in log.final_suspiciousness().values())


class TestRepairFunction:
    """Test suite for repair() on the built-in simulator."""

    def test_repair_on_real_suite(self, dispatcher_config, tiny_case, building):
        log = repair(dispatcher_config, [tiny_case], RepairConfig(budget_evals=4), building=building)

        assert log.records[0].eval_index == 0
        assert log.evaluations <= 4
        assert log.stop_reason in (STOP_ALL_PASS, STOP_BUDGET_EVALS)
        assert len(log.records) == log.evaluations + 1

    def test_repair_with_existing_evaluator(self, failing_config, never_passing):
        log = repair(failing_config, [], RepairConfig(budget_evals=3), evaluator=never_passing)
        assert log.evaluations == 3
        assert never_passing.n_evaluations == 4
