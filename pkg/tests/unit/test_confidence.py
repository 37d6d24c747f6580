"""
Unit tests for oracle confidence values.
"""

import math

import numpy as np
import pytest

from src.oracles import (
    ORACLE_NAMES,
    MetricVector,
    OracleEntry,
    OracleSpec,
    OracleSpecError,
    ScoreVector,
    aggregate_scores,
    all_pass,
    confidence,
    default_oracle_spec,
    experiment_oracle_spec,
    parse_oracle_spec,
    score_from_metrics,
    serialize_oracle_spec,
)


class TestConfidence:
    """Test suite for the confidence mapping."""

    @pytest.fixture
    def awt(self):
        return OracleEntry(threshold=25.0, severity_scale=60.0)

    def test_pass_is_positive_zero(self, awt):
        value = confidence(20.0, awt)
        assert value == 0.0
        assert math.copysign(1.0, value) == 1.0
        assert confidence(25.0, awt) == 0.0

    def test_linear_between_threshold_and_scale(self, awt):
        assert confidence(55.0, awt) == pytest.approx(-0.5)
        assert confidence(85.0, awt) == pytest.approx(-1.0)

    def test_capped_at_minus_one(self, awt):
        assert confidence(1e6, awt) == -1.0

    def test_non_positive_scale(self):
        with pytest.raises(OracleSpecError):
            OracleEntry(0.0, 0.0)

    def test_monotone_non_increasing(self, awt):
        values = [confidence(v, awt) for v in np.linspace(0, 200, 101)]
        assert all(b <= a for a, b in zip(values, values[1:]))


class TestOracleSpec:
    """Test suite for oracle spec files."""

    def test_defaults(self):
        spec = default_oracle_spec()
        assert spec.k == 6
        assert spec.entry('awt') == OracleEntry(25.0, 60.0)
        assert spec.entry('tt70') == OracleEntry(10.0, 25.0)

    def test_experiment_thresholds_zero(self):
        spec = experiment_oracle_spec()
        assert all(e.threshold == 0.0 for e in spec.entries)
        score = score_from_metrics(MetricVector(1.0, 1.0, 0.0, 1.0, 1.0, 0.0), spec)
        assert score.conf[0] < 0.0
        assert score.conf[2] == 0.0

    def test_parse_partial(self):
        spec = parse_oracle_spec("# tighter waiting\nawt.threshold = 20\nawt.scale = 40\n")
        assert spec.entry('awt') == OracleEntry(20.0, 40.0)
        assert spec.entry('lwt') == default_oracle_spec().entry('lwt')

    @pytest.mark.parametrize("text", [
        "speed.threshold = 3\n",
        "awt.limit = 3\n",
        "awt.threshold = fast\n",
        "awt.scale = 0\n",
        "awt.threshold = 1\nawt.threshold = 2\n",
    ])
    def test_parse_errors(self, text):
        with pytest.raises(OracleSpecError):
            parse_oracle_spec(text)

    def test_serialize_round_trip(self):
        spec = parse_oracle_spec("ltt.threshold = 99.5\ntt70.scale = 12.5\n")
        assert parse_oracle_spec(serialize_oracle_spec(spec)) == spec

    def test_wrong_entry_count(self):
        with pytest.raises(OracleSpecError):
            OracleSpec((OracleEntry(0.0, 1.0),))


class TestScores:
    """Test suite for suite aggregation."""

    def test_score_vector_range(self):
        metrics = MetricVector(0, 0, 0, 0, 0, 0)
        with pytest.raises(ValueError):
            ScoreVector((0.1, 0, 0, 0, 0, 0), metrics)
        with pytest.raises(ValueError):
            ScoreVector((-1.5, 0, 0, 0, 0, 0), metrics)

    def test_aggregate_is_per_oracle_minimum(self):
        rng = np.random.default_rng(0)
        spec = default_oracle_spec()
        for _ in range(50):
            cases = [MetricVector.from_values(rng.uniform(0, 300, 6)) for _ in range(4)]
            suite = aggregate_scores(cases, spec)
            per_case = np.array([spec.confidences(c) for c in cases])
            assert suite.conf == tuple(per_case.min(axis=0))

    def test_all_pass(self):
        spec = default_oracle_spec()
        passing = score_from_metrics(MetricVector(20.0, 100.0, 5.0, 40.0, 100.0, 5.0), spec)
        failing = score_from_metrics(MetricVector(26.0, 100.0, 5.0, 40.0, 100.0, 5.0), spec)
        assert all_pass(passing)
        assert not all_pass(failing)
        assert len(ORACLE_NAMES) == passing.k
