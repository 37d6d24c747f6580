"""
Unit tests for timing metrics.
"""

import pytest

from src.elevator_sim import PassengerOutcome, SimResult
from src.oracles import METRIC_NAMES, MetricVector, compute_metrics, worst_metrics


def _result(*outcomes):
    return SimResult(test_id='m', outcomes=tuple(outcomes), duration_s=100.0, horizon_s=100.0)


class TestComputeMetrics:
    """Test suite for compute_metrics."""

    def test_hand_computed_values(self):
        result = _result(
            PassengerOutcome(3.0, 13.0, True, True),
            PassengerOutcome(55.0, 70.0, True, True),
            PassengerOutcome(60.0, 80.0, True, True),
            PassengerOutcome(10.0, 20.0, True, True),
        )
        metrics = compute_metrics(result)
        assert metrics.awt_s == pytest.approx(32.0)
        assert metrics.lwt_s == 60.0
        # limits are strict: 55 s and 70 s do not count
        assert metrics.pct_wt_gt55 == pytest.approx(25.0)
        assert metrics.att_s == pytest.approx(45.75)
        assert metrics.ltt_s == 80.0
        assert metrics.pct_tt_gt70 == pytest.approx(25.0)

    def test_transit_only_over_boarded(self):
        result = _result(
            PassengerOutcome(10.0, 30.0, True, True),
            PassengerOutcome(90.0, 0.0, False, False),
        )
        metrics = compute_metrics(result)
        assert metrics.awt_s == pytest.approx(50.0)
        assert metrics.att_s == pytest.approx(30.0)
        assert metrics.pct_wt_gt55 == pytest.approx(50.0)

    def test_nobody_boarded(self):
        metrics = compute_metrics(_result(PassengerOutcome(100.0, 0.0, False, False)))
        assert (metrics.att_s, metrics.ltt_s, metrics.pct_tt_gt70) == (0.0, 0.0, 0.0)
        assert metrics.lwt_s == 100.0

    def test_empty_result(self):
        with pytest.raises(ValueError):
            compute_metrics(_result())


class TestMetricVector:
    """Test suite for MetricVector helpers."""

    def test_dict_and_tuple(self):
        vector = MetricVector.from_values([1, 2, 3, 4, 5, 6])
        assert vector.as_tuple() == (1.0, 2.0, 3.0, 4.0, 5.0, 6.0)
        assert list(vector.as_dict()) == list(METRIC_NAMES)

    def test_worst_metrics(self):
        a = MetricVector(10.0, 50.0, 0.0, 30.0, 40.0, 5.0)
        b = MetricVector(12.0, 45.0, 2.0, 28.0, 60.0, 0.0)
        assert worst_metrics([a, b]) == MetricVector(12.0, 50.0, 2.0, 30.0, 60.0, 5.0)

    def test_worst_metrics_empty(self):
        with pytest.raises(ValueError):
            worst_metrics([])
