"""
Unit tests for the hypervolume indicator
"""

from itertools import combinations

import numpy as np
import pytest

from src.eval_stats import StatisticsError, hypervolume


def inclusion_exclusion_hv(front, reference):
    """Exact HV of a small front by inclusion-exclusion over box intersections."""
    points = np.asarray(front, dtype=float)
    ref = np.asarray(reference, dtype=float)
    total = 0.0
    for size in range(1, len(points) + 1):
        sign = 1.0 if size % 2 else -1.0
        for subset in combinations(range(len(points)), size):
            corner = points[list(subset)].min(axis=0)
            total += sign * float(np.prod(corner - ref))
    return total


class TestHypervolume:
    """Test suite for hypervolume."""

    def test_empty_front(self):
        assert hypervolume([]) == 0.0

    def test_all_pass_point_fills_unit_cube(self):
        assert hypervolume([[0.0] * 6]) == pytest.approx(1.0)

    def test_single_box(self):
        assert hypervolume([[-0.5] * 6]) == pytest.approx(0.5 ** 6, rel=1e-12)

    def test_two_overlapping_boxes(self):
        assert hypervolume([[0.0, -0.5], [-0.5, 0.0]]) == pytest.approx(0.75)

    def test_dominated_and_duplicate_points_ignored(self):
        front = [[0.0, -0.5], [-0.5, 0.0]]
        noisy = front + [[-0.6, -0.6], [0.0, -0.5], [-1.0, -1.0]]
        assert hypervolume(noisy) == pytest.approx(hypervolume(front))

    def test_custom_reference(self):
        assert hypervolume([[1.0, 1.0]], reference=[0.0, 0.0]) == pytest.approx(1.0)

    @pytest.mark.parametrize("seed", [0, 1, 2, 3])
    def test_matches_inclusion_exclusion(self, seed):
        rng = np.random.default_rng(seed)
        front = rng.uniform(-0.4, 0.0, size=(8, 6))
        expected = inclusion_exclusion_hv(front, [-1.0] * 6)
        assert hypervolume(front) == pytest.approx(expected, rel=1e-9)

    def test_matches_inclusion_exclusion_3d(self):
        rng = np.random.default_rng(42)
        front = rng.uniform(-1.0, 0.0, size=(10, 3))
        expected = inclusion_exclusion_hv(front, [-1.0] * 3)
        assert hypervolume(front) == pytest.approx(expected, rel=1e-9)

    def test_monotone_in_added_points(self):
        rng = np.random.default_rng(5)
        front = rng.uniform(-0.8, 0.0, size=(6, 6))
        assert hypervolume(front[:3]) <= hypervolume(front) + 1e-12

    def test_point_below_reference(self):
        with pytest.raises(StatisticsError):
            hypervolume([[-1.5, 0.0]])

    def test_reference_dimension_mismatch(self):
        with pytest.raises(StatisticsError):
            hypervolume([[-0.5, -0.5]], reference=[-1.0, -1.0, -1.0])

    def test_agrees_with_pymoo(self):
        hv_module = pytest.importorskip("pymoo.indicators.hv")
        rng = np.random.default_rng(8)
        front = rng.uniform(-0.6, 0.0, size=(12, 6))
        # pymoo minimizes
        expected = hv_module.HV(ref_point=np.ones(6))(-front)
        assert hypervolume(front) == pytest.approx(expected, rel=1e-9)
