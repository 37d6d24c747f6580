"""
Unit tests for dominance, impact classification and the patch archive.
"""

import numpy as np
import pytest

from src.config_model import Configuration, parse_parameter_space
from src.oracles import MetricVector, ScoreVector
from src.repair_engine import (
    Archive,
    ArchiveEntry,
    Impact,
    archive_update,
    archive_update_unguided,
    classify_impact,
    crowding_distances,
    dominates_conf,
    non_dominated_filter,
)

SPACE = parse_parameter_space("flag boolean\n")
PATCH = Configuration(SPACE, (True,))


def _score(conf, awt=30.0):
    return ScoreVector(tuple(conf), MetricVector(awt, 60.0, 0.0, 40.0, 60.0, 0.0))


def _entry(conf, index, awt=30.0):
    return ArchiveEntry(patch=PATCH, score=_score(conf, awt), eval_index=index)


class TestDominance:
    """Test suite for dominance and non-dominated filtering."""

    def test_dominates_conf(self):
        assert dominates_conf([0.0, -0.5], [-0.1, -0.5])
        assert not dominates_conf([0.0, -0.5], [0.0, -0.5])
        assert not dominates_conf([0.0, -0.6], [-0.1, -0.5])

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            dominates_conf([0.0], [0.0, 0.0])

    def test_non_dominated_filter(self):
        points = [[-0.5, -0.5], [-0.2, -0.8], [-0.6, -0.6], [-0.5, -0.5], [-0.9, 0.0]]
        assert non_dominated_filter(points).tolist() == [0, 1, 3, 4]
        assert non_dominated_filter([]).tolist() == []

    def test_non_dominated_filter_brute_force(self):
        rng = np.random.default_rng(0)
        for _ in range(50):
            points = np.round(rng.uniform(-1, 0, size=(15, 3)), 1)
            expected = [i for i, p in enumerate(points)
                        if not any(dominates_conf(q, p) for q in points)]
            assert non_dominated_filter(points).tolist() == expected


class TestClassifyImpact:
    """Test suite for impact classification."""

    def test_same_as_parent_is_none(self):
        parent = _score([-0.5] * 6)
        assert classify_impact(_score([-0.5 + 1e-7] * 6), parent, []) == Impact.NONE

    def test_dominated_by_parent_is_negative(self):
        parent = _score([-0.5] * 6)
        assert classify_impact(_score([-0.6] + [-0.5] * 5), parent, []) == Impact.NEGATIVE

    def test_dominated_by_archive_is_negative(self):
        parent = _score([-0.5] * 6)
        patch = _score([-0.4] + [-0.6] * 5)
        archive = [_entry([-0.3] + [-0.5] * 5, 1)]
        assert classify_impact(patch, parent, archive) == Impact.NEGATIVE

    def test_otherwise_positive(self):
        parent = _score([-0.5] * 6)
        assert classify_impact(_score([-0.4] + [-0.6] * 5), parent, []) == Impact.POSITIVE
        assert classify_impact(_score([-0.4] * 6), parent, [_entry([-0.5] * 6, 0)]) == Impact.POSITIVE


class TestGuidedArchive:
    """Test suite for the capped non-dominated archive."""

    @pytest.fixture
    def rng(self):
        return np.random.default_rng(0)

    def test_dominated_candidate_rejected(self, rng):
        archive = Archive(cap=12)
        archive.entries.append(_entry([-0.1] * 6, 0))
        assert archive.update_guided(_entry([-0.2] * 6, 1), rng) is False
        assert [e.eval_index for e in archive] == [0]

    def test_dominating_candidate_replaces(self, rng):
        archive = Archive(cap=12)
        archive.entries.extend([_entry([-0.5, -0.1] + [0.0] * 4, 0), _entry([-0.1, -0.5] + [0.0] * 4, 1)])
        assert archive.update_guided(_entry([-0.05, -0.05] + [0.0] * 4, 2), rng)
        assert [e.eval_index for e in archive] == [2]

    def test_incomparable_candidate_added(self, rng):
        archive = archive_update(Archive(cap=12), _entry([-0.5, -0.1] + [0.0] * 4, 0), rng)
        archive_update(archive, _entry([-0.1, -0.5] + [0.0] * 4, 1), rng)
        assert len(archive) == 2
        assert archive.is_non_dominated()

    def test_equal_scores_coexist(self, rng):
        archive = Archive(cap=12)
        archive.update_guided(_entry([-0.3] * 6, 0), rng)
        assert archive.update_guided(_entry([-0.3] * 6, 1), rng)
        assert len(archive) == 2

    def test_eviction_removes_longest_awt(self, rng):
        archive = Archive(cap=2)
        archive.update_guided(_entry([-0.5, -0.1] + [0.0] * 4, 0, awt=20.0), rng)
        archive.update_guided(_entry([-0.1, -0.5] + [0.0] * 4, 1, awt=40.0), rng)
        kept = archive.update_guided(_entry([-0.3, -0.3] + [0.0] * 4, 2, awt=30.0), rng)
        assert kept
        assert sorted(e.eval_index for e in archive) == [0, 2]

    def test_candidate_itself_can_be_evicted(self, rng):
        archive = Archive(cap=1)
        archive.update_guided(_entry([-0.5, -0.1] + [0.0] * 4, 0, awt=20.0), rng)
        assert archive.update_guided(_entry([-0.1, -0.5] + [0.0] * 4, 1, awt=90.0), rng) is False
        assert [e.eval_index for e in archive] == [0]

    def test_crowding_eviction(self, rng):
        archive = Archive(cap=3, eviction='crowding')
        for i, x in enumerate([0.0, -0.45, -0.5, -1.0]):
            archive.update_guided(_entry([x, -1.0 - x] + [0.0] * 4, i), rng)
        # the two middle points are the most crowded; one of them goes
        remaining = sorted(e.eval_index for e in archive)
        assert remaining in ([0, 1, 3], [0, 2, 3])

    def test_random_eviction_keeps_cap(self, rng):
        archive = Archive(cap=4, eviction='random')
        for i in range(10):
            x = -i / 10
            archive.update_guided(_entry([x, -0.9 - x] + [0.0] * 4, i), rng)
        assert len(archive) == 4

    def test_stress_against_brute_force(self):
        """10^4 insertions of random 6-D scores, re-checked after every update."""
        rng = np.random.default_rng(123)
        check_rng = np.random.default_rng(999)
        archive = Archive(cap=12)
        reference = []
        for index in range(10_000):
            if check_rng.random() < 0.5:
                conf = check_rng.uniform(-1.0, 0.0, size=6)
            else:
                conf = -check_rng.integers(0, 3, size=6) / 2.0
            candidate = _entry(conf, index, awt=float(check_rng.uniform(0.0, 100.0)))

            if not any(dominates_conf(e.score.conf, candidate.score.conf) for e in reference):
                reference = [e for e in reference
                             if not dominates_conf(candidate.score.conf, e.score.conf)]
                reference.append(candidate)
                if len(reference) > 12:
                    worst = max(reference, key=lambda e: e.awt_s)
                    reference = [e for e in reference if e is not worst]

            archive.update_guided(candidate, rng)
            assert len(archive) <= 12
            assert archive.is_non_dominated()
            assert [e.eval_index for e in archive] == [e.eval_index for e in reference]


class TestUnguidedArchive:
    """Test suite for the unfiltered archive."""

    def test_keeps_dominated_entries(self):
        rng = np.random.default_rng(0)
        archive = Archive(cap=None)
        for i in range(30):
            archive_update_unguided(archive, _entry([-i / 30] * 6, i), rng)
        assert len(archive) == 30
        assert [e.eval_index for e in archive.front()] == [0]

    def test_optional_cap(self):
        rng = np.random.default_rng(0)
        archive = Archive(cap=5)
        for i in range(8):
            archive.update_unguided(_entry([-0.5] * 6, i, awt=float(i)), rng)
        assert sorted(e.eval_index for e in archive) == [0, 1, 2, 3, 4]


class TestCrowdingDistances:
    """Test suite for crowding distances."""

    def test_boundaries_infinite(self):
        confs = np.array([[0.0, -1.0], [-0.2, -0.8], [-0.6, -0.4], [-1.0, 0.0]])
        distance = crowding_distances(confs)
        assert np.isinf(distance[0]) and np.isinf(distance[3])
        assert distance[1] == pytest.approx(0.6 / 1.0 + 0.6 / 1.0)
        assert distance[2] == pytest.approx(0.8 + 0.8)

    def test_two_points(self):
        assert np.all(np.isinf(crowding_distances(np.array([[0.0, -1.0], [-1.0, 0.0]]))))
