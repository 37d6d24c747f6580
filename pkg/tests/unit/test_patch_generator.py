"""
Unit tests for patch generation.
"""

import numpy as np
import pytest

from src.config_model import Configuration, hamming_distance, parse_parameter_space
from src.repair_engine import SuspTracker, generate_patch


@pytest.fixture
def boolean_space():
    return parse_parameter_space("".join(f"flag_{i} boolean\n" for i in range(10)))


class TestGeneratePatch:
    """Test suite for generate_patch."""

    def test_mutation_count_distribution(self, boolean_space):
        parent = Configuration(boolean_space, (False,) * 10)
        scores = np.full(10, 0.5)
        rng = np.random.default_rng(2024)
        counts = np.zeros(11, dtype=np.int64)
        for _ in range(100_000):
            _, mutated = generate_patch(parent, scores, rng)
            counts[len(mutated)] += 1
        observed = counts / counts.sum()
        assert counts[0] == 0
        assert observed[1] == pytest.approx(0.5, abs=0.01)
        assert observed[2] == pytest.approx(0.375, abs=0.01)
        assert observed[3] == pytest.approx(0.5 * 0.25 * 0.875, abs=0.01)

    def test_mutated_values_differ_from_parent(self, dispatcher_config):
        rng = np.random.default_rng(5)
        tracker = SuspTracker(len(dispatcher_config))
        for _ in range(500):
            patch, mutated = generate_patch(dispatcher_config, tracker, rng)
            assert len(set(mutated)) == len(mutated) >= 1
            assert hamming_distance(patch, dispatcher_config) == len(mutated)
            for i, (old, new) in enumerate(zip(dispatcher_config.values, patch.values)):
                if i not in mutated:
                    assert old == new

    def test_single_valued_parameters_never_mutated(self):
        space = parse_parameter_space("fixed real 2.0 2.0\nonly enum a\nfree integer 0 9\n")
        parent = Configuration(space, (2.0, 'a', 4))
        rng = np.random.default_rng(0)
        for _ in range(200):
            patch, mutated = generate_patch(parent, [0.9, 0.9, 0.1], rng)
            assert mutated == (2,)
            assert patch.values[:2] == (2.0, 'a')

    def test_no_mutable_parameter(self):
        space = parse_parameter_space("fixed real 2.0 2.0\n")
        with pytest.raises(ValueError):
            generate_patch(Configuration(space, (2.0,)), [0.5], np.random.default_rng(0))

    def test_single_parameter_space(self):
        space = parse_parameter_space("flag boolean\n")
        patch, mutated = generate_patch(Configuration(space, (True,)), [0.5], np.random.default_rng(0))
        assert mutated == (0,)
        assert patch.values == (False,)

    def test_seeded(self, dispatcher_config):
        scores = np.full(len(dispatcher_config), 0.5)
        a = [generate_patch(dispatcher_config, scores, np.random.default_rng(7)) for _ in range(3)]
        b = [generate_patch(dispatcher_config, scores, np.random.default_rng(7)) for _ in range(3)]
        assert a == b

    def test_suspicious_parameters_mutated_more(self, small_space):
        parent = Configuration(small_space, (5.0, 4, True, 'none'))
        rng = np.random.default_rng(11)
        hits = np.zeros(4)
        for _ in range(5000):
            _, mutated = generate_patch(parent, [0.05, 0.05, 0.05, 0.85], rng)
            hits[mutated[0]] += 1
        assert hits[3] / hits.sum() == pytest.approx(0.85, abs=0.02)
