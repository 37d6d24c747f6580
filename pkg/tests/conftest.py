"""
Pytest configuration and shared fixtures.
"""

import os

import pytest

from src.config_model import Configuration, parse_parameter_space
from src.elevator_sim import Building, Passenger, TestCase, default_dispatcher_config, \
    default_dispatcher_space
from src.oracles import MetricVector, ScoreVector
from src.utils import setup_logging


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: long acceptance runs (set RUN_SLOW_TESTS=1)")


def pytest_collection_modifyitems(config, items):
    if os.getenv('RUN_SLOW_TESTS') == '1':
        return
    skip_slow = pytest.mark.skip(reason="slow test; set RUN_SLOW_TESTS=1 to run")
    for item in items:
        if 'slow' in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture(autouse=True)
def configure_logging():
    """Route test logging through the colorlog console setup used by the CLI."""
    setup_logging(os.getenv('LOG_LEVEL', 'INFO'))


@pytest.fixture
def small_space():
    """Four-parameter space covering every kind."""
    return parse_parameter_space(
        "weight   real    0.0 10.0  # cost weight\n"
        "stops    integer 1   8\n"
        "zoning   boolean\n"
        "parking  enum    none,lobby,distributed\n"
    )


@pytest.fixture
def dispatcher_space():
    return default_dispatcher_space()


@pytest.fixture
def dispatcher_config(dispatcher_space):
    return default_dispatcher_config(dispatcher_space)


@pytest.fixture
def building():
    """Default 3-car, 12-floor installation."""
    return Building()


@pytest.fixture
def tiny_case():
    """A handful of passengers, enough to exercise every car."""
    return TestCase(id='tiny', passengers=(
        Passenger(0.0, 1, 5, 70.0),
        Passenger(2.0, 1, 9, 80.0),
        Passenger(4.0, 7, 1, 65.0),
        Passenger(6.0, 3, 11, 90.0),
        Passenger(9.0, 12, 2, 75.0),
        Passenger(12.0, 1, 4, 60.0),
    ))


class AnalyticEvaluator:
    """
    Stand-in for SuiteEvaluator over the small four-parameter space.

    A configuration passes every oracle when weight <= 2, zoning is off and
    parking is 'distributed'.
    """

    def __init__(self):
        self.n_evaluations = 0

    def evaluate(self, config):
        weight, zoning, parking = config['weight'], config['zoning'], config['parking']
        conf = (
            -min(1.0, max(0.0, weight - 2.0) / 8.0),
            -0.5 if zoning else 0.0,
            0.0 if parking == 'distributed' else -0.3,
            0.0, 0.0, 0.0,
        )
        metrics = MetricVector(20.0 + 10.0 * weight + (15.0 if zoning else 0.0),
                               60.0, 0.0, 30.0, 60.0, 0.0)
        self.n_evaluations += 1
        return ScoreVector(conf, metrics)


@pytest.fixture
def analytic_evaluator():
    return AnalyticEvaluator()


@pytest.fixture
def failing_config(small_space):
    return Configuration(small_space, (8.0, 4, True, 'lobby'))
