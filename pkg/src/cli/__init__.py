"""
Command-line interface.
"""

from .commands import (
    EXIT_BUDGET_EXPIRED,
    EXIT_ERROR,
    EXIT_OK,
    CliUsageError,
    build_parser,
    cmd_baseline,
    cmd_experiment,
    cmd_export_scenario,
    cmd_repair,
    cmd_simulate,
    load_suite,
    main,
    synthetic_validation_suite,
)

__all__ = [
    'EXIT_BUDGET_EXPIRED',
    'EXIT_ERROR',
    'EXIT_OK',
    'CliUsageError',
    'build_parser',
    'cmd_baseline',
    'cmd_experiment',
    'cmd_export_scenario',
    'cmd_repair',
    'cmd_simulate',
    'load_suite',
    'main',
    'synthetic_validation_suite',
]
