"""
Parameter spaces, configurations and their file formats.
"""

from .parameters import (
    REAL_TOLERANCE,
    Configuration,
    ConfigurationError,
    ParameterKind,
    ParameterSpace,
    ParameterSpaceError,
    ParameterSpec,
    check_same_space,
    hamming_distance,
    parse_configuration,
    parse_parameter_space,
    random_value,
    serialize_configuration,
    serialize_parameter_space,
)

__all__ = [
    'REAL_TOLERANCE',
    'Configuration',
    'ConfigurationError',
    'ParameterKind',
    'ParameterSpace',
    'ParameterSpaceError',
    'ParameterSpec',
    'check_same_space',
    'hamming_distance',
    'parse_configuration',
    'parse_parameter_space',
    'random_value',
    'serialize_configuration',
    'serialize_parameter_space',
]
