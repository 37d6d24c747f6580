"""
Utilities module.
"""

from .keyvalue import (
    KeyValueError,
    format_key_values,
    iter_key_values,
    parse_bool,
    parse_key_values,
    strip_comment,
)
from .logging_setup import setup_logging

__all__ = [
    'KeyValueError',
    'format_key_values',
    'iter_key_values',
    'parse_bool',
    'parse_key_values',
    'strip_comment',
    'setup_logging',
]
