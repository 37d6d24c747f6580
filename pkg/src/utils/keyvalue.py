"""
Reader for the small key=value text files used across the project.

Building files, oracle specs, DM thresholds, suspiciousness priors and
configuration files all share this format:

    # comment
    key = value   # trailing comment
"""

import logging
from typing import Dict, Iterator, Tuple

logger = logging.getLogger(__name__)


class KeyValueError(ValueError):
    """Raised for malformed key=value lines."""

    def __init__(self, message: str, line_number: int):
        super().__init__(f"line {line_number}: {message}")
        self.line_number = line_number


def strip_comment(line: str) -> str:
    """Drop everything after the first '#'."""
    return line.split('#', 1)[0].strip()


def iter_key_values(text: str) -> Iterator[Tuple[int, str, str]]:
    """
    Yield (line_number, key, value) for every non-empty line.

    Args:
        text: File contents

    Returns:
        Iterator over (1-based line number, key, raw value string)

    Raises:
        KeyValueError: If a line has no '=' or an empty key
    """
    for line_number, raw in enumerate(text.splitlines(), start=1):
        line = strip_comment(raw)
        if not line:
            continue
        if '=' not in line:
            raise KeyValueError(f"expected 'key = value', got {line!r}", line_number)
        key, value = line.split('=', 1)
        key = key.strip()
        if not key:
            raise KeyValueError("empty key", line_number)
        yield line_number, key, value.strip()


def parse_key_values(text: str) -> Dict[str, str]:
    """
    Parse key=value text into a dict, rejecting duplicate keys.

    Args:
        text: File contents

    Returns:
        Mapping of key to raw value string (file order preserved)
    """
    values: Dict[str, str] = {}
    for line_number, key, value in iter_key_values(text):
        if key in values:
            raise KeyValueError(f"duplicate key '{key}'", line_number)
        values[key] = value
    return values


def parse_bool(value: str) -> bool:
    """Parse true/false (case-insensitive, also 1/0 and yes/no)."""
    lowered = value.strip().lower()
    if lowered in ('true', '1', 'yes'):
        return True
    if lowered in ('false', '0', 'no'):
        return False
    raise ValueError(f"not a boolean: {value!r}")


def format_key_values(values: Dict[str, object]) -> str:
    """Render a mapping back to key=value text (one pair per line)."""
    lines = []
    for key, value in values.items():
        if isinstance(value, bool):
            value = 'true' if value else 'false'
        elif isinstance(value, float):
            value = repr(value)
        lines.append(f"{key} = {value}")
    return "\n".join(lines) + "\n"
