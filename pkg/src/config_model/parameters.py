"""
Parameter space, concrete configurations and their text formats.

Spec-file format (one parameter per line, '#' starts a comment whose text
becomes the parameter description):

    main_cost_weight  real    0.0 10.0   # weight of the ETA term
    max_car_calls     integer 1   20
    zoning_enabled    boolean
    parking_policy    enum    none,lobby,distributed

Configuration-file format (order-insensitive):

    main_cost_weight = 5.0
"""

import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from ..utils.keyvalue import KeyValueError, iter_key_values, parse_bool

logger = logging.getLogger(__name__)

# Two real parameter values closer than this are considered equal
REAL_TOLERANCE = 1e-9

Value = Any


class ParameterSpaceError(ValueError):
    """Problem in a parameter-spec file or an invalid ParameterSpec."""

    def __init__(self, message: str, line_number: Optional[int] = None):
        prefix = f"line {line_number}: " if line_number is not None else ""
        super().__init__(f"{prefix}{message}")
        self.line_number = line_number


class ConfigurationError(ValueError):
    """Problem in a configuration file or a configuration value."""

    def __init__(self, message: str, parameter: Optional[str] = None,
                 line_number: Optional[int] = None):
        prefix = f"line {line_number}: " if line_number is not None else ""
        super().__init__(f"{prefix}{message}")
        self.parameter = parameter
        self.line_number = line_number


class ParameterKind(Enum):
    """Supported parameter kinds."""
    INTEGER = "integer"
    REAL = "real"
    BOOLEAN = "boolean"
    ENUMERATION = "enum"


KIND_ALIASES = {
    'int': ParameterKind.INTEGER,
    'integer': ParameterKind.INTEGER,
    'real': ParameterKind.REAL,
    'float': ParameterKind.REAL,
    'bool': ParameterKind.BOOLEAN,
    'boolean': ParameterKind.BOOLEAN,
    'enum': ParameterKind.ENUMERATION,
    'enumeration': ParameterKind.ENUMERATION,
}


@dataclass(frozen=True)
class ParameterSpec:
    """One configurable parameter and its admissible range."""

    name: str
    kind: ParameterKind
    lower: Optional[float] = None
    upper: Optional[float] = None
    choices: Tuple[Value, ...] = ()
    description: str = ""

    def __post_init__(self):
        if not self.name or not self.name.replace('_', 'a').replace('.', 'a').isalnum():
            raise ParameterSpaceError(f"invalid parameter name {self.name!r}")

        if self.kind in (ParameterKind.INTEGER, ParameterKind.REAL):
            if self.lower is None or self.upper is None:
                raise ParameterSpaceError(f"{self.name}: numeric parameter needs bounds")
            if not (math.isfinite(self.lower) and math.isfinite(self.upper)):
                raise ParameterSpaceError(f"{self.name}: bounds must be finite")
            if self.lower > self.upper:
                raise ParameterSpaceError(
                    f"{self.name}: inverted range [{self.lower}, {self.upper}]"
                )
            if self.kind == ParameterKind.INTEGER:
                object.__setattr__(self, 'lower', int(self.lower))
                object.__setattr__(self, 'upper', int(self.upper))
            else:
                object.__setattr__(self, 'lower', float(self.lower))
                object.__setattr__(self, 'upper', float(self.upper))
        elif self.kind == ParameterKind.BOOLEAN:
            object.__setattr__(self, 'choices', (False, True))
        else:
            if not self.choices:
                raise ParameterSpaceError(f"{self.name}: enumeration list is empty")
            if len(set(self.choices)) != len(self.choices):
                raise ParameterSpaceError(f"{self.name}: duplicate enumeration values")
            object.__setattr__(self, 'choices', tuple(self.choices))

    @property
    def is_numeric(self) -> bool:
        return self.kind in (ParameterKind.INTEGER, ParameterKind.REAL)

    def domain_size(self) -> Optional[int]:
        """Number of admissible values, or None for a non-degenerate real range."""
        if self.kind == ParameterKind.INTEGER:
            return int(self.upper) - int(self.lower) + 1
        if self.kind == ParameterKind.REAL:
            return 1 if self.lower == self.upper else None
        return len(self.choices)

    def contains(self, value: Value) -> bool:
        """Check that a value is admissible for this parameter."""
        if self.kind == ParameterKind.BOOLEAN:
            return isinstance(value, (bool, np.bool_))
        if self.kind == ParameterKind.ENUMERATION:
            return value in self.choices
        if isinstance(value, (bool, np.bool_)):
            return False
        if self.kind == ParameterKind.INTEGER:
            if not isinstance(value, (int, np.integer)):
                return False
        elif not isinstance(value, (int, float, np.integer, np.floating)):
            return False
        return self.lower <= value <= self.upper

    def coerce(self, raw: str) -> Value:
        """
        Convert a raw string from a configuration file to a typed value.

        Raises:
            ValueError: If the string cannot be interpreted for this kind
        """
        raw = raw.strip()
        if self.kind == ParameterKind.INTEGER:
            number = float(raw)
            if not number.is_integer():
                raise ValueError(f"not an integer: {raw!r}")
            return int(number)
        if self.kind == ParameterKind.REAL:
            return float(raw)
        if self.kind == ParameterKind.BOOLEAN:
            return parse_bool(raw)
        return raw

    def format_value(self, value: Value) -> str:
        """Render a value the way configuration files spell it."""
        if self.kind == ParameterKind.BOOLEAN:
            return 'true' if value else 'false'
        if self.kind == ParameterKind.REAL:
            return repr(float(value))
        return str(value)

    def values_equal(self, a: Value, b: Value) -> bool:
        """Equality with the real-valued tolerance applied."""
        if self.kind == ParameterKind.REAL:
            return abs(float(a) - float(b)) <= REAL_TOLERANCE
        return a == b


@dataclass(frozen=True)
class ParameterSpace:
    """Ordered parameter specs; the order is the canonical parameter index."""

    specs: Tuple[ParameterSpec, ...]
    _index: Dict[str, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        specs = tuple(self.specs)
        if not specs:
            raise ParameterSpaceError("empty parameter space")
        index: Dict[str, int] = {}
        for i, spec in enumerate(specs):
            if spec.name in index:
                raise ParameterSpaceError(f"duplicate parameter name '{spec.name}'")
            index[spec.name] = i
        object.__setattr__(self, 'specs', specs)
        object.__setattr__(self, '_index', index)

    def __len__(self) -> int:
        return len(self.specs)

    def __iter__(self) -> Iterator[ParameterSpec]:
        return iter(self.specs)

    def __getitem__(self, i: int) -> ParameterSpec:
        return self.specs[i]

    @property
    def names(self) -> Tuple[str, ...]:
        return tuple(spec.name for spec in self.specs)

    def index_of(self, name: str) -> int:
        """Canonical index of a parameter name."""
        try:
            return self._index[name]
        except KeyError:
            raise ConfigurationError(f"unknown parameter '{name}'", parameter=name) from None

    def has(self, name: str) -> bool:
        return name in self._index


@dataclass(frozen=True)
class Configuration:
    """A concrete point of a ParameterSpace."""

    space: ParameterSpace
    values: Tuple[Value, ...]

    def __post_init__(self):
        values = tuple(self.values)
        if len(values) != len(self.space):
            raise ConfigurationError(
                f"configuration has {len(values)} values, space has {len(self.space)}"
            )
        normalized = []
        for spec, value in zip(self.space, values):
            if spec.kind == ParameterKind.REAL and isinstance(value, (int, np.integer, np.floating)) \
                    and not isinstance(value, (bool, np.bool_)):
                value = float(value)
            elif spec.kind == ParameterKind.INTEGER and isinstance(value, np.integer):
                value = int(value)
            elif spec.kind == ParameterKind.BOOLEAN and isinstance(value, np.bool_):
                value = bool(value)
            if not spec.contains(value):
                raise ConfigurationError(
                    f"value {value!r} out of range for '{spec.name}'", parameter=spec.name
                )
            normalized.append(value)
        object.__setattr__(self, 'values', tuple(normalized))

    @classmethod
    def from_mapping(cls, space: ParameterSpace, mapping: Dict[str, Value]) -> 'Configuration':
        """Build a configuration from a name -> value mapping covering the space."""
        missing = [name for name in space.names if name not in mapping]
        if missing:
            raise ConfigurationError(f"missing parameter '{missing[0]}'", parameter=missing[0])
        unknown = [name for name in mapping if not space.has(name)]
        if unknown:
            raise ConfigurationError(f"unknown parameter '{unknown[0]}'", parameter=unknown[0])
        return cls(space, tuple(mapping[name] for name in space.names))

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, name: str) -> Value:
        return self.values[self.space.index_of(name)]

    def get(self, name: str, default: Value = None) -> Value:
        if not self.space.has(name):
            return default
        return self[name]

    def with_value(self, index: int, value: Value) -> 'Configuration':
        """Copy of this configuration with one parameter replaced."""
        values = list(self.values)
        values[index] = value
        return Configuration(self.space, tuple(values))

    def as_dict(self) -> Dict[str, Value]:
        return dict(zip(self.space.names, self.values))


def _parse_spec_line(line: str, description: str, line_number: int) -> ParameterSpec:
    tokens = line.split()
    if len(tokens) < 2:
        raise ParameterSpaceError(f"expected '<name> <kind> ...', got {line!r}", line_number)

    name, kind_token = tokens[0], tokens[1].lower()
    kind = KIND_ALIASES.get(kind_token)
    if kind is None:
        raise ParameterSpaceError(f"unknown kind '{tokens[1]}' for '{name}'", line_number)

    try:
        if kind in (ParameterKind.INTEGER, ParameterKind.REAL):
            if len(tokens) != 4:
                raise ParameterSpaceError(
                    f"'{name}': numeric parameter needs '<lo> <hi>'", line_number
                )
            lower, upper = float(tokens[2]), float(tokens[3])
            if kind == ParameterKind.INTEGER and not (lower.is_integer() and upper.is_integer()):
                raise ParameterSpaceError(f"'{name}': integer bounds required", line_number)
            return ParameterSpec(name, kind, lower=lower, upper=upper, description=description)

        if kind == ParameterKind.BOOLEAN:
            if len(tokens) != 2:
                raise ParameterSpaceError(f"'{name}': boolean takes no bounds", line_number)
            return ParameterSpec(name, kind, description=description)

        if len(tokens) != 3:
            raise ParameterSpaceError(f"'{name}': enum needs 'v1,v2,...'", line_number)
        choices = tuple(v.strip() for v in tokens[2].split(',') if v.strip())
        return ParameterSpec(name, kind, choices=choices, description=description)
    except ParameterSpaceError as e:
        if e.line_number is None:
            raise ParameterSpaceError(str(e), line_number) from None
        raise
    except ValueError as e:
        raise ParameterSpaceError(f"'{name}': {e}", line_number) from None


def parse_parameter_space(text: str) -> ParameterSpace:
    """
    Parse parameter-spec file contents.

    Args:
        text: Spec-file contents

    Returns:
        Validated ParameterSpace in file order

    Raises:
        ParameterSpaceError: On malformed lines, duplicate names, inverted
            ranges (with line number) or an empty file
    """
    specs: List[ParameterSpec] = []
    seen: Dict[str, int] = {}
    for line_number, raw in enumerate(text.splitlines(), start=1):
        body, _, comment = raw.partition('#')
        body = body.strip()
        if not body:
            continue
        spec = _parse_spec_line(body, comment.strip(), line_number)
        if spec.name in seen:
            raise ParameterSpaceError(
                f"duplicate parameter name '{spec.name}' (first on line {seen[spec.name]})",
                line_number,
            )
        seen[spec.name] = line_number
        specs.append(spec)

    if not specs:
        raise ParameterSpaceError("empty parameter space")
    logger.debug(f"[OK] Parsed parameter space with {len(specs)} parameters")
    return ParameterSpace(tuple(specs))


def serialize_parameter_space(space: ParameterSpace) -> str:
    """Render a space in spec-file format."""
    lines = []
    for spec in space:
        if spec.is_numeric:
            body = f"{spec.name} {spec.kind.value} {spec.lower!r} {spec.upper!r}"
        elif spec.kind == ParameterKind.BOOLEAN:
            body = f"{spec.name} boolean"
        else:
            body = f"{spec.name} enum {','.join(str(c) for c in spec.choices)}"
        if spec.description:
            body = f"{body}  # {spec.description}"
        lines.append(body)
    return "\n".join(lines) + "\n"


def parse_configuration(text: str, space: ParameterSpace) -> Configuration:
    """
    Parse configuration-file contents against a space.

    Args:
        text: Configuration-file contents ('<name> = <value>' per line)
        space: Parameter space the configuration belongs to

    Returns:
        Configuration with values in space order

    Raises:
        ConfigurationError: Missing, unknown, duplicate or out-of-range parameters
    """
    mapping: Dict[str, Value] = {}
    try:
        for line_number, name, raw in iter_key_values(text):
            if not space.has(name):
                raise ConfigurationError(f"unknown parameter '{name}'", name, line_number)
            if name in mapping:
                raise ConfigurationError(f"parameter '{name}' given twice", name, line_number)
            spec = space[space.index_of(name)]
            try:
                value = spec.coerce(raw)
            except ValueError as e:
                raise ConfigurationError(f"bad value for '{name}': {e}", name, line_number) from None
            if not spec.contains(value):
                raise ConfigurationError(
                    f"value {raw} out of range for '{name}'", name, line_number
                )
            mapping[name] = value
    except KeyValueError as e:
        raise ConfigurationError(str(e)) from None

    for name in space.names:
        if name not in mapping:
            raise ConfigurationError(f"missing parameter '{name}'", parameter=name)
    return Configuration(space, tuple(mapping[name] for name in space.names))


def serialize_configuration(config: Configuration) -> str:
    """Render a configuration in configuration-file format (space order)."""
    lines = [
        f"{spec.name} = {spec.format_value(value)}"
        for spec, value in zip(config.space, config.values)
    ]
    return "\n".join(lines) + "\n"


def hamming_distance(a: Configuration, b: Configuration) -> int:
    """
    Number of parameters whose values differ.

    Raises:
        ConfigurationError: If the configurations belong to different spaces
    """
    if a.space.names != b.space.names:
        raise ConfigurationError("cannot compare configurations of mismatched spaces")
    return sum(
        0 if spec.values_equal(x, y) else 1
        for spec, x, y in zip(a.space, a.values, b.values)
    )


def random_value(spec: ParameterSpec, rng: np.random.Generator,
                 exclude: Optional[Value] = None) -> Value:
    """
    Draw a value uniformly from the parameter's range.

    Args:
        spec: Parameter to sample
        rng: Seeded random source
        exclude: Current value to avoid (redrawn until different)

    Returns:
        A value within range (never equal to `exclude` when given)

    Raises:
        ConfigurationError: If exclusion is requested on a single-valued domain
    """
    if exclude is not None and spec.domain_size() == 1:
        raise ConfigurationError(
            f"cannot draw a value different from {exclude!r} for single-valued '{spec.name}'",
            parameter=spec.name,
        )

    while True:
        if spec.kind == ParameterKind.REAL:
            value = float(rng.uniform(spec.lower, spec.upper))
        elif spec.kind == ParameterKind.INTEGER:
            value = int(rng.integers(spec.lower, spec.upper + 1))
        else:
            value = spec.choices[int(rng.integers(len(spec.choices)))]
        if exclude is None or not spec.values_equal(value, exclude):
            return value


def check_same_space(configs: Sequence[Configuration]) -> None:
    """Raise if the configurations do not share one parameter space."""
    if not configs:
        return
    names = configs[0].space.names
    for config in configs[1:]:
        if config.space.names != names:
            raise ConfigurationError("configurations belong to mismatched spaces")
