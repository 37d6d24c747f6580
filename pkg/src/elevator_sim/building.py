"""
Building installation, passenger files and simulation results.

Passenger file (CSV):

    arrival_time_s,arrival_floor,destination_floor,weight_kg
    0.0,1,5,75

Floors are numbered 1..floors, floor 1 being the ground floor.
"""

import io
import logging
import math
from dataclasses import dataclass, fields
from pathlib import Path
from typing import Dict, List, Optional, Tuple, Union

import numpy as np
import pandas as pd

from ..utils.keyvalue import KeyValueError, format_key_values, parse_key_values, strip_comment

logger = logging.getLogger(__name__)

PASSENGER_COLUMNS = ['arrival_time_s', 'arrival_floor', 'destination_floor', 'weight_kg']


class PassengerFileError(ValueError):
    """Malformed passenger file."""

    def __init__(self, message: str, line_number: Optional[int] = None):
        prefix = f"line {line_number}: " if line_number is not None else ""
        super().__init__(f"{prefix}{message}")
        self.line_number = line_number


class BuildingError(ValueError):
    """Invalid building description."""


class SimulationError(RuntimeError):
    """The simulator cannot run the given inputs."""


@dataclass(frozen=True)
class Building:
    """Elevator installation; defaults mirror a 3-car, 12-floor office block."""

    floors: int = 12
    elevators: int = 3
    capacity_kg: float = 630.0
    floor_travel_s: float = 1.5
    door_cycle_s: float = 6.0
    board_s: float = 1.2
    drain_s: float = 1800.0
    board_jitter_s: float = 0.0

    def __post_init__(self):
        if self.floors < 2:
            raise BuildingError(f"floors must be >= 2, got {self.floors}")
        if self.elevators < 1:
            raise BuildingError(f"elevators must be >= 1, got {self.elevators}")
        for name in ('capacity_kg', 'floor_travel_s', 'door_cycle_s', 'board_s', 'drain_s'):
            if getattr(self, name) <= 0:
                raise BuildingError(f"{name} must be strictly positive")
        if self.board_jitter_s < 0:
            raise BuildingError("board_jitter_s must be non-negative")

    @property
    def door_open_s(self) -> float:
        return self.door_cycle_s / 2.0

    @property
    def door_close_s(self) -> float:
        return self.door_cycle_s / 2.0


def parse_building(text: str) -> Building:
    """
    Parse a key=value building file; omitted keys keep their defaults.

    Raises:
        BuildingError: Unknown keys or invalid values
    """
    try:
        raw = parse_key_values(text)
    except KeyValueError as e:
        raise BuildingError(str(e)) from None

    known = {f.name: f for f in fields(Building)}
    kwargs = {}
    for key, value in raw.items():
        if key not in known:
            raise BuildingError(f"unknown building key '{key}'")
        try:
            kwargs[key] = int(value) if key in ('floors', 'elevators') else float(value)
        except ValueError:
            raise BuildingError(f"bad value for '{key}': {value!r}") from None
    return Building(**kwargs)


def serialize_building(building: Building) -> str:
    return format_key_values({f.name: getattr(building, f.name) for f in fields(Building)})


@dataclass(frozen=True)
class Passenger:
    """One passenger arrival event."""

    arrival_time_s: float
    arrival_floor: int
    destination_floor: int
    weight_kg: float

    def __post_init__(self):
        if not (math.isfinite(self.arrival_time_s) and math.isfinite(self.weight_kg)):
            raise PassengerFileError(
                f"arrival time and weight must be finite, got {self.arrival_time_s}, {self.weight_kg}"
            )
        if self.arrival_floor == self.destination_floor:
            raise PassengerFileError(
                f"arrival and destination floor are both {self.arrival_floor}"
            )
        if self.weight_kg <= 0:
            raise PassengerFileError(f"weight must be positive, got {self.weight_kg}")
        if self.arrival_time_s < 0:
            raise PassengerFileError(f"arrival time must be >= 0, got {self.arrival_time_s}")

    @property
    def direction(self) -> int:
        return 1 if self.destination_floor > self.arrival_floor else -1


@dataclass(frozen=True)
class TestCase:
    """
    A passenger file: the test input of one simulation.

    Passenger files must not be empty (enforced by parse_passenger_file);
    an in-memory TestCase may be, which the simulator reports as a
    zero-duration run.
    """

    __test__ = False  # not a pytest class

    id: str
    passengers: Tuple[Passenger, ...]

    def __post_init__(self):
        passengers = tuple(self.passengers)
        times = [p.arrival_time_s for p in passengers]
        if any(b < a for a, b in zip(times, times[1:])):
            raise PassengerFileError(f"test case '{self.id}' is not sorted by arrival time")
        object.__setattr__(self, 'passengers', passengers)

    def __len__(self) -> int:
        return len(self.passengers)

    @property
    def last_arrival_s(self) -> float:
        return self.passengers[-1].arrival_time_s if self.passengers else 0.0


def _content_lines(text: str) -> List[Tuple[int, str]]:
    """(file line number, line) for every line that is neither blank nor a comment."""
    kept = []
    for number, line in enumerate(text.splitlines(), start=1):
        body = strip_comment(line)
        if body:
            kept.append((number, body))
    return kept


def parse_passenger_file(text: str, test_id: str = "tc") -> TestCase:
    """
    Parse passenger CSV contents into a time-sorted TestCase.

    Rows are stably sorted by arrival time. Floor range is checked against
    the building at simulation time. Line numbers in errors count every line
    of the file, comments and blank lines included.

    Args:
        text: CSV contents with the passenger header
        test_id: Identifier of the test case

    Returns:
        Validated TestCase

    Raises:
        PassengerFileError: Malformed rows (with line number) or an empty file
    """
    lines = _content_lines(text)
    if not lines:
        raise PassengerFileError("empty passenger file")
    header_line, header = lines[0]
    n_fields = len(header.split(','))
    for line_number, body in lines[1:]:
        found = len(body.split(','))
        if found != n_fields:
            raise PassengerFileError(f"expected {n_fields} fields, found {found}", line_number)

    cleaned = "\n".join(body for _, body in lines) + "\n"
    df = pd.read_csv(io.StringIO(cleaned), dtype=str, skipinitialspace=True, index_col=False)

    df.columns = df.columns.str.strip().str.lower()
    missing = [c for c in PASSENGER_COLUMNS if c not in df.columns]
    if missing:
        raise PassengerFileError(f"missing column(s): {', '.join(missing)}", header_line)

    passengers: List[Passenger] = []
    row_lines = [number for number, _ in lines[1:]]
    for line_number, row in zip(row_lines, df[PASSENGER_COLUMNS].itertuples(index=False)):
        try:
            if any(pd.isna(v) for v in row):
                raise ValueError("missing value")
            arrival, origin, destination, weight = row
            origin_f, destination_f = float(origin), float(destination)
            if not (origin_f.is_integer() and destination_f.is_integer()):
                raise ValueError("floors must be integers")
            passengers.append(Passenger(
                arrival_time_s=float(arrival),
                arrival_floor=int(origin_f),
                destination_floor=int(destination_f),
                weight_kg=float(weight),
            ))
        except PassengerFileError as e:
            raise PassengerFileError(str(e), line_number) from None
        except (TypeError, ValueError) as e:
            raise PassengerFileError(f"malformed row {tuple(row)}: {e}", line_number) from None

    if not passengers:
        raise PassengerFileError("passenger file has no rows")

    # sorted() is stable, equal arrival times keep file order
    passengers = sorted(passengers, key=lambda p: p.arrival_time_s)
    return TestCase(id=test_id, passengers=tuple(passengers))


def load_passenger_file(path: Union[str, Path]) -> TestCase:
    """Read a passenger CSV from disk; the file stem becomes the test id."""
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"passenger file not found: {path}")
    return parse_passenger_file(path.read_text(encoding='utf-8'), test_id=path.stem)


def passengers_to_frame(tc: TestCase) -> pd.DataFrame:
    return pd.DataFrame(
        [(p.arrival_time_s, p.arrival_floor, p.destination_floor, p.weight_kg)
         for p in tc.passengers],
        columns=PASSENGER_COLUMNS,
    )


def write_passenger_file(tc: TestCase, path: Union[str, Path]) -> Path:
    """Write a TestCase as passenger CSV."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    passengers_to_frame(tc).to_csv(path, index=False)
    return path


@dataclass(frozen=True)
class PassengerOutcome:
    """Timing of one passenger in a simulation."""

    waiting_time_s: float
    transit_time_s: float
    boarded: bool
    completed: bool
    car: int = -1


@dataclass(frozen=True)
class SimResult:
    """Per-passenger results of one simulation run."""

    test_id: str
    outcomes: Tuple[PassengerOutcome, ...]
    duration_s: float
    horizon_s: float
    n_boardings: int = 0
    n_alightings: int = 0
    peak_load_kg: Tuple[float, ...] = ()

    def __len__(self) -> int:
        return len(self.outcomes)

    @property
    def n_completed(self) -> int:
        return sum(1 for o in self.outcomes if o.completed)

    @property
    def n_unserved(self) -> int:
        return len(self.outcomes) - self.n_completed

    @property
    def all_completed(self) -> bool:
        return self.n_unserved == 0

    def waiting_times(self) -> np.ndarray:
        """Waiting times of all passengers (truncated at the horizon if unserved)."""
        return np.array([o.waiting_time_s for o in self.outcomes], dtype=float)

    def transit_times(self) -> np.ndarray:
        """Transit times of passengers that boarded (truncated if not delivered)."""
        return np.array([o.transit_time_s for o in self.outcomes if o.boarded], dtype=float)

    def to_frame(self, tc: Optional[TestCase] = None) -> pd.DataFrame:
        rows = []
        for i, o in enumerate(self.outcomes):
            row: Dict[str, object] = {'passenger': i}
            if tc is not None:
                p = tc.passengers[i]
                row.update({
                    'arrival_time_s': p.arrival_time_s,
                    'arrival_floor': p.arrival_floor,
                    'destination_floor': p.destination_floor,
                    'weight_kg': p.weight_kg,
                })
            row.update({
                'waiting_time_s': o.waiting_time_s,
                'transit_time_s': o.transit_time_s,
                'boarded': o.boarded,
                'completed': o.completed,
                'car': o.car,
            })
            rows.append(row)
        return pd.DataFrame(rows)


def export_sim_result(result: SimResult, path: Union[str, Path],
                      tc: Optional[TestCase] = None) -> Path:
    """Write per-passenger rows of a SimResult as CSV."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    result.to_frame(tc).to_csv(path, index=False)
    logger.info(f"[OK] Simulation result written to {path}")
    return path
