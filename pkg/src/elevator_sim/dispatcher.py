"""
Conventional group-control dispatcher and its parameter space.

Each new hall call is assigned to the car with the lowest cost:

    cost = w_eta * ETA + w_load * load_ratio + w_stops * pending_stops
           + direction / full-load / zoning / lobby-reserve penalties
           - coincident-call bonus

Ties go to the lowest car index.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Set, Tuple, Union

from ..config_model import Configuration, ParameterSpace, parse_parameter_space
from .building import Building

logger = logging.getLogger(__name__)

DISPATCHER_SPACE_TEXT = """\
# Assignment cost weights
w_eta                    real    0.0   5.0    # weight of the estimated time of arrival (s)
w_load                   real    0.0   200.0  # weight of the car load ratio
w_stops                  real    0.0   30.0   # weight per pending stop of the car
stop_time_estimate_s     real    0.0   30.0   # assumed time lost per intermediate stop in ETA
direction_penalty_s      real    0.0   120.0  # cost when the car moves away from the call
coincident_call_bonus_s  real    0.0   60.0   # bonus when the car already stops at the call floor
full_load_threshold      real    0.5   1.0    # load ratio at which a car counts as full
full_load_penalty_s      real    0.0   300.0  # cost added to cars above the full-load threshold
# Zoning
zoning_enabled           boolean              # restrict cars to contiguous floor bands
zone_penalty_s           real    0.0   600.0  # cost for serving a call outside the car's band
# Parking
parking_policy           enum    none,lobby,distributed  # where idle cars go
parking_delay_s          real    0.0   300.0  # idle time before a car starts parking
lobby_floor              integer 1     12     # main entrance floor
lobby_reserve_penalty_s  real    0.0   300.0  # cost for taking a car parked at the lobby elsewhere
# Car behaviour
door_dwell_s             real    0.0   10.0   # extra time doors are held open after boarding
reassign_calls           boolean              # re-dispatch unserved calls on every new call
# Car options with no effect on passenger timing
nudging_timeout_s        real    5.0   60.0   # door nudging after obstruction
fire_recall_floor        integer 1     12     # floor used in fire-service recall
energy_saver_delay_s     real    60.0  900.0  # car lighting switch-off delay
chime_volume             integer 0     10     # arrival gong volume
"""

DEFAULT_DISPATCHER_VALUES = {
    'w_eta': 1.0,
    'w_load': 20.0,
    'w_stops': 2.0,
    'stop_time_estimate_s': 8.0,
    'direction_penalty_s': 15.0,
    'coincident_call_bonus_s': 5.0,
    'full_load_threshold': 0.8,
    'full_load_penalty_s': 60.0,
    'zoning_enabled': False,
    'zone_penalty_s': 60.0,
    'parking_policy': 'distributed',
    'parking_delay_s': 20.0,
    'lobby_floor': 1,
    'lobby_reserve_penalty_s': 0.0,
    'door_dwell_s': 0.0,
    'reassign_calls': False,
    'nudging_timeout_s': 20.0,
    'fire_recall_floor': 1,
    'energy_saver_delay_s': 300.0,
    'chime_volume': 5,
}

# Parameters that shift waiting/transit times in the bundled scenarios.
# lobby_floor and lobby_reserve_penalty_s only act under lobby parking and
# belong to neither group.
PERFORMANCE_CRITICAL_PARAMETERS = (
    'w_eta',
    'zoning_enabled',
    'zone_penalty_s',
    'parking_policy',
    'door_dwell_s',
)

# Parameters the simulator accepts but that never change passenger timing
NEAR_INERT_PARAMETERS = (
    'nudging_timeout_s',
    'fire_recall_floor',
    'energy_saver_delay_s',
    'chime_volume',
)

REQUIRED_PARAMETERS = tuple(DEFAULT_DISPATCHER_VALUES)


def default_dispatcher_space() -> ParameterSpace:
    """The bundled dispatcher parameter space."""
    return parse_parameter_space(DISPATCHER_SPACE_TEXT)


def default_dispatcher_config(space: Optional[ParameterSpace] = None, **overrides) -> Configuration:
    """Factory defaults of the dispatcher, optionally with some values replaced."""
    space = space or default_dispatcher_space()
    values = dict(DEFAULT_DISPATCHER_VALUES)
    values.update(overrides)
    return Configuration.from_mapping(space, values)


@dataclass(frozen=True)
class DispatcherSettings:
    """Typed view of the dispatcher parameters of a Configuration."""

    w_eta: float
    w_load: float
    w_stops: float
    stop_time_estimate_s: float
    direction_penalty_s: float
    coincident_call_bonus_s: float
    full_load_threshold: float
    full_load_penalty_s: float
    zoning_enabled: bool
    zone_penalty_s: float
    parking_policy: str
    parking_delay_s: float
    lobby_floor: int
    lobby_reserve_penalty_s: float
    door_dwell_s: float
    reassign_calls: bool

    @classmethod
    def from_configuration(cls, config: Configuration) -> 'DispatcherSettings':
        """
        Extract dispatcher settings from a configuration.

        Raises:
            KeyError: If a required dispatcher parameter is missing
        """
        missing = [name for name in REQUIRED_PARAMETERS if not config.space.has(name)]
        if missing:
            raise KeyError(f"configuration lacks dispatcher parameter(s): {', '.join(missing)}")
        return cls(**{f: config[f] for f in cls.__dataclass_fields__})


@dataclass(frozen=True)
class HallCall:
    """A landing call: floor plus travel direction (+1 up, -1 down)."""

    floor: int
    direction: int


@dataclass
class CarState:
    """Mutable state of one car, shared between the simulator and dispatcher."""

    index: int
    floor: int
    direction: int = 0
    load_kg: float = 0.0
    car_calls: Set[int] = field(default_factory=set)
    hall_calls: Set[Tuple[int, int]] = field(default_factory=set)
    doors_open: bool = False
    idle_since: Optional[float] = 0.0

    def stop_floors(self) -> Set[int]:
        return set(self.car_calls) | {f for f, _ in self.hall_calls}

    @property
    def pending_stops(self) -> int:
        return len(self.car_calls) + len(self.hall_calls)

    @property
    def is_idle(self) -> bool:
        return self.direction == 0 and not self.car_calls and not self.hall_calls


@dataclass
class FleetState:
    """Snapshot handed to the dispatcher."""

    building: Building
    cars: List[CarState]
    now: float = 0.0


def zone_of(car_index: int, building: Building) -> Tuple[int, int]:
    """Inclusive floor band served by a car when zoning is enabled."""
    size = math.ceil(building.floors / building.elevators)
    low = min(1 + car_index * size, building.floors)
    high = min(building.floors, low + size - 1)
    return low, high


def home_floor(car_index: int, building: Building) -> int:
    """Parking floor of a car under the distributed policy."""
    return 1 + round(car_index * (building.floors - 1) / building.elevators)


def effective_lobby(settings: DispatcherSettings, building: Building) -> int:
    return min(settings.lobby_floor, building.floors)


def estimate_eta(car: CarState, call: HallCall, settings: DispatcherSettings,
                 building: Building) -> Tuple[float, bool]:
    """
    Estimated time for a car to reach a call.

    Returns:
        (eta seconds, whether the car has to turn around first)
    """
    stops = car.stop_floors()
    if car.direction == 0:
        return abs(car.floor - call.floor) * building.floor_travel_s, False

    ahead = (call.floor - car.floor) * car.direction
    if ahead >= 0 and call.direction == car.direction:
        between = sum(1 for f in stops if 0 < (f - car.floor) * car.direction < ahead)
        return ahead * building.floor_travel_s + between * settings.stop_time_estimate_s, False

    beyond = [f for f in stops if (f - car.floor) * car.direction > 0]
    far = max(beyond, key=lambda f: (f - car.floor) * car.direction) if beyond else car.floor
    floors = abs(far - car.floor) + abs(far - call.floor)
    return floors * building.floor_travel_s + len(stops) * settings.stop_time_estimate_s, True


def assignment_cost(car: CarState, call: HallCall, settings: DispatcherSettings,
                    building: Building) -> float:
    """Cost of giving a call to one car."""
    eta, reverses = estimate_eta(car, call, settings, building)
    load_ratio = car.load_kg / building.capacity_kg

    cost = (settings.w_eta * eta
            + settings.w_load * load_ratio
            + settings.w_stops * car.pending_stops)
    if reverses:
        cost += settings.direction_penalty_s
    if load_ratio >= settings.full_load_threshold:
        cost += settings.full_load_penalty_s
    if call.floor in car.stop_floors():
        cost -= settings.coincident_call_bonus_s
    if settings.zoning_enabled:
        low, high = zone_of(car.index, building)
        if not low <= call.floor <= high:
            cost += settings.zone_penalty_s
    if settings.parking_policy == 'lobby':
        lobby = effective_lobby(settings, building)
        if car.is_idle and car.floor == lobby and call.floor != lobby:
            cost += settings.lobby_reserve_penalty_s
    return cost


def dispatch_assign(state: FleetState, call: HallCall,
                    config: Union[Configuration, DispatcherSettings]) -> int:
    """
    Choose the car for a hall call.

    Args:
        state: Current fleet state
        call: The landing call to assign
        config: Dispatcher configuration (or its pre-extracted settings)

    Returns:
        Index of the car with minimal cost (lowest index on ties)
    """
    settings = config if isinstance(config, DispatcherSettings) \
        else DispatcherSettings.from_configuration(config)
    best_index, best_cost = 0, math.inf
    for car in state.cars:
        cost = assignment_cost(car, call, settings, state.building)
        if cost < best_cost:
            best_index, best_cost = car.index, cost
    return best_index


class RoundRobinDispatcher:
    """Degenerate dispatcher that ignores the fleet state and cycles through cars."""

    def __init__(self):
        self.counter = 0

    def __call__(self, state: FleetState, call: HallCall) -> int:
        index = self.counter % len(state.cars)
        self.counter += 1
        return index


Dispatcher = Callable[[FleetState, HallCall], int]


def cost_dispatcher(settings: DispatcherSettings) -> Dispatcher:
    """Wrap the cost model as a dispatcher callable."""
    def assign(state: FleetState, call: HallCall) -> int:
        return dispatch_assign(state, call, settings)
    return assign


def round_robin_assign() -> Dispatcher:
    """Fresh round-robin dispatcher (state-blind comparison point)."""
    return RoundRobinDispatcher()
