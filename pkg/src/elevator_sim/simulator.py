"""
Discrete-event elevator group simulator.

Kinematics: constant time per floor travelled, doors take half a door cycle
to open and half to close, each boarding or alighting passenger takes
board_s. A passenger's waiting time runs from call registration until the
doors of the car they board are open; transit time runs from the start of
boarding until the doors open at the destination.

Cars follow collective control: they keep their direction while stops lie
ahead, stop for car calls and for hall calls assigned to them in their
travel direction, and reverse when nothing is left ahead. Events with equal
time are processed in scheduling order (simpy's event id).
"""

import logging
from collections import defaultdict, deque
from typing import Deque, Dict, List, Optional, Set, Tuple

import numpy as np
import simpy

from ..config_model import Configuration
from .building import Building, PassengerOutcome, SimResult, SimulationError, TestCase
from .dispatcher import (
    CarState,
    Dispatcher,
    DispatcherSettings,
    FleetState,
    HallCall,
    cost_dispatcher,
    effective_lobby,
    home_floor,
)

logger = logging.getLogger(__name__)

CallKey = Tuple[int, int]


class ElevatorGroupSimulation:
    """One simulation of a passenger file under one dispatcher configuration."""

    def __init__(
        self,
        config: Configuration,
        tc: TestCase,
        building: Building,
        seed: int = 0,
        dispatcher: Optional[Dispatcher] = None,
    ):
        try:
            self.settings = DispatcherSettings.from_configuration(config)
        except KeyError as e:
            raise SimulationError(
                f"configuration does not match the dispatcher parameter space: {e.args[0]}"
            ) from None

        for n, p in enumerate(tc.passengers):
            for floor in (p.arrival_floor, p.destination_floor):
                if not 1 <= floor <= building.floors:
                    raise SimulationError(
                        f"test case '{tc.id}', passenger {n}: floor {floor} outside "
                        f"building floors 1..{building.floors}"
                    )
            if p.weight_kg > building.capacity_kg:
                raise SimulationError(
                    f"test case '{tc.id}', passenger {n}: weight {p.weight_kg} kg exceeds "
                    f"car capacity {building.capacity_kg} kg"
                )

        self.tc = tc
        self.building = building
        self.passengers = tc.passengers
        self.rng = np.random.default_rng(seed)
        self.env = simpy.Environment()
        self.dispatcher = dispatcher or cost_dispatcher(self.settings)

        self.cars = [CarState(index=i, floor=1) for i in range(building.elevators)]
        self.fleet = FleetState(building=building, cars=self.cars)
        self.wake = [self.env.event() for _ in self.cars]
        self.onboard: List[List[int]] = [[] for _ in self.cars]
        self.peak_load = [0.0 for _ in self.cars]

        self.waiting: Dict[CallKey, Deque[int]] = defaultdict(deque)
        self.assignment: Dict[CallKey, int] = {}

        n = len(self.passengers)
        self.wait_end: List[Optional[float]] = [None] * n
        self.board_start: List[Optional[float]] = [None] * n
        self.arrived_at: List[Optional[float]] = [None] * n
        self.car_of: List[int] = [-1] * n
        self.n_boardings = 0
        self.n_alightings = 0
        self.last_completion = 0.0

    # ------------------------------------------------------------------
    # Hall calls
    # ------------------------------------------------------------------

    def _arrivals(self):
        for i, p in enumerate(self.passengers):
            delay = p.arrival_time_s - self.env.now
            if delay > 0:
                yield self.env.timeout(delay)
            self._register(i)

    def _register(self, i: int) -> None:
        p = self.passengers[i]
        key = (p.arrival_floor, p.direction)
        self.waiting[key].append(i)

        if key in self.assignment:
            self._wake(self.assignment[key])
        else:
            car_index = self._open_door_car(key)
            if car_index is None:
                car_index = self._dispatch(key)
            self._assign(key, car_index)

        if self.settings.reassign_calls:
            self._reassign_pending()

    def _open_door_car(self, key: CallKey) -> Optional[int]:
        floor, direction = key
        for car in self.cars:
            if car.doors_open and car.floor == floor and car.direction in (0, direction):
                return car.index
        return None

    def _dispatch(self, key: CallKey) -> int:
        self.fleet.now = self.env.now
        return self.dispatcher(self.fleet, HallCall(*key))

    def _assign(self, key: CallKey, car_index: int) -> None:
        self.assignment[key] = car_index
        car = self.cars[car_index]
        car.hall_calls.add(key)
        car.idle_since = None
        self._wake(car_index)

    def _release(self, key: CallKey) -> None:
        car_index = self.assignment.pop(key, None)
        if car_index is not None:
            self.cars[car_index].hall_calls.discard(key)

    def _reassign_pending(self) -> None:
        for key in sorted(self.assignment):
            car = self.cars[self.assignment[key]]
            if car.doors_open and car.floor == key[0]:
                continue
            self._release(key)
            self._assign(key, self._dispatch(key))

    def _wake(self, car_index: int) -> None:
        event = self.wake[car_index]
        if not event.triggered:
            event.succeed()

    # ------------------------------------------------------------------
    # Car movement
    # ------------------------------------------------------------------

    def _head_fits(self, car: CarState, key: CallKey) -> bool:
        queue = self.waiting.get(key)
        if not queue:
            return False
        return car.load_kg + self.passengers[queue[0]].weight_kg <= self.building.capacity_kg

    def _has_targets(self, car: CarState, direction: int) -> bool:
        return any((f - car.floor) * direction > 0 for f in car.stop_floors())

    def _should_stop_here(self, car: CarState) -> bool:
        floor = car.floor
        if floor in car.car_calls:
            return True
        servable = [k for k in car.hall_calls if k[0] == floor and self._head_fits(car, k)]
        if not servable:
            return False
        if car.direction == 0 or (floor, car.direction) in servable:
            return True
        return not self._has_targets(car, car.direction)

    def _choose_direction(self, car: CarState) -> int:
        d = car.direction
        if d != 0:
            if self._has_targets(car, d):
                return d
            if self._has_targets(car, -d):
                return -d
            return 0
        floors = [f for f in car.stop_floors() if f != car.floor]
        if not floors:
            return 0
        nearest = min(floors, key=lambda f: (abs(f - car.floor), f))
        return 1 if nearest > car.floor else -1

    def _parking_floor(self, car: CarState) -> Optional[int]:
        policy = self.settings.parking_policy
        if policy == 'lobby':
            return effective_lobby(self.settings, self.building)
        if policy == 'distributed':
            return home_floor(car.index, self.building)
        return None

    def _car_loop(self, car: CarState):
        env = self.env
        travel = self.building.floor_travel_s
        while True:
            if self._should_stop_here(car):
                yield from self._serve_floor(car)
                continue

            direction = self._choose_direction(car)
            if direction != 0:
                car.direction = direction
                car.idle_since = None
                yield env.timeout(travel)
                car.floor += direction
                continue

            car.direction = 0
            if car.idle_since is None:
                car.idle_since = env.now
            park = self._parking_floor(car)
            self.wake[car.index] = env.event()
            if park is None or park == car.floor:
                yield self.wake[car.index]
                continue
            remaining = car.idle_since + self.settings.parking_delay_s - env.now
            if remaining > 0:
                yield self.wake[car.index] | env.timeout(remaining)
                continue
            # parking move, one floor at a time so new calls interrupt it
            step = 1 if park > car.floor else -1
            yield env.timeout(travel)
            car.floor += step

    def _board_time(self) -> float:
        jitter = self.building.board_jitter_s
        if jitter > 0:
            return self.building.board_s + float(self.rng.uniform(0.0, jitter))
        return self.building.board_s

    def _boarding_key(self, car: CarState, left_behind: Set[CallKey]) -> Optional[CallKey]:
        floor, d = car.floor, car.direction

        def ready(key: CallKey) -> bool:
            return key in car.hall_calls and bool(self.waiting.get(key)) and key not in left_behind

        if d == 0:
            keys = [k for k in ((floor, 1), (floor, -1)) if ready(k)]
            if not keys:
                return None
            key = min(keys, key=lambda k: (self.passengers[self.waiting[k][0]].arrival_time_s, -k[1]))
            car.direction = key[1]
            return key

        if ready((floor, d)):
            return (floor, d)
        if ready((floor, -d)) and not self._has_targets(car, d):
            car.direction = -d
            return (floor, -d)
        return None

    def _serve_floor(self, car: CarState):
        env = self.env
        building = self.building
        ci = car.index
        floor = car.floor
        car.idle_since = None

        yield env.timeout(building.door_open_s)
        car.doors_open = True
        opened_at = env.now

        leaving = [i for i in self.onboard[ci] if self.passengers[i].destination_floor == floor]
        car.car_calls.discard(floor)
        for i in leaving:
            self.arrived_at[i] = opened_at
        if leaving:
            self.last_completion = max(self.last_completion, opened_at)
        for i in leaving:
            yield env.timeout(self._board_time())
            self.onboard[ci].remove(i)
            car.load_kg -= self.passengers[i].weight_kg
            self.n_alightings += 1
        if not self.onboard[ci]:
            car.load_kg = 0.0

        left_behind: Set[CallKey] = set()
        dwelled = False
        while True:
            key = self._boarding_key(car, left_behind)
            if key is not None:
                queue = self.waiting[key]
                i = queue[0]
                p = self.passengers[i]
                if car.load_kg + p.weight_kg > building.capacity_kg:
                    left_behind.add(key)
                    continue
                queue.popleft()
                self.wait_end[i] = max(opened_at, p.arrival_time_s)
                self.board_start[i] = env.now
                self.car_of[i] = ci
                if not queue:
                    self._release(key)
                yield env.timeout(self._board_time())
                self.onboard[ci].append(i)
                car.load_kg += p.weight_kg
                car.car_calls.add(p.destination_floor)
                self.n_boardings += 1
                self.peak_load[ci] = max(self.peak_load[ci], car.load_kg)
                continue
            if not dwelled and self.settings.door_dwell_s > 0:
                dwelled = True
                yield env.timeout(self.settings.door_dwell_s)
                continue
            break

        car.doors_open = False
        yield env.timeout(building.door_close_s)

        for key in sorted(left_behind):
            if self.waiting.get(key) and self.assignment.get(key) == ci:
                self._release(key)
                self._assign(key, self._dispatch(key))

    # ------------------------------------------------------------------
    # Run
    # ------------------------------------------------------------------

    def run(self) -> SimResult:
        """Execute the simulation up to last arrival + drain time."""
        if not self.passengers:
            return SimResult(test_id=self.tc.id, outcomes=(), duration_s=0.0, horizon_s=0.0,
                             peak_load_kg=tuple(0.0 for _ in self.cars))

        horizon = self.tc.last_arrival_s + self.building.drain_s
        self.env.process(self._arrivals())
        for car in self.cars:
            self.env.process(self._car_loop(car))
        self.env.run(until=horizon)

        outcomes = []
        for i, p in enumerate(self.passengers):
            if self.arrived_at[i] is not None:
                outcomes.append(PassengerOutcome(
                    waiting_time_s=self.wait_end[i] - p.arrival_time_s,
                    transit_time_s=self.arrived_at[i] - self.board_start[i],
                    boarded=True, completed=True, car=self.car_of[i],
                ))
            elif self.board_start[i] is not None:
                outcomes.append(PassengerOutcome(
                    waiting_time_s=self.wait_end[i] - p.arrival_time_s,
                    transit_time_s=horizon - self.board_start[i],
                    boarded=True, completed=False, car=self.car_of[i],
                ))
            else:
                outcomes.append(PassengerOutcome(
                    waiting_time_s=horizon - p.arrival_time_s,
                    transit_time_s=0.0,
                    boarded=False, completed=False,
                ))

        unserved = sum(1 for o in outcomes if not o.completed)
        if unserved:
            logger.debug(f"[WARN] {self.tc.id}: {unserved} passengers unserved at horizon {horizon:.1f}s")
        duration = self.last_completion if unserved == 0 else horizon

        return SimResult(
            test_id=self.tc.id,
            outcomes=tuple(outcomes),
            duration_s=duration,
            horizon_s=horizon,
            n_boardings=self.n_boardings,
            n_alightings=self.n_alightings,
            peak_load_kg=tuple(self.peak_load),
        )


def simulate(
    config: Configuration,
    tc: TestCase,
    building: Optional[Building] = None,
    seed: int = 0,
    dispatcher: Optional[Dispatcher] = None,
) -> SimResult:
    """
    Run one test case under one configuration.

    Args:
        config: Dispatcher configuration
        tc: Passenger file to replay
        building: Installation (defaults to the 3-car, 12-floor building)
        seed: Seed for the boarding-time jitter
        dispatcher: Optional replacement for the cost-based dispatcher

    Returns:
        Per-passenger SimResult; identical inputs give identical results

    Raises:
        SimulationError: Configuration/space mismatch or passenger floor
            outside the building
    """
    return ElevatorGroupSimulation(config, tc, building or Building(), seed, dispatcher).run()
