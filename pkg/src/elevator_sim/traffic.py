"""
Synthetic passenger flows.

Profiles follow the classic traffic templates used to size and test group
control: morning up-peak, evening down-peak, inter-floor traffic, a mixed
lunch peak and a full-day profile that chains them.
"""

import logging
from typing import Dict, List, Optional, Tuple

import numpy as np

from .building import Building, Passenger, TestCase

logger = logging.getLogger(__name__)

MEAN_WEIGHT_KG = 75.0
STD_WEIGHT_KG = 12.0
MIN_WEIGHT_KG = 40.0
MAX_WEIGHT_KG = 130.0

# (incoming from lobby, outgoing to lobby, inter-floor) shares
PROFILE_MIX: Dict[str, Tuple[float, float, float]] = {
    'up_peak': (0.85, 0.05, 0.10),
    'down_peak': (0.05, 0.85, 0.10),
    'inter_floor': (0.0, 0.0, 1.0),
    'lunch': (0.45, 0.45, 0.10),
}

# full_day: (start fraction of the day, profile)
FULL_DAY_PHASES: List[Tuple[float, str]] = [
    (0.00, 'up_peak'),
    (0.25, 'inter_floor'),
    (0.45, 'lunch'),
    (0.60, 'inter_floor'),
    (0.80, 'down_peak'),
]

TRAFFIC_PROFILES = tuple(PROFILE_MIX) + ('full_day',)


def _draw_trip(mix: Tuple[float, float, float], building: Building, lobby: int,
               rng: np.random.Generator) -> Tuple[int, int]:
    floors = building.floors
    others = [f for f in range(1, floors + 1) if f != lobby]
    u = rng.random()
    if u < mix[0]:
        return lobby, int(rng.choice(others))
    if u < mix[0] + mix[1]:
        return int(rng.choice(others)), lobby
    origin = int(rng.integers(1, floors + 1))
    destination = int(rng.integers(1, floors))
    if destination >= origin:
        destination += 1
    return origin, destination


def _phase_profile(fraction: float) -> str:
    profile = FULL_DAY_PHASES[0][1]
    for start, name in FULL_DAY_PHASES:
        if fraction >= start:
            profile = name
    return profile


def generate_traffic(
    profile: str,
    n_passengers: int,
    duration_s: float,
    building: Optional[Building] = None,
    seed: int = 0,
    test_id: Optional[str] = None,
    lobby: int = 1,
) -> TestCase:
    """
    Generate a synthetic passenger file.

    Arrival times are uniform over [0, duration_s) rounded to 0.1 s; weights
    are normal(75, 12) kg clipped to [40, 130] kg.

    Args:
        profile: One of TRAFFIC_PROFILES
        n_passengers: Number of passengers (>= 1)
        duration_s: Length of the arrival window
        building: Installation the trips must fit in
        seed: Seed of the generator
        test_id: Identifier of the test case (defaults to the profile name)
        lobby: Main entrance floor

    Returns:
        Time-sorted TestCase

    Raises:
        ValueError: Unknown profile or non-positive sizes
    """
    if profile not in TRAFFIC_PROFILES:
        raise ValueError(f"unknown traffic profile '{profile}', expected one of {TRAFFIC_PROFILES}")
    if n_passengers < 1:
        raise ValueError("n_passengers must be >= 1")
    if duration_s <= 0:
        raise ValueError("duration_s must be positive")

    building = building or Building()
    if not 1 <= lobby <= building.floors:
        raise ValueError(f"lobby floor {lobby} outside building")
    rng = np.random.default_rng(seed)

    times = np.sort(np.round(rng.uniform(0.0, duration_s, size=n_passengers), 1))
    weights = np.clip(rng.normal(MEAN_WEIGHT_KG, STD_WEIGHT_KG, size=n_passengers),
                      MIN_WEIGHT_KG, MAX_WEIGHT_KG)

    passengers = []
    for t, w in zip(times, weights):
        name = _phase_profile(t / duration_s) if profile == 'full_day' else profile
        origin, destination = _draw_trip(PROFILE_MIX[name], building, lobby, rng)
        passengers.append(Passenger(
            arrival_time_s=float(t),
            arrival_floor=origin,
            destination_floor=destination,
            weight_kg=round(float(w), 1),
        ))

    tc = TestCase(id=test_id or profile, passengers=tuple(passengers))
    logger.debug(f"[INFO] Generated {profile} traffic '{tc.id}': {n_passengers} passengers "
                 f"over {duration_s:.0f}s (seed {seed})")
    return tc
