"""
Bundled misconfiguration scenarios.

A scenario bundles a building, the dispatcher parameter space, a degraded
configuration, the failing test suite it is repaired against, a held-out
validation suite for patch confirmation and six expert-style manual patches.
"""

import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Dict, List, Tuple, Union

from ..config_model import Configuration, ParameterSpace, serialize_configuration, \
    serialize_parameter_space
from .building import Building, TestCase, serialize_building, write_passenger_file
from .dispatcher import DEFAULT_DISPATCHER_VALUES, default_dispatcher_space
from .traffic import generate_traffic

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Scenario:
    """A repair problem instance for the built-in simulator."""

    name: str
    description: str
    building: Building
    space: ParameterSpace
    misconfiguration: Configuration
    suite: Tuple[TestCase, ...]
    validation_suite: Tuple[TestCase, ...]
    manual_patches: Tuple[Tuple[str, Configuration], ...] = field(default_factory=tuple)

    @property
    def manual_patch_configs(self) -> List[Configuration]:
        return [config for _, config in self.manual_patches]


def _patched(base: Configuration, **changes) -> Configuration:
    values = base.as_dict()
    values.update(changes)
    return Configuration.from_mapping(base.space, values)


def _office_misconfig_a() -> Scenario:
    building = Building()
    space = default_dispatcher_space()

    degraded = dict(DEFAULT_DISPATCHER_VALUES)
    degraded.update(
        w_eta=0.05,
        w_load=200.0,
        zoning_enabled=True,
        zone_penalty_s=600.0,
        parking_policy='lobby',
        lobby_floor=12,
        door_dwell_s=6.0,
        direction_penalty_s=0.0,
    )
    misconfig = Configuration.from_mapping(space, degraded)

    suite = (
        generate_traffic('up_peak', 320, 1800.0, building, seed=11, test_id='a_up_peak'),
        generate_traffic('down_peak', 300, 1800.0, building, seed=12, test_id='a_down_peak'),
        generate_traffic('lunch', 260, 1800.0, building, seed=13, test_id='a_lunch'),
    )
    validation = (
        generate_traffic('full_day', 400, 7200.0, building, seed=21, test_id='a_full_day'),
        generate_traffic('inter_floor', 200, 1800.0, building, seed=22, test_id='a_inter_floor'),
        generate_traffic('up_peak', 250, 1800.0, building, seed=23, test_id='a_up_peak_v'),
    )
    manual = (
        ('zoning_off', _patched(misconfig, zoning_enabled=False)),
        ('short_dwell', _patched(misconfig, door_dwell_s=1.0)),
        ('ground_lobby', _patched(misconfig, lobby_floor=1)),
        ('zoning_off_dwell_2', _patched(misconfig, zoning_enabled=False, door_dwell_s=2.0)),
        ('factory_weights', _patched(misconfig, w_eta=1.0, w_load=20.0)),
        ('distributed_parking', _patched(misconfig, parking_policy='distributed',
                                         zone_penalty_s=60.0)),
    )
    return Scenario(
        name='seeded-misconfig-A',
        description='3 cars, 12-floor office block; ETA weight collapsed, hard zoning, '
                    'lobby parking at the top floor, long door dwell',
        building=building,
        space=space,
        misconfiguration=misconfig,
        suite=suite,
        validation_suite=validation,
        manual_patches=manual,
    )


def _residential_misconfig_b() -> Scenario:
    building = Building(floors=8, elevators=2, capacity_kg=480.0)
    space = default_dispatcher_space()

    degraded = dict(DEFAULT_DISPATCHER_VALUES)
    degraded.update(
        full_load_threshold=0.5,
        full_load_penalty_s=300.0,
        w_stops=30.0,
        door_dwell_s=4.0,
        coincident_call_bonus_s=0.0,
    )
    misconfig = Configuration.from_mapping(space, degraded)

    suite = (
        generate_traffic('up_peak', 200, 1800.0, building, seed=31, test_id='b_up_peak'),
        generate_traffic('down_peak', 220, 1800.0, building, seed=32, test_id='b_down_peak'),
        generate_traffic('inter_floor', 210, 1800.0, building, seed=33, test_id='b_inter_floor'),
    )
    validation = (
        generate_traffic('full_day', 300, 7200.0, building, seed=41, test_id='b_full_day'),
        generate_traffic('lunch', 200, 1800.0, building, seed=42, test_id='b_lunch'),
    )
    manual = (
        ('short_dwell', _patched(misconfig, door_dwell_s=1.0)),
        ('no_dwell', _patched(misconfig, door_dwell_s=0.0)),
        ('load_threshold_0_8', _patched(misconfig, full_load_threshold=0.8)),
        ('low_stop_weight', _patched(misconfig, w_stops=2.0)),
        ('soft_full_load', _patched(misconfig, full_load_penalty_s=60.0, door_dwell_s=2.0)),
        ('coincident_bonus', _patched(misconfig, coincident_call_bonus_s=5.0, w_stops=10.0)),
    )
    return Scenario(
        name='seeded-misconfig-B',
        description='2 cars, 8-floor residential block; aggressive full-load penalty, '
                    'heavy stop weight, long door dwell',
        building=building,
        space=space,
        misconfiguration=misconfig,
        suite=suite,
        validation_suite=validation,
        manual_patches=manual,
    )


SCENARIOS: Dict[str, Callable[[], Scenario]] = {
    'seeded-misconfig-A': _office_misconfig_a,
    'seeded-misconfig-B': _residential_misconfig_b,
}


def list_scenarios() -> List[str]:
    return sorted(SCENARIOS)


def load_scenario(name: str) -> Scenario:
    """
    Build a bundled scenario by name.

    Raises:
        KeyError: Unknown scenario name
    """
    if name not in SCENARIOS:
        raise KeyError(f"unknown scenario '{name}', available: {', '.join(list_scenarios())}")
    return SCENARIOS[name]()


def export_scenario(scenario: Scenario, directory: Union[str, Path]) -> Dict[str, object]:
    """
    Write a scenario as files usable by the repair command.

    Layout:
        space.txt, building.txt, misconfig.cfg,
        suite/<test id>.csv, validation/<test id>.csv,
        manual_patches/<patch name>.cfg

    Returns:
        Mapping of artefact kind to written path(s)
    """
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)

    space_path = directory / 'space.txt'
    space_path.write_text(serialize_parameter_space(scenario.space), encoding='utf-8')
    building_path = directory / 'building.txt'
    building_path.write_text(serialize_building(scenario.building), encoding='utf-8')
    config_path = directory / 'misconfig.cfg'
    config_path.write_text(serialize_configuration(scenario.misconfiguration), encoding='utf-8')

    suite_paths = [write_passenger_file(tc, directory / 'suite' / f"{tc.id}.csv")
                   for tc in scenario.suite]
    validation_paths = [write_passenger_file(tc, directory / 'validation' / f"{tc.id}.csv")
                        for tc in scenario.validation_suite]

    patch_dir = directory / 'manual_patches'
    patch_dir.mkdir(exist_ok=True)
    patch_paths = []
    for name, config in scenario.manual_patches:
        path = patch_dir / f"{name}.cfg"
        path.write_text(serialize_configuration(config), encoding='utf-8')
        patch_paths.append(path)

    logger.info(f"[OK] Scenario '{scenario.name}' exported to {directory}")
    return {
        'space': space_path,
        'building': building_path,
        'config': config_path,
        'suite': suite_paths,
        'validation': validation_paths,
        'manual_patches': patch_paths,
    }
