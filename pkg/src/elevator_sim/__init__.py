"""
Built-in elevator group-control simulator (the default system under repair).
"""

from .building import (
    PASSENGER_COLUMNS,
    Building,
    BuildingError,
    Passenger,
    PassengerFileError,
    PassengerOutcome,
    SimResult,
    SimulationError,
    TestCase,
    export_sim_result,
    load_passenger_file,
    parse_building,
    parse_passenger_file,
    serialize_building,
    write_passenger_file,
)
from .dispatcher import (
    DEFAULT_DISPATCHER_VALUES,
    DISPATCHER_SPACE_TEXT,
    NEAR_INERT_PARAMETERS,
    PERFORMANCE_CRITICAL_PARAMETERS,
    CarState,
    Dispatcher,
    DispatcherSettings,
    FleetState,
    HallCall,
    RoundRobinDispatcher,
    assignment_cost,
    default_dispatcher_config,
    default_dispatcher_space,
    dispatch_assign,
    round_robin_assign,
    zone_of,
)
from .scenarios import Scenario, export_scenario, list_scenarios, load_scenario
from .simulator import ElevatorGroupSimulation, simulate
from .traffic import TRAFFIC_PROFILES, generate_traffic

__all__ = [
    'PASSENGER_COLUMNS',
    'Building',
    'BuildingError',
    'Passenger',
    'PassengerFileError',
    'PassengerOutcome',
    'SimResult',
    'SimulationError',
    'TestCase',
    'export_sim_result',
    'load_passenger_file',
    'parse_building',
    'parse_passenger_file',
    'serialize_building',
    'write_passenger_file',
    'DEFAULT_DISPATCHER_VALUES',
    'DISPATCHER_SPACE_TEXT',
    'NEAR_INERT_PARAMETERS',
    'PERFORMANCE_CRITICAL_PARAMETERS',
    'CarState',
    'Dispatcher',
    'DispatcherSettings',
    'FleetState',
    'HallCall',
    'RoundRobinDispatcher',
    'assignment_cost',
    'default_dispatcher_config',
    'default_dispatcher_space',
    'dispatch_assign',
    'round_robin_assign',
    'zone_of',
    'Scenario',
    'export_scenario',
    'list_scenarios',
    'load_scenario',
    'ElevatorGroupSimulation',
    'simulate',
    'TRAFFIC_PROFILES',
    'generate_traffic',
]
