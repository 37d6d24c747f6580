"""
Command-line frontend.

Commands:
    repair      Repair a misconfiguration against a failing suite
    baseline    Same as repair with the unguided search
    simulate    Simulate one configuration and print its metrics as CSV
    experiment  Repeated seeded runs per mode with HV statistics
    scenario    Export a bundled scenario as repair inputs

Exit codes:
    0  every oracle passes (repair) / command succeeded
    1  error
    2  budget expired; the decision maker's patch is written anyway
"""

import argparse
import json
import logging
import os
import sys
from pathlib import Path
from typing import List, Optional, Sequence, Tuple

import pandas as pd

from ..config_model import (
    Configuration,
    ParameterSpace,
    parse_configuration,
    parse_parameter_space,
    serialize_configuration,
)
from ..decision_maker import DmThresholds, decide_with_trace, parse_dm_thresholds, \
    serialize_dm_thresholds
from ..elevator_sim import (
    Building,
    Scenario,
    TestCase,
    default_dispatcher_space,
    export_scenario,
    export_sim_result,
    generate_traffic,
    list_scenarios,
    load_passenger_file,
    load_scenario,
    parse_building,
    simulate,
)
from ..eval_stats import ExperimentConfig, run_experiment, write_report
from ..oracles import (
    METRIC_NAMES,
    OracleSpec,
    SuiteEvaluator,
    compute_metrics,
    default_oracle_spec,
    experiment_oracle_spec,
    parse_oracle_spec,
    serialize_oracle_spec,
)
from ..repair_engine import (
    EVICTION_POLICIES,
    MODES,
    STOP_ALL_PASS,
    RepairConfig,
    confirm_patch,
    export_archive,
    parse_priors,
    repair,
    write_run_log,
    write_snapshots,
)
from ..utils import setup_logging

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_BUDGET_EXPIRED = 2

DEFAULT_SCENARIO = 'seeded-misconfig-A'


class CliUsageError(Exception):
    """Bad or missing command-line arguments."""


class _Parser(argparse.ArgumentParser):
    """ArgumentParser that raises instead of exiting on bad arguments."""

    def error(self, message):
        raise CliUsageError(message)


# ---------------------------------------------------------------------------
# Input loading
# ---------------------------------------------------------------------------

def _read_text(path: str, what: str) -> str:
    p = Path(path)
    if not p.is_file():
        raise FileNotFoundError(f"{what} file not found: {p}")
    return p.read_text(encoding='utf-8')


def _split_list(value: Optional[str]) -> List[str]:
    if not value:
        return []
    return [item.strip() for item in value.split(',') if item.strip()]


def load_suite(value: str) -> List[TestCase]:
    """
    Load a comma-separated list of passenger files; a directory entry
    contributes all of its *.csv files in name order.

    Raises:
        FileNotFoundError: A listed file or directory does not exist
    """
    suite = []
    for item in _split_list(value):
        path = Path(item)
        if path.is_dir():
            files = sorted(path.glob('*.csv'))
            if not files:
                raise FileNotFoundError(f"no passenger files in directory: {path}")
            suite.extend(load_passenger_file(f) for f in files)
        else:
            suite.append(load_passenger_file(path))
    ids = [tc.id for tc in suite]
    if len(set(ids)) != len(ids):
        raise CliUsageError(f"duplicate test case ids in suite: {ids}")
    return suite


def synthetic_validation_suite(building: Building, seed: int) -> List[TestCase]:
    """Held-out full-day and inter-floor traffic used when no validation suite is given."""
    return [
        generate_traffic('full_day', 300, 7200.0, building, seed=1000 + seed, test_id='val_full_day'),
        generate_traffic('inter_floor', 200, 1800.0, building, seed=1001 + seed,
                         test_id='val_inter_floor'),
    ]


def _resolve_workers(flag: Optional[int]) -> int:
    if flag is not None:
        if flag < 1:
            raise CliUsageError("--workers must be >= 1")
        return flag
    env = os.getenv('REPAIR_WORKERS')
    if env:
        return int(env)
    return os.cpu_count() or 1


def _load_space(args) -> ParameterSpace:
    if args.space:
        return parse_parameter_space(_read_text(args.space, 'parameter space'))
    return default_dispatcher_space()


def _load_building(args) -> Optional[Building]:
    if args.building:
        return parse_building(_read_text(args.building, 'building'))
    return None


def _load_oracles(args, default: OracleSpec) -> OracleSpec:
    if args.oracles:
        return parse_oracle_spec(_read_text(args.oracles, 'oracle'))
    return default


def _load_dm_thresholds(args) -> DmThresholds:
    if args.dm_thresholds:
        return parse_dm_thresholds(_read_text(args.dm_thresholds, 'DM thresholds'))
    return DmThresholds()


def _load_priors(args) -> dict:
    if args.priors:
        return parse_priors(_read_text(args.priors, 'priors'))
    return {}


def _parse_checkpoints(value: Optional[str]) -> Tuple[int, ...]:
    try:
        return tuple(int(v) for v in _split_list(value))
    except ValueError:
        raise CliUsageError(f"--checkpoints expects comma-separated integers, got {value!r}") from None


def _problem_from_args(args) -> Scenario:
    """
    Resolve the repair problem: a bundled scenario, explicit files, or a
    scenario with individual pieces overridden by files.
    """
    base = load_scenario(args.scenario) if args.scenario else None
    if base is None and not args.config:
        raise CliUsageError("either --scenario or --config is required")
    if base is None and not args.suite:
        raise CliUsageError("either --scenario or --suite is required")

    space = _load_space(args) if (args.space or base is None) else base.space
    building = _load_building(args) or (base.building if base else Building())
    if args.config:
        config = parse_configuration(_read_text(args.config, 'configuration'), space)
    else:
        config = base.misconfiguration
    suite = load_suite(args.suite) if args.suite else list(base.suite)
    if args.validation_suite:
        validation = load_suite(args.validation_suite)
    elif base is not None and not args.suite:
        validation = list(base.validation_suite)
    else:
        validation = synthetic_validation_suite(building, args.seed or 0)
        logger.info(f"[INFO] No validation suite given; generated {len(validation)} held-out test cases")

    return Scenario(
        name=base.name if base else Path(args.config).stem,
        description=base.description if base else 'loaded from files',
        building=building,
        space=space,
        misconfiguration=config,
        suite=tuple(suite),
        validation_suite=tuple(validation),
        manual_patches=base.manual_patches if base else (),
    )


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------

def _run_repair(args, mode: str) -> int:
    problem = _problem_from_args(args)
    workers = _resolve_workers(args.workers)
    oracle_spec = _load_oracles(args, default_oracle_spec())
    thresholds = _load_dm_thresholds(args)

    repair_config = RepairConfig.from_env(
        n_susp=args.n_susp,
        budget_evals=args.budget_evals,
        budget_seconds=args.budget_seconds,
        seed=args.seed,
        mode=mode,
        workers=workers,
        eviction=args.eviction,
        unguided_cap=args.unguided_cap,
        checkpoints=_parse_checkpoints(args.checkpoints) or None,
        priors=_load_priors(args) or None,
    )
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    logger.info("=" * 60)
    logger.info(f"REPAIR ({repair_config.mode}): {problem.name}")
    logger.info("=" * 60)
    logger.info(f"[INFO] Suite: {', '.join(tc.id for tc in problem.suite)}; "
                f"{len(problem.space)} parameters; {workers} worker(s)")

    log = repair(problem.misconfiguration, problem.suite, repair_config,
                 building=problem.building, oracle_spec=oracle_spec)

    write_run_log(log.records, out_dir / 'run_log.ndjson')
    if log.snapshots:
        write_snapshots(log.snapshots, out_dir / 'fronts.ndjson')
    export_archive(log.archive.entries, out_dir / 'archive')

    chosen, trace = decide_with_trace(log.front(), problem.misconfiguration, thresholds)
    (out_dir / 'selected_patch.cfg').write_text(serialize_configuration(chosen.patch), encoding='utf-8')
    (out_dir / 'decision.txt').write_text("\n".join(trace) + "\n", encoding='utf-8')
    for line in trace:
        logger.info(f"[INFO] DM {line}")

    with SuiteEvaluator(problem.validation_suite, problem.building, oracle_spec, workers) as validator:
        confirmation = confirm_patch(chosen.patch, problem.misconfiguration, validator)
    verdict = 'CONFIRMED' if confirmation.confirmed else 'REGRESSION'
    (out_dir / 'confirmation.txt').write_text(
        "\n".join([verdict] + confirmation.describe()) + "\n", encoding='utf-8')

    summary = log.summary().model_dump()
    summary.update({
        'selected_eval_index': chosen.eval_index,
        'selected_metrics': chosen.score.metrics.as_dict(),
        'confirmed': confirmation.confirmed,
        'regressions': list(confirmation.regressions),
    })
    (out_dir / 'summary.json').write_text(json.dumps(summary, indent=2) + "\n", encoding='utf-8')

    logger.info("=" * 60)
    logger.info(f"[OK] Stop reason: {log.stop_reason}; selected patch #{chosen.eval_index}; "
                f"validation {verdict.lower()}")
    logger.info(f"[OK] Results written to {out_dir}")
    logger.info("=" * 60)
    return EXIT_OK if log.stop_reason == STOP_ALL_PASS else EXIT_BUDGET_EXPIRED


def cmd_repair(args) -> int:
    return _run_repair(args, args.mode)


def cmd_baseline(args) -> int:
    return _run_repair(args, 'unguided')


def cmd_simulate(args) -> int:
    if args.scenario:
        scenario = load_scenario(args.scenario)
        space, building = scenario.space, scenario.building
        default_config, default_suite = scenario.misconfiguration, list(scenario.suite)
    else:
        space, building, default_config, default_suite = _load_space(args), Building(), None, []
    building = _load_building(args) or building

    if args.config:
        config = parse_configuration(_read_text(args.config, 'configuration'), space)
    elif default_config is not None:
        config = default_config
    else:
        raise CliUsageError("either --scenario or --config is required")
    suite = load_suite(args.suite) if args.suite else default_suite
    if not suite:
        raise CliUsageError("either --scenario or --suite is required")

    rows = []
    for tc in suite:
        result = simulate(config, tc, building, seed=args.seed or 0)
        rows.append({'test_id': tc.id, **compute_metrics(result).as_dict()})
        if args.out_dir:
            export_sim_result(result, Path(args.out_dir) / f"{tc.id}_passengers.csv", tc)

    table = pd.DataFrame(rows, columns=['test_id', *METRIC_NAMES])
    if args.out_dir:
        table.to_csv(Path(args.out_dir) / 'metrics.csv', index=False)
    sys.stdout.write(table.to_csv(index=False))
    return EXIT_OK


def cmd_experiment(args) -> int:
    if args.scenario or args.config or args.suite:
        problem = _problem_from_args(args)
    else:
        problem = load_scenario(DEFAULT_SCENARIO)

    manual = None
    if args.manual_patches:
        manual = _load_manual_patches(args.manual_patches, problem.space)

    modes = tuple(_split_list(args.modes)) or ('guided', 'unguided')
    config = ExperimentConfig(
        runs=args.runs,
        budget_evals=args.budget_evals or 500,
        modes=modes,
        checkpoints=_parse_checkpoints(args.checkpoints),
        base_seed=args.seed or 0,
        workers=_resolve_workers(args.workers),
        n_susp=args.n_susp or 5,
        eviction=args.eviction or 'max_awt',
        unguided_cap=args.unguided_cap,
        priors=_load_priors(args),
        oracle_spec=_load_oracles(args, experiment_oracle_spec()),
        dm_thresholds=_load_dm_thresholds(args),
    )
    report = run_experiment(problem, config, manual)
    write_report(report, args.out_dir)
    return EXIT_OK


def _load_manual_patches(directory: str, space: ParameterSpace) -> List[Tuple[str, Configuration]]:
    path = Path(directory)
    if not path.is_dir():
        raise FileNotFoundError(f"manual patch directory not found: {path}")
    files = sorted(path.glob('*.cfg'))
    if not files:
        raise FileNotFoundError(f"no *.cfg manual patches in {path}")
    return [(f.stem, parse_configuration(f.read_text(encoding='utf-8'), space)) for f in files]


def cmd_export_scenario(args) -> int:
    scenario = load_scenario(args.name)
    out_dir = Path(args.out_dir)
    export_scenario(scenario, out_dir)
    (out_dir / 'oracles.txt').write_text(serialize_oracle_spec(default_oracle_spec()), encoding='utf-8')
    (out_dir / 'oracles_experiment.txt').write_text(
        serialize_oracle_spec(experiment_oracle_spec()), encoding='utf-8')
    (out_dir / 'dm_thresholds.txt').write_text(serialize_dm_thresholds(DmThresholds()), encoding='utf-8')
    return EXIT_OK


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

def _add_problem_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument('--scenario', choices=list_scenarios(),
                   help='Bundled scenario providing any input not given as a file')
    p.add_argument('--space', help='Parameter space file (default: built-in dispatcher space)')
    p.add_argument('--config', help='Misconfigured configuration file')
    p.add_argument('--building', help='Building file (default: 3 cars, 12 floors)')
    p.add_argument('--suite', help='Comma-separated passenger files or directories (failing suite)')
    p.add_argument('--validation-suite',
                   help='Comma-separated passenger files for patch confirmation '
                        '(default: synthetic held-out traffic)')


def _add_search_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument('--oracles', help='Oracle spec file (threshold/scale per oracle)')
    p.add_argument('--dm-thresholds', help='Decision-maker thresholds file')
    p.add_argument('--budget-evals', type=int, help='Evaluation budget (default: 500)')
    p.add_argument('--seed', type=int, help='Random seed (default: 0)')
    p.add_argument('--workers', type=int,
                   help='Simulation worker processes (default: logical-core count)')
    p.add_argument('--checkpoints', help='Comma-separated evaluation counts for front snapshots')
    p.add_argument('--n-susp', type=int, help='Suspiciousness warm-up mutations (default: 5)')
    p.add_argument('--eviction', choices=EVICTION_POLICIES, help='Archive eviction rule (default: max_awt)')
    p.add_argument('--priors', help='Initial suspiciousness per parameter (key=value file)')
    p.add_argument('--unguided-cap', type=int, help='Size cap of the unguided archive (default: none)')


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument('--log-level', default=os.getenv('LOG_LEVEL', 'INFO'),
                        choices=['DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL'],
                        help='Logging level (default: INFO)')
    common.add_argument('--log-file', help='Also log to this file')

    parser = _Parser(
        prog='misconfig_repair.py',
        description='Search-based repair of elevator dispatcher misconfigurations',
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog=__doc__,
    )
    sub = parser.add_subparsers(dest='command', metavar='COMMAND')
    sub.required = True

    for name, handler, help_text in (
        ('repair', cmd_repair, 'Repair a misconfiguration'),
        ('baseline', cmd_baseline, 'Repair with the unguided baseline search'),
    ):
        p = sub.add_parser(name, parents=[common], help=help_text,
                           formatter_class=argparse.RawDescriptionHelpFormatter)
        _add_problem_flags(p)
        _add_search_flags(p)
        p.add_argument('--budget-seconds', type=float, help='Optional wall-clock budget')
        if name == 'repair':
            p.add_argument('--mode', choices=MODES, help='Search mode (default: guided)')
        p.add_argument('--out-dir', default='repair_out', help='Output directory (default: repair_out)')
        p.set_defaults(handler=handler)

    p = sub.add_parser('simulate', parents=[common], help='Simulate one configuration')
    p.add_argument('--scenario', choices=list_scenarios(),
                   help='Bundled scenario providing any input not given as a file')
    p.add_argument('--space', help='Parameter space file (default: built-in dispatcher space)')
    p.add_argument('--config', help='Configuration file')
    p.add_argument('--building', help='Building file (default: 3 cars, 12 floors)')
    p.add_argument('--suite', help='Comma-separated passenger files')
    p.add_argument('--seed', type=int, help='Simulator seed (default: 0)')
    p.add_argument('--out-dir', help='Also write metrics.csv and per-passenger results here')
    p.set_defaults(handler=cmd_simulate)

    p = sub.add_parser('experiment', parents=[common], help='Multi-run comparison of search modes')
    _add_problem_flags(p)
    _add_search_flags(p)
    p.add_argument('--runs', type=int, default=10, help='Runs per mode (default: 10)')
    p.add_argument('--modes', help=f"Comma-separated modes from {', '.join(MODES)} "
                                   f"(default: guided,unguided)")
    p.add_argument('--manual-patches', help='Directory of *.cfg manual patches')
    p.add_argument('--out-dir', default='experiment_out', help='Report directory (default: experiment_out)')
    p.set_defaults(handler=cmd_experiment)

    p = sub.add_parser('scenario', parents=[common], help='Export a bundled scenario as files')
    p.add_argument('--name', default=DEFAULT_SCENARIO, choices=list_scenarios(), help='Scenario name')
    p.add_argument('--out-dir', required=True, help='Target directory')
    p.set_defaults(handler=cmd_export_scenario)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Parse arguments, configure logging and run one command.

    Returns:
        Process exit code
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except CliUsageError as e:
        sys.stderr.write(f"{parser.prog}: error: {e}\n")
        return EXIT_ERROR
    except SystemExit as e:
        # --help
        return int(e.code or 0)

    setup_logging(args.log_level, args.log_file)

    try:
        return args.handler(args)
    except KeyboardInterrupt:
        logger.info("[INFO] Interrupted by user")
        return EXIT_ERROR
    except (CliUsageError, FileNotFoundError, KeyError, ValueError, RuntimeError) as e:
        message = e.args[0] if isinstance(e, KeyError) and e.args else str(e)
        logger.error(f"[ERROR] {message}")
        logger.debug("[ERROR] Traceback", exc_info=True)
        sys.stderr.write(f"error: {message}\n")
        return EXIT_ERROR
    except Exception as e:
        logger.error(f"[ERROR] Fatal error: {e}", exc_info=True)
        return EXIT_ERROR
