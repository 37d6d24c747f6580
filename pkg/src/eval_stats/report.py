"""
Experiment report tables and files.

Files written by write_report:
    hv_by_checkpoint.csv  one row per run and checkpoint
    hv_stats.csv          A12 / p / effect of the first mode against each other mode
    metric_means.csv      Misconf / Manual / <mode>-DM mean metric values
    metric_stats.csv      per-metric comparison of DM patches between modes and
                          against the manual DM patch (mode_b = 'manual')

The manual patches yield one deterministic value, so comparisons against them
repeat that value once per run.
    summary.json          ExperimentSummary
    hv_curve.dat          gnuplot data: checkpoint and mean HV per mode
"""

import logging
from itertools import combinations
from pathlib import Path
from typing import Dict, List, Optional, Union

import numpy as np
import pandas as pd
from pydantic import BaseModel, Field

from ..elevator_sim import NEAR_INERT_PARAMETERS, PERFORMANCE_CRITICAL_PARAMETERS
from ..oracles import METRIC_LABELS
from .experiment import MODE_LABELS, ExperimentReport
from .statistics import StatResult, compare_samples, effect_category, vargha_delaney_a12, \
    wilcoxon_rank_sum

logger = logging.getLogger(__name__)

MANUAL = 'manual'


class ModeComparison(BaseModel):
    """Final-checkpoint HV comparison of two modes."""
    mode_a: str
    mode_b: str
    a12: float = Field(description="P(HV of mode_a > HV of mode_b)")
    p_value: float
    effect_category: str


class ManualComparison(BaseModel):
    """Final-checkpoint HV of one mode against the HV of the manual patches."""
    mode: str
    mean_hv: float
    manual_hv: float
    improvement_pct: Optional[float] = Field(
        default=None, description="(mean_hv - manual_hv) / manual_hv * 100; None when manual_hv is 0")
    a12: float = Field(description="P(HV of mode > manual HV)")
    p_value: float
    effect_category: str


class SuspiciousnessSummary(BaseModel):
    """Final suspiciousness of critical vs near-inert parameters over guided runs."""
    critical_mean: float
    inert_mean: float
    per_run_critical: List[float]
    per_run_inert: List[float]
    p_value: float = Field(description="One-sided rank-sum p-value (critical > inert)")


class ExperimentSummary(BaseModel):
    """Top-level experiment outcome (summary.json)."""
    scenario: str
    runs: int
    budget_evals: int
    modes: List[str]
    checkpoints: List[int]
    misconf_conf: List[float]
    misconf_metrics: Dict[str, float]
    final_hv_mean: Dict[str, float]
    manual_hv: Optional[float] = None
    manual_front: Optional[List[str]] = None
    manual_dm_patch: Optional[str] = None
    final_comparisons: List[ModeComparison] = Field(default_factory=list)
    manual_comparisons: List[ManualComparison] = Field(default_factory=list)
    dm_improves_awt_lwt: Dict[str, int] = Field(
        description="Runs whose DM patch has strictly lower AWT and LWT than the misconfiguration")
    confirmed_patches: Dict[str, int] = Field(description="Runs whose DM patch passed confirmation")
    stop_reasons: Dict[str, Dict[str, int]]
    suspiciousness: Optional[SuspiciousnessSummary] = None


def compare_modes(report: ExperimentReport, mode_a: str, mode_b: str, checkpoint: int) -> StatResult:
    """A12 and p-value of the HV samples of two modes at one checkpoint."""
    return compare_samples(report.hv_samples(mode_a, checkpoint), report.hv_samples(mode_b, checkpoint))


def _mode_pairs(report: ExperimentReport):
    modes = report.config.modes
    return [(modes[0], other) for other in modes[1:]]


def hv_table(report: ExperimentReport) -> pd.DataFrame:
    rows = [
        {'mode': o.mode, 'seed': o.seed, 'checkpoint': c, 'hv': o.hv_by_checkpoint[c]}
        for o in report.outcomes for c in report.checkpoints
    ]
    return pd.DataFrame(rows, columns=['mode', 'seed', 'checkpoint', 'hv'])


def hv_stats_table(report: ExperimentReport) -> pd.DataFrame:
    rows = []
    for checkpoint in report.checkpoints:
        for mode_a, mode_b in _mode_pairs(report):
            a = report.hv_samples(mode_a, checkpoint)
            b = report.hv_samples(mode_b, checkpoint)
            result = compare_samples(a, b)
            rows.append({
                'checkpoint': checkpoint,
                'mode_a': mode_a,
                'mode_b': mode_b,
                'mean_hv_a': float(np.mean(a)),
                'mean_hv_b': float(np.mean(b)),
                'a12': result.a12,
                'p_value': result.p_value,
                'effect': result.effect_category,
            })
    return pd.DataFrame(rows, columns=['checkpoint', 'mode_a', 'mode_b', 'mean_hv_a',
                                       'mean_hv_b', 'a12', 'p_value', 'effect'])


def metric_means_table(report: ExperimentReport) -> pd.DataFrame:
    table = pd.DataFrame({'metric': list(METRIC_LABELS)})
    table['Misconf'] = report.misconf_score.metrics.as_tuple()
    if report.manual is not None:
        table['Manual'] = report.manual.dm_score.metrics.as_tuple()
    for mode in report.config.modes:
        values = np.array([o.dm_metrics.as_tuple() for o in report.runs_of(mode)])
        table[f"{MODE_LABELS[mode]}-DM"] = values.mean(axis=0)
    return table


def _dm_metric_values(report: ExperimentReport, mode: str) -> np.ndarray:
    return np.array([o.dm_metrics.as_tuple() for o in report.runs_of(mode)])


def _metric_rows(mode_a: str, mode_b: str, a_values: np.ndarray, b_values: np.ndarray) -> List[dict]:
    rows = []
    for j, label in enumerate(METRIC_LABELS):
        a12 = vargha_delaney_a12(-a_values[:, j], -b_values[:, j])
        rows.append({
            'metric': label,
            'mode_a': mode_a,
            'mode_b': mode_b,
            'mean_a': float(a_values[:, j].mean()),
            'mean_b': float(b_values[:, j].mean()),
            'a12': a12,
            'p_value': wilcoxon_rank_sum(a_values[:, j], b_values[:, j]),
            'effect': effect_category(a12),
        })
    return rows


def metric_stats_table(report: ExperimentReport) -> pd.DataFrame:
    """
    Per-metric comparison of DM patches.

    Rows compare the first mode with each other mode, then every mode with the
    manual DM patch (mode_b = 'manual') when manual patches were scored.
    a12 is the probability that mode_a's DM patch has the lower (better) value.
    """
    rows = []
    for mode_a, mode_b in _mode_pairs(report):
        rows.extend(_metric_rows(mode_a, mode_b, _dm_metric_values(report, mode_a),
                                 _dm_metric_values(report, mode_b)))
    if report.manual is not None:
        manual = np.array(report.manual.dm_score.metrics.as_tuple())
        for mode in report.config.modes:
            values = _dm_metric_values(report, mode)
            rows.extend(_metric_rows(mode, MANUAL, values, np.tile(manual, (len(values), 1))))
    return pd.DataFrame(rows, columns=['metric', 'mode_a', 'mode_b', 'mean_a', 'mean_b',
                                       'a12', 'p_value', 'effect'])


def compare_with_manual(report: ExperimentReport, mode: str, checkpoint: int) -> ManualComparison:
    """
    HV samples of one mode against the manual patches' HV, repeated once per run.

    Raises:
        ValueError: The report has no manual patches
    """
    if report.manual is None:
        raise ValueError("report has no manual patches")
    samples = report.hv_samples(mode, checkpoint)
    manual_hv = report.manual.hv
    result = compare_samples(samples, [manual_hv] * len(samples))
    mean_hv = float(np.mean(samples))
    return ManualComparison(
        mode=mode,
        mean_hv=mean_hv,
        manual_hv=manual_hv,
        improvement_pct=(mean_hv - manual_hv) / manual_hv * 100.0 if manual_hv > 0 else None,
        a12=result.a12,
        p_value=result.p_value,
        effect_category=result.effect_category,
    )


def suspiciousness_summary(report: ExperimentReport) -> Optional[SuspiciousnessSummary]:
    """Compare critical vs near-inert parameters over the guided runs, if both exist."""
    runs = report.runs_of('guided')
    if not runs:
        return None
    names = set(runs[0].suspiciousness)
    critical = [p for p in PERFORMANCE_CRITICAL_PARAMETERS if p in names]
    inert = [p for p in NEAR_INERT_PARAMETERS if p in names]
    if not critical or not inert:
        return None
    per_critical = [float(np.mean([o.suspiciousness[p] for p in critical])) for o in runs]
    per_inert = [float(np.mean([o.suspiciousness[p] for p in inert])) for o in runs]
    return SuspiciousnessSummary(
        critical_mean=float(np.mean(per_critical)),
        inert_mean=float(np.mean(per_inert)),
        per_run_critical=per_critical,
        per_run_inert=per_inert,
        p_value=wilcoxon_rank_sum(per_critical, per_inert, alternative='greater'),
    )


def build_summary(report: ExperimentReport) -> ExperimentSummary:
    final = report.checkpoints[-1]
    misconf = report.misconf_score.metrics

    comparisons = []
    for mode_a, mode_b in combinations(report.config.modes, 2):
        result = compare_modes(report, mode_a, mode_b, final)
        comparisons.append(ModeComparison(mode_a=mode_a, mode_b=mode_b, a12=result.a12,
                                          p_value=result.p_value,
                                          effect_category=result.effect_category))

    improves, confirmed, stops = {}, {}, {}
    for mode in report.config.modes:
        runs = report.runs_of(mode)
        improves[mode] = sum(1 for o in runs
                             if o.dm_metrics.awt_s < misconf.awt_s and o.dm_metrics.lwt_s < misconf.lwt_s)
        confirmed[mode] = sum(1 for o in runs if o.confirmation is not None and o.confirmation.confirmed)
        reasons: Dict[str, int] = {}
        for o in runs:
            reasons[o.stop_reason] = reasons.get(o.stop_reason, 0) + 1
        stops[mode] = dict(sorted(reasons.items()))

    manual = report.manual
    return ExperimentSummary(
        scenario=report.scenario,
        runs=report.config.runs,
        budget_evals=report.config.budget_evals,
        modes=list(report.config.modes),
        checkpoints=list(report.checkpoints),
        misconf_conf=list(report.misconf_score.conf),
        misconf_metrics=misconf.as_dict(),
        final_hv_mean={m: float(np.mean(report.hv_samples(m, final))) for m in report.config.modes},
        manual_hv=manual.hv if manual else None,
        manual_front=manual.front_names if manual else None,
        manual_dm_patch=manual.dm_name if manual else None,
        final_comparisons=comparisons,
        manual_comparisons=[compare_with_manual(report, m, final) for m in report.config.modes]
        if manual else [],
        dm_improves_awt_lwt=improves,
        confirmed_patches=confirmed,
        stop_reasons=stops,
        suspiciousness=suspiciousness_summary(report),
    )


def _write_hv_curve(report: ExperimentReport, path: Path) -> None:
    modes = report.config.modes
    lines = ["# checkpoint " + " ".join(f"mean_hv_{m}" for m in modes)]
    for checkpoint in report.checkpoints:
        means = [float(np.mean(report.hv_samples(m, checkpoint))) for m in modes]
        lines.append(f"{checkpoint} " + " ".join(f"{v:.10f}" for v in means))
    path.write_text("\n".join(lines) + "\n", encoding='utf-8')


def write_report(report: ExperimentReport, out_dir: Union[str, Path]) -> Dict[str, Path]:
    """
    Write every report file into out_dir.

    Returns:
        Mapping of file name to path
    """
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    paths = {name: out_dir / name for name in (
        'hv_by_checkpoint.csv', 'hv_stats.csv', 'metric_means.csv',
        'metric_stats.csv', 'summary.json', 'hv_curve.dat')}

    hv_table(report).to_csv(paths['hv_by_checkpoint.csv'], index=False)
    hv_stats_table(report).to_csv(paths['hv_stats.csv'], index=False)
    metric_means_table(report).to_csv(paths['metric_means.csv'], index=False)
    metric_stats_table(report).to_csv(paths['metric_stats.csv'], index=False)
    paths['summary.json'].write_text(build_summary(report).model_dump_json(indent=2) + "\n",
                                     encoding='utf-8')
    _write_hv_curve(report, paths['hv_curve.dat'])

    logger.info(f"[OK] Experiment report written to {out_dir}")
    return paths
