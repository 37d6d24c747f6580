"""
Run log records and their on-disk formats.

The run log is newline-delimited JSON, one record per evaluation. It holds
no wall-clock data, so the same seed always gives an identical file.
"""

import hashlib
import json
import logging
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Union

import pandas as pd
from pydantic import BaseModel, Field

from ..config_model import serialize_configuration
from ..oracles import METRIC_NAMES
from .archive import ArchiveEntry

logger = logging.getLogger(__name__)


class EvaluationRecord(BaseModel):
    """One evaluated configuration."""
    eval_index: int = Field(description="Evaluation counter (0 = initial configuration)")
    parent_index: Optional[int] = Field(default=None, description="eval_index of the parent patch")
    mutated_params: List[str] = Field(default_factory=list, description="Names of the mutated parameters")
    conf: List[float] = Field(description="Per-oracle confidence values in [-1, 0]")
    metrics: Dict[str, float] = Field(description="Suite-worst metric values")
    impact: str = Field(description="positive, negative, none, or initial")
    in_archive: bool = Field(description="Whether the patch is in the archive after the update")
    archive_size: int = Field(description="Archive size after the update")
    archive_hash: str = Field(description="Digest of the archive contents after the update")


class FrontSnapshot(BaseModel):
    """Non-dominated front of a run at one checkpoint."""
    run_id: str = Field(description="Identifier of the run (mode and seed)")
    checkpoint: int = Field(description="Evaluation count at which the front was taken")
    front: List[List[float]] = Field(description="Confidence vectors of the non-dominated set")


class RunSummary(BaseModel):
    """Outcome of a repair run."""
    mode: str
    seed: int
    evaluations: int = Field(description="Patches evaluated beyond the initial configuration")
    stop_reason: str = Field(description="all_pass, budget_evals or budget_seconds")
    archive_size: int
    front_size: int
    initial_conf: List[float]
    best_awt_s: float = Field(description="Lowest suite-worst AWT in the archive")
    suspiciousness: Dict[str, float] = Field(description="Final suspiciousness per parameter")


def archive_digest(entries: Sequence[ArchiveEntry]) -> str:
    """Short sha256 digest of (eval_index, conf) of the archive members."""
    payload = json.dumps(
        sorted([e.eval_index, list(e.score.conf)] for e in entries),
        separators=(',', ':'),
    )
    return hashlib.sha256(payload.encode('utf-8')).hexdigest()[:16]


def write_run_log(records: Sequence[EvaluationRecord], path: Union[str, Path]) -> Path:
    """Write evaluation records as NDJSON."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, 'w', encoding='utf-8') as f:
        for record in records:
            f.write(record.model_dump_json() + "\n")
    logger.info(f"[OK] Run log written: {path} ({len(records)} records)")
    return path


def read_run_log(path: Union[str, Path]) -> List[EvaluationRecord]:
    with open(path, 'r', encoding='utf-8') as f:
        return [EvaluationRecord.model_validate_json(line) for line in f if line.strip()]


def write_snapshots(snapshots: Sequence[FrontSnapshot], path: Union[str, Path]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, 'w', encoding='utf-8') as f:
        for snapshot in snapshots:
            f.write(snapshot.model_dump_json() + "\n")
    return path


def export_archive(entries: Sequence[ArchiveEntry], directory: Union[str, Path]) -> Path:
    """
    Write each archive member as a configuration file plus archive_summary.csv.

    Returns:
        Path of the summary CSV
    """
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)

    rows = []
    for entry in sorted(entries, key=lambda e: e.eval_index):
        filename = f"patch_{entry.eval_index:06d}.cfg"
        (directory / filename).write_text(serialize_configuration(entry.patch), encoding='utf-8')
        row = {'eval_index': entry.eval_index, 'file': filename, 'parent_index': entry.parent_index,
               'mutated': ';'.join(entry.patch.space.names[i] for i in entry.mutated)}
        row.update({f"conf_{k}": c for k, c in enumerate(entry.score.conf)})
        row.update(dict(zip(METRIC_NAMES, entry.score.metrics.as_tuple())))
        rows.append(row)

    summary_path = directory / 'archive_summary.csv'
    pd.DataFrame(rows).to_csv(summary_path, index=False)
    logger.info(f"[OK] Archive exported: {len(rows)} patches -> {directory}")
    return summary_path
