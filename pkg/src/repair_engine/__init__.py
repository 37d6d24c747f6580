"""
Search core: patch generation, suspiciousness, archive and the repair loop.
"""

from .archive import (
    Archive,
    ArchiveEntry,
    archive_update,
    archive_update_unguided,
    classify_impact,
    crowding_distances,
    dominates,
    dominates_conf,
    non_dominated_filter,
)
from .config import EVICTION_POLICIES, MODES, RepairConfig
from .confirmation import ConfirmationResult, confirm_patch
from .engine import (
    STOP_ALL_PASS,
    STOP_BUDGET_EVALS,
    STOP_BUDGET_SECONDS,
    RepairEngine,
    RunLog,
    repair,
)
from .patch_generator import generate_patch
from .run_log import (
    EvaluationRecord,
    FrontSnapshot,
    RunSummary,
    archive_digest,
    export_archive,
    read_run_log,
    write_run_log,
    write_snapshots,
)
from .suspiciousness import (
    Impact,
    SuspTracker,
    parse_priors,
    priors_from_mapping,
    select_parameter,
    suspiciousness,
    update_suspiciousness,
)

__all__ = [
    'Archive',
    'ArchiveEntry',
    'archive_update',
    'archive_update_unguided',
    'classify_impact',
    'crowding_distances',
    'dominates',
    'dominates_conf',
    'non_dominated_filter',
    'EVICTION_POLICIES',
    'MODES',
    'RepairConfig',
    'ConfirmationResult',
    'confirm_patch',
    'STOP_ALL_PASS',
    'STOP_BUDGET_EVALS',
    'STOP_BUDGET_SECONDS',
    'RepairEngine',
    'RunLog',
    'repair',
    'generate_patch',
    'EvaluationRecord',
    'FrontSnapshot',
    'RunSummary',
    'archive_digest',
    'export_archive',
    'read_run_log',
    'write_run_log',
    'write_snapshots',
    'Impact',
    'SuspTracker',
    'parse_priors',
    'priors_from_mapping',
    'select_parameter',
    'suspiciousness',
    'update_suspiciousness',
]
