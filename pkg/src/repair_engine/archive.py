"""
Patch archive and dominance.

Confidence values are maximized: a dominates b when a is at least as good
on every oracle and strictly better on one.

Guided archive update for a candidate patch:
    1. it dominates archive members -> it enters, the dominated members leave
    2. it is mutually non-dominated with every member -> it enters
    3. a member dominates it -> the archive is unchanged
If the archive then exceeds its cap, one entry is evicted (by default the
one with the longest suite-worst AWT, ties broken at random).
"""

import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from ..config_model import Configuration
from ..oracles import ScoreVector
from .suspiciousness import Impact

logger = logging.getLogger(__name__)

IMPACT_TOLERANCE = 1e-6


def dominates_conf(a: Sequence[float], b: Sequence[float]) -> bool:
    if len(a) != len(b):
        raise ValueError(f"cannot compare score vectors of length {len(a)} and {len(b)}")
    strictly_better = False
    for x, y in zip(a, b):
        if x < y:
            return False
        if x > y:
            strictly_better = True
    return strictly_better


def dominates(a: ScoreVector, b: ScoreVector) -> bool:
    """True if a is >= b on every oracle and > b on at least one."""
    return dominates_conf(a.conf, b.conf)


def non_dominated_filter(points) -> np.ndarray:
    """
    Indices of the non-dominated rows of a (n, k) array (maximization).

    Equal rows do not dominate each other, so duplicates are all kept.
    """
    points = np.asarray(points, dtype=float)
    if points.size == 0:
        return np.array([], dtype=np.int64)
    keep = []
    for i, p in enumerate(points):
        dominated = np.any(np.all(points >= p, axis=1) & np.any(points > p, axis=1))
        if not dominated:
            keep.append(i)
    return np.array(keep, dtype=np.int64)


@dataclass(frozen=True)
class ArchiveEntry:
    """An evaluated patch with its lineage."""

    patch: Configuration
    score: ScoreVector
    eval_index: int
    parent_index: Optional[int] = None
    mutated: Tuple[int, ...] = ()
    # copy of the parent's score; the parent may have been evicted
    parent_score: Optional[ScoreVector] = None

    @property
    def awt_s(self) -> float:
        return self.score.metrics.awt_s


def classify_impact(patch_score: ScoreVector, parent_score: ScoreVector,
                    archive: Sequence[ArchiveEntry]) -> Impact:
    """
    Impact of a patch relative to its parent and the archive.

    none     -> same confidences as the parent (within 1e-6)
    negative -> dominated by the parent or an archive member
    positive -> otherwise
    """
    if all(abs(a - b) <= IMPACT_TOLERANCE for a, b in zip(patch_score.conf, parent_score.conf)):
        return Impact.NONE
    if dominates(parent_score, patch_score):
        return Impact.NEGATIVE
    if any(dominates(entry.score, patch_score) for entry in archive):
        return Impact.NEGATIVE
    return Impact.POSITIVE


def crowding_distances(confs: np.ndarray) -> np.ndarray:
    """Crowding distance of each row; boundary rows get +inf."""
    n, k = confs.shape
    distance = np.zeros(n)
    if n <= 2:
        return np.full(n, np.inf)
    for m in range(k):
        order = np.argsort(confs[:, m], kind='stable')
        values = confs[order, m]
        span = values[-1] - values[0]
        distance[order[0]] = distance[order[-1]] = np.inf
        if span == 0:
            continue
        distance[order[1:-1]] += (values[2:] - values[:-2]) / span
    return distance


class Archive:
    """Archive of evaluated patches."""

    def __init__(self, cap: Optional[int] = 12, eviction: str = 'max_awt'):
        self.cap = cap
        self.eviction = eviction
        self.entries: List[ArchiveEntry] = []

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def confs(self) -> np.ndarray:
        return np.array([e.score.conf for e in self.entries], dtype=float)

    def front(self) -> List[ArchiveEntry]:
        """Non-dominated members (all members for a guided archive)."""
        if not self.entries:
            return []
        return [self.entries[i] for i in non_dominated_filter(self.confs())]

    def _choose_eviction(self, rng: np.random.Generator) -> int:
        if self.eviction == 'random':
            return int(rng.integers(len(self.entries)))
        if self.eviction == 'crowding':
            key = crowding_distances(self.confs())
            candidates = np.flatnonzero(key == key.min())
        else:
            awt = np.array([e.awt_s for e in self.entries])
            candidates = np.flatnonzero(awt == awt.max())
        if candidates.size == 1:
            return int(candidates[0])
        return int(candidates[rng.integers(candidates.size)])

    def _enforce_cap(self, rng: np.random.Generator) -> Optional[ArchiveEntry]:
        if self.cap is None or len(self.entries) <= self.cap:
            return None
        evicted = self.entries.pop(self._choose_eviction(rng))
        logger.debug(f"[INFO] Archive full, evicted eval #{evicted.eval_index} "
                     f"(AWT {evicted.awt_s:.1f}s)")
        return evicted

    def update_guided(self, candidate: ArchiveEntry, rng: np.random.Generator) -> bool:
        """
        Apply the dominance rules and the size cap.

        Returns:
            True if the candidate is in the archive afterwards
        """
        if any(dominates(e.score, candidate.score) for e in self.entries):
            return False
        self.entries = [e for e in self.entries if not dominates(candidate.score, e.score)]
        self.entries.append(candidate)
        evicted = self._enforce_cap(rng)
        return evicted is not candidate

    def update_unguided(self, candidate: ArchiveEntry, rng: np.random.Generator) -> bool:
        """Append without filtering; the cap applies only if one is set."""
        self.entries.append(candidate)
        evicted = self._enforce_cap(rng)
        return evicted is not candidate

    def is_non_dominated(self) -> bool:
        return all(
            not dominates(a.score, b.score)
            for a in self.entries for b in self.entries if a is not b
        )


def archive_update(archive: Archive, candidate: ArchiveEntry, rng: np.random.Generator) -> Archive:
    archive.update_guided(candidate, rng)
    return archive


def archive_update_unguided(archive: Archive, candidate: ArchiveEntry,
                            rng: np.random.Generator) -> Archive:
    archive.update_unguided(candidate, rng)
    return archive
