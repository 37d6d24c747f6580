"""
Patch generation.

A patch copies its parent and mutates at least one parameter. After m
mutations another one follows with probability 0.5**m, so most patches
touch one or two parameters. A parameter is never mutated twice in the
same patch, and a mutated value always differs from the parent's.
"""

import logging
from typing import Sequence, Tuple, Union

import numpy as np

from ..config_model import Configuration, random_value
from .suspiciousness import SuspTracker, select_parameter

logger = logging.getLogger(__name__)


def generate_patch(
    parent: Configuration,
    selection: Union[SuspTracker, Sequence[float]],
    rng: np.random.Generator,
) -> Tuple[Configuration, Tuple[int, ...]]:
    """
    Derive a patch from a parent configuration.

    Args:
        parent: Configuration to mutate
        selection: Suspiciousness tracker, or explicit selection weights
        rng: Seeded random source

    Returns:
        (patch, indices of the mutated parameters in mutation order)

    Raises:
        ValueError: If no parameter of the space can take another value
    """
    space = parent.space
    scores = selection.scores() if isinstance(selection, SuspTracker) else selection
    # single-valued parameters cannot be mutated
    excluded = {i for i, spec in enumerate(space) if spec.domain_size() == 1}
    if len(excluded) == len(space):
        raise ValueError("no mutable parameter in the space")

    values = list(parent.values)
    mutated = []
    while True:
        i = select_parameter(scores, rng, exclude=excluded)
        values[i] = random_value(space[i], rng, exclude=values[i])
        mutated.append(i)
        excluded.add(i)
        if len(excluded) == len(space):
            break
        if rng.random() >= 0.5 ** len(mutated):
            break

    return Configuration(space, tuple(values)), tuple(mutated)

