"""Seedable, splittable random streams.

Every random draw in the package comes from a ``numpy.random.Generator``
backed by PCG64. Streams for independent work items are derived from a
master seed and an integer key path::

    stream(seed, i, j) == Generator(PCG64(SeedSequence(seed, spawn_key=(i, j))))

so sample ``k`` of a run seeded with ``s`` is always ``stream(s, k)``,
independent of how many other samples are drawn or in which order.
"""
from __future__ import annotations

import os
from numbers import Integral

import numpy as np

THREADS_ENV = "CLIQUEGEN_THREADS"


def stream(seed: int | None, *keys: int) -> np.random.Generator:
    if seed is None:
        return np.random.default_rng()
    seq = np.random.SeedSequence(int(seed), spawn_key=tuple(int(k) for k in keys))
    return np.random.Generator(np.random.PCG64(seq))


def check_random_state(random_state) -> np.random.Generator:
    """Turn ``None``, an int seed or a Generator into a Generator."""
    if random_state is None:
        return np.random.default_rng()
    if isinstance(random_state, np.random.Generator):
        return random_state
    if isinstance(random_state, (Integral, np.integer)):
        return stream(int(random_state))
    raise TypeError(f"cannot build a Generator from {random_state!r}")


def default_threads() -> int:
    raw = os.environ.get(THREADS_ENV, "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1
