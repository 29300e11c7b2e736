"""Seedable, platform-independent randomness.

All sampling in the package flows through a Philox counter-based bit
generator, so identical seeds reproduce identical streams on any platform
and under any worker count.  ``RNG_ALGORITHM`` is the identifier recorded
in experiment outputs.
"""

from __future__ import annotations

import numpy as np

RNG_ALGORITHM = "philox4x64"
SEED_MIXER = "splitmix64"

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


def make_generator(seed: int) -> np.random.Generator:
    """Return a fresh generator for a 64-bit seed."""
    return np.random.Generator(np.random.Philox(key=seed & _MASK64))


def splitmix64(x: int) -> int:
    """The splitmix64 finalizer; pure 64-bit integer arithmetic."""
    z = (x + _GOLDEN) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def trial_seed(base_seed: int, trial: int) -> int:
    """Per-trial seed: splitmix64 stream member ``trial`` of ``base_seed``.

    Splittable by construction: trial t is reproducible in isolation
    without generating seeds 0..t-1.
    """
    return splitmix64((base_seed + trial * _GOLDEN) & _MASK64)
