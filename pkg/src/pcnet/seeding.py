"""Counter-based seed derivation for reproducible parallel streams.

Every stochastic task (one perturbed realization, one SIR run) gets its own
``numpy.random.Generator`` seeded from a tuple of integers, so results never
depend on how tasks are scheduled across workers.

The mixing function is the SplitMix64 finalizer (Steele, Lea & Flood 2014)::

    z = x + 0x9E3779B97F4A7C15
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB
    z = z ^ (z >> 31)

all arithmetic modulo 2**64.  A tuple ``(k0, k1, ...)`` is folded as
``h = splitmix64(h ^ k)`` starting from ``h = 0``.
"""

from __future__ import annotations

import numpy as np

MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15
_C1 = 0xBF58476D1CE4E5B9
_C2 = 0x94D049BB133111EB


def splitmix64(x: int) -> int:
    z = (x + _GOLDEN) & MASK64
    z = ((z ^ (z >> 30)) * _C1) & MASK64
    z = ((z ^ (z >> 27)) * _C2) & MASK64
    return z ^ (z >> 31)


def mix64(*keys: int) -> int:
    """Fold integer keys into one 64-bit seed. Negative keys are taken mod 2**64."""
    h = 0
    for k in keys:
        h = splitmix64(h ^ (int(k) & MASK64))
    return h


def rng_for(*keys: int) -> np.random.Generator:
    return np.random.default_rng(mix64(*keys))
