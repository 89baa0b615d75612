"""Deterministic 64-bit seed derivation for reproducible experiments.

Every stochastic entry point in this package takes either an explicit
``numpy.random.Generator`` or an integer seed.  Batch drivers (sweeps,
meeting-time sweeps) derive one seed per unit of work from a base seed
plus integer coordinates, so results are independent of execution order
and worker count.
"""

from __future__ import annotations

_MASK = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


def mix64(*parts: int) -> int:
    """Fold integers into a single well-mixed 64-bit value.

    SplitMix64 finalizer applied once per part.  Order-sensitive:
    mix64(a, b) != mix64(b, a) in general.
    """
    if not parts:
        raise ValueError("mix64 requires at least one input")
    acc = 0
    for part in parts:
        acc = (acc + _GOLDEN + (int(part) & _MASK)) & _MASK
        acc ^= acc >> 30
        acc = (acc * 0xBF58476D1CE4E5B9) & _MASK
        acc ^= acc >> 27
        acc = (acc * 0x94D049BB133111EB) & _MASK
        acc ^= acc >> 31
    return acc
