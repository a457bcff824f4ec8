"""Deterministic 64-bit PRNG (SplitMix64) shared by every stochastic component.

The generator is deliberately tiny: one 64-bit state word, a fixed odd
increment, and an avalanche finalizer. Equal seeds give identical streams on
every platform, which is what makes workloads and search runs reproducible
down to the byte.
"""

from __future__ import annotations

import numpy as np

MASK64 = (1 << 64) - 1

_GAMMA = 0x9E3779B97F4A7C15
_MULT1 = 0xBF58476D1CE4E5B9
_MULT2 = 0x94D049BB133111EB
_TWO64 = float(2**64)


def mix64(x: int) -> int:
    """SplitMix64 finalizer: avalanche one 64-bit word.

    Also used standalone to derive child seeds from combined identifiers.
    """
    z = x & MASK64
    z = ((z ^ (z >> 30)) * _MULT1) & MASK64
    z = ((z ^ (z >> 27)) * _MULT2) & MASK64
    return z ^ (z >> 31)


class SplitMix64:
    """Sequential SplitMix64 stream with an exact vectorized block draw."""

    __slots__ = ("_state",)

    def __init__(self, seed: int) -> None:
        self._state = seed & MASK64

    def next_u64(self) -> int:
        self._state = (self._state + _GAMMA) & MASK64
        return mix64(self._state)

    def uniform(self) -> float:
        """Uniform float in [0, 1): next_u64() / 2**64."""
        return self.next_u64() / _TWO64

    def uniforms(self, k: int) -> np.ndarray:
        """k uniforms at once; values identical to k successive uniform() calls.

        The state is a counter, so a block of draws is the finalizer applied to
        state + gamma * [1..k], which vectorizes with wrapping uint64 math.
        """
        offsets = np.arange(1, k + 1, dtype=np.uint64)
        z = np.uint64(self._state) + offsets * np.uint64(_GAMMA)
        self._state = (self._state + k * _GAMMA) & MASK64
        z = (z ^ (z >> np.uint64(30))) * np.uint64(_MULT1)
        z = (z ^ (z >> np.uint64(27))) * np.uint64(_MULT2)
        z = z ^ (z >> np.uint64(31))
        return z.astype(np.float64) / _TWO64
