"""A tiny fully-specified RNG so seeded runs mean the same thing everywhere.

SplitMix64 (Steele, Lea, Flood 2014): 64-bit counter state advanced by the
golden-gamma constant, output mixed by two xor-shift-multiply rounds.  Eleven
lines of arithmetic, no platform or library-version dependence, which is the
entire point: `--seed 7` must produce the identical sample set on any machine,
forever.  Not for cryptography, and not a numpy Generator; callers that need
arrays draw scalars in a loop.
"""

from __future__ import annotations

_MASK = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


class SplitMix64:
    def __init__(self, seed: int):
        self._state = seed & _MASK

    def next_u64(self) -> int:
        self._state = (self._state + _GAMMA) & _MASK
        z = self._state
        z = ((z ^ (z >> 30)) * _MIX1) & _MASK
        z = ((z ^ (z >> 27)) * _MIX2) & _MASK
        return z ^ (z >> 31)

    def uniform(self, lo: float = 0.0, hi: float = 1.0) -> float:
        """Uniform in [lo, hi) from the top 53 bits."""
        x = (self.next_u64() >> 11) * 2.0 ** -53
        return lo + (hi - lo) * x
