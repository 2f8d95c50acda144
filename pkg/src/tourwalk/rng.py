"""Counter-based pseudorandomness with explicit seeds.

Every random choice in this package flows through :class:`SplitMix64` so that
a run is bit-reproducible from the seed recorded in its report, independent of
platform, interpreter, or library versions.
"""

from __future__ import annotations

_MASK64 = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15


class SplitMix64:
    """64-bit counter-based generator (SplitMix64 mixing function)."""

    __slots__ = ("_state",)

    def __init__(self, seed: int) -> None:
        self._state = seed & _MASK64

    def next_u64(self) -> int:
        self._state = (self._state + _GAMMA) & _MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def random(self) -> float:
        """Uniform float in [0, 1) using 53 random bits."""
        return (self.next_u64() >> 11) * 2.0 ** -53

    def randrange(self, n: int) -> int:
        """Uniform integer in [0, n), unbiased via rejection sampling."""
        if n <= 0:
            raise ValueError("randrange bound must be positive")
        span = _MASK64 + 1
        limit = span - span % n
        while True:
            u = self.next_u64()
            if u < limit:
                return u % n

    def gauss(self) -> float:
        """Standard normal via Box-Muller (two uniforms per pair)."""
        import math

        u1 = self.random()
        while u1 == 0.0:
            u1 = self.random()
        u2 = self.random()
        return math.sqrt(-2.0 * math.log(u1)) * math.cos(2.0 * math.pi * u2)

    def shuffle(self, items: list) -> None:
        """In-place Fisher-Yates shuffle."""
        for i in range(len(items) - 1, 0, -1):
            j = self.randrange(i + 1)
            items[i], items[j] = items[j], items[i]

    def spawn(self, tag: int = 0) -> "SplitMix64":
        """Child generator derived deterministically from the current state."""
        return SplitMix64(self.next_u64() ^ (tag & _MASK64))


def derived_seed(seed: int, index: int) -> int:
    """Per-run seed for batch drivers: seed XOR run index."""
    return (seed ^ index) & _MASK64
