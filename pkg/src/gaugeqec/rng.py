"""Counter-based 64-bit PRNG used for every random measurement and noise draw.

The generator is SplitMix64: output ``i`` is ``mix64(seed + i * GOLDEN)`` where
``mix64`` is the standard finalizer.  Being a pure function of (seed, counter)
it makes every run bit-reproducible, and substreams can be split off by key so
that parallel workers draw identical values regardless of scheduling.

One measurement with a random outcome consumes exactly one ``next_u64`` call,
in circuit order.  Deterministic measurements consume nothing.
"""

from __future__ import annotations

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


def mix64(v: int) -> int:
    """SplitMix64 finalizer: avalanche a 64-bit value."""
    v &= _MASK64
    v ^= v >> 30
    v = (v * 0xBF58476D1CE4E5B9) & _MASK64
    v ^= v >> 27
    v = (v * 0x94D049BB133111EB) & _MASK64
    v ^= v >> 31
    return v


class CounterRng:
    """SplitMix64 stream addressed by an incrementing counter."""

    __slots__ = ("seed", "counter")

    def __init__(self, seed: int):
        self.seed = seed & _MASK64
        self.counter = 0

    def next_u64(self) -> int:
        self.counter += 1
        return mix64((self.seed + self.counter * _GOLDEN) & _MASK64)

    def bit(self) -> int:
        """One uniform bit; consumes one draw."""
        return self.next_u64() & 1

    def uniform(self) -> float:
        """Uniform float in [0, 1); consumes one draw."""
        return self.next_u64() / 2.0**64

    def substream(self, key: int) -> "CounterRng":
        """Independent child stream; deterministic in (seed, key)."""
        return CounterRng(mix64(self.seed ^ mix64((key + 1) * _GOLDEN & _MASK64)))
