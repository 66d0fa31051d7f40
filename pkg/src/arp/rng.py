"""Deterministic pseudo-random number generation for instance construction.

Instance generation must produce identical catalogs selections on every
platform and library version, so it uses an explicit SplitMix64 stream
instead of a stdlib or numpy generator whose bit stream is not guaranteed
to stay stable across releases.

SplitMix64 (Steele, Lea, Flood 2014) advances a 64-bit counter by the odd
constant 0x9E3779B97F4A7C15 and scrambles it with two xor-shift-multiply
rounds.  It is tiny, passes BigCrush, and is trivially portable.
"""

MASK64 = 0xFFFFFFFFFFFFFFFF


class SplitMix64:
    """64-bit SplitMix64 generator with the reference scrambling constants."""

    def __init__(self, seed: int):
        self._state = seed & MASK64

    def next_u64(self) -> int:
        """Return the next 64-bit unsigned integer of the stream."""
        self._state = (self._state + 0x9E3779B97F4A7C15) & MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def next_below(self, bound: int) -> int:
        """Return an integer in [0, bound) as next_u64() modulo bound."""
        if bound <= 0:
            raise ValueError("bound must be positive")
        return self.next_u64() % bound
