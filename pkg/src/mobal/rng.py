"""SplitMix64, the generator behind every seeded corpus.

Fixed here so instances are reproducible from the 64-bit seed alone, in
any language: state advances by the golden-gamma constant
0x9E3779B97F4A7C15 and the output is the standard two-round
xor-multiply finalizer (constants 0xBF58476D1CE4E5B9 and
0x94D049BB133111EB).  Bounded draws use rejection sampling on the top of
the 64-bit range, so they are exactly uniform and carry no modulo bias.
"""

from __future__ import annotations

_MASK = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & _MASK

    def next_u64(self) -> int:
        self.state = (self.state + _GAMMA) & _MASK
        z = self.state
        z = ((z ^ (z >> 30)) * _MIX1) & _MASK
        z = ((z ^ (z >> 27)) * _MIX2) & _MASK
        return z ^ (z >> 31)

    def randint(self, lo: int, hi: int) -> int:
        """Uniform integer in [lo, hi], inclusive."""
        if lo > hi:
            raise ValueError(f"empty range [{lo}, {hi}]")
        span = hi - lo + 1
        limit = (1 << 64) - ((1 << 64) % span)
        while True:
            u = self.next_u64()
            if u < limit:
                return lo + u % span

    def shuffle(self, items: list) -> None:
        """In-place Fisher-Yates using randint."""
        for i in range(len(items) - 1, 0, -1):
            j = self.randint(0, i)
            items[i], items[j] = items[j], items[i]

    def sample(self, lo: int, hi: int, count: int) -> list[int]:
        """`count` distinct integers from [lo, hi]: shuffled prefix."""
        pool = list(range(lo, hi + 1))
        if count > len(pool):
            raise ValueError("sample larger than population")
        self.shuffle(pool)
        return pool[:count]
