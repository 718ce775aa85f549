"""Deterministic 64-bit PRNG used everywhere randomness is needed.

The generator is xorshift64* (Vigna 2016 variant):

    s ^= s >> 12;  s ^= s << 25;  s ^= s >> 27;  output = s * 0x2545F4914F6CDD1D

with all arithmetic mod 2**64. Seeds are passed through one splitmix64
round so that seed 0 and small seeds still produce well-mixed states.
Every stochastic decision in the project draws from an instance of this
class in a fixed call order, which is what makes runs reproducible.
"""

from __future__ import annotations

import math

_MASK = (1 << 64) - 1


def _splitmix64(x: int) -> int:
    x = (x + 0x9E3779B97F4A7C15) & _MASK
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK
    return x ^ (x >> 31)


class Xorshift64Star:
    __slots__ = ("state",)

    def __init__(self, seed: int = 1):
        state = _splitmix64(seed & _MASK)
        self.state = state if state != 0 else 0x9E3779B97F4A7C15

    @classmethod
    def derive(cls, *parts: int) -> "Xorshift64Star":
        """Build an independent stream from a tuple of integers.

        Used to give each (run, solution, iteration) its own stream so
        results do not depend on evaluation order.
        """
        acc = 0x8BADF00D
        for p in parts:
            acc = _splitmix64((acc ^ (p & _MASK)) & _MASK)
        rng = cls.__new__(cls)
        rng.state = acc if acc != 0 else 0x9E3779B97F4A7C15
        return rng

    def next_u64(self) -> int:
        s = self.state
        s ^= s >> 12
        s = (s ^ (s << 25)) & _MASK
        s ^= s >> 27
        self.state = s
        return (s * 0x2545F4914F6CDD1D) & _MASK

    def random(self) -> float:
        """Uniform float in [0, 1) with 53 random bits."""
        return (self.next_u64() >> 11) * (1.0 / (1 << 53))

    def uniform(self, lo: float, hi: float) -> float:
        return lo + (hi - lo) * self.random()

    def randrange(self, n: int) -> int:
        """Uniform int in [0, n). Rejection sampling, no modulo bias."""
        if n <= 0:
            raise ValueError("randrange() arg must be positive")
        limit = (1 << 64) - ((1 << 64) % n)
        while True:
            x = self.next_u64()
            if x < limit:
                return x % n

    def randint(self, lo: int, hi: int) -> int:
        """Uniform int in [lo, hi] inclusive."""
        return lo + self.randrange(hi - lo + 1)

    def choice(self, seq):
        return seq[self.randrange(len(seq))]

    def shuffle(self, items: list) -> None:
        for i in range(len(items) - 1, 0, -1):
            j = self.randrange(i + 1)
            items[i], items[j] = items[j], items[i]

    def gauss(self, mu: float = 0.0, sigma: float = 1.0) -> float:
        """Box-Muller; draws exactly two uniforms per call."""
        u1 = self.random()
        while u1 <= 1e-300:
            u1 = self.random()
        u2 = self.random()
        return mu + sigma * math.sqrt(-2.0 * math.log(u1)) * math.cos(2.0 * math.pi * u2)
