"""Deterministic seeded randomness.

Every randomized routine in this package draws from a SeedStream, a
splitmix64 generator with named substream derivation.  The generator is part
of the package contract: the exact output sequence for a given seed is fixed
across releases, so reported results reproduce bit-exactly from
(instance, seed, config).

Stream derivation: ``stream.derive(a, b, ...)`` hashes each component into a
fresh 64-bit state with the same splitmix64 finalizer, so independent
substreams (per trial, per recursion branch) never share draws and do not
depend on call order.
"""

from __future__ import annotations

MASK64 = (1 << 64) - 1
GAMMA = 0x9E3779B97F4A7C15


def _mix(z: int) -> int:
    z &= MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


class SeedStream:
    """splitmix64 stream over a 64-bit state."""

    __slots__ = ("seed", "_state")

    def __init__(self, seed: int):
        self.seed = seed & MASK64
        self._state = self.seed

    def next_u64(self) -> int:
        self._state = (self._state + GAMMA) & MASK64
        return _mix(self._state)

    def derive(self, *components: int) -> "SeedStream":
        """A new independent stream named by the integer components."""
        z = self.seed
        for c in components:
            z = _mix((z ^ (c & MASK64)) + GAMMA)
        return SeedStream(_mix(z + GAMMA))

    def rand_below(self, n: int) -> int:
        """Uniform integer in [0, n); rejection sampling keeps it unbiased."""
        if n <= 0:
            raise ValueError("rand_below needs n >= 1")
        limit = (MASK64 + 1) - (MASK64 + 1) % n
        while True:
            u = self.next_u64()
            if u < limit:
                return u % n

    def rand_int(self, lo: int, hi: int) -> int:
        """Uniform integer in [lo, hi] inclusive."""
        if hi < lo:
            raise ValueError("empty range")
        return lo + self.rand_below(hi - lo + 1)

    def bernoulli(self, num: int, den: int) -> bool:
        """True with probability num/den, exactly."""
        if not (0 <= num <= den):
            raise ValueError("probability outside [0, 1]")
        if num == 0:
            return False
        return self.rand_below(den) < num

    def shuffle(self, xs: list) -> None:
        """In-place Fisher-Yates."""
        for i in range(len(xs) - 1, 0, -1):
            j = self.rand_below(i + 1)
            xs[i], xs[j] = xs[j], xs[i]

    def permutation(self, n: int) -> list[int]:
        xs = list(range(n))
        self.shuffle(xs)
        return xs

    def choice(self, xs: list):
        return xs[self.rand_below(len(xs))]
