"""Deterministic counter-based random stream.

The generator is SplitMix64: output ``i`` is ``mix64(seed + (i+1) * GAMMA)``
with the standard constants below. It is stateless apart from the counter,
so any language can reproduce the exact stream from the seed alone.
Gaussian variates use the Box-Muller transform on the uniform stream.

Constants (hex):
    GAMMA = 9E3779B97F4A7C15
    MIX1  = BF58476D1CE4E5B9
    MIX2  = 94D049BB133111EB
"""

from __future__ import annotations

import math

import numpy as np

_MASK64 = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


def mix64(z: int) -> int:
    """SplitMix64 finalizer; all arithmetic mod 2**64."""
    z &= _MASK64
    z = ((z ^ (z >> 30)) * _MIX1) & _MASK64
    z = ((z ^ (z >> 27)) * _MIX2) & _MASK64
    return z ^ (z >> 31)


class Stream:
    """Counter-based 64-bit random stream with a fixed seed."""

    def __init__(self, seed: int):
        self.seed = int(seed) & _MASK64
        self.counter = 0
        self._spare_gauss: float | None = None

    def next_u64(self) -> int:
        self.counter += 1
        return mix64(self.seed + self.counter * _GAMMA)

    def uniform(self) -> float:
        """Uniform double in [0, 1) with 53 random bits."""
        return (self.next_u64() >> 11) * 2.0**-53

    def uniform_open(self) -> float:
        """Uniform double in (0, 1]; safe as a log argument."""
        return ((self.next_u64() >> 11) + 1) * 2.0**-53

    def integer(self, bound: int) -> int:
        """Uniform integer in [0, bound) by rejection on the top range."""
        if bound <= 0:
            raise ValueError("bound must be positive")
        limit = (1 << 64) - ((1 << 64) % bound)
        while True:
            x = self.next_u64()
            if x < limit:
                return x % bound

    def gauss(self) -> float:
        """Standard normal via Box-Muller, consuming uniforms in pairs."""
        if self._spare_gauss is not None:
            z = self._spare_gauss
            self._spare_gauss = None
            return z
        u1 = self.uniform_open()
        u2 = self.uniform()
        r = math.sqrt(-2.0 * math.log(u1))
        self._spare_gauss = r * math.sin(2.0 * math.pi * u2)
        return r * math.cos(2.0 * math.pi * u2)

    def gauss_array(self, n: int) -> np.ndarray:
        return np.array([self.gauss() for _ in range(n)], dtype=np.float64)

    def complex_gauss_matrix(self, rows: int, cols: int) -> np.ndarray:
        """Matrix of standard complex Gaussians, row-major fill order."""
        re = self.gauss_array(rows * cols)
        im = self.gauss_array(rows * cols)
        return ((re + 1j * im) / math.sqrt(2.0)).reshape(rows, cols)

    def shuffled(self, items: list) -> list:
        """Fisher-Yates shuffle of a copy of ``items``."""
        out = list(items)
        for i in range(len(out) - 1, 0, -1):
            j = self.integer(i + 1)
            out[i], out[j] = out[j], out[i]
        return out


def derive_seed(seed: int, *indices: int) -> int:
    """Derive an independent child seed from a parent seed and indices."""
    z = int(seed) & _MASK64
    for idx in indices:
        z = mix64(z ^ mix64((int(idx) + 1) * _GAMMA))
    return z
