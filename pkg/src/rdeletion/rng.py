"""Seedable, splittable random streams.

Every random draw in the package goes through an :class:`RngStream`; there is
no module-level randomness. A stream is identified by ``(algorithm, seed,
path)`` and ``split(i)`` derives an independent child stream, which is how
trial ``i`` of an experiment gets its randomness.
"""

from __future__ import annotations

import numpy as np

ALGORITHM = "numpy-pcg64-seedsequence/v1"


class RngStream:
    def __init__(self, seed: int, path: tuple[int, ...] = ()):
        seed = int(seed)
        if not 0 <= seed < 2**64:
            raise ValueError(f"seed must be an unsigned 64-bit integer, got {seed}")
        self.seed = seed
        self.path = tuple(int(p) for p in path)
        self.algorithm = ALGORITHM
        self._gen = np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=self.path)))

    def split(self, index: int) -> "RngStream":
        return RngStream(self.seed, self.path + (int(index),))

    def bits(self, n: int) -> np.ndarray:
        """``n`` independent fair bits."""
        return self._gen.integers(0, 2, size=n, dtype=np.int8)

    def choice(self, probs: np.ndarray) -> int:
        return int(self._gen.choice(len(probs), p=probs))

    def complex_normal(self, n: int) -> np.ndarray:
        """Standard complex Gaussians, E|z|^2 = 1."""
        z = self._gen.standard_normal((n, 2))
        return (z[:, 0] + 1j * z[:, 1]) / np.sqrt(2.0)

    def uniform(self, n: int) -> np.ndarray:
        return self._gen.random(n)

    def __repr__(self) -> str:
        return f"RngStream(seed={self.seed}, path={self.path}, algorithm={self.algorithm!r})"
