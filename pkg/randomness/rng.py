"""
RNG - Seeded, splittable random streams built on numpy's PCG64

Every stream is identified by (seed, spawn key). ``substream(i)`` derives an
independent child through SeedSequence spawn keys, so sample ``i`` of a sweep
gets the same numbers whatever worker runs it.
"""

from typing import Optional, Tuple

import numpy as np

from errors import ParameterError

MAX_SEED = 2**64 - 1


class RngStream:
    """
    A reproducible random stream.

    Streams are not shareable between concurrent callers; give every worker
    its own ``substream``.
    """

    def __init__(self, seed: int, key: Tuple[int, ...] = ()):
        seed = int(seed)
        if seed < 0 or seed > MAX_SEED:
            raise ParameterError(f"seed must be a 64-bit unsigned integer, got {seed}")
        self.seed = seed
        self.key = tuple(int(k) for k in key)
        sequence = np.random.SeedSequence(entropy=seed, spawn_key=self.key)
        self.generator = np.random.Generator(np.random.PCG64(sequence))

    def substream(self, index: int) -> "RngStream":
        """Independent child stream number ``index``."""
        if index < 0:
            raise ParameterError(f"substream index must be non-negative, got {index}")
        return RngStream(self.seed, self.key + (int(index),))

    def normal(self, size: Optional[int] = None) -> np.ndarray:
        return self.generator.standard_normal(size)

    def uniform(self, size: Optional[int] = None) -> np.ndarray:
        """Uniform draws on the open interval (0, 1)."""
        u = self.generator.random(size)
        # random() is on [0, 1); 0 would break logs in rejection samplers
        return np.where(u == 0.0, np.finfo(float).tiny, u) if size is not None else (
            u if u > 0.0 else np.finfo(float).tiny
        )

    def __repr__(self) -> str:
        return f"RngStream(seed={self.seed}, key={self.key})"
