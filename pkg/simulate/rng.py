"""Stream s under seed S draws from PCG64(SeedSequence(S, spawn_key=(s,)))."""
from dataclasses import dataclass

import numpy as np

from suspensionlab.exceptions import ConfigError

MAX_SEED = 2 ** 64


@dataclass(frozen=True)
class RNGSpec:
    seed: int
    stream: int = 0

    def __post_init__(self):
        if not 0 <= self.seed < MAX_SEED:
            raise ConfigError(f'seed must be a 64-bit unsigned integer, got {self.seed}')
        if self.stream < 0:
            raise ConfigError(f'stream must be nonnegative, got {self.stream}')

    def generator(self):
        return np.random.Generator(np.random.PCG64(np.random.SeedSequence(self.seed, spawn_key=(self.stream,))))

    def streams(self, workers):
        """Specs for `workers` consecutive streams starting at this one."""
        return [RNGSpec(self.seed, self.stream + i) for i in range(workers)]


def as_generator(rng):
    if isinstance(rng, RNGSpec):
        return rng.generator()
    if isinstance(rng, np.random.Generator):
        return rng
    raise TypeError(f'expected RNGSpec or numpy Generator, got {type(rng).__name__}')


def split_samples(samples, workers):
    """Per-stream sample counts; the first samples % workers streams take one extra."""
    if samples < 1 or workers < 1:
        raise ConfigError(f'samples and workers must be positive, got {samples} and {workers}')
    workers = min(workers, samples)
    quotient, remainder = divmod(samples, workers)
    return [quotient + (1 if i < remainder else 0) for i in range(workers)]
