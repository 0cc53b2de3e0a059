"""Seeded random number streams."""

import numpy as np

from l2boost.config import settings

# Independent stream identifiers derived from one seed.
DATA_STREAM = 0
FOLD_STREAM = 1
COEFFICIENT_STREAM = 2
SELECTOR_STREAM = 3


def make_rng(seed: int, stream: int = DATA_STREAM) -> np.random.Generator:
    """
    Build a generator for one (seed, stream) pair.

    Args:
        seed: Non-negative integer seed
        stream: Stream identifier; distinct streams of one seed are independent

    Returns:
        A numpy Generator backed by the configured bit generator
    """
    bit_generator = getattr(np.random, settings.RNG_ALGORITHM)
    return np.random.Generator(bit_generator(np.random.SeedSequence([int(seed), int(stream)])))
