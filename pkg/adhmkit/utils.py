from typing import List

import numpy as np


def make_rng(seed) -> np.random.Generator:
    """ Return a numpy Generator for an integer seed, a SeedSequence, or pass a Generator through. """
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def spawn_seeds(seed: int, n: int) -> List[int]:
    """ Derive n independent integer sub-seeds from a single seed.

    The derivation goes through numpy's SeedSequence, so the i-th sub-seed only depends on (seed, i).

    Parameters
    ----------
    seed : int
        The root seed.
    n : int
        Number of sub-seeds.

    Returns
    -------
    List[int]
        n integer seeds.

    """
    return [int(child.generate_state(1, dtype=np.uint32)[0]) for child in np.random.SeedSequence(seed).spawn(n)]


def relative_error(lhs: float, rhs: float, floor: float = 1e-300) -> float:
    """ |lhs - rhs| / max(|lhs|, |rhs|), and 0 when both sides vanish. """
    scale = max(abs(lhs), abs(rhs))
    if scale <= floor:
        return 0.0
    return abs(lhs - rhs) / scale
