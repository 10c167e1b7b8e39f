import logging
from typing import Any, Dict

import pandas as pd

from adhmkit.utils import spawn_seeds

logger = logging.getLogger(__name__)


class BaseIdentityCheck:
    """ This is the base class of the randomized identity sweeps.
    It is extended by concrete classes checking one identity each (e.g., the norm identity of the moment map).

    """

    name = None

    def __init__(self, k: int, samples: int, seed: int, r: int = 1):
        """ The class constructor.

        Parameters
        ----------
        k : int
            The gauge rank.

        samples : int
            Number of random samples.

        seed : int
            Root seed; sample i uses the i-th sub-seed.

        r : int
            The flavor rank, for checks involving the spinor part.

        Attributes
        ----------
        dataset: pandas.DataFrame
            One row per sample with at least the column 'error', populated after ``sweep()``.

        Raises
        ------
        ValueError
            If k, r or samples is not positive.

        """
        if k < 1 or r < 1:
            raise ValueError(f'k and r must be positive, got k={k} and r={r}.')
        if samples < 1:
            raise ValueError(f'samples must be positive, got {samples}.')

        self.k = k
        self.r = r
        self.samples = samples
        self.seed = seed
        self.dataset = pd.DataFrame()

    def sample(self, seed: int) -> Dict[str, Any]:
        """ Draw one random instance from seed and return a row with at least the key 'error'.
        It must be implemented in the concrete classes.

        Raises
        ------
        NotImplementedError
            If the concrete class does not override it.

        """
        raise NotImplementedError(f'{type(self).__name__} must implement sample().')

    def sweep(self) -> pd.DataFrame:
        rows = []
        for index, seed in enumerate(spawn_seeds(self.seed, self.samples)):
            row = self.sample(seed)
            row['sample'] = index
            rows.append(row)

        self.dataset = pd.DataFrame(rows)
        logger.debug('%s: %d samples, max error %.3e.', self.name, len(rows), self.max_error())
        return self.dataset

    def max_error(self) -> float:
        if self.dataset.empty:
            return 0.0
        return float(self.dataset['error'].max())

    def to_csv(self, filepath):
        self.dataset.to_csv(filepath, index=False)
