"""
Slope arithmetic and the delta stability predicate of ADHM bundles over a surface of volume vol.
"""
import logging
import math
from dataclasses import dataclass
from typing import Optional, Sequence

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BundleDatum:
    """ Rank and degree of a bundle, with its position relative to psi1 and psi2.

    Attributes
    ----------
    rank : int
        Positive rank.
    degree : int
        Degree.
    contains_im_psi1 : bool
        Whether the bundle contains the image of psi1.
    contained_in_ker_psi2 : bool
        Whether the bundle lies in the kernel of psi2.

    """

    rank: int
    degree: int
    contains_im_psi1: bool = False
    contained_in_ker_psi2: bool = False

    def __post_init__(self):
        if self.rank <= 0:
            raise ValueError(f'{self.rank} is not a valid rank! Use a positive integer.')


@dataclass(frozen=True)
class StabilityVerdict:
    """ Outcome of :func:`is_delta_stable`.

    clause is the first violated condition (1, 2 or 3); witness is the offending sub-object for clauses 2 and 3.
    """

    stable: bool
    clause: Optional[int] = None
    witness: Optional[BundleDatum] = None

    def __iter__(self):
        yield self.stable
        yield self.witness


def slope_delta(datum: BundleDatum, delta: float, vol: float) -> float:
    """ mu_delta = (2 pi / vol) deg / rk + delta / rk. """
    if vol <= 0:
        raise ValueError(f'vol must be positive, got {vol}.')
    return (2 * math.pi / vol) * datum.degree / datum.rank + delta / datum.rank


def slope(datum: BundleDatum, vol: float) -> float:
    return slope_delta(datum, 0.0, vol)


def is_delta_stable(ambient: BundleDatum, delta: float, vol: float, psi1_nonzero: bool, psi2_nonzero: bool,
                    invariant_subobjects: Sequence[BundleDatum] = ()) -> StabilityVerdict:
    """ Decide delta stability from the ranks, degrees and flags of the xi-invariant sub-bundles.

    The conditions are checked in order:

    1. delta > 0 requires psi1 != 0 and delta < 0 requires psi2 != 0;
    2. a sub-bundle containing im psi1 has mu_delta(G) < mu_delta(H);
    3. a sub-bundle inside ker psi2 has mu(G) < mu_delta(H).

    Parameters
    ----------
    ambient : BundleDatum
        The bundle H of rank k.
    delta : float
        The stability parameter.
    vol : float
        Volume of the surface.
    psi1_nonzero, psi2_nonzero : bool
        Whether psi1, psi2 are non-zero.
    invariant_subobjects : Sequence[BundleDatum]
        The proper xi-invariant sub-bundles to test.

    Returns
    -------
    StabilityVerdict
        The verdict with the first violated clause and its witness.

    Raises
    ------
    ValueError
        If a sub-object is not proper (0 < rank < k).

    """
    for sub in invariant_subobjects:
        if not 0 < sub.rank < ambient.rank:
            raise ValueError(f'Sub-object of rank {sub.rank} is not proper in a bundle of rank {ambient.rank}.')

    if (delta > 0 and not psi1_nonzero) or (delta < 0 and not psi2_nonzero):
        return StabilityVerdict(False, clause=1)

    bound = slope_delta(ambient, delta, vol)
    for sub in invariant_subobjects:
        if sub.contains_im_psi1 and not slope_delta(sub, delta, vol) < bound:
            logger.debug('Clause 2 fails for %s: %.6g >= %.6g.', sub, slope_delta(sub, delta, vol), bound)
            return StabilityVerdict(False, clause=2, witness=sub)
        if sub.contained_in_ker_psi2 and not slope(sub, vol) < bound:
            logger.debug('Clause 3 fails for %s: %.6g >= %.6g.', sub, slope(sub, vol), bound)
            return StabilityVerdict(False, clause=3, witness=sub)

    return StabilityVerdict(True)
