from dataclasses import dataclass
from math import gcd


@dataclass(frozen=True)
class Slope:
    """ A primitive class p (1, 0) + q (0, 1) in the first homology of the torus. """

    p: int
    q: int

    def __post_init__(self):
        if (self.p, self.q) == (0, 0):
            raise ValueError('(0, 0) is not a valid slope!')
        if gcd(abs(self.p), abs(self.q)) != 1:
            raise ValueError(f'({self.p}, {self.q}) is not a valid slope! p and q must be coprime.')

    def __neg__(self) -> 'Slope':
        return Slope(-self.p, -self.q)

    def __str__(self):
        return f'({self.p},{self.q})'


def pairing(p1: int, q1: int, p2: int, q2: int) -> int:
    """ The pairing on arbitrary (not necessarily primitive) integer classes. """
    return q1 * p2 - p1 * q2


def slope_pairing(m: Slope, n: Slope) -> int:
    """ m . n = q_m p_n - p_m q_n.

    Antisymmetric; the triad (0,1), (-1,0), (1,-1) pairs cyclically to -1.
    """
    return pairing(m.p, m.q, n.p, n.q)


def is_surgery_triad(m1: Slope, m2: Slope, m3: Slope) -> bool:
    """ Whether m1 . m2 = m2 . m3 = m3 . m1 = -1. """
    return slope_pairing(m1, m2) == slope_pairing(m2, m3) == slope_pairing(m3, m1) == -1
