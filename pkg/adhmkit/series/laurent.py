"""
Integer Laurent series over a finite window: the generating series of Seiberg-Witten invariants of S^1 x Sigma
and the stable-pair series of a smooth curve of genus g, together with Euler characteristics of symmetric products.

Both series have coefficient (-1)^(g-1+d) chi(Sym^(g-1+d) Sigma) at q^d. sw_series evaluates this term by term
through chi_sym; pt_series expands the generating function q^(1-g) (1+q)^(2g-2) with sympy.
"""
from dataclasses import dataclass, field
from math import comb
from typing import Dict, Tuple

import sympy

MAX_GENUS = 30
MAX_POWER = 10 ** 4


@dataclass(frozen=True)
class LaurentSeries:
    """ A Laurent series truncated to the window [d_min, d_max], with exact integer coefficients.

    Attributes
    ----------
    coeffs : Dict[int, int]
        Non-zero coefficients by degree; absent degrees are zero.
    window : Tuple[int, int]
        Inclusive range of degrees the series is known on.

    """

    coeffs: Dict[int, int] = field(default_factory=dict)
    window: Tuple[int, int] = (0, 0)

    def __post_init__(self):
        low, high = (int(x) for x in self.window)
        if low > high:
            raise ValueError(f'{self.window} is not a valid window!')

        coeffs = {}
        for degree, value in self.coeffs.items():
            if not low <= int(degree) <= high:
                raise ValueError(f'Degree {degree} lies outside the window [{low}, {high}].')
            if int(value) != 0:
                coeffs[int(degree)] = int(value)

        object.__setattr__(self, 'coeffs', coeffs)
        object.__setattr__(self, 'window', (low, high))

    def coefficient(self, degree: int) -> int:
        if not self.window[0] <= degree <= self.window[1]:
            raise ValueError(f'Degree {degree} lies outside the window {list(self.window)}.')
        return self.coeffs.get(degree, 0)

    def degrees(self):
        return range(self.window[0], self.window[1] + 1)

    def __add__(self, other: 'LaurentSeries') -> 'LaurentSeries':
        window = (min(self.window[0], other.window[0]), max(self.window[1], other.window[1]))
        coeffs = dict(self.coeffs)
        for degree, value in other.coeffs.items():
            coeffs[degree] = coeffs.get(degree, 0) + value
        return LaurentSeries(coeffs, window)

    def __eq__(self, other):
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        return self.window == other.window and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.window, tuple(sorted(self.coeffs.items()))))

    def to_dict(self) -> Dict[str, int]:
        """ {"d": coefficient} over the whole window, zeros included. """
        return {str(degree): self.coeffs.get(degree, 0) for degree in self.degrees()}


def _check_genus(g: int):
    if not 0 <= g <= MAX_GENUS:
        raise ValueError(f'Genus must be between 0 and {MAX_GENUS}, got {g}.')


def chi_sym(g: int, n: int) -> int:
    """ Euler characteristic of the n-th symmetric product of a genus g surface.

    This is the coefficient of q^n in (1 - q)^(2g-2): (-1)^n binom(2g-2, n) for g >= 1 and n + 1 for g = 0.
    """
    _check_genus(g)
    if not 0 <= n <= MAX_POWER:
        raise ValueError(f'n must be between 0 and {MAX_POWER}, got {n}.')
    if g == 0:
        return n + 1
    return (-1) ** n * comb(2 * g - 2, n)


def symmetric_product_series(g: int, n_max: int) -> LaurentSeries:
    """ sum_{n <= n_max} chi(Sym^n Sigma_g) q^n. """
    return LaurentSeries({n: chi_sym(g, n) for n in range(n_max + 1)}, (0, n_max))


def sw_series(g: int, window: Tuple[int, int]) -> LaurentSeries:
    """ sum_d (-1)^(g-1+d) chi(Sym^(g-1+d) Sigma_g) q^d on the window, zero where g-1+d < 0. """
    _check_genus(g)
    low, high = window
    coeffs = {}
    for d in range(low, high + 1):
        n = g - 1 + d
        if n >= 0:
            coeffs[d] = (-1) ** (n % 2) * chi_sym(g, n)
    return LaurentSeries(coeffs, (low, high))


def pt_series(g: int, window: Tuple[int, int]) -> LaurentSeries:
    """ The stable-pair series of a smooth curve, from the expansion of q^(1-g) (1+q)^(2g-2). """
    _check_genus(g)
    low, high = window
    top = high + g - 1
    if top < 0:
        return LaurentSeries({}, (low, high))

    q = sympy.symbols('q')
    generating = (1 + q) ** (2 * g - 2)
    if g >= 1:
        polynomial = sympy.Poly(sympy.expand(generating), q)
    else:
        polynomial = sympy.Poly(sympy.series(generating, q, 0, top + 1).removeO(), q)

    coeffs = {}
    for (n,), value in polynomial.terms():
        d = n - (g - 1)
        if low <= d <= high:
            coeffs[d] = int(value)
    return LaurentSeries(coeffs, (low, high))


def evaluate_at_one(series: LaurentSeries, g: int) -> int:
    """ The total invariant: the sum of the coefficients.

    Raises
    ------
    ValueError
        For g = 0, where the series has infinitely many non-zero terms and no value at q = 1, and when the
        window misses part of the support [-(g-1), g-1].

    """
    if g < 1:
        raise ValueError('Cannot evaluate the series at q = 1 for g = 0: it has infinitely many non-zero '
                         'coefficients and does not converge there.')
    low, high = series.window
    if low > -(g - 1) or high < g - 1:
        raise ValueError(f'The window {list(series.window)} does not cover the support [{1 - g}, {g - 1}].')
    return sum(series.coeffs.values())
