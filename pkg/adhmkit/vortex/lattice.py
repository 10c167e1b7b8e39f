"""
Lattice U(1) discretization of the perturbed vortex equations on a flat torus.

Sections live on the N x N sites, the connection on the links and the curvature on the plaquettes. The connection
is a fixed background A0 of degree d plus a real perturbation a. The background is stored as integer multiples of
2 pi / N^2 on the links, so the flux through every plaquette, and hence the total flux 2 pi d, is exact.

psi1 has charge +1 (a section of L) and psi2 charge -1 (a section of L*). Link angles are phi = theta0 + h a and the
forward parallel transport of a charge q field is exp(-i q phi) psi(next site).
"""
import logging
from dataclasses import dataclass, field
from typing import Tuple

import numpy as np

from adhmkit.errors import DimensionError

logger = logging.getLogger(__name__)

MIN_GRID = 16
SCHEMES = ('central', 'forward')


@dataclass(frozen=True)
class TorusGrid:
    """ An N x N periodic grid on the flat torus [0, L1) x [0, L2) carrying a line bundle of degree d.

    Attributes
    ----------
    N : int
        Sites per side.
    degree : int
        Degree d of the line bundle.
    L1, L2 : float
        Side lengths; the volume of the torus is L1 * L2.

    """

    N: int
    degree: int = 0
    L1: float = 1.0
    L2: float = 1.0

    def __post_init__(self):
        if self.N < MIN_GRID:
            raise ValueError(f'N must be at least {MIN_GRID}, got {self.N}.')
        if self.L1 <= 0 or self.L2 <= 0:
            raise ValueError(f'Side lengths must be positive, got ({self.L1}, {self.L2}).')
        if 2 * abs(self.degree) >= self.N ** 2:
            raise ValueError(f'Degree {self.degree} cannot be resolved on a {self.N} x {self.N} grid.')

    @property
    def h1(self) -> float:
        return self.L1 / self.N

    @property
    def h2(self) -> float:
        return self.L2 / self.N

    @property
    def cell_area(self) -> float:
        return self.h1 * self.h2

    @property
    def area(self) -> float:
        return self.L1 * self.L2

    @property
    def angle_unit(self) -> float:
        return 2 * np.pi / self.N ** 2

    def background_links(self) -> Tuple[np.ndarray, np.ndarray]:
        """ Integer link angles (mx, my) of A0, in units of 2 pi / N^2. """
        N, d = self.N, self.degree
        i = np.arange(N)[:, None]
        j = np.arange(N)[None, :]
        my = np.broadcast_to(d * i, (N, N)).astype(np.int64)
        mx = np.zeros((N, N), dtype=np.int64)
        mx[N - 1, :] = -d * N * np.arange(N)
        return mx, my

    def plaquette_integers(self) -> np.ndarray:
        """ Background plaquette angles in units of 2 pi / N^2, reduced to (-N^2/2, N^2/2]; all equal to d. """
        mx, my = self.background_links()
        raw = mx + np.roll(my, -1, axis=0) - np.roll(mx, -1, axis=1) - my
        size = self.N ** 2
        reduced = np.mod(raw, size)
        reduced[reduced > size // 2] -= size
        return reduced

    def total_flux_integer(self) -> int:
        """ Sum of the reduced plaquette integers; the total flux is this times 2 pi / N^2. """
        return int(self.plaquette_integers().sum())

    def background_angles(self) -> Tuple[np.ndarray, np.ndarray]:
        mx, my = self.background_links()
        return self.angle_unit * mx, self.angle_unit * my


@dataclass
class VortexState:
    """ A lattice configuration (a, psi1, psi2) with the parameters lambda and theta.

    Attributes
    ----------
    grid : TorusGrid
        The grid and the degree of the bundle.
    a_x, a_y : numpy.ndarray
        Real perturbation of the connection on the x and y links, N x N.
    psi1 : numpy.ndarray
        Charge +1 field on the sites.
    psi2 : numpy.ndarray
        Charge -1 field on the sites.
    lam : float
        The vortex parameter lambda.
    theta : complex
        Constant perturbation of the pairing equation.

    """

    grid: TorusGrid
    a_x: np.ndarray
    a_y: np.ndarray
    psi1: np.ndarray
    psi2: np.ndarray
    lam: float = 0.0
    theta: complex = 0.0

    def __post_init__(self):
        shape = (self.grid.N, self.grid.N)
        self.a_x = np.array(self.a_x, dtype=float)
        self.a_y = np.array(self.a_y, dtype=float)
        self.psi1 = np.array(self.psi1, dtype=complex)
        self.psi2 = np.array(self.psi2, dtype=complex)
        for name in ('a_x', 'a_y', 'psi1', 'psi2'):
            if getattr(self, name).shape != shape:
                raise DimensionError(f'{name} must have shape {shape}, got {getattr(self, name).shape}.')

    @classmethod
    def vacuum(cls, grid: TorusGrid, lam: float = 0.0, theta: complex = 0.0) -> 'VortexState':
        zeros = np.zeros((grid.N, grid.N))
        return cls(grid, zeros, zeros, zeros, zeros, lam, theta)

    def link_angles(self) -> Tuple[np.ndarray, np.ndarray]:
        theta_x, theta_y = self.grid.background_angles()
        return theta_x + self.grid.h1 * self.a_x, theta_y + self.grid.h2 * self.a_y

    def copy(self) -> 'VortexState':
        return VortexState(self.grid, self.a_x.copy(), self.a_y.copy(), self.psi1.copy(), self.psi2.copy(),
                           self.lam, self.theta)


@dataclass
class CovariantDifference:
    """ D psi = alpha F psi + beta G psi + gamma psi along one axis, with the transported fields kept. """

    value: np.ndarray
    forward: np.ndarray
    backward: np.ndarray
    alpha: float
    beta: float


def scheme_coefficients(scheme: str, h: float) -> Tuple[float, float, float]:
    """ (alpha, beta, gamma) of the covariant difference D = alpha F + beta G + gamma. """
    if scheme == 'forward':
        return 1 / h, 0.0, -1 / h
    if scheme == 'central':
        return 1 / (2 * h), -1 / (2 * h), 0.0
    raise ValueError(f'{scheme} is not a valid scheme! Use one of {SCHEMES}.')


def transport(psi: np.ndarray, phi: np.ndarray, q: int, axis: int) -> Tuple[np.ndarray, np.ndarray]:
    """ Forward transport exp(-i q phi) psi(next) and backward transport exp(i q phi(prev)) psi(prev). """
    forward = np.exp(-1j * q * phi) * np.roll(psi, -1, axis=axis)
    backward = np.roll(np.exp(1j * q * phi) * psi, 1, axis=axis)
    return forward, backward


def covariant_difference(psi, phi, q: int, axis: int, h: float, scheme: str) -> CovariantDifference:
    alpha, beta, gamma = scheme_coefficients(scheme, h)
    forward, backward = transport(psi, phi, q, axis)
    return CovariantDifference(alpha * forward + beta * backward + gamma * psi, forward, backward, alpha, beta)


def covariant_difference_adjoint(r, phi, q: int, axis: int, h: float, scheme: str) -> np.ndarray:
    # the adjoint of the forward transport is the backward transport
    alpha, beta, gamma = scheme_coefficients(scheme, h)
    forward, backward = transport(r, phi, q, axis)
    return alpha * backward + beta * forward + gamma * r


def dbar(psi, state: VortexState, q: int, scheme: str = 'central') -> Tuple[np.ndarray, CovariantDifference,
                                                                               CovariantDifference]:
    """ 1/2 (D_x + i D_y) psi for a field of charge q. """
    phi_x, phi_y = state.link_angles()
    dx = covariant_difference(psi, phi_x, q, 0, state.grid.h1, scheme)
    dy = covariant_difference(psi, phi_y, q, 1, state.grid.h2, scheme)
    return 0.5 * (dx.value + 1j * dy.value), dx, dy


def dbar_adjoint(r, state: VortexState, q: int, scheme: str = 'central') -> np.ndarray:
    phi_x, phi_y = state.link_angles()
    return 0.5 * (covariant_difference_adjoint(r, phi_x, q, 0, state.grid.h1, scheme)
                  - 1j * covariant_difference_adjoint(r, phi_y, q, 1, state.grid.h2, scheme))


def curvature(state: VortexState) -> np.ndarray:
    """ Plaquette curvature density F_xy; its integral over the torus is exactly 2 pi d. """
    grid = state.grid
    background = grid.plaquette_integers() * grid.angle_unit / grid.cell_area
    curl = (state.a_x - np.roll(state.a_x, -1, axis=1)) / grid.h2 + (np.roll(state.a_y, -1, axis=0)
                                                                       - state.a_y) / grid.h1
    return background + curl


@dataclass
class VortexResidual:
    """ Residuals of the four vortex equations on the grid, with their L2 norms.

    r1 = dbar_A psi1, r2 = dbar_A psi2, r3 = psi1 psi2 - theta and r4 = F + |psi1|^2 - |psi2|^2 - 2 pi lambda / vol.
    """

    r1: np.ndarray
    r2: np.ndarray
    r3: np.ndarray
    r4: np.ndarray
    norms: Tuple[float, float, float, float] = field(default=(0.0, 0.0, 0.0, 0.0))

    @property
    def total(self) -> float:
        return float(np.sqrt(sum(n ** 2 for n in self.norms)))


def vortex_residual(state: VortexState, scheme: str = 'central') -> VortexResidual:
    """ Discrete residuals of the perturbed vortex equations.

    Parameters
    ----------
    state : VortexState
        The configuration.
    scheme : str
        'central' (covariant central differences) or 'forward' (one-sided).

    Returns
    -------
    VortexResidual
        The four residual fields and their norms (sum(|r|^2) dvol)^(1/2); all of them are gauge invariant.

    """
    grid = state.grid
    r1, _, _ = dbar(state.psi1, state, +1, scheme)
    r2, _, _ = dbar(state.psi2, state, -1, scheme)
    r3 = state.psi1 * state.psi2 - state.theta
    r4 = (curvature(state) + np.abs(state.psi1) ** 2 - np.abs(state.psi2) ** 2
          - 2 * np.pi * state.lam / grid.area)
    norms = tuple(float(np.sqrt(grid.cell_area * np.sum(np.abs(r) ** 2))) for r in (r1, r2, r3, r4))
    return VortexResidual(r1, r2, r3, r4, norms)


def gauge_transform(state: VortexState, chi: np.ndarray) -> VortexState:
    """ psi -> exp(i q chi) psi and a -> a + (chi(next) - chi) / h. """
    chi = np.asarray(chi, dtype=float)
    grid = state.grid
    return VortexState(grid,
                       state.a_x + (np.roll(chi, -1, axis=0) - chi) / grid.h1,
                       state.a_y + (np.roll(chi, -1, axis=1) - chi) / grid.h2,
                       np.exp(1j * chi) * state.psi1,
                       np.exp(-1j * chi) * state.psi2,
                       state.lam, state.theta)


def _wrap(angle):
    return np.mod(angle + np.pi, 2 * np.pi) - np.pi


def winding_numbers(state: VortexState, field_name: str = 'psi1') -> np.ndarray:
    """ Integer winding of a section around every plaquette; the plaquette (i, j) has corner (i, j).

    For a section of charge q the windings add up to q d.
    """
    if field_name not in ('psi1', 'psi2'):
        raise ValueError(f'{field_name} is not a valid field! Use psi1 or psi2.')
    q = 1 if field_name == 'psi1' else -1
    psi = getattr(state, field_name)
    grid = state.grid
    phi_x, phi_y = state.link_angles()
    angle = np.angle(psi)

    # gauge invariant phase increments along the links
    step_x = _wrap(np.roll(angle, -1, axis=0) - angle - q * phi_x)
    step_y = _wrap(np.roll(angle, -1, axis=1) - angle - q * phi_y)
    circulation = step_x + np.roll(step_y, -1, axis=0) - np.roll(step_x, -1, axis=1) - step_y

    flux = (grid.plaquette_integers() * grid.angle_unit
            + grid.h1 * (state.a_x - np.roll(state.a_x, -1, axis=1))
            + grid.h2 * (np.roll(state.a_y, -1, axis=0) - state.a_y))
    return np.rint((circulation + q * flux) / (2 * np.pi)).astype(int)


def zero_count(state: VortexState, field_name: str = 'psi1') -> int:
    """ Number of zeros counted with winding. """
    return int(winding_numbers(state, field_name).sum())
