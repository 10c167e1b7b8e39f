"""
Least-squares solution of the lattice vortex equations, the integrated curvature identity and the reduced ADHM
residual for r = k = 1.
"""
import logging
from dataclasses import dataclass, field
from typing import List, Tuple

import numpy as np
import scipy.optimize

from adhmkit.settings import DEFAULT_CONFIG, Config
from adhmkit.utils import make_rng, relative_error
from adhmkit.vortex.lattice import (TorusGrid, VortexState, dbar, dbar_adjoint, scheme_coefficients,
                                    vortex_residual)

logger = logging.getLogger(__name__)

MAX_DEGREE = 3
MAX_GRID = 128
MAX_RESTARTS = 8


@dataclass
class VortexResult:
    """ Outcome of :func:`solve_vortex`.

    Attributes
    ----------
    state : VortexState
        The final configuration.
    converged : bool
        Whether the total residual is at most tol.
    iterations : int
        L-BFGS iterations over all restarts.
    residual : float
        Total residual norm of the final configuration.
    norms : Tuple[float, float, float, float]
        Residual norms of the four equations.
    energies : List[float]
        Energy at the end of every restart.

    """

    state: VortexState
    converged: bool
    iterations: int
    residual: float
    norms: Tuple[float, float, float, float]
    energies: List[float] = field(default_factory=list)


def _pack(state: VortexState) -> np.ndarray:
    return np.concatenate([state.a_x.ravel(), state.a_y.ravel(), state.psi1.real.ravel(), state.psi1.imag.ravel(),
                           state.psi2.real.ravel(), state.psi2.imag.ravel()])


def _unpack(x: np.ndarray, template: VortexState) -> VortexState:
    N = template.grid.N
    a_x, a_y, p1r, p1i, p2r, p2i = (part.reshape(N, N) for part in np.split(x, 6))
    return VortexState(template.grid, a_x, a_y, p1r + 1j * p1i, p2r + 1j * p2i, template.lam, template.theta)


def _link_gradient(r, d, q: int, h: float, c: complex, axis: int) -> np.ndarray:
    # derivative of 1/2 w |c D psi + ...|^2 with respect to the link perturbation along axis
    X = np.conj(r) * c
    here = np.real(X * d.alpha * (-1j * q * h) * d.forward)
    there = np.real(X * d.beta * (1j * q * h) * d.backward)
    return here + np.roll(there, -1, axis=axis)


def energy_and_gradient(state: VortexState, scheme: str = 'central') -> Tuple[float, VortexState]:
    """ E = 1/2 sum (|r1|^2 + |r2|^2 + |r3|^2 + r4^2) dvol and its gradient, as a state of the same shape. """
    grid = state.grid
    w = grid.cell_area
    psi1, psi2 = state.psi1, state.psi2

    r1, d1x, d1y = dbar(psi1, state, +1, scheme)
    r2, d2x, d2y = dbar(psi2, state, -1, scheme)
    residual = vortex_residual(state, scheme)
    r3, r4 = residual.r3, residual.r4
    energy = 0.5 * sum(n ** 2 for n in residual.norms)

    g1 = w * (dbar_adjoint(r1, state, +1, scheme) + np.conj(psi2) * r3 + 2 * r4 * psi1)
    g2 = w * (dbar_adjoint(r2, state, -1, scheme) + np.conj(psi1) * r3 - 2 * r4 * psi2)

    g_x = w * (_link_gradient(r1, d1x, +1, grid.h1, 0.5, 0) + _link_gradient(r2, d2x, -1, grid.h1, 0.5, 0))
    g_y = w * (_link_gradient(r1, d1y, +1, grid.h2, 0.5j, 1) + _link_gradient(r2, d2y, -1, grid.h2, 0.5j, 1))
    g_x += w * (r4 - np.roll(r4, 1, axis=1)) / grid.h2
    g_y += w * (np.roll(r4, 1, axis=0) - r4) / grid.h1

    return float(energy), VortexState(grid, g_x, g_y, g1, g2, state.lam, state.theta)


def _smooth_field(grid: TorusGrid, rng, modes: int = 2) -> np.ndarray:
    x = np.arange(grid.N) / grid.N
    X, Y = np.meshgrid(x, x, indexing='ij')
    result = np.zeros((grid.N, grid.N), dtype=complex)
    for m in range(-modes, modes + 1):
        for n in range(-modes, modes + 1):
            coefficient = complex(rng.standard_normal(), rng.standard_normal()) / (1 + m * m + n * n)
            result += coefficient * np.exp(2j * np.pi * (m * X + n * Y))
    return result / np.sqrt(np.mean(np.abs(result) ** 2))


def initial_state(grid: TorusGrid, lam: float, seed=0, theta: complex = 0.0) -> VortexState:
    """ Low-frequency random start whose dominant field has the mean square density 2 pi |lambda - d| / vol. """
    rng = make_rng(seed)
    amplitude = np.sqrt(2 * np.pi * max(abs(lam - grid.degree), 1.0) / grid.area)
    big = amplitude * (1.0 + 0.3 * _smooth_field(grid, rng))
    small = 0.1 * amplitude * _smooth_field(grid, rng)
    psi1, psi2 = (big, small) if lam > grid.degree else (small, big)
    zeros = np.zeros((grid.N, grid.N))
    return VortexState(grid, zeros, zeros, psi1, psi2, lam, theta)


def solve_vortex(grid: TorusGrid, lam: float, seed=0, tol: float = None, max_iter: int = None,
                 theta: complex = 0.0, scheme: str = None, config: Config = DEFAULT_CONFIG,
                 start: VortexState = None) -> VortexResult:
    """ Minimize the summed squared residuals with L-BFGS-B and the analytic gradient.

    Parameters
    ----------
    grid : TorusGrid
        The torus, with |degree| <= 3 and N <= 128.
    lam : float
        lambda; lambda = degree is excluded.
    seed : int
        Seed of the random start.
    tol : float
        Admissible total residual; defaults to vortex.tol of the configuration.
    max_iter : int
        Maximal number of L-BFGS iterations; defaults to vortex.max_iter.
    theta : complex
        Constant perturbation of the pairing equation.
    scheme : str
        Covariant difference scheme; defaults to vortex.scheme.
    config : Config
        Solver defaults.
    start : VortexState
        Optional start, replacing the random one.

    Returns
    -------
    VortexResult
        Non-convergence is reported through VortexResult.converged.

    Raises
    ------
    ValueError
        For lambda = degree or a grid outside the supported range.

    """
    if lam == grid.degree:
        raise ValueError(f'lambda = d = {grid.degree} is excluded: the vortex correspondence needs lambda != d.')
    if abs(grid.degree) > MAX_DEGREE or grid.N > MAX_GRID:
        raise ValueError(f'Supported are |d| <= {MAX_DEGREE} and N <= {MAX_GRID}, got d = {grid.degree}, '
                         f'N = {grid.N}.')

    tol = float(config.vortex['tol']) if tol is None else tol
    max_iter = int(config.vortex['max_iter']) if max_iter is None else max_iter
    scheme = config.vortex['scheme'] if scheme is None else scheme
    scheme_coefficients(scheme, grid.h1)

    template = initial_state(grid, lam, seed, theta) if start is None else start

    def objective(x):
        energy, gradient = energy_and_gradient(_unpack(x, template), scheme)
        return energy, _pack(gradient)

    x = _pack(template)
    iterations, energies = 0, []
    for restart in range(MAX_RESTARTS):
        result = scipy.optimize.minimize(objective, x, jac=True, method='L-BFGS-B',
                                         options={'maxiter': max(max_iter - iterations, 1), 'maxfun': 10 * max_iter,
                                                  'maxcor': 20, 'ftol': 1e-30, 'gtol': 1e-30})
        iterations += int(result.nit)
        improved = result.fun < (energies[-1] if energies else np.inf)
        x = result.x
        energies.append(float(result.fun))
        residual = np.sqrt(2 * result.fun)
        logger.debug('Restart %d: %d iterations, residual %.3e (%s).', restart, result.nit, residual, result.message)
        if residual <= tol or iterations >= max_iter or not improved:
            break

    state = _unpack(x, template)
    final = vortex_residual(state, scheme)
    converged = final.total <= tol
    if not converged:
        logger.warning('Vortex solver stopped at residual %.3e after %d iterations.', final.total, iterations)

    return VortexResult(state=state, converged=converged, iterations=iterations, residual=final.total,
                        norms=final.norms, energies=energies)


def field_norm(state: VortexState, field_name: str) -> float:
    """ L2 norm (sum |psi|^2 dvol)^(1/2) of psi1 or psi2. """
    values = getattr(state, field_name)
    return float(np.sqrt(state.grid.cell_area * np.sum(np.abs(values) ** 2)))


def dichotomy_ratio(state: VortexState) -> float:
    """ Norm of the field that has to vanish over the norm of the other one: psi2/psi1 for lambda > d. """
    n1, n2 = field_norm(state, 'psi1'), field_norm(state, 'psi2')
    small, big = (n2, n1) if state.lam > state.grid.degree else (n1, n2)
    return small / big if big > 0 else np.inf


@dataclass(frozen=True)
class IntegralIdentity:
    lhs: float
    rhs: float
    relative_error: float
    excluded: bool


def integral_identity_check(state: VortexState) -> IntegralIdentity:
    """ Integrate the curvature equation: sum (|psi1|^2 - |psi2|^2) dvol against 2 pi (lambda - d).

    The background contributes exactly 2 pi d, so at a solution both sides agree up to the residual. excluded
    flags lambda = d, where the identity forces both fields to vanish.
    """
    grid = state.grid
    lhs = float(grid.cell_area * np.sum(np.abs(state.psi1) ** 2 - np.abs(state.psi2) ** 2))
    rhs = float(2 * np.pi * (state.lam - grid.degree))
    return IntegralIdentity(lhs, rhs, relative_error(lhs, rhs), state.lam == grid.degree)


@dataclass(frozen=True)
class ReducedResidual:
    """ Residual norms of the reduced ADHM system with r = k = 1.

    The first four entries pair with :class:`VortexResidual`; xi_dbar, xi_wedge and xi_wedge_adjoint are the
    norms of the xi equations, which decouple in rank one.
    """

    norms: Tuple[float, float, float, float]
    xi_dbar: float
    xi_wedge: float
    xi_wedge_adjoint: float

    @property
    def total(self) -> float:
        return float(np.sqrt(sum(n ** 2 for n in self.norms)))


def adhm_reduced_residual(state: VortexState, xi: np.ndarray = None, scheme: str = 'central') -> ReducedResidual:
    """ Evaluate the reduced ADHM equations for r = k = 1 with 1 x 1 matrix valued fields.

    v = psi1 and w = psi2 become 1 x 1 matrices on the sites and xi is an (N, N, 2) field of 1 x 1 complex
    matrices (the holomorphic and anti-holomorphic parts of the Higgs field). Transport uses explicit index
    arithmetic and matrix products, independent of :func:`vortex_residual`.
    """
    grid = state.grid
    N = grid.N
    alpha_x, beta_x, gamma_x = scheme_coefficients(scheme, grid.h1)
    alpha_y, beta_y, gamma_y = scheme_coefficients(scheme, grid.h2)
    nxt = (np.arange(N) + 1) % N
    prv = (np.arange(N) - 1) % N

    v = state.psi1.reshape(N, N, 1, 1)
    w = state.psi2.reshape(N, N, 1, 1)
    phi_x, phi_y = state.link_angles()
    Ux = np.exp(-1j * phi_x).reshape(N, N, 1, 1)
    Uy = np.exp(-1j * phi_y).reshape(N, N, 1, 1)

    def covariant(field, q):
        U_x = Ux if q > 0 else np.conj(Ux)
        U_y = Uy if q > 0 else np.conj(Uy)
        dx = (alpha_x * U_x @ field[nxt, :] + beta_x * np.conj(U_x[prv, :]) @ field[prv, :]
              + gamma_x * field)
        dy = (alpha_y * U_y @ field[:, nxt] + beta_y * np.conj(U_y[:, prv]) @ field[:, prv]
              + gamma_y * field)
        return 0.5 * (dx + 1j * dy)

    dirac_v = covariant(v, +1)
    dirac_w = covariant(w, -1)
    pairing = v @ w - state.theta
    identity = np.eye(1).reshape(1, 1, 1, 1)
    F = _plaquette_field(state).reshape(N, N, 1, 1)
    curvature_equation = (F * identity + v @ np.conj(np.swapaxes(v, -1, -2))
                          - np.conj(np.swapaxes(w, -1, -2)) @ w - 2 * np.pi * state.lam / grid.area * identity)

    if xi is None:
        xi = np.zeros((N, N, 2), dtype=complex)
    xi = np.asarray(xi, dtype=complex).reshape(N, N, 2, 1, 1)
    zeta, eta = xi[:, :, 0], xi[:, :, 1]
    xi_dbar = 0.5 * ((zeta[nxt, :] - zeta) / grid.h1 + 1j * (zeta[:, nxt] - zeta) / grid.h2)
    wedge = zeta @ eta - eta @ zeta
    wedge_adjoint = zeta @ np.conj(np.swapaxes(zeta, -1, -2)) - np.conj(np.swapaxes(zeta, -1, -2)) @ zeta

    def norm(values):
        return float(np.sqrt(grid.cell_area * np.sum(np.abs(values) ** 2)))

    return ReducedResidual(norms=(norm(dirac_v), norm(dirac_w), norm(pairing), norm(curvature_equation)),
                           xi_dbar=norm(xi_dbar), xi_wedge=norm(wedge), xi_wedge_adjoint=norm(wedge_adjoint))


def _plaquette_field(state: VortexState) -> np.ndarray:
    # curvature from the oriented sum of the link angles, reduced modulo 2 pi around the background
    grid = state.grid
    N = grid.N
    nxt = (np.arange(N) + 1) % N
    phi_x, phi_y = state.link_angles()
    oriented = phi_x + phi_y[nxt, :] - phi_x[:, nxt] - phi_y
    background = grid.plaquette_integers() * grid.angle_unit
    winding = np.rint((oriented - background - _perturbation_flux(state)) / (2 * np.pi))
    return (oriented - 2 * np.pi * winding) / grid.cell_area


def _perturbation_flux(state: VortexState) -> np.ndarray:
    grid = state.grid
    N = grid.N
    nxt = (np.arange(N) + 1) % N
    return grid.h1 * (state.a_x - state.a_x[:, nxt]) + grid.h2 * (state.a_y[nxt, :] - state.a_y)
