"""
The hyperkahler moment map of the ADHM representation in quaternionic and complex coordinates, its derivative,
its gradient, and the algebraic identities it satisfies.

Conventions: <mu_alpha, eta> = 1/2 <L_alpha(eta . c), c> with eta . c the infinitesimal gauge action and
L_alpha the left multiplication by the imaginary unit alpha. This gives

    mu(Psi) = ( -i/2 (vv* - ww*),  -1/2 (vw* - wv*),  i/2 (vw* + wv*) )
    mu(xi)  = ( [xi0,xi1] + [xi2,xi3],  [xi0,xi2] + [xi3,xi1],  [xi0,xi3] + [xi1,xi2] )

and in complex coordinates mu_R = i mu_i, mu_C = mu_j - i mu_k.
"""
import logging
from dataclasses import dataclass
from itertools import combinations
from typing import Tuple

import numpy as np

from adhmkit.adhm.representation import (ADHMConfig, XiQuaternionic, config_from_xi,
                                         infinitesimal_action)
from adhmkit.errors import DimensionError, PreconditionError
from adhmkit.linalg import UNITS, adjoint_action, clifford_pair, inner_u, left_quaternion_multiply
from adhmkit.utils import relative_error

logger = logging.getLogger(__name__)

# ||mu_quaternionic|| = CHART_SCALE * ||mu_complex||, with ||mu_complex||^2 = ||mu_R||^2 + ||mu_C||^2
CHART_SCALE = 1.0


@dataclass(frozen=True)
class MomentValue:
    """ An element (mu_i, mu_j, mu_k) of u(k) (x) Im H.

    Attributes
    ----------
    mu_i, mu_j, mu_k : numpy.ndarray
        k x k anti-Hermitian matrices.

    """

    mu_i: np.ndarray
    mu_j: np.ndarray
    mu_k: np.ndarray

    @property
    def k(self) -> int:
        return self.mu_i.shape[0]

    @property
    def components(self) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        return self.mu_i, self.mu_j, self.mu_k

    def norm(self) -> float:
        return float(np.sqrt(sum(np.linalg.norm(m) ** 2 for m in self.components)))

    def to_vector(self) -> np.ndarray:
        return np.concatenate([part for m in self.components for part in (m.real.ravel(), m.imag.ravel())])

    def adjoint(self, g: np.ndarray) -> 'MomentValue':
        return MomentValue(*(adjoint_action(g, m) for m in self.components))

    def __add__(self, other: 'MomentValue') -> 'MomentValue':
        return MomentValue(*(x + y for x, y in zip(self.components, other.components)))

    def __sub__(self, other: 'MomentValue') -> 'MomentValue':
        return MomentValue(*(x - y for x, y in zip(self.components, other.components)))

    def scaled(self, t: float) -> 'MomentValue':
        return MomentValue(*(t * m for m in self.components))


def _bracket(X: np.ndarray, Y: np.ndarray) -> np.ndarray:
    return X @ Y - Y @ X


def _psi_bilinear(v1, w1, v2, w2) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    vv = v1 @ v2.conj().T
    ww = w1 @ w2.conj().T
    vw = v1 @ w2.conj().T
    wv = w1 @ v2.conj().T
    return -0.5j * (vv - ww), -0.5 * (vw - wv), 0.5j * (vw + wv)


def _xi_bilinear(x: Tuple[np.ndarray, ...], y: Tuple[np.ndarray, ...]) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    x0, x1, x2, x3 = x
    y0, y1, y2, y3 = y
    return (_bracket(x0, y1) + _bracket(x2, y3),
            _bracket(x0, y2) + _bracket(x3, y1),
            _bracket(x0, y3) + _bracket(x1, y2))


def mu_bilinear(c1: ADHMConfig, c2: ADHMConfig) -> MomentValue:
    """ The bilinear form M with mu(c) = M(c, c) and d mu_c(h) = M(c, h) + M(h, c). """
    psi = _psi_bilinear(c1.v, c1.w, c2.v, c2.w)
    xi = _xi_bilinear(c1.xi().components, c2.xi().components)
    return MomentValue(*(p + x for p, x in zip(psi, xi)))


def mu_xi(xi: XiQuaternionic) -> MomentValue:
    return MomentValue(*_xi_bilinear(xi.components, xi.components))


def mu_quaternionic(c: ADHMConfig) -> MomentValue:
    """ The moment map mu(Psi) + mu(xi).

    For r > 1 the spinor part accumulates over the flavor columns of v and w.

    Parameters
    ----------
    c : ADHMConfig
        The configuration.

    Returns
    -------
    MomentValue
        mu(c); equivariant, mu(g . c) = Ad(g) mu(c).

    """
    return mu_bilinear(c, c)


def mu_complex(c: ADHMConfig) -> Tuple[np.ndarray, np.ndarray]:
    """ Real and complex moment maps 1/2 (vv* - ww* - [A,A*] - [B,B*]) and wv* - [A,B]. """
    v, w, A, B = c.v, c.w, c.A, c.B
    real_part = 0.5 * (v @ v.conj().T - w @ w.conj().T - _bracket(A, A.conj().T) - _bracket(B, B.conj().T))
    complex_part = w @ v.conj().T - _bracket(A, B)
    return real_part, complex_part


def mu_complex_norm(c: ADHMConfig) -> float:
    real_part, complex_part = mu_complex(c)
    return float(np.sqrt(np.linalg.norm(real_part) ** 2 + np.linalg.norm(complex_part) ** 2))


def mu_differential(c: ADHMConfig, h: ADHMConfig) -> MomentValue:
    """ The derivative d mu_c(h).

    Raises
    ------
    DimensionError
        If c and h have different shapes.

    """
    if (c.r, c.k) != (h.r, h.k):
        raise DimensionError(f'Tangent of shape (r={h.r}, k={h.k}) at a point of shape (r={c.r}, k={c.k}).')
    return mu_bilinear(c, h) + mu_bilinear(h, c)


def mu_jacobian(c: ADHMConfig) -> np.ndarray:
    """ Real Jacobian of c -> mu(c) in the flattenings ADHMConfig.to_vector / MomentValue.to_vector. """
    n = c.real_dimension
    columns = []
    for index in range(n):
        e = np.zeros(n)
        e[index] = 1.0
        columns.append(mu_differential(c, ADHMConfig.from_vector(e, c.r, c.k)).to_vector())
    return np.column_stack(columns)


def mu_energy(c: ADHMConfig) -> float:
    return mu_quaternionic(c).norm() ** 2


def mu_gradient(c: ADHMConfig) -> ADHMConfig:
    """ Gradient of E(c) = ||mu(c)||^2, namely 2 sum_alpha L_alpha(mu_alpha . c). """
    mu = mu_quaternionic(c)
    v_grad = np.zeros_like(c.v)
    w_grad = np.zeros_like(c.w)
    xi_grad = [np.zeros_like(c.A) for _ in range(4)]

    for unit, mu_alpha in zip(UNITS, mu.components):
        moved = infinitesimal_action(mu_alpha, c)
        a, b = clifford_pair(unit, moved.v, moved.w)
        v_grad += a
        w_grad += b
        for index, component in enumerate(left_quaternion_multiply(unit, moved.xi().components)):
            xi_grad[index] += component

    return config_from_xi(2 * v_grad, 2 * w_grad, XiQuaternionic(*(2 * x for x in xi_grad)))


def _check_result(lhs: float, rhs: float) -> Tuple[float, float, float]:
    return lhs, rhs, relative_error(lhs, rhs)


def check_mu_norm_identity(xi: XiQuaternionic) -> Tuple[float, float, float]:
    """ Compare |mu(xi)|^2 with 1/2 sum_{alpha, beta} |[xi_alpha, xi_beta]|^2.

    Returns
    -------
    Tuple[float, float, float]
        lhs, rhs and their relative error.

    """
    lhs = mu_xi(xi).norm() ** 2
    rhs = sum(np.linalg.norm(_bracket(x, y)) ** 2 for x, y in combinations(xi.components, 2))
    return _check_result(lhs, rhs)


def linearized_action(xi: XiQuaternionic, tau: np.ndarray) -> XiQuaternionic:
    """ R_xi(tau) = ([tau, xi_alpha])_alpha, the derivative of Ad at the identity. """
    return XiQuaternionic(*(_bracket(tau, x) for x in xi.components))


def linearized_action_adjoint(xi: XiQuaternionic, eta: XiQuaternionic) -> np.ndarray:
    """ R_xi^* eta = sum_alpha [xi_alpha, eta_alpha], adjoint of :func:`linearized_action`. """
    return sum(_bracket(x, y) for x, y in zip(xi.components, eta.components))


def xi_differential(xi: XiQuaternionic, eta: XiQuaternionic) -> MomentValue:
    x, y = xi.components, eta.components
    return MomentValue(*(p + q for p, q in zip(_xi_bilinear(x, y), _xi_bilinear(y, x))))


def check_linearized_identity(xi: XiQuaternionic, eta: XiQuaternionic,
                              tol: float = 1e-10) -> Tuple[float, float, float]:
    """ Compare |d mu_xi(eta)|^2 + |R_xi^* eta|^2 with sum_{alpha != beta} |[xi_alpha, eta_beta]|^2
    + sum_alpha |[xi_alpha, eta_alpha]|^2 at a zero of mu.

    Parameters
    ----------
    xi : XiQuaternionic
        A point with mu(xi) = 0, e.g. with simultaneously diagonal components.
    eta : XiQuaternionic
        The tangent vector.
    tol : float
        Admissible ||mu(xi)||, relative to max(1, ||xi||^2).

    Returns
    -------
    Tuple[float, float, float]
        lhs, rhs and their relative error.

    Raises
    ------
    PreconditionError
        If ||mu(xi)|| exceeds the tolerance; the measured value is attached.

    """
    if xi.k != eta.k:
        raise DimensionError(f'xi and eta have sizes {xi.k} and {eta.k}.')

    measured = mu_xi(xi).norm()
    if measured > tol * max(1.0, xi.norm() ** 2):
        raise PreconditionError(f'xi is not a zero of the moment map: ||mu(xi)|| = {measured:.3e}.',
                                measured=measured)

    lhs = xi_differential(xi, eta).norm() ** 2 + np.linalg.norm(linearized_action_adjoint(xi, eta)) ** 2
    rhs = sum(np.linalg.norm(_bracket(x, y)) ** 2 for x in xi.components for y in eta.components)
    return _check_result(lhs, rhs)


def adjoint_pairing_defect(xi: XiQuaternionic, tau: np.ndarray, eta: XiQuaternionic) -> float:
    """ |<R_xi tau, eta> - <tau, R_xi^* eta>|. """
    left = sum(inner_u(x, y) for x, y in zip(linearized_action(xi, tau).components, eta.components))
    right = inner_u(tau, linearized_action_adjoint(xi, eta))
    return abs(left - right)


def chart_scale(c: ADHMConfig) -> float:
    """ Empirical ratio ||mu_quaternionic(c)|| / ||mu_complex(c)||; equals CHART_SCALE. """
    denominator = mu_complex_norm(c)
    if denominator == 0.0:
        return CHART_SCALE
    return mu_quaternionic(c).norm() / denominator


def complex_from_quaternionic(mu: MomentValue) -> Tuple[np.ndarray, np.ndarray]:
    """ (mu_R, mu_C) = (i mu_i, mu_j - i mu_k). """
    return 1j * mu.mu_i, mu.mu_j - 1j * mu.mu_k

