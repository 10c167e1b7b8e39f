"""
Points of the ADHM representation S_{r,k} = Hom(C^r, H (x) C^k) (+) H (x) u(k), the U(k) gauge action and the
identification of xi = xi0 + i xi1 + j xi2 + k xi3 with the complex pair (A, B).
"""
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from adhmkit.errors import DimensionError, PreconditionError
from adhmkit.filters import is_anti_hermitian, is_unitary
from adhmkit.linalg import adjoint_action
from adhmkit.utils import make_rng


@dataclass(frozen=True)
class ADHMConfig:
    """ A point (Psi, xi) of S_{r,k} in the complex coordinates (v, w, A, B).

    The spinor part Psi has flavor columns v[:, c] + j w[:, c]; the adjoint part xi is carried by (A, B) through
    :func:`xi_to_complex`.

    Attributes
    ----------
    v : numpy.ndarray
        k x r complex matrix.
    w : numpy.ndarray
        k x r complex matrix.
    A : numpy.ndarray
        k x k complex matrix.
    B : numpy.ndarray
        k x k complex matrix.

    """

    v: np.ndarray
    w: np.ndarray
    A: np.ndarray
    B: np.ndarray

    def __post_init__(self):
        for name in ('v', 'w', 'A', 'B'):
            object.__setattr__(self, name, np.atleast_2d(np.asarray(getattr(self, name), dtype=complex)))

        k, r = self.v.shape
        if self.w.shape != (k, r):
            raise DimensionError(f'v and w must have equal shapes, got {self.v.shape} and {self.w.shape}.')
        if self.A.shape != (k, k) or self.B.shape != (k, k):
            raise DimensionError(f'A and B must be {k}x{k}, got {self.A.shape} and {self.B.shape}.')

    @property
    def k(self) -> int:
        return self.v.shape[0]

    @property
    def r(self) -> int:
        return self.v.shape[1]

    @property
    def real_dimension(self) -> int:
        return 4 * self.k * self.r + 4 * self.k * self.k

    def norm(self) -> float:
        return float(np.sqrt(sum(np.linalg.norm(x) ** 2 for x in (self.v, self.w, self.A, self.B))))

    def psi_norm(self) -> float:
        return float(np.sqrt(np.linalg.norm(self.v) ** 2 + np.linalg.norm(self.w) ** 2))

    def xi(self) -> 'XiQuaternionic':
        return complex_to_xi(self.A, self.B)

    def to_vector(self) -> np.ndarray:
        """ Real flattening (Re v, Im v, Re w, Im w, Re A, Im A, Re B, Im B); Euclidean norm equals norm(). """
        return np.concatenate([part for x in (self.v, self.w, self.A, self.B)
                               for part in (x.real.ravel(), x.imag.ravel())])

    @classmethod
    def from_vector(cls, vector: np.ndarray, r: int, k: int) -> 'ADHMConfig':
        vector = np.asarray(vector, dtype=float)
        expected = 4 * k * r + 4 * k * k
        if vector.shape != (expected,):
            raise DimensionError(f'Expected a real vector of length {expected}, got shape {vector.shape}.')

        shapes = [(k, r), (k, r), (k, k), (k, k)]
        blocks, offset = [], 0
        for shape in shapes:
            n = shape[0] * shape[1]
            re = vector[offset:offset + n].reshape(shape)
            im = vector[offset + n:offset + 2 * n].reshape(shape)
            blocks.append(re + 1j * im)
            offset += 2 * n
        return cls(*blocks)

    @classmethod
    def zeros(cls, r: int, k: int) -> 'ADHMConfig':
        return cls(np.zeros((k, r)), np.zeros((k, r)), np.zeros((k, k)), np.zeros((k, k)))

    @classmethod
    def random(cls, r: int, k: int, seed, normalize: bool = True) -> 'ADHMConfig':
        """ Gaussian entries, rescaled to unit norm unless normalize is False. """
        rng = make_rng(seed)
        shapes = [(k, r), (k, r), (k, k), (k, k)]
        blocks = [rng.standard_normal(s) + 1j * rng.standard_normal(s) for s in shapes]
        config = cls(*blocks)
        if normalize:
            config = config.scaled(1.0 / config.norm())
        return config

    def scaled(self, t: float) -> 'ADHMConfig':
        return ADHMConfig(t * self.v, t * self.w, t * self.A, t * self.B)

    def __add__(self, other: 'ADHMConfig') -> 'ADHMConfig':
        if not isinstance(other, ADHMConfig):
            return NotImplemented
        return ADHMConfig(self.v + other.v, self.w + other.w, self.A + other.A, self.B + other.B)

    def __sub__(self, other: 'ADHMConfig') -> 'ADHMConfig':
        return self + other.scaled(-1.0)

    def allclose(self, other: 'ADHMConfig', atol: float = 1e-12) -> bool:
        return all(np.allclose(x, y, atol=atol, rtol=0) for x, y in
                   zip((self.v, self.w, self.A, self.B), (other.v, other.w, other.A, other.B)))


@dataclass(frozen=True)
class XiQuaternionic:
    """ xi = xi0 + i xi1 + j xi2 + k xi3 in H (x) u(k); each component is anti-Hermitian. """

    xi0: np.ndarray
    xi1: np.ndarray
    xi2: np.ndarray
    xi3: np.ndarray

    def __post_init__(self):
        shape = np.shape(self.xi0)
        for name in ('xi0', 'xi1', 'xi2', 'xi3'):
            component = np.asarray(getattr(self, name), dtype=complex)
            if component.shape != shape or len(shape) != 2 or shape[0] != shape[1]:
                raise DimensionError(f'Components must be square of equal size, {name} has shape {component.shape}.')
            if not is_anti_hermitian(component, 1e-8):
                defect = float(np.linalg.norm(component + component.conj().T))
                raise PreconditionError(f'{name} is not anti-Hermitian: ||X + X^dagger|| = {defect:.3e}.',
                                        measured=defect)
            object.__setattr__(self, name, component)

    @property
    def k(self) -> int:
        return self.xi0.shape[0]

    @property
    def components(self) -> Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        return self.xi0, self.xi1, self.xi2, self.xi3

    def norm(self) -> float:
        return float(np.sqrt(sum(np.linalg.norm(x) ** 2 for x in self.components)))

    def adjoint(self, g: np.ndarray) -> 'XiQuaternionic':
        return XiQuaternionic(*(adjoint_action(g, x) for x in self.components))

    @classmethod
    def from_components(cls, components) -> 'XiQuaternionic':
        return cls(*components)

    @classmethod
    def zeros(cls, k: int) -> 'XiQuaternionic':
        return cls(*(np.zeros((k, k), dtype=complex) for _ in range(4)))

    @classmethod
    def diagonal(cls, values: np.ndarray) -> 'XiQuaternionic':
        """ Diagonal xi whose m-th diagonal entry is the quaternion values[m] = (x0, x1, x2, x3).

        Component alpha carries i * values[:, alpha] on its diagonal, matching the coordinates reported by the
        joint spectrum.
        """
        values = np.atleast_2d(np.asarray(values, dtype=float))
        return cls(*(np.diag(1j * values[:, alpha]) for alpha in range(4)))


def xi_to_complex(x: XiQuaternionic) -> Tuple[np.ndarray, np.ndarray]:
    """ The linear identification A = xi0 - i xi1, B = -xi2 + i xi3.

    It is a real isometry, maps diagonal xi to diagonal (A, B), and intertwines Ad(g) on both sides.
    """
    return x.xi0 - 1j * x.xi1, -x.xi2 + 1j * x.xi3


def complex_to_xi(A: np.ndarray, B: np.ndarray) -> XiQuaternionic:
    """ Inverse of :func:`xi_to_complex`. """
    A = np.asarray(A, dtype=complex)
    B = np.asarray(B, dtype=complex)
    Ah, Bh = A.conj().T, B.conj().T
    return XiQuaternionic((A - Ah) / 2, 1j * (A + Ah) / 2, (Bh - B) / 2, -1j * (B + Bh) / 2)


def config_from_xi(v: np.ndarray, w: np.ndarray, xi: XiQuaternionic) -> ADHMConfig:
    A, B = xi_to_complex(xi)
    return ADHMConfig(v, w, A, B)


def gauge_act(g: np.ndarray, c: ADHMConfig, tol: float = 1e-10) -> ADHMConfig:
    """ The U(k) action v -> g v, w -> g w, A -> g A g^dagger, B -> g B g^dagger.

    Parameters
    ----------
    g : numpy.ndarray
        A k x k unitary matrix.
    c : ADHMConfig
        The configuration.
    tol : float
        Tolerance of the unitarity check.

    Returns
    -------
    ADHMConfig
        The transformed configuration.

    Raises
    ------
    PreconditionError
        If g is not unitary.

    """
    g = np.asarray(g, dtype=complex)
    if g.shape != (c.k, c.k):
        raise DimensionError(f'Expected a {c.k}x{c.k} gauge transformation, got shape {g.shape}.')
    if not is_unitary(g, tol):
        defect = float(np.linalg.norm(g.conj().T @ g - np.eye(c.k)))
        raise PreconditionError(f'Gauge transformation is not unitary: ||g^dagger g - 1|| = {defect:.3e}.',
                                measured=defect)

    return ADHMConfig(g @ c.v, g @ c.w, adjoint_action(g, c.A), adjoint_action(g, c.B))


def infinitesimal_action(eta: np.ndarray, c: ADHMConfig) -> ADHMConfig:
    """ Derivative of the gauge action along eta in u(k): (eta v, eta w, [eta, A], [eta, B]). """
    return ADHMConfig(eta @ c.v, eta @ c.w, eta @ c.A - c.A @ eta, eta @ c.B - c.B @ eta)
