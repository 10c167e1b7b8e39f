"""
Dense complex linear algebra and the quaternionic module structure used across the package.

Quaternionic vectors are stored as complex pairs (a, b) meaning a + j b. Left multiplication by the imaginary
units acts by

    i (a, b) = (i a, -i b),    j (a, b) = (-b, a),    k (a, b) = (-i b, -i a),

and the inner product on u(k) is <X, Y> = Re tr(X^dagger Y).
"""
import logging
from dataclasses import dataclass
from typing import Tuple

import numpy as np
import scipy.linalg
from scipy.stats import unitary_group

from adhmkit.errors import DimensionError, PreconditionError
from adhmkit.filters import is_hermitian, is_square
from adhmkit.utils import make_rng

logger = logging.getLogger(__name__)

SAMPLE_KINDS = ('unitary', 'anti_hermitian', 'gaussian_vector')


@dataclass(frozen=True)
class ImQuaternion:
    """ The imaginary quaternion x1 i + x2 j + x3 k. """

    x1: float
    x2: float
    x3: float

    def norm(self) -> float:
        return float(np.sqrt(self.x1 ** 2 + self.x2 ** 2 + self.x3 ** 2))

    def as_tuple(self) -> Tuple[float, float, float]:
        return self.x1, self.x2, self.x3


I = ImQuaternion(1.0, 0.0, 0.0)
J = ImQuaternion(0.0, 1.0, 0.0)
K = ImQuaternion(0.0, 0.0, 1.0)
UNITS = (I, J, K)


@dataclass(frozen=True)
class QuaternionicVector:
    """ An element a + j b of H (x) C^k.

    Attributes
    ----------
    a : numpy.ndarray
        Complex vector of length k.
    b : numpy.ndarray
        Complex vector of length k.

    """

    a: np.ndarray
    b: np.ndarray

    def __post_init__(self):
        if np.shape(self.a) != np.shape(self.b):
            raise DimensionError(f'Components of different shapes: {np.shape(self.a)} and {np.shape(self.b)}.')

    @property
    def k(self) -> int:
        return int(np.shape(self.a)[0])

    def inner(self, other: 'QuaternionicVector') -> float:
        """ Real inner product Re(a^dagger a' + b^dagger b'). """
        if self.k != other.k:
            raise DimensionError(f'Cannot pair vectors of length {self.k} and {other.k}.')
        return float(np.real(np.vdot(self.a, other.a) + np.vdot(self.b, other.b)))

    def norm(self) -> float:
        return float(np.sqrt(self.inner(self)))

    @classmethod
    def random(cls, k: int, seed) -> 'QuaternionicVector':
        rng = make_rng(seed)
        a = rng.standard_normal(k) + 1j * rng.standard_normal(k)
        b = rng.standard_normal(k) + 1j * rng.standard_normal(k)
        return cls(a=a, b=b)


def clifford_pair(v: ImQuaternion, a: np.ndarray, b: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """ Apply gamma(v) to the pair (a, b); a and b may be vectors or k x r matrices acting column-wise. """
    x1, x2, x3 = v.as_tuple()
    return (1j * x1 * a - x2 * b - 1j * x3 * b,
            -1j * x1 * b + x2 * a - 1j * x3 * a)


def clifford_apply(v: ImQuaternion, s: QuaternionicVector) -> QuaternionicVector:
    """ Left multiplication gamma(v) s of an imaginary quaternion on H (x) C^k.

    Parameters
    ----------
    v : ImQuaternion
        The imaginary quaternion.
    s : QuaternionicVector
        The vector to act on.

    Returns
    -------
    QuaternionicVector
        gamma(v) s.

    """
    a, b = clifford_pair(v, np.asarray(s.a), np.asarray(s.b))
    return QuaternionicVector(a=a, b=b)


def left_quaternion_multiply(v: ImQuaternion, xi: Tuple[np.ndarray, ...]) -> Tuple[np.ndarray, ...]:
    """ Left multiplication by v on xi = xi0 + i xi1 + j xi2 + k xi3 in H (x) u(k).

    Parameters
    ----------
    v : ImQuaternion
        The imaginary quaternion.
    xi : tuple
        The four real components (xi0, xi1, xi2, xi3).

    Returns
    -------
    tuple
        The four components of v xi.

    """
    x0, x1, x2, x3 = xi
    c1, c2, c3 = v.as_tuple()
    # i (x0, x1, x2, x3) = (-x1, x0, -x3, x2)
    # j (x0, x1, x2, x3) = (-x2, x3, x0, -x1)
    # k (x0, x1, x2, x3) = (-x3, -x2, x1, x0)
    return (-c1 * x1 - c2 * x2 - c3 * x3,
            c1 * x0 + c2 * x3 - c3 * x2,
            -c1 * x3 + c2 * x0 + c3 * x1,
            c1 * x2 - c2 * x1 + c3 * x0)


def _check_square_pair(X: np.ndarray, Y: np.ndarray):
    if not (is_square(X) and is_square(Y)) or X.shape != Y.shape:
        raise DimensionError(f'Expected square matrices of equal size, got {X.shape} and {Y.shape}.')


def commutator(X: np.ndarray, Y: np.ndarray) -> np.ndarray:
    """ The commutator XY - YX of two square matrices of equal size. """
    _check_square_pair(X, Y)
    return X @ Y - Y @ X


def inner_u(X: np.ndarray, Y: np.ndarray) -> float:
    """ Re tr(X^dagger Y); equals -tr(XY) on anti-Hermitian matrices. """
    if np.shape(X) != np.shape(Y):
        raise DimensionError(f'Cannot pair arrays of shapes {np.shape(X)} and {np.shape(Y)}.')
    return float(np.real(np.vdot(X, Y)))


def frobenius_norm(X: np.ndarray) -> float:
    return float(np.linalg.norm(X))


def adjoint_action(g: np.ndarray, X: np.ndarray) -> np.ndarray:
    """ Ad(g) X = g X g^dagger. """
    return g @ X @ g.conj().T


def random_sample(kind: str, size: int, seed) -> np.ndarray:
    """ Draw a seeded random unitary matrix, anti-Hermitian matrix or complex Gaussian vector.

    Parameters
    ----------
    kind : str
        One of 'unitary', 'anti_hermitian', 'gaussian_vector'.
    size : int
        Matrix size or vector length; at least 1.
    seed : int or numpy.random.Generator
        Seed of the draw. A fixed integer seed always yields the same sample.

    Returns
    -------
    numpy.ndarray
        The sample.

    Raises
    ------
    ValueError
        If kind is unknown or size < 1.

    """
    if kind not in SAMPLE_KINDS:
        raise ValueError(f'{kind} is not valid! Use one of {", ".join(SAMPLE_KINDS)}.')
    if size < 1:
        raise ValueError(f'size must be at least 1, got {size}.')

    rng = make_rng(seed)

    if kind == 'unitary':
        if size == 1:
            return np.exp(2j * np.pi * rng.random()) * np.ones((1, 1))
        return unitary_group.rvs(size, random_state=rng)

    if kind == 'anti_hermitian':
        G = rng.standard_normal((size, size)) + 1j * rng.standard_normal((size, size))
        return (G - G.conj().T) / 2

    return rng.standard_normal(size) + 1j * rng.standard_normal(size)


def eigen_hermitian(M: np.ndarray, tol: float = 1e-10) -> Tuple[np.ndarray, np.ndarray]:
    """ Eigendecomposition of a Hermitian matrix with ascending eigenvalues.

    Parameters
    ----------
    M : numpy.ndarray
        A Hermitian matrix. Pass i X for an anti-Hermitian X.
    tol : float
        Tolerance of the Hermitian check, relative to the norm of M.

    Returns
    -------
    Tuple[numpy.ndarray, numpy.ndarray]
        The eigenvalues (ascending) and a unitary matrix of eigenvectors.

    Raises
    ------
    PreconditionError
        If M is not Hermitian within tol.

    """
    M = np.asarray(M, dtype=complex)
    if not is_square(M):
        raise DimensionError(f'Expected a square matrix, got shape {M.shape}.')
    if not is_hermitian(M, tol):
        defect = float(np.linalg.norm(M - M.conj().T))
        raise PreconditionError(f'Matrix is not Hermitian: ||M - M^dagger|| = {defect:.3e}.', measured=defect)

    eigenvalues, eigenvectors = scipy.linalg.eigh((M + M.conj().T) / 2)
    return eigenvalues, eigenvectors


def null_space_dimension(M: np.ndarray, cutoff: float = 1e-8) -> int:
    """ Number of columns of M minus the number of singular values above cutoff * sigma_max. """
    M = np.atleast_2d(M)
    n = M.shape[1]
    if M.size == 0:
        return n
    sigma = scipy.linalg.svdvals(M)
    if sigma.size == 0 or sigma[0] == 0.0:
        return n
    return n - int(np.sum(sigma > cutoff * sigma[0]))
