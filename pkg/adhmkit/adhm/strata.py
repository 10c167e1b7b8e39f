"""
Partitions labelling the strata of Sym^k(H), stabilizers of points of H (x) u(k), the joint spectrum of a commuting
quadruple, and the matrix algorithms behind the vanishing of Psi on the zero set of the moment map.
"""
import logging
import math
from collections import Counter
from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np
import scipy.linalg
from scipy.cluster.hierarchy import fcluster, linkage
from scipy.optimize import linear_sum_assignment

from adhmkit.adhm.moment import mu_xi
from adhmkit.adhm.representation import XiQuaternionic
from adhmkit.errors import DecompositionError, DimensionError, PreconditionError, SpectrumSeparationError
from adhmkit.filters import commute
from adhmkit.linalg import commutator, inner_u, null_space_dimension, random_sample
from adhmkit.utils import make_rng

logger = logging.getLogger(__name__)

MAX_PARTITION_SIZE = 20


@dataclass(frozen=True)
class Partition:
    """ A non-increasing sequence of positive integers.

    Attributes
    ----------
    parts : Tuple[int, ...]
        The parts, largest first. Zeros are not stored.

    """

    parts: Tuple[int, ...]

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        if not parts or any(p < 1 for p in parts):
            raise ValueError(f'{self.parts} is not valid! Parts must be positive integers.')
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError(f'{self.parts} is not valid! Parts must be non-increasing.')
        object.__setattr__(self, 'parts', parts)

    @property
    def k(self) -> int:
        return sum(self.parts)

    @property
    def length(self) -> int:
        return len(self.parts)

    @classmethod
    def from_multiplicities(cls, multiplicities) -> 'Partition':
        return cls(tuple(sorted(multiplicities, reverse=True)))

    def dominates(self, other: 'Partition') -> bool:
        """ True if every partial sum of self is at least the corresponding partial sum of other. """
        if self.k != other.k:
            return False
        size = max(self.length, other.length)
        mine = np.cumsum(self.parts + (0,) * (size - self.length))
        theirs = np.cumsum(other.parts + (0,) * (size - other.length))
        return bool(np.all(mine >= theirs))

    def __str__(self):
        return '(' + ','.join(str(p) for p in self.parts) + ')'


@dataclass(frozen=True)
class PartitionStats:
    length: int
    dim_T: int
    order_G: int
    stratum_dim: int


@dataclass(frozen=True)
class SpectrumPoint:
    """ The joint spectrum of a commuting quadruple.

    Attributes
    ----------
    values : numpy.ndarray
        k x 4 array; row m is the quaternion (x0, x1, x2, x3) with xi_alpha e_m = i x_alpha e_m.
    partition : Partition
        Multiplicities of the clustered values.
    cluster_tolerance : float
        The single-linkage radius used to cluster the values.

    """

    values: np.ndarray
    partition: Partition
    cluster_tolerance: float


def enumerate_partitions(k: int) -> List[Partition]:
    """ All partitions of k, in reverse lexicographic order: (k) first, (1, ..., 1) last.

    Raises
    ------
    ValueError
        If k is not in [1, 20].

    """
    if not 1 <= k <= MAX_PARTITION_SIZE:
        raise ValueError(f'k must be between 1 and {MAX_PARTITION_SIZE}, got {k}.')

    def _descend(remaining: int, largest: int):
        if remaining == 0:
            yield ()
            return
        for part in range(min(remaining, largest), 0, -1):
            for tail in _descend(remaining - part, part):
                yield (part,) + tail

    return [Partition(parts) for parts in _descend(k, k)]


def partition_stats(partition: Partition) -> PartitionStats:
    """ Length, dimension of the stabilizer T, order of the permutation group G and dimension of the stratum. """
    order = 1
    for multiplicity in Counter(partition.parts).values():
        order *= math.factorial(multiplicity)

    return PartitionStats(length=partition.length,
                          dim_T=sum(p * p for p in partition.parts),
                          order_G=order,
                          stratum_dim=4 * partition.length)


def u_basis(k: int) -> List[np.ndarray]:
    """ Orthonormal basis of u(k) for the inner product Re tr(X^dagger Y). """
    basis = []
    for m in range(k):
        E = np.zeros((k, k), dtype=complex)
        E[m, m] = 1j
        basis.append(E)
    for m in range(k):
        for n in range(m + 1, k):
            E = np.zeros((k, k), dtype=complex)
            E[m, n], E[n, m] = 1.0, -1.0
            basis.append(E / np.sqrt(2))
            E = np.zeros((k, k), dtype=complex)
            E[m, n], E[n, m] = 1j, 1j
            basis.append(E / np.sqrt(2))
    return basis


def _commutator_matrix(xi: XiQuaternionic) -> np.ndarray:
    columns = []
    for eta in u_basis(xi.k):
        stacked = [eta @ x - x @ eta for x in xi.components]
        columns.append(np.concatenate([part for c in stacked for part in (c.real.ravel(), c.imag.ravel())]))
    return np.column_stack(columns)


def stabilizer_dimension(xi: XiQuaternionic, cutoff: float = 1e-8) -> int:
    """ Real dimension of {eta in u(k) : [eta, xi_alpha] = 0 for every alpha}.

    Parameters
    ----------
    xi : XiQuaternionic
        The point.
    cutoff : float
        Singular values below cutoff * sigma_max count as zero.

    Returns
    -------
    int
        The null-space dimension of the stacked commutator map.

    """
    return null_space_dimension(_commutator_matrix(xi), cutoff)


def commutant_membership(xi0: XiQuaternionic, xi1: XiQuaternionic, tol: float = 1e-10) -> bool:
    """ Whether every component of xi1 lies in the Lie algebra of the stabilizer of xi0.

    Parameters
    ----------
    xi0 : XiQuaternionic
        The base point.
    xi1 : XiQuaternionic
        A point with [xi0_alpha, xi1_beta] = 0 for all alpha, beta.
    tol : float
        Tolerance of the precondition and of the projection residual, relative to the norms involved.

    Returns
    -------
    bool
        True if the projection residual onto the stabilizer algebra is below tolerance.

    Raises
    ------
    PreconditionError
        If a cross commutator does not vanish; the largest norm is attached.

    """
    if xi0.k != xi1.k:
        raise DimensionError(f'xi0 and xi1 have sizes {xi0.k} and {xi1.k}.')

    scale = max(1.0, xi0.norm() * xi1.norm())
    worst = max(np.linalg.norm(commutator(x, y)) for x in xi0.components for y in xi1.components)
    if worst > tol * scale:
        raise PreconditionError(f'xi0 and xi1 do not commute: max ||[xi0_a, xi1_b]|| = {worst:.3e}.',
                                measured=worst)

    basis = u_basis(xi0.k)
    matrix = _commutator_matrix(xi0)
    if np.linalg.norm(matrix) == 0.0:
        return True
    stabilizer = scipy.linalg.null_space(matrix, rcond=1e-8)

    for component in xi1.components:
        coefficients = np.array([inner_u(e, component) for e in basis])
        residual = coefficients - stabilizer @ (stabilizer.T @ coefficients)
        if np.linalg.norm(residual) > tol * max(1.0, np.linalg.norm(coefficients)):
            return False
    return True


def block_scalar_xi(partition: Partition, values: np.ndarray = None, U: np.ndarray = None,
                    seed=None) -> XiQuaternionic:
    """ A point of the stratum of partition: the n-th quaternion repeated partition.parts[n] times on the diagonal.

    Parameters
    ----------
    partition : Partition
        Block sizes.
    values : numpy.ndarray
        length x 4 array of quaternions, one per block. Drawn at random from seed when omitted.
    U : numpy.ndarray
        Optional unitary conjugating the diagonal point.
    seed : int
        Seed used when values is omitted.

    """
    if values is None:
        values = make_rng(seed).standard_normal((partition.length, 4))
    values = np.asarray(values, dtype=float)
    if values.shape != (partition.length, 4):
        raise DimensionError(f'Expected {partition.length} quaternions, got an array of shape {values.shape}.')

    xi = XiQuaternionic.diagonal(np.repeat(values, partition.parts, axis=0))
    return xi.adjoint(U) if U is not None else xi


def _is_scalar(blocks: Sequence[np.ndarray], tol: float) -> bool:
    m = blocks[0].shape[0]
    return all(np.linalg.norm(P - np.trace(P) / m * np.eye(m)) <= tol for P in blocks)


def _cascade_direction(depth: int, rng: np.random.Generator) -> np.ndarray:
    # depth 0 random, depths 1..4 the single components, beyond that random again
    if 1 <= depth <= 4:
        direction = np.zeros(4)
        direction[depth - 1] = 1.0
        return direction
    return rng.standard_normal(4)


def _split(hermitian: Sequence[np.ndarray], Q: np.ndarray, depth: int, tol: float, max_depth: int,
           rng: np.random.Generator) -> List[np.ndarray]:
    projected = [Q.conj().T @ H @ Q for H in hermitian]
    if Q.shape[1] == 1 or _is_scalar(projected, tol):
        return [Q]
    if depth >= max_depth:
        raise SpectrumSeparationError(f'Could not separate an eigenspace of dimension {Q.shape[1]} '
                                      f'after {max_depth} levels of recursion.')

    direction = _cascade_direction(depth, rng)
    eigenvalues, eigenvectors = scipy.linalg.eigh(sum(c * P for c, P in zip(direction, projected)))
    logger.debug('Splitting a %d-dimensional eigenspace at depth %d.', Q.shape[1], depth)

    blocks, start = [], 0
    for index in range(1, len(eigenvalues) + 1):
        if index == len(eigenvalues) or eigenvalues[index] - eigenvalues[index - 1] > tol:
            group = Q @ eigenvectors[:, start:index]
            if group.shape[1] == 1:
                blocks.append(group)
            else:
                blocks.extend(_split(hermitian, group, depth + 1, tol, max_depth, rng))
            start = index
    return blocks


def cluster_partition(values: np.ndarray, tol: float) -> Partition:
    """ Single-linkage clustering of quaternions with radius tol; multiplicities form the partition. """
    if len(values) == 1:
        return Partition((1,))
    labels = fcluster(linkage(values, method='single'), t=tol, criterion='distance')
    return Partition.from_multiplicities(Counter(labels).values())


def joint_spectrum(xi: XiQuaternionic, tol: float = 1e-8, seed=0, max_depth: int = 8,
                   mu_tol: float = None) -> SpectrumPoint:
    """ Simultaneously diagonalize the commuting components of xi and read off its k quaternionic eigenvalues.

    Parameters
    ----------
    xi : XiQuaternionic
        A point with mu(xi) = 0.
    tol : float
        Degeneracy threshold of the recursion and single-linkage radius of the clustering, both relative to
        max(1, ||xi||).
    seed : int
        Seed of the random linear combinations.
    max_depth : int
        Maximal depth of the recursion on degenerate eigenspaces.
    mu_tol : float
        Admissible ||mu(xi)||, relative to max(1, ||xi||^2); defaults to tol.

    Returns
    -------
    SpectrumPoint
        The values, with the partition of their multiplicities.

    Raises
    ------
    PreconditionError
        If ||mu(xi)|| exceeds the tolerance.
    SpectrumSeparationError
        If the recursion is exhausted before the components become scalar on every block.

    """
    mu_tol = tol if mu_tol is None else mu_tol
    measured = mu_xi(xi).norm()
    if measured > mu_tol * max(1.0, xi.norm() ** 2):
        raise PreconditionError(f'Components do not commute: ||mu(xi)|| = {measured:.3e}.', measured=measured)

    rng = make_rng(seed)
    radius = tol * max(1.0, xi.norm())
    hermitian = [-1j * x for x in xi.components]
    blocks = _split(hermitian, np.eye(xi.k, dtype=complex), 0, radius, max_depth, rng)

    values = []
    for Q in blocks:
        m = Q.shape[1]
        point = [float(np.real(np.trace(Q.conj().T @ H @ Q))) / m for H in hermitian]
        values.extend([point] * m)
    values = np.array(values)

    return SpectrumPoint(values=values, partition=cluster_partition(values, radius), cluster_tolerance=radius)


def spectrum_distance(first: np.ndarray, second: np.ndarray) -> float:
    """ Largest distance between matched points under the optimal matching of two multisets of quaternions. """
    first, second = np.atleast_2d(first), np.atleast_2d(second)
    if first.shape != second.shape:
        raise DimensionError(f'Cannot match multisets of shapes {first.shape} and {second.shape}.')
    cost = np.linalg.norm(first[:, None, :] - second[None, :, :], axis=2)
    rows, cols = linear_sum_assignment(cost)
    return float(cost[rows, cols].max())


def _common_eigenvector(A: np.ndarray, B: np.ndarray, null_tol: float) -> np.ndarray:
    eigenvalue = scipy.linalg.eigvals(A)[0]
    _, sigma, Vh = scipy.linalg.svd(A - eigenvalue * np.eye(A.shape[0]))
    dimension = max(1, int(np.sum(sigma <= null_tol * max(1.0, np.linalg.norm(A)))))
    N = Vh[-dimension:].conj().T
    _, y = scipy.linalg.eig(N.conj().T @ B @ N)
    u = N @ y[:, 0]
    return u / np.linalg.norm(u)


def simultaneous_triangularize(A: np.ndarray, B: np.ndarray, tol: float = 1e-10,
                               triangular_tol: float = 1e-9) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """ A unitary U with U^dagger A U and U^dagger B U upper triangular.

    Deflation: a common eigenvector u of the commuting pair is completed to a unitary basis, and the compressions
    of A and B to the orthogonal complement of u, which still commute, are treated the same way.

    Parameters
    ----------
    A, B : numpy.ndarray
        Commuting square matrices.
    tol : float
        Tolerance of the commutation check.
    triangular_tol : float
        Admissible strict lower part, relative to ||A|| + ||B||.

    Returns
    -------
    Tuple[numpy.ndarray, numpy.ndarray, numpy.ndarray]
        U, TA, TB.

    Raises
    ------
    PreconditionError
        If A and B do not commute; ||[A, B]|| is attached.
    DecompositionError
        If the triangular forms miss the requested accuracy.

    """
    A = np.asarray(A, dtype=complex)
    B = np.asarray(B, dtype=complex)
    if A.shape != B.shape or A.shape[0] != A.shape[1]:
        raise DimensionError(f'Expected square matrices of equal size, got {A.shape} and {B.shape}.')
    if not commute(A, B, tol):
        defect = float(np.linalg.norm(commutator(A, B)))
        raise PreconditionError(f'A and B do not commute: ||[A, B]|| = {defect:.3e}.', measured=defect)

    k = A.shape[0]
    U = np.eye(k, dtype=complex)
    for step in range(k - 1):
        current_A = U[:, step:].conj().T @ A @ U[:, step:]
        current_B = U[:, step:].conj().T @ B @ U[:, step:]
        u = _common_eigenvector(current_A, current_B, 1e-6)
        V, _ = scipy.linalg.qr(np.column_stack([u, np.eye(k - step)]))
        U[:, step:] = U[:, step:] @ V[:, :k - step]

    TA = U.conj().T @ A @ U
    TB = U.conj().T @ B @ U
    lower = np.linalg.norm(np.tril(TA, -1)) + np.linalg.norm(np.tril(TB, -1))
    if lower > triangular_tol * max(1.0, np.linalg.norm(A) + np.linalg.norm(B)):
        raise DecompositionError(f'Simultaneous triangularization failed: strict lower part {lower:.3e}.')
    return U, TA, TB


def check_simdiag(A: np.ndarray, B: np.ndarray, tol: float = 1e-10) -> bool:
    """ For commuting A, B with [A, A^dagger] + [B, B^dagger] <= 0, check that both are normal and that they are
    simultaneously diagonalized by the triangularizing unitary.

    Raises
    ------
    PreconditionError
        If A and B do not commute, or [A, A^dagger] + [B, B^dagger] has a positive eigenvalue.

    """
    A = np.asarray(A, dtype=complex)
    B = np.asarray(B, dtype=complex)
    scale = max(1.0, np.linalg.norm(A) ** 2 + np.linalg.norm(B) ** 2)

    if not commute(A, B, tol):
        defect = float(np.linalg.norm(commutator(A, B)))
        raise PreconditionError(f'A and B do not commute: ||[A, B]|| = {defect:.3e}.', measured=defect)

    self_A = commutator(A, A.conj().T)
    self_B = commutator(B, B.conj().T)
    largest = float(scipy.linalg.eigvalsh((self_A + self_B + (self_A + self_B).conj().T) / 2)[-1])
    if largest > tol * scale:
        raise PreconditionError(f'[A, A*] + [B, B*] is not negative semidefinite: '
                                f'largest eigenvalue {largest:.3e}.', measured=largest)

    normal = np.linalg.norm(self_A) <= tol * scale and np.linalg.norm(self_B) <= tol * scale
    _, TA, TB = simultaneous_triangularize(A, B, tol)
    diagonal = all(np.linalg.norm(np.triu(T, 1)) <= np.sqrt(tol) * np.sqrt(scale) for T in (TA, TB))
    return bool(normal and diagonal)


def krylov_invariant_subspace(A: np.ndarray, B: np.ndarray, w: np.ndarray, rank_tol: float = 1e-10) -> np.ndarray:
    """ Orthonormal basis of the smallest subspace containing w and preserved by A and B.

    Parameters
    ----------
    A, B : numpy.ndarray
        k x k matrices.
    w : numpy.ndarray
        Vector of length k.
    rank_tol : float
        New directions with residual below rank_tol * max(1, ||A||, ||B||) are discarded.

    Returns
    -------
    numpy.ndarray
        k x m matrix with orthonormal columns; m = 0 when w = 0.

    """
    w = np.asarray(w, dtype=complex).ravel()
    k = w.shape[0]
    if A.shape != (k, k) or B.shape != (k, k):
        raise DimensionError(f'Expected {k}x{k} matrices, got {A.shape} and {B.shape}.')

    threshold = rank_tol * max(1.0, np.linalg.norm(A, 2), np.linalg.norm(B, 2))
    basis = []

    def _add(vector: np.ndarray) -> bool:
        for _ in range(2):
            for q in basis:
                vector = vector - np.vdot(q, vector) * q
        norm = np.linalg.norm(vector)
        if norm <= threshold or len(basis) == k:
            return False
        basis.append(vector / norm)
        return True

    if np.linalg.norm(w) <= threshold:
        return np.zeros((k, 0), dtype=complex)

    _add(w)
    cursor = 0
    while cursor < len(basis):
        q = basis[cursor]
        _add(A @ q)
        _add(B @ q)
        cursor += 1

    return np.column_stack(basis)


def check_v_perp_V1(A: np.ndarray, B: np.ndarray, v: np.ndarray, w: np.ndarray,
                    tol: float = 1e-9) -> Tuple[float, bool]:
    """ Under w v^dagger = [A, B], check that v is orthogonal to the A, B-invariant subspace generated by w.

    Returns
    -------
    Tuple[float, bool]
        The largest |<v, q>| over the orthonormal basis q of that subspace, and whether it is below tolerance.

    Raises
    ------
    PreconditionError
        If ||w v^dagger - [A, B]|| exceeds the tolerance.

    """
    v = np.asarray(v, dtype=complex).ravel()
    w = np.asarray(w, dtype=complex).ravel()
    scale = max(1.0, np.linalg.norm(A) * np.linalg.norm(B) + np.linalg.norm(v) * np.linalg.norm(w))
    defect = float(np.linalg.norm(np.outer(w, v.conj()) - commutator(A, B)))
    if defect > tol * scale:
        raise PreconditionError(f'w v* differs from [A, B]: ||w v* - [A, B]|| = {defect:.3e}.', measured=defect)

    basis = krylov_invariant_subspace(A, B, w)
    if basis.shape[1] == 0:
        return 0.0, True

    largest = float(np.max(np.abs(basis.conj().T @ v)))
    return largest, largest <= tol * max(1.0, np.linalg.norm(v))


def krylov_generator(k: int, seed) -> Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """ An instance (A, B, v, w) of w v^dagger = [A, B] with w != 0.

    A is diagonal with distinct real entries, v and w have disjoint supports, B_mn = w_m conj(v_n) / (a_m - a_n)
    off the diagonal and the diagonal of B is random.
    """
    if k < 2:
        raise ValueError(f'k must be at least 2, got {k}.')

    rng = make_rng(seed)
    a = np.sort(rng.uniform(-1.0, 1.0, k)) + np.arange(k)
    split = int(rng.integers(1, k))
    order = rng.permutation(k)
    support_w, support_v = order[:split], order[split:]

    v = np.zeros(k, dtype=complex)
    w = np.zeros(k, dtype=complex)
    v[support_v] = rng.standard_normal(len(support_v)) + 1j * rng.standard_normal(len(support_v))
    w[support_w] = rng.standard_normal(len(support_w)) + 1j * rng.standard_normal(len(support_w))

    difference = a[:, None] - a[None, :]
    np.fill_diagonal(difference, 1.0)
    B = np.outer(w, v.conj()) / difference
    np.fill_diagonal(B, rng.standard_normal(k) + 1j * rng.standard_normal(k))
    return np.diag(a).astype(complex), B, v, w


def random_unitary(k: int, seed) -> np.ndarray:
    return random_sample('unitary', k, seed)
