"""
Finite chain complexes over F2: homology, chain maps, mapping cones, the exact triangle of a cone, and the
assembly of several complexes along strictly triangular maps.

The differential in degree d is a dims[d-1] x dims[d] matrix over GF(2). All arithmetic is exact.
"""
import logging
from collections import deque
from dataclasses import dataclass, field
from graphlib import CycleError, TopologicalSorter
from typing import Dict, List, Sequence, Tuple

import galois
import numpy as np

from adhmkit.errors import DimensionError, PreconditionError
from adhmkit.utils import make_rng

logger = logging.getLogger(__name__)

GF2 = galois.GF(2)


def as_gf2(matrix, shape: Tuple[int, int] = None):
    """ Convert a 0/1 matrix (nested lists, numpy or GF(2) array) to a GF(2) array of the given shape. """
    array = np.asarray(matrix, dtype=np.int64) % 2
    if shape is not None:
        array = array.reshape(shape)
    return GF2(array)


def _zeros(rows: int, cols: int):
    return GF2(np.zeros((rows, cols), dtype=np.int64))


def _identity(n: int):
    return GF2(np.eye(n, dtype=np.int64))


def _matmul(A, B):
    if A.shape[1] != B.shape[0]:
        raise DimensionError(f'Cannot multiply matrices of shapes {A.shape} and {B.shape}.')
    if 0 in A.shape or 0 in B.shape:
        return _zeros(A.shape[0], B.shape[1])
    return A @ B


def _blocks(rows: Sequence[Sequence], row_sizes: Sequence[int], col_sizes: Sequence[int]):
    """ Assemble a block matrix; None entries are zero blocks. """
    full = np.zeros((sum(row_sizes), sum(col_sizes)), dtype=np.int64)
    r0 = 0
    for row, height in zip(rows, row_sizes):
        c0 = 0
        for block, width in zip(row, col_sizes):
            if block is not None and height and width:
                full[r0:r0 + height, c0:c0 + width] = np.asarray(block, dtype=np.int64)
            c0 += width
        r0 += height
    return GF2(full)


def rank(M) -> int:
    if M.size == 0 or not np.any(np.asarray(M)):
        return 0
    return int(np.linalg.matrix_rank(M))


def _kernel_columns(M, n: int):
    """ Basis of {x : M x = 0} as the columns of an n x dim matrix. """
    if n == 0:
        return _zeros(0, 0)
    if M.shape[0] == 0 or not np.any(np.asarray(M)):
        return _identity(n)
    return GF2(np.asarray(M.null_space(), dtype=np.int64).reshape(-1, n).T)


def _image_columns(M):
    if M.size == 0 or not np.any(np.asarray(M)):
        return _zeros(M.shape[0], 0)
    return GF2(np.asarray(M.column_space(), dtype=np.int64).reshape(-1, M.shape[0]).T)


def _hstack(rows: int, *matrices):
    parts = [np.asarray(m, dtype=np.int64).reshape(rows, -1) for m in matrices]
    return GF2(np.concatenate(parts, axis=1) if parts else np.zeros((rows, 0), dtype=np.int64))


def _solve(M, y):
    """ The unique x with M x = y, for M of full column rank and y in its column space. """
    m = M.shape[1]
    if m == 0:
        return _zeros(0, 1)
    reduced = _hstack(M.shape[0], M, y).row_reduce()
    return GF2(np.asarray(reduced[:m, m:], dtype=np.int64))


@dataclass(frozen=True, eq=False)
class F2Complex:
    """ A bounded chain complex of finite dimensional F2 vector spaces.

    Attributes
    ----------
    dims : Dict[int, int]
        Dimension of each degree; absent degrees are zero.
    differential : Dict[int, galois.FieldArray]
        differential[d] maps degree d to degree d - 1 and has shape (dims[d-1], dims[d]).

    """

    dims: Dict[int, int]
    differential: Dict[int, object] = field(default_factory=dict)

    def __post_init__(self):
        dims = {int(d): int(n) for d, n in self.dims.items() if int(n) > 0}
        if any(n < 0 for n in self.dims.values()):
            raise ValueError(f'Dimensions must be non-negative, got {self.dims}.')

        differential = {}
        for d, matrix in self.differential.items():
            d = int(d)
            shape = (dims.get(d - 1, 0), dims.get(d, 0))
            array = np.asarray(matrix, dtype=np.int64)
            if array.size == 0 and shape[0] * shape[1] == 0:
                continue
            if array.shape != shape:
                raise DimensionError(f'Differential in degree {d} has shape {array.shape}, expected {shape}.')
            if np.any(array % 2):
                differential[d] = as_gf2(array)

        object.__setattr__(self, 'dims', dims)
        object.__setattr__(self, 'differential', differential)

        for d in self.degrees():
            if np.any(np.asarray(_matmul(self.d(d - 1), self.d(d)))):
                raise PreconditionError(f'The differential does not square to zero in degree {d}.')

    def dim(self, d: int) -> int:
        return self.dims.get(d, 0)

    def d(self, degree: int):
        """ The differential out of degree, a dim(degree - 1) x dim(degree) matrix. """
        if degree in self.differential:
            return self.differential[degree]
        return _zeros(self.dim(degree - 1), self.dim(degree))

    def degrees(self) -> List[int]:
        if not self.dims:
            return []
        return list(range(min(self.dims), max(self.dims) + 1))

    def total_dimension(self) -> int:
        return sum(self.dims.values())

    def euler_characteristic(self) -> int:
        return sum((-1) ** (d % 2) * n for d, n in self.dims.items())

    def cycles(self, d: int):
        return _kernel_columns(self.d(d), self.dim(d))

    def boundaries(self, d: int):
        return _image_columns(self.d(d + 1))


def homology_dims(C: F2Complex) -> Dict[int, int]:
    """ dim H_d = dim C_d - rank d_d - rank d_{d+1} in every degree of C. """
    return {d: C.dim(d) - rank(C.d(d)) - rank(C.d(d + 1)) for d in C.degrees()}


class _HomologyBasis:
    """ Cycle representatives of a basis of H_d, completed by a basis of the boundaries. """

    def __init__(self, C: F2Complex, d: int):
        n = C.dim(d)
        boundaries = C.boundaries(d)
        current = boundaries
        representatives = []
        cycles = C.cycles(d)
        for index in range(cycles.shape[1]):
            candidate = _hstack(n, current, cycles[:, index])
            if rank(candidate) > rank(current):
                representatives.append(cycles[:, index])
                current = candidate

        self.n = n
        self.representatives = _hstack(n, *representatives) if representatives else _zeros(n, 0)
        self.spanning = _hstack(n, self.representatives, boundaries)

    @property
    def dimension(self) -> int:
        return self.representatives.shape[1]

    def coordinates(self, cycle):
        """ Coordinates of the homology class of cycle in the representative basis. """
        return _solve(self.spanning, cycle)[:self.dimension]


def induced_map_on_homology(source: F2Complex, target: F2Complex, matrix, d: int, e: int):
    """ Matrix of the map H_d(source) -> H_e(target) induced by a chain-level matrix C_d -> D_e. """
    domain = _HomologyBasis(source, d)
    codomain = _HomologyBasis(target, e)
    if domain.dimension == 0 or codomain.dimension == 0:
        return _zeros(codomain.dimension, domain.dimension)

    images = _matmul(matrix, domain.representatives)
    columns = [codomain.coordinates(images[:, [index]]) for index in range(domain.dimension)]
    return _hstack(codomain.dimension, *columns)


@dataclass(frozen=True, eq=False)
class ChainMap:
    """ A degree preserving chain map source -> target.

    Attributes
    ----------
    source, target : F2Complex
        The complexes.
    blocks : Dict[int, galois.FieldArray]
        blocks[d] has shape (target.dim(d), source.dim(d)); absent degrees are zero.

    """

    source: F2Complex
    target: F2Complex
    blocks: Dict[int, object] = field(default_factory=dict)
    check: bool = True

    def __post_init__(self):
        blocks = {}
        for d, matrix in self.blocks.items():
            shape = (self.target.dim(int(d)), self.source.dim(int(d)))
            if np.size(matrix) != shape[0] * shape[1]:
                raise DimensionError(f'Chain map block in degree {d} must have shape {shape}.')
            blocks[int(d)] = as_gf2(matrix, shape)
        object.__setattr__(self, 'blocks', blocks)
        if self.check:
            self.verify()

    def f(self, d: int):
        if d in self.blocks:
            return self.blocks[d]
        return _zeros(self.target.dim(d), self.source.dim(d))

    def degrees(self) -> List[int]:
        return sorted(set(self.source.degrees()) | set(self.target.degrees()))

    def verify(self):
        """ Raise PreconditionError unless f d = d f in every degree. """
        for d in self.degrees() + [max(self.degrees(), default=0) + 1]:
            left = _matmul(self.f(d - 1), self.source.d(d))
            right = _matmul(self.target.d(d), self.f(d))
            if np.any(np.asarray(left) != np.asarray(right)):
                raise PreconditionError(f'Not a chain map: f d != d f in degree {d}.')


def identity_map(C: F2Complex) -> ChainMap:
    return ChainMap(C, C, {d: _identity(C.dim(d)) for d in C.degrees()})


def zero_map(source: F2Complex, target: F2Complex) -> ChainMap:
    return ChainMap(source, target, {})


def compose(g: ChainMap, f: ChainMap) -> ChainMap:
    """ g o f for f: A -> B and g: B -> C. """
    if f.target.dims != g.source.dims:
        raise DimensionError('The target of f is not the source of g.')
    degrees = sorted(set(f.degrees()) | set(g.degrees()))
    return ChainMap(f.source, g.target, {d: _matmul(g.f(d), f.f(d)) for d in degrees})


def mapping_cone(f: ChainMap) -> F2Complex:
    """ The cone of f: degree d holds source[d-1] (+) target[d], with differential ((d, 0), (f, d)).

    Raises
    ------
    PreconditionError
        If f is not a chain map.

    """
    f.verify()
    S, T = f.source, f.target
    degrees = sorted({d + 1 for d in S.degrees()} | set(T.degrees()))
    if not degrees:
        return F2Complex({})

    dims = {d: S.dim(d - 1) + T.dim(d) for d in degrees}
    differential = {}
    for d in degrees:
        differential[d] = _blocks([[S.d(d - 1), None], [f.f(d - 1), T.d(d)]],
                                  [S.dim(d - 2), T.dim(d - 1)], [S.dim(d - 1), T.dim(d)])
    return F2Complex(dims, differential)


def cone_inclusion(f: ChainMap, d: int):
    """ target[d] -> cone[d], x -> (0, x). """
    S, T = f.source, f.target
    return _blocks([[None], [_identity(T.dim(d))]], [S.dim(d - 1), T.dim(d)], [T.dim(d)])


def cone_projection(f: ChainMap, d: int):
    """ cone[d] -> source[d-1], (c, x) -> c. """
    S, T = f.source, f.target
    return _blocks([[_identity(S.dim(d - 1)), None]], [S.dim(d - 1)], [S.dim(d - 1), T.dim(d)])


def triangle_report(f: ChainMap) -> List[dict]:
    """ Exactness of H(source) -> H(target) -> H(cone) -> H(source)[-1] at every position.

    Each entry records the degree, the position, the dimension of the homology group there and the ranks of the
    incoming and outgoing maps; the sequence is exact at that position iff the ranks add up to the dimension and
    the composite vanishes.
    """
    S, T = f.source, f.target
    cone = mapping_cone(f)
    degrees = sorted(set(S.degrees()) | set(T.degrees()) | set(cone.degrees()))
    if not degrees:
        return []
    degrees = list(range(degrees[0] - 1, degrees[-1] + 2))

    def f_star(d):
        return induced_map_on_homology(S, T, f.f(d), d, d)

    def i_star(d):
        return induced_map_on_homology(T, cone, cone_inclusion(f, d), d, d)

    def p_star(d):
        return induced_map_on_homology(cone, S, cone_projection(f, d), d, d - 1)

    report = []
    for d in degrees:
        positions = (('target', T, d, f_star(d), i_star(d)),
                     ('cone', cone, d, i_star(d), p_star(d)),
                     ('source', S, d - 1, p_star(d), f_star(d - 1)))
        for name, complex_, degree, incoming, outgoing in positions:
            dimension = _HomologyBasis(complex_, degree).dimension
            composite = _matmul(outgoing, incoming)
            exact = (rank(incoming) + rank(outgoing) == dimension) and not np.any(np.asarray(composite))
            report.append({'degree': d, 'position': name, 'homology_degree': degree, 'dimension': dimension,
                           'rank_in': rank(incoming), 'rank_out': rank(outgoing), 'exact': bool(exact)})
    return report


def exact_triangle_check(f: ChainMap) -> bool:
    """ Whether the long sequence of the cone of f is exact in every degree. """
    return all(entry['exact'] for entry in triangle_report(f))


def shift(C: F2Complex, p: int) -> F2Complex:
    """ C[p], with C[p]_n = C_{n+p}. """
    return F2Complex({d - p: n for d, n in C.dims.items()},
                     {d - p: matrix for d, matrix in C.differential.items()})


def direct_sum(C: F2Complex, D: F2Complex) -> F2Complex:
    degrees = sorted(set(C.degrees()) | set(D.degrees()))
    dims = {d: C.dim(d) + D.dim(d) for d in degrees}
    differential = {d: _blocks([[C.d(d), None], [None, D.d(d)]], [C.dim(d - 1), D.dim(d - 1)],
                               [C.dim(d), D.dim(d)]) for d in degrees}
    return F2Complex(dims, differential)


def _kron(A, B):
    return GF2(np.kron(np.asarray(A, dtype=np.int64), np.asarray(B, dtype=np.int64)) % 2)


def tensor_product(C: F2Complex, D: F2Complex) -> F2Complex:
    """ C (x) D with d(c (x) x) = dc (x) x + c (x) dx; the complex of a disjoint union of the two pieces. """
    if not C.dims or not D.dims:
        return F2Complex({})

    def summands(n):
        return [(p, n - p) for p in C.degrees() if D.dim(n - p) and C.dim(p)]

    degrees = range(min(C.dims) + min(D.dims), max(C.dims) + max(D.dims) + 1)
    dims = {n: sum(C.dim(p) * D.dim(q) for p, q in summands(n)) for n in degrees}
    differential = {}
    for n in degrees:
        rows, cols = summands(n - 1), summands(n)
        grid = []
        for p1, q1 in rows:
            row = []
            for p0, q0 in cols:
                if (p1, q1) == (p0 - 1, q0):
                    row.append(_kron(C.d(p0), _identity(D.dim(q0))))
                elif (p1, q1) == (p0, q0 - 1):
                    row.append(_kron(_identity(C.dim(p0)), D.d(q0)))
                else:
                    row.append(None)
            grid.append(row)
        differential[n] = _blocks(grid, [C.dim(p) * D.dim(q) for p, q in rows],
                                  [C.dim(p) * D.dim(q) for p, q in cols])
    return F2Complex(dims, differential)


def _grading_shifts(count: int, maps: Sequence[Tuple[int, int, ChainMap]]) -> List[int]:
    # every map i -> j needs shift[i] = shift[j] + 1
    neighbours = {n: [] for n in range(count)}
    for i, j, _ in maps:
        neighbours[i].append((j, -1))
        neighbours[j].append((i, +1))

    shifts = [None] * count
    for root in range(count):
        if shifts[root] is not None:
            continue
        component = [root]
        shifts[root] = 0
        queue = deque([root])
        while queue:
            node = queue.popleft()
            for other, step in neighbours[node]:
                if shifts[other] is None:
                    shifts[other] = shifts[node] + step
                    component.append(other)
                    queue.append(other)
                elif shifts[other] != shifts[node] + step:
                    raise PreconditionError(f'The maps cannot be placed in consistent degrees '
                                            f'(conflict at block {other}).')
        lowest = min(shifts[n] for n in component)
        for n in component:
            shifts[n] -= lowest
    return shifts


def assemble_cma(blocks: Sequence[F2Complex], cobordism_maps: Sequence[Tuple[int, int, ChainMap]]) -> F2Complex:
    """ Direct sum of blocks with the differential diag(d) plus the strictly triangular map components.

    A map i -> j moves block i one step down in total degree, so block i sits in degree n - shift[i] with
    shift[i] = shift[j] + 1. With two blocks and one map this is the mapping cone.

    Parameters
    ----------
    blocks : Sequence[F2Complex]
        The diagonal pieces.
    cobordism_maps : Sequence[Tuple[int, int, ChainMap]]
        Triples (i, j, f) with f a chain map blocks[i] -> blocks[j].

    Returns
    -------
    F2Complex
        The assembled complex.

    Raises
    ------
    PreconditionError
        If the maps form a cycle, cannot be graded consistently, do not match the blocks, or if the assembled
        differential does not square to zero (the offending degree is reported).

    """
    sorter = TopologicalSorter({n: set() for n in range(len(blocks))})
    for i, j, f in cobordism_maps:
        if not (0 <= i < len(blocks) and 0 <= j < len(blocks)) or i == j:
            raise PreconditionError(f'Invalid map between blocks {i} and {j}.')
        if f.source.dims != blocks[i].dims or f.target.dims != blocks[j].dims:
            raise PreconditionError(f'The map {i} -> {j} does not match the dimensions of its blocks.')
        f.verify()
        sorter.add(j, i)
    try:
        order = list(sorter.static_order())
    except CycleError as e:
        raise PreconditionError(f'The maps contain a cycle: {e.args[1]}.') from e
    logger.debug('Block order: %s', order)

    shifts = _grading_shifts(len(blocks), cobordism_maps)
    degrees = sorted({d + s for block, s in zip(blocks, shifts) for d in block.degrees()})
    if not degrees:
        return F2Complex({})
    degrees = list(range(degrees[0], degrees[-1] + 1))

    def sizes(n):
        return [block.dim(n - s) for block, s in zip(blocks, shifts)]

    differential = {}
    for n in degrees:
        grid = [[None] * len(blocks) for _ in blocks]
        for b, (block, s) in enumerate(zip(blocks, shifts)):
            grid[b][b] = block.d(n - s)
        for i, j, f in cobordism_maps:
            block = f.f(n - shifts[i])
            grid[j][i] = block if grid[j][i] is None else grid[j][i] + block
        differential[n] = _blocks(grid, sizes(n - 1), sizes(n))

    for n in degrees:
        if np.any(np.asarray(_matmul(differential.get(n - 1, _zeros(sum(sizes(n - 2)), sum(sizes(n - 1)))),
                                     differential[n]))):
            raise PreconditionError(f'The assembled differential does not square to zero in degree {n}.')

    return F2Complex({n: sum(sizes(n)) for n in degrees}, differential)


def random_complex(seed, degrees: Tuple[int, int] = (0, 3), max_dim: int = 3) -> F2Complex:
    """ A random complex in the given degree range; each differential has columns in the previous kernel. """
    rng = make_rng(seed)
    low, high = degrees
    dims = {d: int(rng.integers(0, max_dim + 1)) for d in range(low, high + 1)}
    differential = {}
    for d in range(low + 1, high + 1):
        kernel = _kernel_columns(differential.get(d - 1, _zeros(dims.get(d - 2, 0), dims[d - 1])), dims[d - 1])
        coefficients = rng.integers(0, 2, size=(kernel.shape[1], dims[d]))
        differential[d] = _matmul(kernel, GF2(coefficients)) if kernel.shape[1] else _zeros(dims[d - 1], dims[d])
    return F2Complex(dims, differential)


def random_chain_map(source: F2Complex, target: F2Complex, seed) -> ChainMap:
    """ A uniformly random chain map, drawn from the solution space of the linear equations f d = d f. """
    rng = make_rng(seed)
    degrees = sorted(set(source.degrees()) | set(target.degrees()))
    offsets, total = {}, 0
    for d in degrees:
        offsets[d] = total
        total += target.dim(d) * source.dim(d)
    if total == 0:
        return zero_map(source, target)

    equations = [np.zeros((1, total), dtype=np.int64)]
    for d in degrees:
        if d - 1 not in offsets:
            continue
        rows = target.dim(d - 1) * source.dim(d)
        if rows == 0:
            continue
        # vec(f_{d-1} dS_d) + vec(dT_d f_d) = 0, column-major vec
        equation = np.zeros((rows, total), dtype=np.int64)
        a = offsets[d - 1]
        equation[:, a:a + target.dim(d - 1) * source.dim(d - 1)] = np.kron(
            np.asarray(source.d(d), dtype=np.int64).T, np.eye(target.dim(d - 1), dtype=np.int64))
        b = offsets[d]
        equation[:, b:b + target.dim(d) * source.dim(d)] = np.kron(
            np.eye(source.dim(d), dtype=np.int64), np.asarray(target.d(d), dtype=np.int64))
        equations.append(equation % 2)

    solutions = _kernel_columns(GF2(np.concatenate(equations) % 2), total)
    vector = _matmul(solutions, GF2(rng.integers(0, 2, size=(solutions.shape[1], 1))))
    vector = np.asarray(vector, dtype=np.int64).ravel()

    blocks = {}
    for d in degrees:
        shape = (target.dim(d), source.dim(d))
        if shape[0] * shape[1]:
            blocks[d] = vector[offsets[d]:offsets[d] + shape[0] * shape[1]].reshape(shape, order='F')
    return ChainMap(source, target, blocks)
