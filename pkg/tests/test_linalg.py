import unittest

import numpy as np

from adhmkit.errors import DimensionError, PreconditionError
from adhmkit.filters import is_anti_hermitian, is_unitary
from adhmkit.linalg import I, J, K, ImQuaternion, QuaternionicVector, clifford_apply, commutator, eigen_hermitian, \
    inner_u, left_quaternion_multiply, null_space_dimension, random_sample


class LinalgTestSuite(unittest.TestCase):

    def test_clifford_i_on_first_basis_vector(self):
        s = QuaternionicVector(a=np.array([1, 0], dtype=complex), b=np.zeros(2, dtype=complex))
        out = clifford_apply(I, s)

        assert np.allclose(out.a, [1j, 0])
        assert np.allclose(out.b, [0, 0])

    def test_clifford_j_swaps_components(self):
        s = QuaternionicVector(a=np.array([1, 0], dtype=complex), b=np.zeros(2, dtype=complex))
        out = clifford_apply(J, s)

        assert np.allclose(out.a, [0, 0])
        assert np.allclose(out.b, [1, 0])

    def test_clifford_squares_to_minus_one(self):
        s = QuaternionicVector.random(3, 7)
        for unit in (I, J, K):
            twice = clifford_apply(unit, clifford_apply(unit, s))
            assert np.allclose(twice.a, -s.a)
            assert np.allclose(twice.b, -s.b)

    def test_clifford_ij_is_k(self):
        s = QuaternionicVector.random(4, 11)
        ij = clifford_apply(I, clifford_apply(J, s))
        k = clifford_apply(K, s)

        assert np.allclose(ij.a, k.a)
        assert np.allclose(ij.b, k.b)

    def test_clifford_is_isometric_for_unit_quaternions(self):
        s = QuaternionicVector.random(3, 2)
        v = ImQuaternion(0.6, 0.0, 0.8)
        self.assertAlmostEqual(clifford_apply(v, s).norm(), s.norm(), places=12)

    def test_left_quaternion_multiply_i_squared(self):
        rng = np.random.default_rng(0)
        xi = tuple(random_sample('anti_hermitian', 2, rng) for _ in range(4))
        twice = left_quaternion_multiply(I, left_quaternion_multiply(I, xi))

        for x, y in zip(twice, xi):
            assert np.allclose(x, -y)

    def test_quaternionic_vector_shape_mismatch(self):
        with self.assertRaises(DimensionError):
            QuaternionicVector(a=np.zeros(2), b=np.zeros(3))

    def test_commutator_of_diagonals_vanishes(self):
        X = np.diag([1j, 2j])
        Y = np.diag([3j, -1j])
        assert np.allclose(commutator(X, Y), 0)

    def test_commutator_dimension_mismatch(self):
        with self.assertRaises(DimensionError):
            commutator(np.eye(2), np.eye(3))

    def test_inner_u(self):
        X = np.diag([1j, 0])
        self.assertAlmostEqual(inner_u(X, X), 1.0)
        self.assertAlmostEqual(inner_u(X, np.diag([0, 1j])), 0.0)

    def test_random_sample_reproducible(self):
        assert np.allclose(random_sample('unitary', 3, 5), random_sample('unitary', 3, 5))
        assert not np.allclose(random_sample('unitary', 3, 5), random_sample('unitary', 3, 6))

    def test_random_sample_kinds(self):
        assert is_unitary(random_sample('unitary', 4, 1))
        assert is_unitary(random_sample('unitary', 1, 1))
        assert is_anti_hermitian(random_sample('anti_hermitian', 4, 1))
        assert random_sample('gaussian_vector', 5, 1).shape == (5,)

    def test_random_sample_invalid(self):
        with self.assertRaises(ValueError):
            random_sample('orthogonal', 3, 0)
        with self.assertRaises(ValueError):
            random_sample('unitary', 0, 0)

    def test_eigen_hermitian_diagonal(self):
        values, vectors = eigen_hermitian(np.diag([3.0, 1.0, 2.0]))

        assert np.allclose(values, [1, 2, 3])
        assert is_unitary(vectors)

    def test_eigen_hermitian_reconstructs(self):
        X = random_sample('anti_hermitian', 5, 3)
        values, vectors = eigen_hermitian(1j * X)
        assert np.allclose(vectors @ np.diag(values) @ vectors.conj().T, 1j * X)

    def test_eigen_hermitian_rejects_non_hermitian(self):
        with self.assertRaises(PreconditionError) as context:
            eigen_hermitian(np.array([[0, 1], [0, 0]], dtype=complex))
        assert context.exception.measured > 0

    def test_null_space_dimension(self):
        assert null_space_dimension(np.zeros((3, 4))) == 4
        assert null_space_dimension(np.eye(3)) == 0
        assert null_space_dimension(np.array([[1.0, 1.0], [1.0, 1.0]])) == 1


if __name__ == '__main__':
    unittest.main()
