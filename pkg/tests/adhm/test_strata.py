import math
import unittest

import numpy as np

from adhmkit.adhm.representation import XiQuaternionic
from adhmkit.adhm.strata import Partition, block_scalar_xi, check_simdiag, check_v_perp_V1, cluster_partition, \
    commutant_membership, enumerate_partitions, joint_spectrum, krylov_generator, krylov_invariant_subspace, \
    partition_stats, random_unitary, simultaneous_triangularize, spectrum_distance, stabilizer_dimension
from adhmkit.errors import PreconditionError
from adhmkit.filters import is_unitary, is_upper_triangular


class PartitionTestSuite(unittest.TestCase):

    def test_enumerate_partitions_small(self):
        assert enumerate_partitions(1) == [Partition((1,))]
        assert enumerate_partitions(3) == [Partition((3,)), Partition((2, 1)), Partition((1, 1, 1))]
        assert len(enumerate_partitions(4)) == 5

    def test_enumerate_partitions_counts(self):
        assert [len(enumerate_partitions(k)) for k in range(1, 11)] == [1, 2, 3, 5, 7, 11, 15, 22, 30, 42]

    def test_enumerate_partitions_no_duplicates(self):
        partitions = enumerate_partitions(8)
        assert len(set(partitions)) == len(partitions)
        assert all(p.k == 8 for p in partitions)

    def test_enumerate_partitions_out_of_range(self):
        with self.assertRaises(ValueError):
            enumerate_partitions(0)
        with self.assertRaises(ValueError):
            enumerate_partitions(21)

    def test_invalid_partition(self):
        with self.assertRaises(ValueError):
            Partition((1, 2))
        with self.assertRaises(ValueError):
            Partition((2, 0))
        with self.assertRaises(ValueError):
            Partition(())

    def test_partition_stats(self):
        stats = partition_stats(Partition((2, 1, 1)))
        assert (stats.length, stats.dim_T, stats.order_G, stats.stratum_dim) == (3, 6, 2, 12)

    def test_partition_stats_extremes(self):
        k = 5
        top = partition_stats(Partition((1,) * k))
        assert (top.length, top.dim_T, top.order_G, top.stratum_dim) == (k, k, math.factorial(k), 4 * k)

        small = partition_stats(Partition((k,)))
        assert (small.length, small.dim_T, small.order_G, small.stratum_dim) == (1, k * k, 1, 4)

    def test_dominance(self):
        assert Partition((3,)).dominates(Partition((2, 1)))
        assert Partition((2, 1)).dominates(Partition((1, 1, 1)))
        assert not Partition((1, 1, 1)).dominates(Partition((2, 1)))

    def test_str(self):
        assert str(Partition((2, 1))) == '(2,1)'


class StabilizerTestSuite(unittest.TestCase):

    def test_stabilizer_of_zero(self):
        assert stabilizer_dimension(XiQuaternionic.zeros(3)) == 9

    def test_stabilizer_of_generic_diagonal(self):
        xi = XiQuaternionic.diagonal(np.random.default_rng(0).standard_normal((4, 4)))
        assert stabilizer_dimension(xi) == 4

    def test_stabilizer_of_block_scalar(self):
        for k in range(1, 9):
            for partition in enumerate_partitions(k):
                xi = block_scalar_xi(partition, seed=k, U=random_unitary(k, k))
                assert stabilizer_dimension(xi) == partition_stats(partition).dim_T

    def test_commutant_membership_diagonal(self):
        rng = np.random.default_rng(1)
        xi0 = XiQuaternionic.diagonal(rng.standard_normal((3, 4)))
        xi1 = XiQuaternionic.diagonal(rng.standard_normal((3, 4)))
        assert commutant_membership(xi0, xi1)

    def test_commutant_membership_off_diagonal_fails(self):
        xi0 = XiQuaternionic.diagonal(np.random.default_rng(2).standard_normal((3, 4)))
        X = np.zeros((3, 3), dtype=complex)
        X[0, 1], X[1, 0] = 1.0, -1.0
        xi1 = XiQuaternionic(X, np.zeros((3, 3)), np.zeros((3, 3)), np.zeros((3, 3)))
        with self.assertRaises(PreconditionError):
            commutant_membership(xi0, xi1)

    def test_commutant_membership_block(self):
        xi0 = block_scalar_xi(Partition((2, 1)), seed=3)
        rng = np.random.default_rng(4)
        components = []
        for _ in range(4):
            G = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
            X = np.zeros((3, 3), dtype=complex)
            X[:2, :2] = (G - G.conj().T) / 2
            X[2, 2] = 1j * rng.standard_normal()
            components.append(X)
        assert commutant_membership(xi0, XiQuaternionic(*components))


class JointSpectrumTestSuite(unittest.TestCase):

    def test_diagonal_spectrum(self):
        values = np.array([[1.0, 0.0, 2.0, 0.0], [0.0, -1.0, 0.0, 3.0]])
        spectrum = joint_spectrum(XiQuaternionic.diagonal(values))

        assert spectrum.partition == Partition((1, 1))
        assert spectrum_distance(spectrum.values, values) < 1e-10

    def test_scalar_spectrum(self):
        value = np.array([[0.5, -1.0, 2.0, 0.25]])
        spectrum = joint_spectrum(XiQuaternionic.diagonal(np.repeat(value, 3, axis=0)))

        assert spectrum.partition == Partition((3,))
        assert spectrum_distance(spectrum.values, np.repeat(value, 3, axis=0)) < 1e-10

    def test_spectrum_is_gauge_invariant(self):
        rng = np.random.default_rng(5)
        for trial in range(100):
            k = int(rng.integers(1, 7))
            values = rng.standard_normal((k, 4))
            xi = XiQuaternionic.diagonal(values).adjoint(random_unitary(k, rng))
            spectrum = joint_spectrum(xi, seed=trial)
            assert spectrum_distance(spectrum.values, values) < 1e-8

    def test_roundtrip_per_partition(self):
        for partition in enumerate_partitions(4):
            values = np.random.default_rng(6).standard_normal((partition.length, 4))
            xi = block_scalar_xi(partition, values=values, U=random_unitary(4, 7))
            spectrum = joint_spectrum(xi)

            assert spectrum.partition == partition
            assert spectrum_distance(spectrum.values, np.repeat(values, partition.parts, axis=0)) < 1e-8

    def test_clustering_refines(self):
        xi = block_scalar_xi(Partition((2, 2, 1)), seed=8, U=random_unitary(5, 9))
        spectrum = joint_spectrum(xi)
        finer = cluster_partition(spectrum.values, spectrum.cluster_tolerance / 10)
        assert spectrum.partition.dominates(finer)

    def test_partition_survives_rescaling(self):
        values = np.random.default_rng(10).standard_normal((2, 4))
        expected = np.repeat(values, (2, 1), axis=0)
        for scale in (1e-3, 1.0, 1e9):
            xi = block_scalar_xi(Partition((2, 1)), values=scale * values, U=random_unitary(3, 11))
            spectrum = joint_spectrum(xi)

            assert spectrum.partition == Partition((2, 1)), scale
            assert spectrum_distance(spectrum.values, scale * expected) < 1e-8 * max(1.0, scale)

    def test_rejects_non_commuting(self):
        rng = np.random.default_rng(10)
        xi = XiQuaternionic.diagonal(rng.standard_normal((3, 4)))
        X = np.zeros((3, 3), dtype=complex)
        X[0, 1], X[1, 0] = 1.0, -1.0
        noisy = XiQuaternionic(xi.xi0 + X, xi.xi1, xi.xi2, xi.xi3)
        with self.assertRaises(PreconditionError):
            joint_spectrum(noisy)


class MatrixAlgorithmsTestSuite(unittest.TestCase):

    def _check_triangular(self, A, B):
        U, TA, TB = simultaneous_triangularize(A, B)
        assert is_unitary(U, 1e-9)
        assert np.allclose(U.conj().T @ A @ U, TA)
        assert np.allclose(U.conj().T @ B @ U, TB)
        scale = np.linalg.norm(A) + np.linalg.norm(B)
        assert np.linalg.norm(np.tril(TA, -1)) + np.linalg.norm(np.tril(TB, -1)) <= 1e-9 * max(1.0, scale)
        return U, TA, TB

    def test_triangularize_diagonal(self):
        self._check_triangular(np.diag([1.0, 2.0, 3.0]), np.diag([4.0, 5.0, 6.0]))

    def test_triangularize_polynomial(self):
        rng = np.random.default_rng(11)
        A = np.triu(rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4)))
        B = A @ A - 2 * A + np.eye(4)
        self._check_triangular(A, B)

    def test_triangularize_shared_basis(self):
        rng = np.random.default_rng(12)
        U0 = random_unitary(4, rng)
        T1 = np.triu(rng.standard_normal((4, 4)))
        T2 = 3 * T1 @ T1 + T1
        _, TA, TB = self._check_triangular(U0 @ T1 @ U0.conj().T, U0 @ T2 @ U0.conj().T)

        assert spectrum_distance(np.diag(TA).reshape(-1, 1), np.diag(T1).reshape(-1, 1)) < 1e-8
        assert is_upper_triangular(TB)

    def test_triangularize_rejects_non_commuting(self):
        with self.assertRaises(PreconditionError):
            simultaneous_triangularize(np.array([[0, 1], [0, 0]]), np.array([[0, 0], [1, 0]]))

    def test_simdiag_diagonal(self):
        assert check_simdiag(np.diag([1.0, 2j]), np.diag([3.0, -1.0]))

    def test_simdiag_normal_polynomial(self):
        U = random_unitary(3, 13)
        A = U @ np.diag([1.0, 1j, -2.0]) @ U.conj().T
        assert check_simdiag(A, A @ A)

    def test_simdiag_rejects_nilpotent(self):
        with self.assertRaises(PreconditionError):
            check_simdiag(np.array([[0, 1], [0, 0]], dtype=complex), np.zeros((2, 2)))

    def test_krylov_zero_vector(self):
        basis = krylov_invariant_subspace(np.eye(3), np.eye(3), np.zeros(3))
        assert basis.shape == (3, 0)

    def test_krylov_trivial_action(self):
        w = np.array([1.0, 1j, 0.0])
        basis = krylov_invariant_subspace(np.zeros((3, 3)), np.zeros((3, 3)), w)

        assert basis.shape == (3, 1)
        self.assertAlmostEqual(abs(np.vdot(basis[:, 0], w)), np.linalg.norm(w))

    def test_krylov_cyclic_shift(self):
        shift = np.roll(np.eye(4), 1, axis=0)
        basis = krylov_invariant_subspace(shift, np.zeros((4, 4)), np.eye(4)[0])

        assert basis.shape == (4, 4)
        assert np.allclose(basis.conj().T @ basis, np.eye(4))

    def test_v_perp_trivial(self):
        largest, ok = check_v_perp_V1(np.zeros((2, 2)), np.zeros((2, 2)), np.array([1.0, 0.0]), np.zeros(2))
        assert ok and largest == 0.0

    def test_v_perp_generator(self):
        for seed in range(20):
            A, B, v, w = krylov_generator(5, seed)
            assert np.allclose(np.outer(w, v.conj()), A @ B - B @ A)
            largest, ok = check_v_perp_V1(A, B, v, w)
            assert ok, largest

    def test_v_perp_rejects_random(self):
        rng = np.random.default_rng(14)
        A, B = rng.standard_normal((3, 3)), rng.standard_normal((3, 3))
        with self.assertRaises(PreconditionError):
            check_v_perp_V1(A, B, rng.standard_normal(3), rng.standard_normal(3))


if __name__ == '__main__':
    unittest.main()
