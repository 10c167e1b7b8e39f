import unittest

import numpy as np

from adhmkit import filters


class TestFiltersTestSuite(unittest.TestCase):

    def test_is_hermitian_true(self):
        assert filters.is_hermitian(np.array([[1, 1j], [-1j, 2]]))
        assert filters.is_hermitian(np.eye(3))

    def test_is_hermitian_false(self):
        assert not filters.is_hermitian(np.array([[1, 1j], [1j, 2]]))
        assert not filters.is_hermitian(np.ones((2, 3)))

    def test_is_anti_hermitian(self):
        assert filters.is_anti_hermitian(np.array([[1j, 1], [-1, 0]]))
        assert not filters.is_anti_hermitian(np.eye(2))

    def test_is_unitary(self):
        assert filters.is_unitary(np.array([[0, 1], [1, 0]]))
        assert filters.is_unitary(np.diag([1j, -1]))
        assert not filters.is_unitary(2 * np.eye(2))

    def test_commute(self):
        A = np.diag([1.0, 2.0])
        assert filters.commute(A, A @ A)
        assert not filters.commute(A, np.array([[0, 1], [0, 0]]))

    def test_is_upper_triangular(self):
        assert filters.is_upper_triangular(np.triu(np.ones((3, 3))))
        assert not filters.is_upper_triangular(np.ones((3, 3)))


if __name__ == '__main__':
    unittest.main()
