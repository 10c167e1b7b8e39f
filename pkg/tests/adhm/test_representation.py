import unittest

import numpy as np

from adhmkit.adhm.representation import ADHMConfig, XiQuaternionic, complex_to_xi, gauge_act, \
    infinitesimal_action, xi_to_complex
from adhmkit.errors import DimensionError, PreconditionError
from adhmkit.linalg import random_sample


class RepresentationTestSuite(unittest.TestCase):

    def test_shapes(self):
        c = ADHMConfig.random(2, 3, 0)

        assert (c.r, c.k) == (2, 3)
        assert c.real_dimension == 4 * 3 * 2 + 4 * 9
        self.assertAlmostEqual(c.norm(), 1.0)

    def test_shape_mismatch(self):
        with self.assertRaises(DimensionError):
            ADHMConfig(np.zeros((2, 1)), np.zeros((2, 2)), np.zeros((2, 2)), np.zeros((2, 2)))
        with self.assertRaises(DimensionError):
            ADHMConfig(np.zeros((2, 1)), np.zeros((2, 1)), np.zeros((3, 3)), np.zeros((2, 2)))

    def test_vector_flattening(self):
        c = ADHMConfig.random(1, 2, 4, normalize=False)
        vector = c.to_vector()

        assert vector.shape == (c.real_dimension,)
        self.assertAlmostEqual(np.linalg.norm(vector), c.norm())
        assert ADHMConfig.from_vector(vector, 1, 2).allclose(c)

    def test_from_vector_wrong_length(self):
        with self.assertRaises(DimensionError):
            ADHMConfig.from_vector(np.zeros(5), 1, 2)

    def test_xi_rejects_hermitian_component(self):
        with self.assertRaises(PreconditionError):
            XiQuaternionic(np.eye(2), np.zeros((2, 2)), np.zeros((2, 2)), np.zeros((2, 2)))

    def test_complex_identification_is_isometric(self):
        rng = np.random.default_rng(3)
        xi = XiQuaternionic(*(random_sample('anti_hermitian', 3, rng) for _ in range(4)))
        A, B = xi_to_complex(xi)
        back = complex_to_xi(A, B)

        self.assertAlmostEqual(np.sqrt(np.linalg.norm(A) ** 2 + np.linalg.norm(B) ** 2), xi.norm())
        for x, y in zip(back.components, xi.components):
            assert np.allclose(x, y)

    def test_diagonal_xi_gives_diagonal_pair(self):
        xi = XiQuaternionic.diagonal([[1, 2, 3, 4], [-1, 0, 5, 2]])
        A, B = xi_to_complex(xi)

        assert np.allclose(A, np.diag(np.diag(A)))
        assert np.allclose(B, np.diag(np.diag(B)))

    def test_identification_intertwines_gauge_action(self):
        rng = np.random.default_rng(8)
        xi = XiQuaternionic(*(random_sample('anti_hermitian', 3, rng) for _ in range(4)))
        g = random_sample('unitary', 3, rng)
        A, B = xi_to_complex(xi)
        gA, gB = xi_to_complex(xi.adjoint(g))

        assert np.allclose(gA, g @ A @ g.conj().T)
        assert np.allclose(gB, g @ B @ g.conj().T)

    def test_gauge_act_preserves_norm(self):
        c = ADHMConfig.random(2, 3, 1)
        g = random_sample('unitary', 3, 2)
        self.assertAlmostEqual(gauge_act(g, c).norm(), c.norm())

    def test_gauge_act_rejects_non_unitary(self):
        c = ADHMConfig.random(1, 2, 1)
        with self.assertRaises(PreconditionError):
            gauge_act(2 * np.eye(2), c)
        with self.assertRaises(DimensionError):
            gauge_act(np.eye(3), c)

    def test_infinitesimal_action_is_derivative(self):
        c = ADHMConfig.random(1, 3, 5)
        eta = random_sample('anti_hermitian', 3, 6)
        t = 1e-6
        g = np.linalg.matrix_power(np.eye(3) + t * eta / 64, 64)
        numeric = (gauge_act(g, c, tol=1e-6) - c).scaled(1 / t)
        assert numeric.allclose(infinitesimal_action(eta, c), atol=1e-5)


if __name__ == '__main__':
    unittest.main()
