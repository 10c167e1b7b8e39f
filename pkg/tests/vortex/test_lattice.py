import unittest

import numpy as np

from adhmkit.errors import DimensionError
from adhmkit.vortex.lattice import TorusGrid, VortexState, curvature, gauge_transform, scheme_coefficients, \
    vortex_residual, winding_numbers, zero_count


def random_state(grid, seed, lam=1.0):
    rng = np.random.default_rng(seed)
    shape = (grid.N, grid.N)
    return VortexState(grid,
                       rng.standard_normal(shape),
                       rng.standard_normal(shape),
                       rng.standard_normal(shape) + 1j * rng.standard_normal(shape),
                       rng.standard_normal(shape) + 1j * rng.standard_normal(shape),
                       lam=lam, theta=0.3 - 0.2j)


def constant_solution(N=16, lam=1.0):
    grid = TorusGrid(N)
    psi1 = np.full((N, N), np.sqrt(2 * np.pi * lam / grid.area), dtype=complex)
    zeros = np.zeros((N, N))
    return VortexState(grid, zeros, zeros, psi1, zeros, lam=lam)


class TorusGridTestSuite(unittest.TestCase):

    def test_geometry(self):
        grid = TorusGrid(32, degree=1, L1=2.0, L2=0.5)

        self.assertAlmostEqual(grid.h1, 2.0 / 32)
        self.assertAlmostEqual(grid.h2, 0.5 / 32)
        self.assertAlmostEqual(grid.area, 1.0)
        self.assertAlmostEqual(grid.cell_area * 32 ** 2, grid.area)

    def test_invalid(self):
        with self.assertRaises(ValueError):
            TorusGrid(8)
        with self.assertRaises(ValueError):
            TorusGrid(16, L1=0.0)
        with self.assertRaises(ValueError):
            TorusGrid(16, degree=128)

    def test_flux_is_quantized(self):
        for N in (16, 17, 32):
            for d in (-3, -1, 0, 1, 2, 3):
                grid = TorusGrid(N, degree=d)

                assert np.all(grid.plaquette_integers() == d)
                assert grid.total_flux_integer() == d * N ** 2
                self.assertAlmostEqual(grid.total_flux_integer() * grid.angle_unit, 2 * np.pi * d)

    def test_curvature_integrates_to_degree(self):
        grid = TorusGrid(16, degree=2, L1=1.5)
        state = random_state(grid, 0)
        self.assertAlmostEqual(grid.cell_area * curvature(state).sum(), 2 * np.pi * 2, places=9)

    def test_scheme_coefficients(self):
        assert scheme_coefficients('forward', 0.5) == (2.0, 0.0, -2.0)
        assert scheme_coefficients('central', 0.5) == (1.0, -1.0, 0.0)
        with self.assertRaises(ValueError):
            scheme_coefficients('backward', 0.5)


class VortexStateTestSuite(unittest.TestCase):

    def test_shape_mismatch(self):
        grid = TorusGrid(16)
        with self.assertRaises(DimensionError):
            VortexState(grid, np.zeros((16, 16)), np.zeros((16, 16)), np.zeros((15, 16)), np.zeros((16, 16)))

    def test_vacuum_fields_are_independent(self):
        state = VortexState.vacuum(TorusGrid(16))
        state.psi1[0, 0] = 1.0

        assert state.psi2[0, 0] == 0
        assert state.a_x[0, 0] == 0

    def test_copy(self):
        state = random_state(TorusGrid(16), 1)
        other = state.copy()
        other.a_x[0, 0] += 1.0
        assert state.a_x[0, 0] != other.a_x[0, 0]


class VortexResidualTestSuite(unittest.TestCase):

    def test_vacuum(self):
        residual = vortex_residual(VortexState.vacuum(TorusGrid(16)))
        assert residual.total == 0.0

    def test_constant_solution(self):
        for scheme in ('forward', 'central'):
            residual = vortex_residual(constant_solution(), scheme)
            assert residual.total < 1e-12
            assert all(n < 1e-12 for n in residual.norms)

    def test_random_state_is_finite(self):
        residual = vortex_residual(random_state(TorusGrid(16, degree=1), 2))
        assert np.all(np.isfinite(residual.norms))
        assert residual.total > 0

    def test_gauge_invariance(self):
        for d in (0, 1, -2):
            for scheme in ('forward', 'central'):
                grid = TorusGrid(16, degree=d)
                state = random_state(grid, 3 + d)
                chi = np.random.default_rng(4).uniform(-np.pi, np.pi, (16, 16))
                before = vortex_residual(state, scheme).norms
                after = vortex_residual(gauge_transform(state, chi), scheme).norms
                assert np.allclose(before, after, rtol=1e-10, atol=0)


class WindingTestSuite(unittest.TestCase):

    def test_constant_section(self):
        state = constant_solution()

        assert np.all(winding_numbers(state) == 0)
        assert zero_count(state) == 0

    def test_windings_add_up_to_degree(self):
        for d in (-2, 1, 3):
            state = random_state(TorusGrid(16, degree=d), 5)

            assert zero_count(state, 'psi1') == d
            assert zero_count(state, 'psi2') == -d

    def test_windings_are_gauge_invariant(self):
        state = random_state(TorusGrid(16, degree=1), 6)
        chi = np.random.default_rng(7).uniform(-np.pi, np.pi, (16, 16))
        assert np.array_equal(winding_numbers(state), winding_numbers(gauge_transform(state, chi)))

    def test_invalid_field(self):
        with self.assertRaises(ValueError):
            winding_numbers(VortexState.vacuum(TorusGrid(16)), 'a_x')


if __name__ == '__main__':
    unittest.main()
