import unittest

import numpy as np

from adhmkit.floer.slopes import Slope, is_surgery_triad, pairing, slope_pairing


class SlopesTestSuite(unittest.TestCase):

    def test_invalid_slopes(self):
        with self.assertRaises(ValueError):
            Slope(0, 0)
        with self.assertRaises(ValueError):
            Slope(2, 4)

    def test_valid_slopes(self):
        assert str(Slope(1, -1)) == '(1,-1)'
        assert -Slope(2, 3) == Slope(-2, -3)
        Slope(0, 1)
        Slope(-1, 0)

    def test_standard_triad(self):
        m1, m2, m3 = Slope(0, 1), Slope(-1, 0), Slope(1, -1)

        assert slope_pairing(m1, m2) == -1
        assert slope_pairing(m2, m3) == -1
        assert slope_pairing(m3, m1) == -1
        assert is_surgery_triad(m1, m2, m3)

    def test_other_triad(self):
        # (0,1).(1,0) = 1, (1,0).(1,1) = -1, (1,1).(0,1) = -1
        m1, m2, m3 = Slope(0, 1), Slope(1, 0), Slope(1, 1)

        assert slope_pairing(m1, m2) == 1
        assert slope_pairing(m2, m3) == -1
        assert slope_pairing(m3, m1) == -1
        assert not is_surgery_triad(m1, m2, m3)

    def test_repeated_slope_is_not_a_triad(self):
        m = Slope(1, 0)
        assert slope_pairing(m, m) == 0
        assert not is_surgery_triad(m, m, m)

    def test_antisymmetry(self):
        rng = np.random.default_rng(0)
        for _ in range(100):
            p1, q1, p2, q2 = (int(x) for x in rng.integers(-20, 21, size=4))
            assert pairing(p1, q1, p2, q2) == -pairing(p2, q2, p1, q1)

    def test_bilinear_in_scaling(self):
        assert pairing(2, 6, 1, -1) == 2 * pairing(1, 3, 1, -1)
        assert pairing(1, 3, -3, 3) == 3 * pairing(1, 3, -1, 1)


if __name__ == '__main__':
    unittest.main()
