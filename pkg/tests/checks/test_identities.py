import unittest

from adhmkit.checks.identities import IDENTITY_CHECKS, ChartConsistencyCheck, CliffordRelationsCheck, \
    DifferentialCheck, EquivarianceCheck, LinearizedIdentityCheck, NormIdentityCheck
from adhmkit.settings import DEFAULT_CONFIG


class IdentityChecksTestSuite(unittest.TestCase):

    def _run(self, cls, k=3, samples=20, seed=0, r=1):
        check = cls(k=k, samples=samples, seed=seed, r=r)
        check.sweep()
        return check.max_error()

    def test_every_check_has_a_threshold(self):
        for cls in IDENTITY_CHECKS:
            assert DEFAULT_CONFIG.threshold(cls.name) >= 0

    def test_norm_identity(self):
        assert self._run(NormIdentityCheck) <= DEFAULT_CONFIG.threshold('norm_identity')

    def test_linearized_identity(self):
        assert self._run(LinearizedIdentityCheck) <= DEFAULT_CONFIG.threshold('linearized_identity')

    def test_equivariance(self):
        assert self._run(EquivarianceCheck, r=2) <= DEFAULT_CONFIG.threshold('equivariance')

    def test_chart_consistency(self):
        check = ChartConsistencyCheck(k=2, samples=40, seed=3)
        dataset = check.sweep()

        assert dataset['zero_locus_agrees'].all()
        assert check.max_error() <= DEFAULT_CONFIG.threshold('chart_consistency')

    def test_differential(self):
        assert self._run(DifferentialCheck, r=2) <= DEFAULT_CONFIG.threshold('differential')

    def test_clifford_relations(self):
        assert self._run(CliffordRelationsCheck) <= DEFAULT_CONFIG.threshold('clifford_relations')

    def test_k1(self):
        for cls in IDENTITY_CHECKS:
            assert self._run(cls, k=1, samples=5) <= DEFAULT_CONFIG.threshold(cls.name)


if __name__ == '__main__':
    unittest.main()
