import numpy as np

from adhmkit.adhm.moment import (CHART_SCALE, adjoint_pairing_defect, check_linearized_identity,
                                 check_mu_norm_identity, mu_complex_norm, mu_differential, mu_quaternionic)
from adhmkit.adhm.representation import ADHMConfig, XiQuaternionic, config_from_xi, gauge_act
from adhmkit.checks.base import BaseIdentityCheck
from adhmkit.linalg import UNITS, QuaternionicVector, clifford_apply, random_sample
from adhmkit.utils import make_rng


def random_xi(k: int, rng) -> XiQuaternionic:
    return XiQuaternionic(*(random_sample('anti_hermitian', k, rng) for _ in range(4)))


def random_diagonal_xi(k: int, rng) -> XiQuaternionic:
    return XiQuaternionic.diagonal(rng.standard_normal((k, 4)))


class NormIdentityCheck(BaseIdentityCheck):
    """ |mu(xi)|^2 against the sum of the squared pairwise commutators, on random xi. """

    name = 'norm_identity'

    def sample(self, seed):
        lhs, rhs, error = check_mu_norm_identity(random_xi(self.k, make_rng(seed)))
        return {'lhs': lhs, 'rhs': rhs, 'error': error}


class LinearizedIdentityCheck(BaseIdentityCheck):
    """ The linearized identity at random diagonal xi, together with the adjoint pairing of R_xi. """

    name = 'linearized_identity'

    def sample(self, seed):
        rng = make_rng(seed)
        xi = random_diagonal_xi(self.k, rng)
        eta = random_xi(self.k, rng)
        lhs, rhs, error = check_linearized_identity(xi, eta)
        tau = random_sample('anti_hermitian', self.k, rng)
        pairing = adjoint_pairing_defect(xi, tau, eta) / max(1.0, xi.norm() * eta.norm() * np.linalg.norm(tau))
        return {'lhs': lhs, 'rhs': rhs, 'adjoint_defect': pairing, 'error': max(error, pairing)}


class EquivarianceCheck(BaseIdentityCheck):
    """ ||mu(g . c) - Ad(g) mu(c)|| / ||c||^2 on random (g, c). """

    name = 'equivariance'

    def sample(self, seed):
        rng = make_rng(seed)
        c = ADHMConfig.random(self.r, self.k, rng, normalize=False)
        g = random_sample('unitary', self.k, rng)
        defect = (mu_quaternionic(gauge_act(g, c)) - mu_quaternionic(c).adjoint(g)).norm()
        return {'norm': c.norm(), 'error': defect / c.norm() ** 2}


class ChartConsistencyCheck(BaseIdentityCheck):
    """ Zero-locus agreement and the frozen scale between the quaternionic and complex moment maps.

    Samples are points of the zero set (Psi = 0, xi conjugate to a diagonal point) moved by a perturbation whose
    size ranges from 0 to 1e-1.
    """

    name = 'chart_consistency'
    zero_threshold = 1e-13

    def sample(self, seed):
        rng = make_rng(seed)
        U = random_sample('unitary', self.k, rng)
        zero = config_from_xi(np.zeros((self.k, self.r)), np.zeros((self.k, self.r)),
                              random_diagonal_xi(self.k, rng).adjoint(U))
        size = 0.0 if rng.random() < 0.25 else 10.0 ** rng.uniform(-4, -1)
        c = zero + ADHMConfig.random(self.r, self.k, rng).scaled(size)

        quaternionic = mu_quaternionic(c).norm()
        complex_norm = mu_complex_norm(c)
        agree = (quaternionic <= self.zero_threshold) == (complex_norm <= self.zero_threshold)
        scale_error = abs(quaternionic - CHART_SCALE * complex_norm) / max(quaternionic, 1e-300)
        if quaternionic <= self.zero_threshold:
            scale_error = 0.0
        return {'perturbation': size, 'mu_quaternionic': quaternionic, 'mu_complex': complex_norm,
                'zero_locus_agrees': agree, 'error': scale_error if agree else np.inf}


class DifferentialCheck(BaseIdentityCheck):
    """ mu_differential against central finite differences with step 1e-5. """

    name = 'differential'
    step = 1e-5

    def sample(self, seed):
        rng = make_rng(seed)
        c = ADHMConfig.random(self.r, self.k, rng)
        h = ADHMConfig.random(self.r, self.k, rng)
        analytic = mu_differential(c, h)
        numeric = (mu_quaternionic(c + h.scaled(self.step))
                   - mu_quaternionic(c - h.scaled(self.step))).scaled(1 / (2 * self.step))
        return {'error': (analytic - numeric).norm() / max(analytic.norm(), 1e-300)}


class CliffordRelationsCheck(BaseIdentityCheck):
    """ gamma(u) gamma(v) + gamma(v) gamma(u) = -2 <u, v> on the units, and gamma(i) gamma(j) = gamma(k). """

    name = 'clifford_relations'

    def sample(self, seed):
        s = QuaternionicVector.random(self.k, make_rng(seed))
        worst = 0.0
        for n, u in enumerate(UNITS):
            for m, v in enumerate(UNITS):
                uv = clifford_apply(u, clifford_apply(v, s))
                vu = clifford_apply(v, clifford_apply(u, s))
                expected = -2.0 * (n == m)
                worst = max(worst, np.linalg.norm(uv.a + vu.a - expected * s.a),
                            np.linalg.norm(uv.b + vu.b - expected * s.b))
        ij = clifford_apply(UNITS[0], clifford_apply(UNITS[1], s))
        k = clifford_apply(UNITS[2], s)
        worst = max(worst, np.linalg.norm(ij.a - k.a), np.linalg.norm(ij.b - k.b))
        return {'error': worst / s.norm()}


IDENTITY_CHECKS = (NormIdentityCheck, LinearizedIdentityCheck, EquivarianceCheck, ChartConsistencyCheck,
                   DifferentialCheck, CliffordRelationsCheck)
