"""
Zero-finding on E(c) = ||mu(c)||^2: gradient descent with Armijo backtracking, followed by a Gauss-Newton polish
once ||mu|| is small. Converged endpoints are classified by the partition of their joint spectrum.
"""
import logging
from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

import numpy as np
import pandas as pd
import scipy.linalg

from adhmkit.adhm.moment import mu_gradient, mu_jacobian, mu_quaternionic
from adhmkit.adhm.representation import ADHMConfig
from adhmkit.adhm.strata import Partition, SpectrumPoint, joint_spectrum
from adhmkit.errors import AdhmError
from adhmkit.settings import DEFAULT_CONFIG, Config
from adhmkit.utils import spawn_seeds

logger = logging.getLogger(__name__)

MAX_CENSUS_RANK = 6

REPORT_COLUMNS = ['run', 'converged', 'iterations', 'final_mu_norm', 'final_psi_norm', 'psi_bound', 'psi_ok',
                  'partition']


@dataclass
class FlowResult:
    """ Outcome of :func:`minimize_mu`.

    Attributes
    ----------
    final_config : ADHMConfig
        The last accepted iterate.
    iterations : int
        Number of accepted steps.
    final_mu_norm : float
        ||mu(final_config)||.
    final_psi_norm : float
        Norm of the spinor part (v, w) of final_config.
    spectrum : SpectrumPoint
        Joint spectrum of the endpoint; only set when converged with a vanishing spinor part.
    converged : bool
        Whether final_mu_norm <= tol.
    energies : List[float]
        E after every accepted step, starting with E(start).
    psi_norms : List[float]
        Spinor norm after every accepted step, starting with the start value.

    """

    final_config: ADHMConfig
    iterations: int
    final_mu_norm: float
    final_psi_norm: float
    spectrum: Optional[SpectrumPoint]
    converged: bool
    energies: List[float] = field(default_factory=list)
    psi_norms: List[float] = field(default_factory=list)


def _step(c: ADHMConfig, direction: np.ndarray, t: float) -> ADHMConfig:
    return ADHMConfig.from_vector(c.to_vector() + t * direction, c.r, c.k)


def _gauss_newton_direction(c: ADHMConfig) -> np.ndarray:
    # minimum-norm least squares solution of J h = -mu
    solution, _, _, _ = scipy.linalg.lstsq(mu_jacobian(c), -mu_quaternionic(c).to_vector(), cond=1e-14)
    return solution


def minimize_mu(start: ADHMConfig, tol: float = 1e-12, max_iter: int = None, seed=0,
                config: Config = DEFAULT_CONFIG, polish: bool = True) -> FlowResult:
    """ Descend E(c) = ||mu(c)||^2 from start until ||mu|| <= tol or max_iter steps were taken.

    Parameters
    ----------
    start : ADHMConfig
        The initial point.
    tol : float
        Target value of ||mu||.
    max_iter : int
        Maximal number of accepted steps; defaults to flow.max_iter of the configuration.
    seed : int
        Seed of the joint spectrum of the endpoint.
    config : Config
        Line-search constants, polish threshold and spinor threshold.
    polish : bool
        Switch to Gauss-Newton steps once ||mu|| < flow.polish_below.

    Returns
    -------
    FlowResult
        Non-convergence is reported through FlowResult.converged, never raised.

    Raises
    ------
    ValueError
        If tol is not positive.

    """
    if tol <= 0:
        raise ValueError(f'tol must be positive, got {tol}.')

    flow = config.flow
    max_iter = int(flow['max_iter']) if max_iter is None else max_iter
    armijo_c = float(flow['armijo_c'])
    shrink = float(flow['armijo_shrink'])
    polish_below = float(flow['polish_below'])

    c = start
    energy = mu_quaternionic(c).norm() ** 2
    energies, psi_norms = [energy], [c.psi_norm()]
    t_previous = float(flow['initial_step'])
    iterations = 0

    while iterations < max_iter and np.sqrt(energy) > tol:
        gradient = mu_gradient(c).to_vector()

        gauss_newton = polish and np.sqrt(energy) < polish_below
        direction = _gauss_newton_direction(c) if gauss_newton else -gradient
        slope = float(gradient @ direction)
        if slope >= 0:
            gauss_newton, direction = False, -gradient
            slope = float(gradient @ direction)
        if slope == 0.0:
            logger.debug('Zero gradient at E = %.3e; stopping.', energy)
            break

        t = 1.0 if gauss_newton else min(2 * t_previous, 1e6)
        candidate = _step(c, direction, t)
        candidate_energy = mu_quaternionic(candidate).norm() ** 2
        while candidate_energy > energy + armijo_c * t * slope and t > 1e-30:
            t *= shrink
            candidate = _step(c, direction, t)
            candidate_energy = mu_quaternionic(candidate).norm() ** 2

        if candidate_energy > energy + armijo_c * t * slope:
            logger.debug('Line search stalled at E = %.3e after %d iterations.', energy, iterations)
            break

        if not gauss_newton:
            t_previous = t
        c, energy = candidate, candidate_energy
        energies.append(energy)
        psi_norms.append(c.psi_norm())
        iterations += 1

    final_mu_norm = float(np.sqrt(energy))
    converged = final_mu_norm <= tol
    if not converged:
        logger.warning('Moment map flow stopped at ||mu|| = %.3e after %d iterations.', final_mu_norm, iterations)

    spectrum = None
    if converged and c.psi_norm() <= float(flow['psi_threshold']):
        try:
            spectrum = joint_spectrum(c.xi(), tol=float(config.tolerance['cluster']), seed=seed)
        except AdhmError as e:
            logger.warning('No joint spectrum for the endpoint: %s', e)

    return FlowResult(final_config=c,
                      iterations=iterations,
                      final_mu_norm=final_mu_norm,
                      final_psi_norm=c.psi_norm(),
                      spectrum=spectrum,
                      converged=converged,
                      energies=energies,
                      psi_norms=psi_norms)


def psi_bound(mu_norm: float, config: Config = DEFAULT_CONFIG) -> float:
    """ C * ||mu||^(1/4), the admissible spinor norm at a near-zero of the moment map. """
    return float(config.flow['psi_constant']) * mu_norm ** float(config.flow['psi_exponent'])


def psi_vanishing_report(results: Sequence[FlowResult], config: Config = DEFAULT_CONFIG) -> pd.DataFrame:
    """ One row per run with the final norms, the admissible spinor norm and the partition of the endpoint.

    Unconverged runs are kept and flagged by converged = False and psi_ok = False.
    """
    rows = []
    for index, result in enumerate(results):
        bound = psi_bound(result.final_mu_norm, config)
        rows.append({
            'run': index,
            'converged': result.converged,
            'iterations': result.iterations,
            'final_mu_norm': result.final_mu_norm,
            'final_psi_norm': result.final_psi_norm,
            'psi_bound': bound,
            'psi_ok': bool(result.converged and result.final_psi_norm <= bound),
            'partition': str(result.spectrum.partition) if result.spectrum is not None else None
        })

    return pd.DataFrame(rows, columns=REPORT_COLUMNS)


def report_summary(table: pd.DataFrame) -> Dict[str, float]:
    """ Run counts and the largest norms over the converged runs of a psi vanishing report. """
    converged = table[table['converged']] if len(table) else table
    return {
        'runs': int(len(table)),
        'converged': int(len(converged)),
        'max_final_mu_norm': float(converged['final_mu_norm'].max()) if len(converged) else 0.0,
        'max_final_psi_norm': float(converged['final_psi_norm'].max()) if len(converged) else 0.0,
        'all_within_bound': bool(converged['psi_ok'].all()) if len(converged) else True
    }


def run_flows(k: int, runs: int, seed: int, r: int = 1, tol: float = 1e-12, max_iter: int = None,
              config: Config = DEFAULT_CONFIG) -> List[FlowResult]:
    """ Flows from unit-norm Gaussian starts; the i-th run only depends on (seed, i). """
    results = []
    for index, sub_seed in enumerate(spawn_seeds(seed, runs)):
        start = ADHMConfig.random(r, k, sub_seed)
        results.append(minimize_mu(start, tol=tol, max_iter=max_iter, seed=sub_seed, config=config))
        logger.debug('Run %d: converged=%s, ||mu||=%.3e.', index, results[-1].converged,
                     results[-1].final_mu_norm)
    return results


def stratum_census(k: int, runs: int, seed: int, tol: float = 1e-12, max_iter: int = None,
                   config: Config = DEFAULT_CONFIG) -> Dict[Partition, int]:
    """ Count the partitions of the converged endpoints of runs random flows (r = 1).

    Raises
    ------
    ValueError
        If k is not in [1, 6].

    """
    if not 1 <= k <= MAX_CENSUS_RANK:
        raise ValueError(f'k must be between 1 and {MAX_CENSUS_RANK}, got {k}.')

    census = Counter()
    for result in run_flows(k, runs, seed, tol=tol, max_iter=max_iter, config=config):
        if not result.converged:
            continue
        spectrum = result.spectrum
        if spectrum is None:
            try:
                spectrum = joint_spectrum(result.final_config.xi(), tol=float(config.tolerance['cluster']),
                                          mu_tol=1e-6)
            except AdhmError as e:
                logger.warning('Converged endpoint left unclassified: %s', e)
                continue
        census[spectrum.partition] += 1
    return dict(census)
