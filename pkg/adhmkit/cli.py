"""
Command line entry point. Every subcommand prints a JSON report with a top-level "pass" key and exits with 0 when
the report passes, 1 when a check fails and 2 on usage errors.
"""
import argparse
import json
import logging
import re
import sys
from dataclasses import asdict
from typing import List

import numpy as np

from adhmkit.adhm.flow import psi_vanishing_report, report_summary, run_flows
from adhmkit.adhm.representation import ADHMConfig
from adhmkit.adhm.strata import (block_scalar_xi, check_v_perp_V1, enumerate_partitions, joint_spectrum,
                                 krylov_generator, partition_stats, random_unitary, spectrum_distance)
from adhmkit.checks.identities import IDENTITY_CHECKS
from adhmkit.errors import AdhmError
from adhmkit.files import ADHMConfigDecoder, BundleDatumDecoder, RunReport, RunReportEncoder, VortexStateEncoder
from adhmkit.floer.complexes import (exact_triangle_check, homology_dims, mapping_cone, random_chain_map,
                                     random_complex, triangle_report)
from adhmkit.series.laurent import evaluate_at_one, pt_series, sw_series
from adhmkit.series.stability import is_delta_stable
from adhmkit.settings import load_config
from adhmkit.utils import make_rng, spawn_seeds
from adhmkit.vortex.lattice import SCHEMES, TorusGrid, zero_count
from adhmkit.vortex.solver import dichotomy_ratio, field_norm, integral_identity_check, solve_vortex

logger = logging.getLogger(__name__)

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_USAGE = 2

NEGATIVE_WINDOW = re.compile(r'^-\d+:-?\d+$')


def parse_window(text: str):
    try:
        low, high = (int(part) for part in text.split(':'))
    except ValueError:
        raise argparse.ArgumentTypeError(f'{text} is not a valid window! Use A:B, e.g. -3:3.')
    if low > high:
        raise argparse.ArgumentTypeError(f'{text} is not a valid window! A must not exceed B.')
    return low, high


def verify_identities(args, config) -> RunReport:
    results, max_errors = {}, {}
    for seed, check_class in zip(spawn_seeds(args.seed, len(IDENTITY_CHECKS)), IDENTITY_CHECKS):
        check = check_class(k=args.k, samples=args.samples, seed=seed, r=args.r)
        check.sweep()
        max_errors[check.name] = check.max_error()
        results[check.name] = {'samples': args.samples, 'max_error': check.max_error()}
        if args.csv:
            check.to_csv(f'{args.csv}.{check.name}.csv')

    return RunReport.build('verify-identities', {'k': args.k, 'r': args.r, 'samples': args.samples,
                                                 'seed': args.seed}, results, max_errors, config=config)


def solve_moment(args, config) -> RunReport:
    flows = run_flows(args.k, args.runs, args.seed, r=args.r, tol=args.tol, max_iter=args.max_iter, config=config)
    table = psi_vanishing_report(flows, config)
    if args.csv:
        table.to_csv(args.csv, index=False)

    summary = report_summary(table)
    census = table[table['converged']]['partition'].value_counts().sort_index()
    summary['census'] = {str(partition): int(count) for partition, count in census.items()}

    enough = summary['converged'] >= float(config.flow['min_converged_fraction']) * summary['runs']
    return RunReport.build('solve-moment', {'k': args.k, 'r': args.r, 'runs': args.runs, 'seed': args.seed,
                                            'tol': args.tol},
                           summary, {'psi_vanishing': summary['max_final_psi_norm']},
                           passed=enough and summary['all_within_bound'], config=config)


def spectrum_of_input(args, config, tolerance: float) -> RunReport:
    with open(args.input) as fp:
        c = json.load(fp, cls=ADHMConfigDecoder)
    if not isinstance(c, ADHMConfig):
        raise ValueError(f'{args.input} is not a valid input! Use an ADHM configuration with v, w, A and B.')

    point = joint_spectrum(c.xi(), tol=tolerance, seed=args.seed, max_depth=int(config.spectrum['max_depth']))
    results = {
        'values': point.values.tolist(),
        'partition': list(point.partition.parts),
        'stratum': asdict(partition_stats(point.partition)),
        'psi_norm': c.psi_norm()
    }
    return RunReport.build('spectrum', {'input': args.input, 'tol': tolerance, 'seed': args.seed}, results, {},
                           config=config)


def spectrum(args, config) -> RunReport:
    tolerance = float(config.tolerance['cluster']) if args.tol is None else args.tol
    if args.input:
        return spectrum_of_input(args, config, tolerance)

    rng = make_rng(args.seed)
    worst, partitions_ok, results = 0.0, True, {}
    for partition in enumerate_partitions(args.k):
        recovered = 0
        for _ in range(args.trials):
            values = rng.standard_normal((partition.length, 4))
            xi = block_scalar_xi(partition, values, U=random_unitary(args.k, rng))
            point = joint_spectrum(xi, tol=tolerance, seed=rng, max_depth=int(config.spectrum['max_depth']))
            worst = max(worst, spectrum_distance(point.values, np.repeat(values, partition.parts, axis=0)))
            recovered += point.partition == partition
        partitions_ok = partitions_ok and recovered == args.trials
        results[str(partition)] = {'trials': args.trials, 'partition_recovered': recovered}

    max_errors = {'spectrum_roundtrip': worst}
    if args.k >= 2:
        largest = 0.0
        for _ in range(args.trials):
            A, B, v, w = krylov_generator(args.k, rng)
            largest = max(largest, check_v_perp_V1(A, B, v, w)[0])
        max_errors['krylov_orthogonality'] = largest

    return RunReport.build('spectrum', {'k': args.k, 'trials': args.trials, 'seed': args.seed}, results,
                           max_errors, passed=partitions_ok, config=config)


def cone_demo(args, config) -> RunReport:
    failures, euler_defect, trials = 0, 0, []
    for seed in spawn_seeds(args.seed, args.trials):
        rng = make_rng(seed)
        max_dim = max(1, args.size // 4)
        source = random_complex(rng, (0, 3), max_dim)
        target = random_complex(rng, (0, 3), max_dim)
        f = random_chain_map(source, target, rng)
        cone = mapping_cone(f)
        exact = exact_triangle_check(f)
        failures += not exact
        euler_defect = max(euler_defect, abs(cone.euler_characteristic()
                                             - (target.euler_characteristic() - source.euler_characteristic())))
        trials.append({'source': homology_dims(source), 'target': homology_dims(target),
                       'cone': homology_dims(cone), 'exact': exact})

    results = {'trials': trials}
    if args.trials == 1:
        results['triangle'] = triangle_report(f)
    return RunReport.build('cone-demo', {'seed': args.seed, 'size': args.size, 'trials': args.trials}, results,
                           {'triangle_exactness': failures, 'euler_characteristic': euler_defect}, config=config)


def sw_series_command(args, config) -> RunReport:
    series = sw_series(args.genus, args.window)
    results = {'series': series.to_dict(),
               'agrees_with_stable_pairs': series == pt_series(args.genus, args.window)}
    if args.at_one:
        results['at_one'] = evaluate_at_one(series, args.genus)
    return RunReport.build('sw-series', {'genus': args.genus, 'window': list(args.window)}, results, {},
                           passed=results['agrees_with_stable_pairs'], config=config)


def stability(args, config) -> RunReport:
    with open(args.input) as fp:
        data = json.load(fp, cls=BundleDatumDecoder)

    verdict = is_delta_stable(ambient=data['ambient'],
                              delta=float(data['delta']),
                              vol=float(data['vol']),
                              psi1_nonzero=bool(data['psi1_nonzero']),
                              psi2_nonzero=bool(data['psi2_nonzero']),
                              invariant_subobjects=data.get('subobjects', []))
    return RunReport.build('stability', {'input': args.input}, {'verdict': verdict}, {}, config=config)


def vortex(args, config) -> RunReport:
    grid = TorusGrid(N=args.grid, degree=args.degree, L1=args.L1, L2=args.L2)
    result = solve_vortex(grid, args.lam, seed=args.seed, tol=args.tol, max_iter=args.max_iter,
                          scheme=args.scheme, config=config)
    state = result.state
    identity = integral_identity_check(state)
    results = {
        'converged': result.converged,
        'iterations': result.iterations,
        'residual': result.residual,
        'residual_norms': list(result.norms),
        'psi1_norm': field_norm(state, 'psi1'),
        'psi2_norm': field_norm(state, 'psi2'),
        'dichotomy_ratio': dichotomy_ratio(state),
        'zeros': zero_count(state, 'psi1' if args.lam > args.degree else 'psi2'),
        'integral_identity': {'lhs': identity.lhs, 'rhs': identity.rhs, 'relative_error': identity.relative_error}
    }
    if args.out:
        with open(args.out, 'w') as fp:
            json.dump(state, fp, cls=VortexStateEncoder)

    return RunReport.build('vortex', {'grid': args.grid, 'degree': args.degree, 'lambda': args.lam,
                                      'tol': args.tol, 'seed': args.seed, 'scheme': args.scheme},
                           results, {'integral_identity': identity.relative_error}, passed=result.converged,
                           config=config)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog='adhm', description='ADHM moment maps, strata, F2 cones, invariant '
                                                               'series and torus vortices.')
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--config', type=str, default=None, help='YAML file overriding the default thresholds')
    common.add_argument('-v', '--verbose', action='store_true', help='Log at DEBUG level on stderr')
    common.add_argument('--seed', type=int, default=0, help='Root seed')

    subparsers = parser.add_subparsers(dest='command')

    p = subparsers.add_parser('verify-identities', parents=[common], help='Randomized moment map identities')
    p.add_argument('--k', type=int, default=3)
    p.add_argument('--r', type=int, default=1)
    p.add_argument('--samples', type=int, default=100)
    p.add_argument('--csv', type=str, default=None, help='Prefix of per-check CSV datasets')
    p.add_argument('--out', type=str, default=None, help='Write the report to this file')
    p.set_defaults(handler=verify_identities)

    p = subparsers.add_parser('solve-moment', parents=[common], help='Zeros of the moment map from random starts')
    p.add_argument('--k', type=int, default=2)
    p.add_argument('--r', type=int, default=1)
    p.add_argument('--runs', type=int, default=100)
    p.add_argument('--tol', type=float, default=1e-12)
    p.add_argument('--max-iter', type=int, default=None)
    p.add_argument('--csv', type=str, default=None, help='Write the per-run table to this CSV file')
    p.add_argument('--out', type=str, default=None, help='Write the report to this file')
    p.set_defaults(handler=solve_moment)

    p = subparsers.add_parser('spectrum', parents=[common], help='Joint spectrum of a configuration, or a roundtrip '
                                                                'campaign per partition')
    p.add_argument('--input', type=str, default=None, help='JSON ADHM configuration whose spectrum is computed')
    p.add_argument('--tol', type=float, default=None, help='Clustering tolerance; defaults to tolerance.cluster')
    p.add_argument('--k', type=int, default=3, help='Campaign rank, without --input')
    p.add_argument('--trials', type=int, default=100, help='Campaign trials per partition, without --input')
    p.add_argument('--out', type=str, default=None, help='Write the report to this file')
    p.set_defaults(handler=spectrum)

    p = subparsers.add_parser('cone-demo', parents=[common], help='Exact triangle of random F2 mapping cones')
    p.add_argument('--size', type=int, default=12, help='Bound on the total dimension of each complex')
    p.add_argument('--trials', type=int, default=1)
    p.add_argument('--out', type=str, default=None, help='Write the report to this file')
    p.set_defaults(handler=cone_demo)

    p = subparsers.add_parser('sw-series', parents=[common], help='Seiberg-Witten series of S^1 x Sigma_g')
    p.add_argument('--genus', type=int, required=True)
    p.add_argument('--window', type=parse_window, required=True, help='A:B')
    p.add_argument('--at-one', action='store_true', help='Also evaluate at q = 1')
    p.add_argument('--out', type=str, default=None, help='Write the report to this file')
    p.set_defaults(handler=sw_series_command)

    p = subparsers.add_parser('stability', parents=[common], help='Delta stability of an ADHM bundle datum')
    p.add_argument('--input', type=str, required=True)
    p.add_argument('--out', type=str, default=None, help='Write the report to this file')
    p.set_defaults(handler=stability)

    p = subparsers.add_parser('vortex', parents=[common], help='Perturbed vortex equations on a torus')
    p.add_argument('--grid', type=int, default=64)
    p.add_argument('--degree', type=int, default=0)
    p.add_argument('--lambda', dest='lam', type=float, required=True)
    p.add_argument('--tol', type=float, default=None)
    p.add_argument('--max-iter', type=int, default=None)
    p.add_argument('--scheme', choices=SCHEMES, default=None, help='Covariant differences; defaults to central')
    p.add_argument('--L1', type=float, default=1.0)
    p.add_argument('--L2', type=float, default=1.0)
    p.add_argument('--out', type=str, default=None, help='Write the final state to this file')
    p.set_defaults(handler=vortex)

    return parser


def join_negative_windows(argv: List[str]) -> List[str]:
    """ Rewrite '--window -3:3' as '--window=-3:3'; argparse would read a bare -3:3 as an option. """
    joined, index = [], 0
    while index < len(argv):
        if argv[index] == '--window' and index + 1 < len(argv) and NEGATIVE_WINDOW.match(argv[index + 1]):
            joined.append(f'--window={argv[index + 1]}')
            index += 2
        else:
            joined.append(argv[index])
            index += 1
    return joined


def dispatch(argv: List[str] = None) -> int:
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else argv
    try:
        args = parser.parse_args(join_negative_windows(list(argv)))
    except SystemExit as e:
        return EXIT_PASS if e.code == 0 else EXIT_USAGE

    if args.command is None:
        parser.print_usage(sys.stderr)
        return EXIT_USAGE

    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, stream=sys.stderr,
                        format='%(levelname)s %(name)s: %(message)s', force=True)

    try:
        config = load_config(args.config)
        report = args.handler(args, config)
    except (AdhmError, ValueError, FileNotFoundError, KeyError) as e:
        logger.error('%s: %s', args.command, e)
        return EXIT_USAGE

    text = json.dumps(report, cls=RunReportEncoder, indent=2)
    if getattr(args, 'out', None) and args.command != 'vortex':
        with open(args.out, 'w') as fp:
            fp.write(text + '\n')
    else:
        print(text)

    return EXIT_PASS if report.passed else EXIT_FAIL


def main():
    sys.exit(dispatch())


if __name__ == '__main__':
    main()
