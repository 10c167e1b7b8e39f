import contextlib
import io
import json
import os
import shutil
import tempfile
import unittest

import numpy as np

from adhmkit.adhm.representation import ADHMConfig, config_from_xi
from adhmkit.adhm.strata import Partition, block_scalar_xi, random_unitary, spectrum_distance
from adhmkit.cli import EXIT_FAIL, EXIT_PASS, EXIT_USAGE, dispatch, join_negative_windows
from adhmkit.files import ADHMConfigEncoder, VortexStateDecoder
from adhmkit.vortex.lattice import VortexState


def run(argv):
    out, err = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        code = dispatch(argv)
    return code, out.getvalue()


class CliTestSuite(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        cls.tmp_dir = tempfile.mkdtemp()

    @classmethod
    def tearDownClass(cls):
        shutil.rmtree(cls.tmp_dir)

    def _path(self, name):
        return os.path.join(self.tmp_dir, name)

    def test_no_command(self):
        assert run([])[0] == EXIT_USAGE

    def test_help(self):
        assert run(['--help'])[0] == EXIT_PASS

    def test_unknown_option(self):
        assert run(['spectrum', '--unknown'])[0] == EXIT_USAGE

    def test_verify_identities(self):
        code, out = run(['verify-identities', '--k', '2', '--samples', '5', '--seed', '1'])
        report = json.loads(out)

        assert code == EXIT_PASS
        assert report['pass'] is True
        assert set(report['max_errors']) == {'norm_identity', 'linearized_identity', 'equivariance',
                                             'chart_consistency', 'differential', 'clifford_relations'}

    def test_verify_identities_with_strict_config(self):
        path = self._path('strict.yml')
        with open(path, 'w') as f:
            f.write('thresholds:\n  norm_identity: -1.0\n')

        code, out = run(['verify-identities', '--k', '2', '--samples', '2', '--config', path])
        assert code == EXIT_FAIL
        assert json.loads(out)['pass'] is False

    def test_missing_config(self):
        assert run(['verify-identities', '--config', self._path('missing.yml')])[0] == EXIT_USAGE

    def test_solve_moment(self):
        code, out = run(['solve-moment', '--k', '1', '--runs', '2'])
        report = json.loads(out)

        assert code == EXIT_PASS
        assert report['results']['runs'] == 2
        assert report['max_errors']['psi_vanishing'] < 1e-5

    def test_spectrum(self):
        code, out = run(['spectrum', '--k', '3', '--trials', '2'])
        report = json.loads(out)

        assert code == EXIT_PASS
        assert set(report['results']) == {'(3)', '(2,1)', '(1,1,1)'}
        assert 'krylov_orthogonality' in report['max_errors']

    def test_spectrum_of_input(self):
        values = np.array([[1.0, 0.5, -2.0, 0.0], [0.0, -1.0, 0.25, 3.0]])
        xi = block_scalar_xi(Partition((2, 1)), values=values, U=random_unitary(3, 2))
        path = self._path('config.json')
        with open(path, 'w') as f:
            json.dump(config_from_xi(np.zeros((3, 1)), np.zeros((3, 1)), xi), f, cls=ADHMConfigEncoder)

        code, out = run(['spectrum', '--input', path, '--tol', '1e-8'])
        results = json.loads(out)['results']

        assert code == EXIT_PASS
        assert results['partition'] == [2, 1]
        assert spectrum_distance(np.array(results['values']), np.repeat(values, (2, 1), axis=0)) < 1e-8
        assert results['stratum']['length'] == 2

    def test_spectrum_of_non_commuting_input(self):
        path = self._path('random_config.json')
        with open(path, 'w') as f:
            json.dump(ADHMConfig.random(1, 3, 0), f, cls=ADHMConfigEncoder)

        assert run(['spectrum', '--input', path])[0] == EXIT_USAGE

    def test_spectrum_of_foreign_input(self):
        path = self._path('not_a_config.json')
        with open(path, 'w') as f:
            json.dump({'rank': 1}, f)

        assert run(['spectrum', '--input', path])[0] == EXIT_USAGE

    def test_cone_demo(self):
        code, out = run(['cone-demo', '--seed', '4'])
        report = json.loads(out)

        assert code == EXIT_PASS
        assert report['max_errors'] == {'triangle_exactness': 0, 'euler_characteristic': 0}
        assert all(entry['exact'] for entry in report['results']['triangle'])

    def test_cone_demo_out(self):
        path = self._path('cone.json')
        code, out = run(['cone-demo', '--trials', '3', '--out', path])

        assert code == EXIT_PASS
        assert out == ''
        with open(path) as f:
            assert json.load(f)['pass'] is True

    def test_sw_series(self):
        code, out = run(['sw-series', '--genus', '2', '--window=-3:3', '--at-one'])
        report = json.loads(out)

        assert code == EXIT_PASS
        assert report['results']['series'] == {'-3': 0, '-2': 0, '-1': 1, '0': 2, '1': 1, '2': 0, '3': 0}
        assert report['results']['at_one'] == 4

    def test_sw_series_window_as_separate_argument(self):
        code, out = run(['sw-series', '--genus', '2', '--window', '-3:3'])

        assert code == EXIT_PASS
        assert json.loads(out)['results']['series'] == {'-3': 0, '-2': 0, '-1': 1, '0': 2, '1': 1, '2': 0, '3': 0}

    def test_join_negative_windows(self):
        assert join_negative_windows(['sw-series', '--window', '-3:-1']) == ['sw-series', '--window=-3:-1']
        assert join_negative_windows(['--window', '1:3']) == ['--window', '1:3']
        assert join_negative_windows(['--window', '--at-one']) == ['--window', '--at-one']

    def test_sw_series_at_one_for_sphere(self):
        assert run(['sw-series', '--genus', '0', '--window', '1:5', '--at-one'])[0] == EXIT_USAGE

    def test_sw_series_bad_window(self):
        assert run(['sw-series', '--genus', '1', '--window', '3:1'])[0] == EXIT_USAGE
        assert run(['sw-series', '--genus', '1', '--window', 'a:b'])[0] == EXIT_USAGE

    def test_stability(self):
        path = self._path('datum.json')
        with open(path, 'w') as f:
            json.dump({'ambient': {'rank': 2, 'degree': 0}, 'delta': 1.0, 'vol': 6.283185307179586,
                       'psi1_nonzero': True, 'psi2_nonzero': True,
                       'subobjects': [{'rank': 1, 'degree': 1, 'contains_im_psi1': True}]}, f)

        code, out = run(['stability', '--input', path])
        verdict = json.loads(out)['results']['verdict']

        assert code == EXIT_PASS
        assert verdict['stable'] is False
        assert verdict['clause'] == 2
        assert verdict['witness'] == {'rank': 1, 'degree': 1, 'contains_im_psi1': True,
                                      'contained_in_ker_psi2': False}

    def test_stability_missing_input(self):
        assert run(['stability', '--input', self._path('missing.json')])[0] == EXIT_USAGE

    def test_vortex(self):
        path = self._path('state.json')
        code, out = run(['vortex', '--grid', '16', '--degree', '0', '--lambda', '1', '--out', path])
        report = json.loads(out)

        assert code == EXIT_PASS
        assert report['results']['converged'] is True
        with open(path) as f:
            state = json.load(f, cls=VortexStateDecoder)
        assert type(state) == VortexState
        assert state.grid.N == 16

    def test_vortex_excluded_lambda(self):
        assert run(['vortex', '--grid', '16', '--degree', '1', '--lambda', '1'])[0] == EXIT_USAGE


if __name__ == '__main__':
    unittest.main()
