import os
import shutil
import tempfile
import unittest

from adhmkit.errors import ConfigError
from adhmkit.settings import DEFAULT_CONFIG, load_config


class SettingsTestSuite(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        cls.tmp_dir = tempfile.mkdtemp()

    @classmethod
    def tearDownClass(cls):
        shutil.rmtree(cls.tmp_dir)

    def _write(self, name, content):
        path = os.path.join(self.tmp_dir, name)
        with open(path, 'w') as f:
            f.write(content)
        return path

    def test_default_thresholds(self):
        assert DEFAULT_CONFIG.threshold('norm_identity') == 1e-10
        assert DEFAULT_CONFIG.threshold('triangle_exactness') == 0.0
        assert DEFAULT_CONFIG.vortex['scheme'] == 'central'
        assert DEFAULT_CONFIG.flow['psi_exponent'] == 0.25

    def test_unknown_threshold(self):
        with self.assertRaises(ConfigError):
            DEFAULT_CONFIG.threshold('unknown_check')

    def test_override_merges(self):
        path = self._write('override.yml', 'thresholds:\n  norm_identity: 1.0e-6\nflow:\n  max_iter: 10\n')
        config = load_config(path)

        assert config.threshold('norm_identity') == 1e-6
        assert config.threshold('equivariance') == 1e-10
        assert config.flow['max_iter'] == 10
        assert config.flow['armijo_c'] == 1e-4

    def test_empty_override(self):
        path = self._write('empty.yml', '')
        assert load_config(path).thresholds == DEFAULT_CONFIG.thresholds

    def test_unknown_section(self):
        path = self._write('unknown.yml', 'plotting:\n  dpi: 300\n')
        with self.assertRaises(ConfigError):
            load_config(path)

    def test_not_a_mapping(self):
        path = self._write('list.yml', '- 1\n- 2\n')
        with self.assertRaises(ConfigError):
            load_config(path)

    def test_missing_file(self):
        with self.assertRaises(FileNotFoundError):
            load_config(os.path.join(self.tmp_dir, 'missing.yml'))


if __name__ == '__main__':
    unittest.main()
