import copy
import os
import pkgutil
from dataclasses import dataclass, field
from typing import Any, Dict

import yaml

from adhmkit.errors import ConfigError

SECTIONS = ('tolerance', 'flow', 'spectrum', 'vortex', 'thresholds')


def _merge(base: dict, override: dict) -> dict:
    merged = copy.deepcopy(base)
    for key, value in override.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = _merge(merged[key], value)
        else:
            merged[key] = value
    return merged


@dataclass
class Config:
    """ Tolerances, solver defaults and report thresholds.

    Attributes
    ----------
    tolerance : dict
        Numerical tolerances (default, rank, null_space, cluster, triangular).
    flow : dict
        Defaults of the moment map zero-finding.
    spectrum : dict
        Defaults of the joint spectrum recursion.
    vortex : dict
        Defaults of the vortex solver.
    thresholds : dict
        Registered report thresholds, check name -> maximal allowed error.

    """

    tolerance: Dict[str, float] = field(default_factory=dict)
    flow: Dict[str, Any] = field(default_factory=dict)
    spectrum: Dict[str, Any] = field(default_factory=dict)
    vortex: Dict[str, Any] = field(default_factory=dict)
    thresholds: Dict[str, float] = field(default_factory=dict)

    def threshold(self, check: str) -> float:
        if check not in self.thresholds:
            raise ConfigError(f'No threshold registered for check {check}.')
        return float(self.thresholds[check])


def load_config(path: str = None) -> Config:
    """ Load the packaged thresholds.yml and merge a user YAML file on top of it.

    Parameters
    ----------
    path : str
        Optional path to a YAML file overriding part of the defaults.

    Returns
    -------
    Config
        The merged configuration.

    Raises
    ------
    FileNotFoundError
        If path does not exist.
    ConfigError
        If a file is not a mapping or holds unknown sections.

    """
    defaults = yaml.safe_load(pkgutil.get_data('adhmkit', 'thresholds.yml').decode('utf-8'))

    if path:
        if not os.path.isfile(path):
            raise FileNotFoundError(f'Configuration file {path} not found.')

        with open(path, 'r') as f:
            user = yaml.safe_load(f) or {}

        if not isinstance(user, dict):
            raise ConfigError(f'{path} must hold a mapping.')

        defaults = _merge(defaults, user)

    unknown = set(defaults) - set(SECTIONS)
    if unknown:
        raise ConfigError(f'Unknown configuration sections: {", ".join(sorted(unknown))}.')

    return Config(**{section: defaults.get(section, {}) for section in SECTIONS})


DEFAULT_CONFIG = load_config()
