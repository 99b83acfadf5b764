"""Run configuration.

A `RunConfig` is built from the package defaults, an optional JSON file and
command line overrides, in that order of precedence. The JSON file has the
sections 'catalog', 'grid', 'probe', 'limits' and 'outputs'; each may be
partial, e.g.

    {"catalog": {"dim": 6}, "grid": {"s": 1.5, "K": 6}}

"""
import copy
import logging
from pathlib import Path

from .outputdir import OutputDir
from .probes import ProbeFamily
from .thresholds import ThresholdGrid
from .utils import ConfigError

__all__ = ['RunConfig', 'defaults', 'read_config']

logger = logging.getLogger(__name__)

defaults = {
    'catalog': {'dim': 8, 'seed': 0, 'custom_basis_files': []},
    'grid': {'s': 2.0, 'K': 8, 'levels': None},
    'probe': {'seed': 0, 'random_count': 200, 'support_cap': 8},
    'limits': {'subset_cap': 5000000, 'vertex_cap': 16, 'm_max': None},
    'outputs': {'dir': 'greedylab_out', 'formats': ['csv', 'json']},
}

outputformats = ('csv', 'json')


def _integer(section, key, value, minimum):
    if isinstance(value, bool) or not isinstance(value, int) or \
            value < minimum:
        raise ConfigError(f"'{section}.{key}' should be an integer >= "
                          f"{minimum}, not {value!r}")
    return value


def _merge(base, update):
    merged = copy.deepcopy(base)
    for section, values in update.items():
        if section not in defaults:
            raise ConfigError(f"unknown configuration section '{section}', "
                              f"use one of {sorted(defaults)}")
        if not isinstance(values, dict):
            raise ConfigError(f"configuration section '{section}' should be "
                              f"a dictionary")
        for key, value in values.items():
            if key not in defaults[section]:
                raise ConfigError(f"unknown key '{section}.{key}', use one "
                                  f"of {sorted(defaults[section])}")
            merged[section][key] = value
    return merged


class RunConfig:
    """Validated configuration of a greedylab run.

    Parameters
    ----------
    d: dict, optional
        Sections overriding the defaults.

    """

    def __init__(self, d=None):
        config = _merge(defaults, d or {})
        self._config = self._validate(config)

    @staticmethod
    def _validate(config):
        catalog = config['catalog']
        _integer('catalog', 'dim', catalog['dim'], 1)
        _integer('catalog', 'seed', catalog['seed'], 0)
        files = catalog['custom_basis_files']
        if not isinstance(files, list) or \
                not all(isinstance(f, str) for f in files):
            raise ConfigError("'catalog.custom_basis_files' should be a list "
                              "of file names")
        grid = config['grid']
        s = grid['s']
        if isinstance(s, bool) or not isinstance(s, (int, float)) or \
                not s > 1:
            raise ConfigError(f"'grid.s' should be a number > 1, not {s!r}")
        grid['s'] = float(s)
        _integer('grid', 'K', grid['K'], 1)
        if grid['levels'] is None:
            grid['levels'] = grid['K'] + 1
        _integer('grid', 'levels', grid['levels'], grid['K'] + 1)
        probe = config['probe']
        _integer('probe', 'seed', probe['seed'], 0)
        _integer('probe', 'random_count', probe['random_count'], 0)
        _integer('probe', 'support_cap', probe['support_cap'], 1)
        limits = config['limits']
        _integer('limits', 'subset_cap', limits['subset_cap'], 1)
        _integer('limits', 'vertex_cap', limits['vertex_cap'], 1)
        if limits['m_max'] is not None:
            _integer('limits', 'm_max', limits['m_max'], 1)
        outputs = config['outputs']
        if not isinstance(outputs['dir'], str) or not outputs['dir']:
            raise ConfigError(f"'outputs.dir' should be a non-empty string, "
                              f"not {outputs['dir']!r}")
        formats = outputs['formats']
        if not isinstance(formats, list) or not formats or \
                not set(formats).issubset(outputformats):
            raise ConfigError(f"'outputs.formats' should be a non-empty list "
                              f"with elements from {outputformats}, not "
                              f"{formats!r}")
        return config

    def __getitem__(self, section):
        return copy.deepcopy(self._config[section])

    def __eq__(self, other):
        if not isinstance(other, RunConfig):
            return NotImplemented
        return self._config == other._config

    def __repr__(self):
        return f"RunConfig({self._config})"

    @property
    def dim(self):
        return self._config['catalog']['dim']

    @property
    def seed(self):
        return self._config['catalog']['seed']

    @property
    def levels(self):
        return self._config['grid']['levels']

    @property
    def m_max(self):
        return self._config['limits']['m_max']

    @property
    def subset_cap(self):
        return self._config['limits']['subset_cap']

    @property
    def vertex_cap(self):
        return self._config['limits']['vertex_cap']

    @property
    def outputdir(self):
        return Path(self._config['outputs']['dir'])

    @property
    def formats(self):
        return tuple(self._config['outputs']['formats'])

    @property
    def custom_basis_files(self):
        return tuple(self._config['catalog']['custom_basis_files'])

    def thresholdgrid(self):
        grid = self._config['grid']
        return ThresholdGrid(grid['s'], grid['K'])

    def probefamily(self):
        probe = self._config['probe']
        return ProbeFamily(seed=probe['seed'],
                           random_count=probe['random_count'],
                           support_cap=probe['support_cap'],
                           s=self._config['grid']['s'],
                           levels=self.levels)

    def to_dict(self):
        return copy.deepcopy(self._config)

    def with_overrides(self, dim=None, seed=None, grid_s=None, grid_k=None,
                       out=None):
        """New config with command line overrides applied; None leaves a
        value as it is."""
        d = self.to_dict()
        if dim is not None:
            d['catalog']['dim'] = dim
        if seed is not None:
            d['catalog']['seed'] = seed
        if grid_s is not None:
            d['grid']['s'] = grid_s
        if grid_k is not None:
            if d['grid']['levels'] == d['grid']['K'] + 1:
                d['grid']['levels'] = None
            d['grid']['K'] = grid_k
        if out is not None:
            d['outputs']['dir'] = out
        return RunConfig(d)


def read_config(path=None):
    """RunConfig from a JSON file, or the defaults if `path` is None."""
    if path is None:
        return RunConfig()
    path = Path(path)
    if not path.is_file():
        raise ConfigError(f"configuration file '{path}' does not exist")
    d = OutputDir(path.parent).read_jsondict(path.name)
    logger.info("read configuration from %s", path)
    return RunConfig(d)
