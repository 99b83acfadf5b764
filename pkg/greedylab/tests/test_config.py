import json
import unittest
from pathlib import Path

from greedylab.config import RunConfig, defaults, read_config
from greedylab.thresholds import ThresholdGrid
from greedylab.utils import ConfigError, tempdir


class Defaults(unittest.TestCase):

    def test_defaults(self):
        config = RunConfig()
        self.assertEqual(config.dim, 8)
        self.assertEqual(config.levels, 9)
        self.assertEqual(config.formats, ('csv', 'json'))
        self.assertIsNone(config.m_max)
        self.assertEqual(config.thresholdgrid(), ThresholdGrid(2., 8))

    def test_defaultsnotmodified(self):
        RunConfig({'catalog': {'dim': 5}})
        self.assertEqual(defaults['catalog']['dim'], 8)
        self.assertIsNone(defaults['grid']['levels'])

    def test_partialsection(self):
        config = RunConfig({'grid': {'s': 1.5}})
        self.assertEqual(config['grid']['s'], 1.5)
        self.assertEqual(config['grid']['K'], 8)

    def test_intsbecomesfloat(self):
        self.assertIsInstance(RunConfig({'grid': {'s': 3}})['grid']['s'],
                              float)

    def test_equality(self):
        self.assertEqual(RunConfig(), RunConfig({'catalog': {'dim': 8}}))
        self.assertNotEqual(RunConfig(), RunConfig({'catalog': {'dim': 6}}))


class Invalid(unittest.TestCase):

    def test_unknownsection(self):
        self.assertRaises(ConfigError, RunConfig, {'plots': {}})

    def test_unknownkey(self):
        self.assertRaises(ConfigError, RunConfig, {'grid': {'t': 2.}})

    def test_sectionnotdict(self):
        self.assertRaises(ConfigError, RunConfig, {'grid': 2.})

    def test_invalidvalues(self):
        for d in ({'grid': {'K': 0}}, {'grid': {'s': 1.}},
                  {'grid': {'s': True}}, {'grid': {'K': 4, 'levels': 4}},
                  {'catalog': {'dim': 2.5}}, {'limits': {'m_max': 0}},
                  {'outputs': {'formats': ['xml']}},
                  {'outputs': {'formats': []}}, {'outputs': {'dir': ''}},
                  {'catalog': {'custom_basis_files': 'basis.json'}}):
            with self.subTest(config=d):
                self.assertRaises(ConfigError, RunConfig, d)


class Overrides(unittest.TestCase):

    def test_gridkrederiveslevels(self):
        config = RunConfig().with_overrides(grid_k=4)
        self.assertEqual(config.levels, 5)

    def test_explicitlevelskept(self):
        config = RunConfig({'grid': {'levels': 12}}).with_overrides(grid_k=4)
        self.assertEqual(config.levels, 12)

    def test_nonechangesnothing(self):
        config = RunConfig({'catalog': {'dim': 5}})
        self.assertEqual(config.with_overrides(), config)

    def test_out(self):
        config = RunConfig().with_overrides(out='results', dim=4, seed=3)
        self.assertEqual(config.outputdir, Path('results'))
        self.assertEqual((config.dim, config.seed), (4, 3))

    def test_invalidoverride(self):
        self.assertRaises(ConfigError, RunConfig().with_overrides, grid_k=0)


class ReadConfig(unittest.TestCase):

    def test_nofile(self):
        self.assertEqual(read_config(), RunConfig())

    def test_readfile(self):
        with tempdir() as dirname:
            path = Path(dirname) / 'run.json'
            path.write_text(json.dumps({'catalog': {'dim': 6},
                                        'probe': {'random_count': 10}}))
            config = read_config(path)
            self.assertEqual(config.dim, 6)
            self.assertEqual(config.probefamily().random_count, 10)

    def test_missingfile(self):
        with tempdir() as dirname:
            self.assertRaises(ConfigError, read_config,
                              Path(dirname) / 'run.json')

    def test_invalidjson(self):
        with tempdir() as dirname:
            path = Path(dirname) / 'run.json'
            path.write_text('{"catalog": ')
            self.assertRaises(ConfigError, read_config, path)

    def test_notadict(self):
        with tempdir() as dirname:
            path = Path(dirname) / 'run.json'
            path.write_text('[1, 2]')
            self.assertRaises(ConfigError, read_config, path)


if __name__ == '__main__':
    unittest.main()
