import csv
import unittest
from pathlib import Path

from greedylab.catalog import summingbasis, unitvectorbasis
from greedylab.config import RunConfig
from greedylab.estimates import EstimateValue
from greedylab.lebesgue import greedy_constant, lebesgue_constants
from greedylab.parameters import conditionality_report
from greedylab.probes import ProbeFamily
from greedylab.quasinorm import lp
from greedylab.report import WitnessRegistry, write_params_report, \
    write_thresholds_report, write_lebesgue_report, write_verdicts_report, \
    verdict_summary
from greedylab.thresholds import ThresholdGrid, exact_grid_tables
from greedylab.utils import tempdir
from greedylab.verification import self_test_fixtures


def readcsv(path):
    with open(path, newline='') as f:
        return list(csv.DictReader(f))


def summingreport():
    basis = summingbasis(3)
    return conditionality_report(basis, probe=ProbeFamily(random_count=10))


class Registry(unittest.TestCase):

    def test_ids(self):
        registry = WitnessRegistry()
        self.assertIsNone(registry.register(EstimateValue(1., 'exact')))
        refs = [registry.register(EstimateValue(1., 'exact',
                                                {'quantity': 'x', 'i': i}))
                for i in range(2)]
        self.assertEqual(refs, ['w00000', 'w00001'])
        self.assertEqual(len(registry), 2)
        self.assertIn('w00001', registry)
        self.assertEqual(registry.to_dict()['w00001']['i'], 1)


class ParamsReport(unittest.TestCase):

    report = summingreport()

    def test_witnessrefsresolve(self):
        with tempdir() as dirname:
            od = write_params_report(dirname, 'summing:3', self.report,
                                     EstimateValue(2., 'exact'),
                                     EstimateValue(1., 'exact'))
            rows = readcsv(Path(dirname) / 'params.csv')
            witnesses = od.read_jsondict('witnesses.json')['witnesses']
            refs = {r['witness_ref'] for r in rows if r['witness_ref']}
            self.assertTrue(refs)
            self.assertTrue(refs.issubset(witnesses))
            params = {r['param_id'] for r in rows}
            self.assertEqual(params, {'phi', 'psi', 'mu', 'k', 'succ',
                                      'quasigreedy', 'truncationqg', 'c',
                                      'd'})
            phi = [r for r in rows if r['param_id'] == 'phi']
            self.assertEqual([r['m'] for r in phi], ['1', '2', '3'])
            succ = [r for r in rows if r['param_id'] == 'succ'][0]
            self.assertEqual(succ['m'], '')
            self.assertTrue((Path(dirname) / 'plot_phi.csv').exists())

    def test_identicalruns(self):
        with tempdir() as dirname1, tempdir() as dirname2:
            od1 = write_params_report(dirname1, 'summing:3', self.report)
            od2 = write_params_report(dirname2, 'summing:3',
                                      summingreport())
            self.assertEqual(od1.sha256, od2.sha256)

    def test_jsononly(self):
        with tempdir() as dirname:
            od = write_params_report(dirname, 'summing:3', self.report,
                                     formats=('json',),
                                     config=RunConfig())
            names = sorted(p.name for p in Path(dirname).iterdir())
            self.assertEqual(names, ['checksums.json', 'results.json',
                                     'witnesses.json'])
            results = od.read_jsondict('results.json')
            self.assertEqual(results['basis_id'], 'summing:3')
            self.assertEqual(results['config']['catalog']['dim'], 8)

    def test_csvonly(self):
        with tempdir() as dirname:
            write_params_report(dirname, 'summing:3', self.report,
                                formats=('csv',))
            self.assertFalse((Path(dirname) / 'results.json').exists())
            self.assertTrue((Path(dirname) / 'witnesses.json').exists())


class ThresholdsReport(unittest.TestCase):

    def test_rows(self):
        tables = exact_grid_tables(summingbasis(3), ThresholdGrid(2., 3), 4)
        with tempdir() as dirname:
            od = write_thresholds_report(dirname, 'summing:3', tables)
            rows = readcsv(Path(dirname) / 'thresholds.csv')
            self.assertEqual(len(rows), 9)
            self.assertEqual([r['func_id'] for r in rows[::3]],
                             ['lambda', 'theta', 'phi'])
            self.assertEqual([float(r['a']) for r in rows[:3]],
                             [0.5, 0.25, 0.125])
            for r in rows:
                self.assertGreaterEqual(float(r['envelope_value']),
                                        float(r['raw_value']))
                self.assertEqual(r['mode'], 'lower_bound')
            witnesses = od.read_jsondict('witnesses.json')['witnesses']
            self.assertEqual(len(witnesses), 9)


class LebesgueReport(unittest.TestCase):

    def test_rows(self):
        basis = unitvectorbasis(lp(1, 3))
        table = lebesgue_constants(basis)
        with tempdir() as dirname:
            write_lebesgue_report(dirname, 'lp:1.0:3', table,
                                  greedy_constant(basis, table=table))
            rows = readcsv(Path(dirname) / 'lebesgue.csv')
            self.assertEqual([r['m'] for r in rows], ['1', '2', '3'])
            self.assertEqual(rows[-1]['sigma_mode'], '')
            self.assertEqual(rows[0]['sigma_mode'], 'exact')
            self.assertTrue((Path(dirname) / 'plot_L.csv').exists())


class Verdicts(unittest.TestCase):

    results = self_test_fixtures()

    def test_summary(self):
        lines = verdict_summary(self.results).splitlines()
        self.assertTrue(lines[-1].startswith(f"{len(self.results)} checks:"))
        self.assertIn('fail', lines[-2])
        self.assertNotIn('fail', lines[0].split()[1])

    def test_writeverdicts(self):
        with tempdir() as dirname:
            od = write_verdicts_report(dirname, self.results,
                                       formats=('csv',))
            d = od.read_jsondict('verdicts.json')
            self.assertEqual(len(d['results']), len(self.results))
            rows = readcsv(Path(dirname) / 'verdicts.csv')
            self.assertEqual([r['verdict'] for r in rows],
                             [r.verdict for r in self.results])
            self.assertIn('verdicts.json', od.read_jsondict('checksums.json'))


if __name__ == '__main__':
    unittest.main()
