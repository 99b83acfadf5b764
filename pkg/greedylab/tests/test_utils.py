import json
import unittest

import numpy as np

from greedylab.utils import fit_blocks, iterblocks, write_jsonfile, \
    formatfloat, check_vector, check_indices, filesha256, tempdir, \
    CapacityError, ConfigError, UsageError


class FitBlocks(unittest.TestCase):

    def test_withremainder(self):
        self.assertEqual(fit_blocks(10, 3), (3, 9, 1))

    def test_exact(self):
        self.assertEqual(fit_blocks(9, 3), (3, 9, 0))

    def test_blocklargerthantotal(self):
        self.assertEqual(fit_blocks(2, 3), (0, 0, 2))

    def test_invalidblocklen(self):
        self.assertRaises(ValueError, fit_blocks, 10, 0)
        self.assertRaises(ValueError, fit_blocks, -1, 3)


class IterBlocks(unittest.TestCase):

    def test_coverswithremainder(self):
        self.assertEqual(list(iterblocks(10, 4)), [(0, 4), (4, 8), (8, 10)])

    def test_shorterthanblock(self):
        self.assertEqual(list(iterblocks(3, 8)), [(0, 3)])

    def test_empty(self):
        self.assertEqual(list(iterblocks(0, 8)), [])


class WriteJsonFile(unittest.TestCase):

    def test_pathexistsdonotoverwrite(self):
        with tempdir() as dirname:
            filepath = dirname / "test.json"
            open(filepath, 'w').close()
            self.assertRaises(OSError, write_jsonfile, path=filepath,
                              data={'a': 1})

    def test_wrongtype(self):
        with tempdir() as dirname:
            self.assertRaises(TypeError, write_jsonfile,
                              path=dirname / 'test.json', data=unittest)

    def test_acceptnumpyobjects(self):
        with tempdir() as dirname:
            filepath = dirname / 'test.json'
            d1 = {'a': np.int64(1), 'b': np.float64(0.5),
                  'c': np.array([1, 2]), 'd': np.bool_(True),
                  'e': frozenset({3, 1})}
            write_jsonfile(path=filepath, data=d1)
            with open(filepath, 'r') as fp:
                d2 = json.load(fp)
            self.assertEqual(d2, {'a': 1, 'b': 0.5, 'c': [1, 2], 'd': True,
                                  'e': [1, 3]})


class FormatFloat(unittest.TestCase):

    def test_roundtrip(self):
        for value in (0.1, 1 / 3, 2 ** 0.5, 1e-300, 123456789.123456789):
            with self.subTest(value=value):
                self.assertEqual(float(formatfloat(value)), value)

    def test_integervalue(self):
        self.assertEqual(formatfloat(1.), '1')


class CheckVector(unittest.TestCase):

    def test_returnsfloatarray(self):
        f = check_vector([1, 2, 3], dim=3)
        self.assertEqual(f.dtype, np.float64)

    def test_wronglength(self):
        self.assertRaises(UsageError, check_vector, [1., 2.], dim=3)

    def test_nonfinite(self):
        self.assertRaises(UsageError, check_vector, [1., np.nan])
        self.assertRaises(UsageError, check_vector, [np.inf, 1.])

    def test_twodimensional(self):
        self.assertRaises(UsageError, check_vector, [[1., 2.]])

    def test_usageerrorisvalueerror(self):
        self.assertRaises(ValueError, check_vector, [1., 2.], dim=3)


class CheckIndices(unittest.TestCase):

    def test_sortsandremovesduplicates(self):
        self.assertEqual(check_indices([3, 1, 3], 4), [1, 3])

    def test_outofrange(self):
        self.assertRaises(UsageError, check_indices, [4], 4)
        self.assertRaises(UsageError, check_indices, [-1], 4)


class Exceptions(unittest.TestCase):

    def test_capacityerrornamescap(self):
        e = CapacityError('subset_cap', 10, 20)
        self.assertIn('subset_cap', str(e))
        self.assertEqual(e.capvalue, 10)
        self.assertEqual(e.needed, 20)

    def test_configerrorisusageerror(self):
        self.assertTrue(issubclass(ConfigError, UsageError))


class FileSha256(unittest.TestCase):

    def test_knownvalue(self):
        with tempdir() as dirname:
            filepath = dirname / 'a.txt'
            with open(filepath, 'wb') as f:
                f.write(b'abc')
            self.assertEqual(filesha256(filepath),
                             'ba7816bf8f01cfea414140de5dae2223b00361a396177a'
                             '9cb410ff61f20015ad')


if __name__ == '__main__':
    unittest.main()
