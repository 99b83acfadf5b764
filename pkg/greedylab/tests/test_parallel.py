import os
import unittest
from unittest import mock

import numpy as np

from greedylab.parallel import mapblocks, set_threads, get_threads, \
    argmax_first


class Threads(unittest.TestCase):

    def tearDown(self):
        set_threads(None)

    def test_environment(self):
        with mock.patch.dict(os.environ, {'GREEDYLAB_THREADS': '3'}):
            self.assertEqual(get_threads(), 3)

    def test_invalidenvironment(self):
        with mock.patch.dict(os.environ, {'GREEDYLAB_THREADS': 'many'}):
            with self.assertWarns(UserWarning):
                self.assertEqual(get_threads(), 1)

    def test_setoverridesenvironment(self):
        with mock.patch.dict(os.environ, {'GREEDYLAB_THREADS': '3'}):
            set_threads(2)
            self.assertEqual(get_threads(), 2)

    def test_invalidset(self):
        self.assertRaises(ValueError, set_threads, 0)


class MapBlocks(unittest.TestCase):

    def tearDown(self):
        set_threads(None)

    def test_order(self):
        for n in (1, 4):
            set_threads(n)
            with self.subTest(threads=n):
                result = mapblocks(lambda s, e: list(range(s, e)), 10, 3)
                self.assertEqual(result, [[0, 1, 2], [3, 4, 5], [6, 7, 8],
                                          [9]])

    def test_empty(self):
        self.assertEqual(mapblocks(lambda s, e: e - s, 0, 3), [])


class ArgmaxFirst(unittest.TestCase):

    def test_firstofequal(self):
        self.assertEqual(argmax_first([1., 3., 3.]), 1)

    def test_nan(self):
        self.assertEqual(argmax_first([np.nan, 1.]), 1)

    def test_empty(self):
        self.assertEqual(argmax_first([]), -1)
        self.assertEqual(argmax_first([np.nan]), -1)


if __name__ == '__main__':
    unittest.main()
