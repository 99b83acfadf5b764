import unittest

import numpy as np

from greedylab.probes import ProbeFamily
from greedylab.utils import UsageError


class Probes(unittest.TestCase):

    def test_deterministic(self):
        a = ProbeFamily(seed=4).coefficients(6)
        b = ProbeFamily(seed=4).coefficients(6)
        np.testing.assert_array_equal(a, b)

    def test_seeddependent(self):
        a = ProbeFamily(seed=4).coefficients(6)
        b = ProbeFamily(seed=5).coefficients(6)
        self.assertFalse(a.shape == b.shape and np.array_equal(a, b))

    def test_nozerorows(self):
        C = ProbeFamily().coefficients(5)
        self.assertTrue(np.all(np.any(C != 0., axis=1)))

    def test_allsignvectorssmalldim(self):
        C = ProbeFamily(support_cap=3, random_count=0).signvectors(
            3, np.random.default_rng(0))
        self.assertEqual(C.shape, (26, 3))

    def test_signvectorslargedim(self):
        C = ProbeFamily(support_cap=4).signvectors(
            12, np.random.default_rng(0))
        self.assertTrue(np.all(np.abs(C).sum(axis=1) <= 4))
        self.assertTrue(np.all(np.isin(C, (-1., 0., 1.))))

    def test_gridonly(self):
        probe = ProbeFamily(s=2., levels=3, gridonly=True)
        C = probe.coefficients(4)
        allowed = [0.] + [sign * 2. ** -j for j in range(4)
                          for sign in (1., -1.)]
        self.assertTrue(np.all(np.isin(C, allowed)))
        self.assertEqual(probe.maxlevel(), 3)

    def test_extra(self):
        probe = ProbeFamily(random_count=0).with_extra([[0.3, 0., 0.]])
        C = probe.coefficients(3)
        np.testing.assert_array_equal(C[-1], [0.3, 0., 0.])

    def test_extrawrongdim(self):
        probe = ProbeFamily().with_extra([[1., 0.]])
        self.assertRaises(UsageError, probe.coefficients, 3)

    def test_invalid(self):
        self.assertRaises(UsageError, ProbeFamily, s=1.)
        self.assertRaises(UsageError, ProbeFamily, support_cap=0)


if __name__ == '__main__':
    unittest.main()
