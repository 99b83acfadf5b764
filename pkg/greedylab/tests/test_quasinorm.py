import math
import unittest

import numpy as np

from greedylab.quasinorm import QuasiNorm, lp, lorentz, weaklp, l2blocks, \
    linearimage, eval_norm, eval_norms, rearrange_nonincreasing, \
    unit_ball_vertices, unit_ball_vertex_count, is_polyhedral, is_lattice
from greedylab.utils import CapacityError, UnsupportedOracleError, \
    UsageError


class LpNorms(unittest.TestCase):

    def test_l1(self):
        self.assertEqual(eval_norm(lp(1, 3), [3., -2., 1.]), 6.)

    def test_l2(self):
        self.assertAlmostEqual(eval_norm(lp(2, 2), [3., 4.]), 5., places=14)

    def test_linf(self):
        self.assertEqual(eval_norm(lp('inf', 3), [1., -7., 2.]), 7.)

    def test_lhalf(self):
        self.assertAlmostEqual(eval_norm(lp(0.5, 2), [1., 1.]), 4.,
                               places=14)

    def test_pconvexity(self):
        self.assertEqual(lp(0.5, 3).p_convexity, 0.5)
        self.assertEqual(lp(2, 3).p_convexity, 1.)

    def test_wronglength(self):
        self.assertRaises(UsageError, eval_norm, lp(1, 3), [1., 2.])

    def test_nonfinite(self):
        self.assertRaises(UsageError, eval_norm, lp(1, 2), [1., np.inf])

    def test_invalidp(self):
        self.assertRaises(UsageError, lp, 0, 3)
        self.assertRaises(UsageError, lp, 'x', 3)

    def test_pconvexitytoolarge(self):
        self.assertRaises(UsageError, lp, 0.5, 3, p_convexity=1.)


class QuasiTriangle(unittest.TestCase):

    def test_pconvexityinequality(self):
        rng = np.random.default_rng(3)
        spaces = [lp(0.5, 5), lp(1, 5), lp(2, 5), lorentz(2, 1, 5),
                  lorentz(1, 0.5, 5), weaklp(1, 5), l2blocks(0.5, (2, 3))]
        for space in spaces:
            p = space.p_convexity
            F = rng.standard_normal((200, 5))
            G = rng.standard_normal((200, 5))
            lhs = eval_norms(space, F + G) ** p
            rhs = eval_norms(space, F) ** p + eval_norms(space, G) ** p
            with self.subTest(space=space.label):
                self.assertTrue(np.all(lhs <= rhs * (1 + 1e-12)))


class RearrangementNorms(unittest.TestCase):

    def test_rearrange(self):
        r = rearrange_nonincreasing([1., -3., 2., -3.])
        np.testing.assert_array_equal(r, [3., 3., 2., 1.])

    def test_weakl1(self):
        # sup a_n * n
        self.assertEqual(eval_norm(weaklp(1, 3), [1., 1., 1.]), 3.)
        self.assertEqual(eval_norm(weaklp(1, 3), [4., 1., 1.]), 4.)

    def test_lorentzqequalspislp(self):
        rng = np.random.default_rng(0)
        f = rng.standard_normal(6)
        self.assertAlmostEqual(eval_norm(lorentz(2, 2, 6), f),
                               eval_norm(lp(2, 6), f), places=12)

    def test_lorentz21indicator(self):
        # sum_{n<=m} n^(-1/2)
        m = 4
        expected = sum(n ** -0.5 for n in range(1, m + 1))
        self.assertAlmostEqual(eval_norm(lorentz(2, 1, 4), np.ones(4)),
                               expected, places=12)

    def test_lorentzqinfisweaklp(self):
        self.assertEqual(lorentz(1, 'inf', 3), weaklp(1, 3))

    def test_lorentzqlargerthanp(self):
        self.assertRaises(UsageError, lorentz, 1, 2, 3)


class BlockNorms(unittest.TestCase):

    def test_l2blocksl1(self):
        space = l2blocks(1, (1, 2))
        self.assertEqual(space.dim, 3)
        self.assertAlmostEqual(eval_norm(space, [1., 3., 4.]), 6.,
                               places=14)

    def test_invalidblocks(self):
        self.assertRaises(UsageError, l2blocks, 1, (2, 0))


class LinearImage(unittest.TestCase):

    def test_imageofunitvector(self):
        M = np.array([[1., 1.], [0., 1.]])
        space = linearimage(lp(1, 2), M)
        # the columns of M have norm one
        self.assertAlmostEqual(eval_norm(space, M[:, 1]), 1., places=14)
        self.assertFalse(is_lattice(space))
        self.assertTrue(is_polyhedral(space))

    def test_singular(self):
        self.assertRaises(UsageError, linearimage, lp(1, 2),
                          [[1., 1.], [1., 1.]])

    def test_wrongshape(self):
        self.assertRaises(UsageError, linearimage, lp(1, 2), np.eye(3))


class Vertices(unittest.TestCase):

    def test_l1vertices(self):
        V = unit_ball_vertices(lp(1, 3))
        self.assertEqual(V.shape, (6, 3))
        np.testing.assert_array_equal(eval_norms(lp(1, 3), V), np.ones(6))

    def test_linfvertices(self):
        V = unit_ball_vertices(lp('inf', 3))
        self.assertEqual(V.shape, (8, 3))

    def test_vertexcount(self):
        M = np.triu(np.ones((5, 5)))
        for space in (lp(1, 5), lp('inf', 3), linearimage(lp(1, 5), M),
                      linearimage(lp('inf', 3), np.eye(3))):
            with self.subTest(space=space.label):
                self.assertEqual(unit_ball_vertex_count(space),
                                 len(unit_ball_vertices(space)))
        self.assertEqual(unit_ball_vertex_count(linearimage(lp(1, 5), M)),
                         10)
        self.assertRaises(UnsupportedOracleError, unit_ball_vertex_count,
                          lp(2, 3))

    def test_notpolyhedral(self):
        self.assertRaises(UnsupportedOracleError, unit_ball_vertices,
                          lp(2, 3))

    def test_capacity(self):
        self.assertRaises(CapacityError, unit_ball_vertices, lp(1, 20),
                          vertexcap=16)


class Serialization(unittest.TestCase):

    def test_dictroundtrip(self):
        spaces = [lp(0.5, 3), lp('inf', 3), lorentz(2, 1, 4), weaklp(1, 4),
                  l2blocks(1, (1, 2)), linearimage(lp(1, 2), [[2., 0.],
                                                              [1., 1.]])]
        for space in spaces:
            with self.subTest(space=space.label):
                self.assertEqual(QuasiNorm.from_dict(space.to_dict()),
                                 space)

    def test_infasstring(self):
        self.assertEqual(lp('inf', 2).to_dict()['p'], 'inf')
        self.assertTrue(math.isinf(
            QuasiNorm.from_dict({'kind': 'lp', 'p': 'inf',
                                 'dim': 2}).params['p']))

    def test_unknownkind(self):
        self.assertRaises(UsageError, QuasiNorm.from_dict,
                          {'kind': 'orlicz', 'dim': 2})

    def test_missingkey(self):
        self.assertRaises(UsageError, QuasiNorm.from_dict, {'kind': 'lp'})


if __name__ == '__main__':
    unittest.main()
