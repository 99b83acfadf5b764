import unittest

import numpy as np

from greedylab.catalog import make_catalog, summingbasis, unitvectorbasis
from greedylab.operators import GreedySelection, SignedSet, greedy_set, \
    all_greedy_sets, all_greedy_sets_coefs, project, greedy_operator, \
    restricted_truncation, restricted_truncation_m, truncation_operator, \
    threshold_set, thresholding_greedy, thresholding_truncation, indicator, \
    greedy_masks, restricted_truncation_batch, truncation_operator_coefs
from greedylab.quasinorm import lp
from greedylab.utils import CapacityError, UsageError


def l1basis(dim):
    return unitvectorbasis(lp(1, dim))


class GreedySet(unittest.TestCase):

    def test_largestfirst(self):
        basis = l1basis(3)
        self.assertEqual(greedy_set(basis, [1., -3., 2.], 2).indices, (1, 2))

    def test_tiesbyindex(self):
        basis = l1basis(4)
        self.assertEqual(greedy_set(basis, [1., 2., -2., 2.], 2).indices,
                         (1, 2))

    def test_mzero(self):
        self.assertEqual(greedy_set(l1basis(3), [1., 2., 3.], 0).indices, ())

    def test_mtoolarge(self):
        self.assertRaises(UsageError, greedy_set, l1basis(3), [1., 2., 3.],
                          4)

    def test_allgreedysetsties(self):
        selections = all_greedy_sets_coefs([2., 1., 1., 1.], 2)
        self.assertEqual(selections[0], GreedySelection((0, 1)))
        self.assertEqual({s.asset() for s in selections},
                         {frozenset({0, 1}), frozenset({0, 2}),
                          frozenset({0, 3})})

    def test_allgreedysetsnoties(self):
        self.assertEqual(len(all_greedy_sets(l1basis(3), [3., 2., 1.], 2)),
                         1)

    def test_tiecap(self):
        self.assertRaises(CapacityError, all_greedy_sets_coefs,
                          np.ones(14), 3, tiecap=12)

    def test_masks(self):
        masks = greedy_masks([[1., 3., 2.], [1., 1., 1.]], 2)
        np.testing.assert_array_equal(masks, [[False, True, True],
                                              [True, True, False]])


class Projections(unittest.TestCase):

    def test_l1example(self):
        basis = l1basis(3)
        f = np.array([3., 2., 1.])
        np.testing.assert_array_equal(greedy_operator(basis, f, 1),
                                      [3., 0., 0.])
        np.testing.assert_array_equal(project(basis, f, [0, 2]),
                                      [3., 0., 1.])

    def test_summingprojection(self):
        basis = summingbasis(3)
        f = basis.vectors @ np.array([1., -1., 2.])
        np.testing.assert_allclose(project(basis, f, [1]),
                                   -basis.vectors[:, 1])

    def test_outofrange(self):
        self.assertRaises(UsageError, project, l1basis(3), [1., 2., 3.], [3])


class Truncations(unittest.TestCase):

    def test_restrictedtruncation(self):
        basis = l1basis(3)
        np.testing.assert_array_equal(
            restricted_truncation(basis, [3., -2., 1.], [0, 1]),
            [2., -2., 0.])

    def test_emptyset(self):
        np.testing.assert_array_equal(
            restricted_truncation(l1basis(2), [1., 2.], []), [0., 0.])

    def test_zerocoefficientinset(self):
        np.testing.assert_array_equal(
            restricted_truncation(l1basis(2), [0., 2.], [0, 1]), [0., 0.])

    def test_restrictedtruncationm(self):
        np.testing.assert_array_equal(
            restricted_truncation_m(l1basis(3), [3., -2., 1.], 2),
            [2., -2., 0.])

    def test_truncationidentity(self):
        rng = np.random.default_rng(7)
        for entry in make_catalog(8):
            basis = entry.basis
            with self.subTest(basis=entry.id):
                for _ in range(200):
                    f = rng.standard_normal(8)
                    m = int(rng.integers(0, 9))
                    lhs = truncation_operator(basis, f, m)
                    rhs = restricted_truncation_m(basis, f, m) + f - \
                        greedy_operator(basis, f, m)
                    self.assertLess(np.abs(lhs - rhs).max(), 1e-10)

    def test_constantmagnitudeongreedyset(self):
        rng = np.random.default_rng(8)
        coefs = rng.standard_normal(8)
        out = truncation_operator_coefs(coefs, 3)
        A = list(np.argsort(-np.abs(coefs), kind='stable')[:3])
        magnitudes = np.abs(out[A])
        self.assertTrue(np.all(magnitudes == magnitudes[0]))
        np.testing.assert_array_equal(np.sign(out[A]), np.sign(coefs[A]))

    def test_batch(self):
        C = np.array([[3., -2., 1.], [0., 1., 1.]])
        masks = np.array([[True, True, False], [True, True, False]])
        np.testing.assert_array_equal(restricted_truncation_batch(C, masks),
                                      [[2., -2., 0.], [0., 0., 0.]])


class Thresholding(unittest.TestCase):

    def test_thresholdset(self):
        self.assertEqual(threshold_set(l1basis(3), [0.5, -1., 2.], 1.),
                         frozenset({1, 2}))

    def test_thresholdinggreedy(self):
        np.testing.assert_array_equal(
            thresholding_greedy(l1basis(3), [0.5, -1., 2.], 1.),
            [0., -1., 2.])

    def test_thresholdingtruncation(self):
        np.testing.assert_array_equal(
            thresholding_truncation(l1basis(3), [0.5, -1., 2.], 1.),
            [0., -1., 1.])

    def test_emptythresholdset(self):
        np.testing.assert_array_equal(
            thresholding_truncation(l1basis(2), [0.5, 0.2], 1.), [0., 0.])

    def test_negativethreshold(self):
        self.assertRaises(UsageError, threshold_set, l1basis(2), [1., 1.],
                          -1.)


class SignedSets(unittest.TestCase):

    def test_allsigns(self):
        signedsets = list(SignedSet.allsigns([2, 0]))
        self.assertEqual(len(signedsets), 4)
        self.assertEqual(signedsets[0].signs, {0: 1, 2: 1})

    def test_invalidsign(self):
        self.assertRaises(UsageError, SignedSet, {0: 2})

    def test_indicatorsumming(self):
        basis = summingbasis(3)
        f = indicator(basis, SignedSet({0: 1, 2: -1}))
        np.testing.assert_array_equal(f, [0., -1., -1.])

    def test_indicatoroutofrange(self):
        self.assertRaises(UsageError, indicator, l1basis(2),
                          SignedSet({2: 1}))


if __name__ == '__main__':
    unittest.main()
