import unittest

import numpy as np

from greedylab.basis import BasisSystem
from greedylab.catalog import resolve_entry, summingbasis, unitvectorbasis
from greedylab.parameters import fundamental_function, \
    democracy_parameter, lower_democracy_function, succ_constant, \
    unconditionality_constants, quasi_greedy_constant, \
    truncation_qg_constant, conditionality_report, indicator_statistics, \
    masktoindices, maskbits
from greedylab.probes import ProbeFamily
from greedylab.quasinorm import lp, weaklp, lorentz, linearimage
from greedylab.utils import CapacityError, UnsupportedOracleError, \
    UsageError
from greedylab.witnesses import reevaluate


class Masks(unittest.TestCase):

    def test_masktoindices(self):
        self.assertEqual(masktoindices(0b1011), [0, 1, 3])
        self.assertEqual(masktoindices(0), [])

    def test_maskbits(self):
        np.testing.assert_array_equal(maskbits([5, 2], 3),
                                      [[1., 0., 1.], [0., 1., 0.]])


class UnconditionalGroundTruth(unittest.TestCase):

    def test_lpunitbases(self):
        probe = ProbeFamily(random_count=50)
        for p in (0.5, 1., 2.):
            basis = unitvectorbasis(lp(p, 6))
            report = conditionality_report(basis, probe=probe)
            with self.subTest(p=p):
                np.testing.assert_allclose(
                    report['phi'].values(),
                    np.arange(1, 7) ** (1. / p), rtol=1e-9)
                np.testing.assert_allclose(report['mu'].values(), 1.,
                                           rtol=1e-9)
                np.testing.assert_allclose(report['k'].values(), 1.,
                                           rtol=1e-9)
                self.assertAlmostEqual(report['succ'].value, 1., places=9)
                self.assertAlmostEqual(report['quasigreedy'].value, 1.,
                                       places=9)
                self.assertAlmostEqual(report['truncationqg'].value, 1.,
                                       places=9)
                self.assertTrue(report['phi'].allexact)
                self.assertTrue(report['succ'].isexact)

    def test_l1kexact(self):
        k = unconditionality_constants(unitvectorbasis(lp(1, 8)))
        self.assertTrue(k.allexact)
        np.testing.assert_allclose(k.values(), 1., rtol=1e-12)

    def test_latticeunitbasesexact(self):
        for space in (lp(2, 5), weaklp(1.5, 5), lorentz(2., 1., 5)):
            basis = unitvectorbasis(space)
            k = unconditionality_constants(basis, exact=True)
            with self.subTest(space=space.label):
                self.assertTrue(k.allexact)
                np.testing.assert_array_equal(k.values(), 1.)
                self.assertAlmostEqual(reevaluate(basis, k[3].witness), 1.,
                                       places=12)

    def test_l2kprobe(self):
        M = np.triu(np.ones((5, 5)))
        k = unconditionality_constants(BasisSystem(lp(2, 5), M),
                                       probe=ProbeFamily(random_count=20))
        self.assertFalse(k.allexact)
        self.assertTrue(k.isnondecreasing())
        self.assertGreaterEqual(k[1].value, 1.)

    def test_linearimagel1vertexcount(self):
        # 2n vertices keep this within the vertex work cap, 2^n would not
        M = np.triu(np.ones((16, 16)))
        basis = BasisSystem(linearimage(lp(1, 16), M), np.eye(16))
        k = unconditionality_constants(basis, m_max=4, exact=True)
        self.assertTrue(k.allexact)
        self.assertTrue(k.isnondecreasing())
        self.assertAlmostEqual(reevaluate(basis, k[4].witness), k[4].value,
                               places=9)


class Summing(unittest.TestCase):

    def setUp(self):
        self.basis = summingbasis(6)

    def test_fundamentalfunction(self):
        phi = fundamental_function(self.basis)
        np.testing.assert_allclose(phi.values(), np.arange(1, 7))

    def test_unconditionality(self):
        k = unconditionality_constants(self.basis)
        self.assertTrue(k.allexact)
        self.assertEqual(k[1].value, 2.)
        self.assertTrue(k.isnondecreasing())
        # k_m grows with m for the summing basis
        self.assertGreater(k[6].value, k[1].value)

    def test_witnesses(self):
        report = conditionality_report(self.basis,
                                       probe=ProbeFamily(random_count=30))
        for key, value in report.items():
            estimates = [e for _, e in value] if hasattr(value, 'ms') \
                else [value]
            for e in estimates:
                with self.subTest(param=key):
                    self.assertAlmostEqual(
                        reevaluate(self.basis, e.witness) / e.value, 1.,
                        places=9)


class Democracy(unittest.TestCase):

    def test_blockbasismu4(self):
        basis = resolve_entry('l2blocks:1.0:1+2+3+4').basis
        mu = democracy_parameter(basis, m_max=4)
        self.assertTrue(mu.allexact)
        self.assertAlmostEqual(mu[4].value, 2., places=12)
        self.assertAlmostEqual(mu[4].value / mu[1].value, 2., places=12)

    def test_muconsistentwithphipsi(self):
        basis = resolve_entry('perturbed:6:1').basis
        phi = fundamental_function(basis)
        psi = lower_democracy_function(basis)
        mu = democracy_parameter(basis)
        for m in range(1, 7):
            with self.subTest(m=m):
                self.assertGreaterEqual(mu[m].value, 1.)
                self.assertLessEqual(psi[m].value, phi[m].value)

    def test_sampled(self):
        basis = unitvectorbasis(lp(1, 8))
        stats, isexact = indicator_statistics(basis, subset_cap=10)
        self.assertFalse(isexact)
        self.assertEqual(stats[3][0], 3.)
        psi = lower_democracy_function(basis, subset_cap=10)
        self.assertEqual(psi[2].mode, 'upper_bound')

    def test_sampledexact(self):
        self.assertRaises(CapacityError, fundamental_function,
                          unitvectorbasis(lp(1, 8)), subset_cap=10,
                          exact=True)

    def test_mmaxtoolarge(self):
        self.assertRaises(UsageError, fundamental_function,
                          unitvectorbasis(lp(1, 3)), m_max=4)


class Succ(unittest.TestCase):

    def test_summing(self):
        # x_1 - x_2 + x_3 - x_4 has norm 1, x_1 + x_3 has norm 2
        e = succ_constant(summingbasis(4))
        self.assertTrue(e.isexact)
        self.assertGreater(e.value, 1.)
        self.assertAlmostEqual(reevaluate(summingbasis(4), e.witness),
                               e.value, places=12)

    def test_atleastone(self):
        self.assertEqual(succ_constant(unitvectorbasis(lp(2, 3))).value, 1.)

    def test_sampledlargedim(self):
        e = succ_constant(unitvectorbasis(lp(1, 14)), samples=20)
        self.assertEqual(e.mode, 'lower_bound')
        self.assertRaises(CapacityError, succ_constant,
                          unitvectorbasis(lp(1, 14)), exact=True)


class ExactOracleErrors(unittest.TestCase):

    def test_notpolyhedral(self):
        self.assertRaises(UnsupportedOracleError,
                          unconditionality_constants,
                          BasisSystem(lp(2, 4), np.triu(np.ones((4, 4)))),
                          exact=True)

    def test_vertexcap(self):
        self.assertRaises(CapacityError, unconditionality_constants,
                          summingbasis(6), vertexcap=4, exact=True)


class GreedyTypeConstants(unittest.TestCase):

    def test_summingquasigreedy(self):
        basis = summingbasis(5)
        probe = ProbeFamily(random_count=20)
        qg = quasi_greedy_constant(basis, probe)
        tqg = truncation_qg_constant(basis, probe)
        self.assertEqual(qg.mode, 'lower_bound')
        self.assertGreater(qg.value, 1.)
        for e in (qg, tqg):
            self.assertAlmostEqual(reevaluate(basis, e.witness), e.value,
                                   places=9)

    def test_emptyprobe(self):
        basis = BasisSystem(lp(1, 2), np.eye(2))

        class Empty(ProbeFamily):
            def coefficients(self, dim):
                return np.zeros((0, dim))

        self.assertRaises(UsageError, quasi_greedy_constant, basis, Empty())


if __name__ == '__main__':
    unittest.main()
