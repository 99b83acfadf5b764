from unittest import TestLoader, TextTestRunner, TestSuite

from . import test_utils
from . import test_quasinorm
from . import test_basis
from . import test_catalog
from . import test_operators
from . import test_estimates
from . import test_parallel
from . import test_probes
from . import test_witnesses
from . import test_parameters
from . import test_thresholds
from . import test_lebesgue
from . import test_outputdir
from . import test_config
from . import test_report
from . import test_verification
from . import test_cli

modules = [test_utils, test_quasinorm, test_basis, test_catalog,
           test_operators, test_estimates, test_parallel, test_probes,
           test_witnesses, test_parameters, test_thresholds, test_lebesgue,
           test_outputdir, test_config, test_report, test_verification,
           test_cli]


def test(verbosity=1, buffer=True):
    suite = TestSuite()
    for module in modules:
        suite.addTests(TestLoader().loadTestsFromModule(module))
    return TextTestRunner(verbosity=verbosity, buffer=buffer).run(suite)
