"""Command line interface.

    greedylab params lp:1.0:8
    greedylab thresholds summing:4 --grid-k 4
    greedylab lebesgue lp:2.0:8 --out results
    greedylab verify --config run.json

Each subcommand writes into a subdirectory of the output directory named
after the subcommand. Exit codes are 0 on success, 1 if a verification
check failed, 2 on usage or configuration errors and 3 if a computation cap
was exceeded.

"""
import argparse
import logging
import sys
import warnings

from ._version import __version__
from .catalog import resolve_entry
from .config import read_config
from .estimates import EstimateValue
from .lebesgue import greedy_constant, lebesgue_constants
from .parallel import set_threads
from .parameters import conditionality_report
from .report import write_lebesgue_report, write_params_report, \
    write_thresholds_report, write_verdicts_report, verdict_summary
from .thresholds import exact_grid_tables, monotone_envelope, probe_tables
from .utils import CapacityError, GreedylabError, UnsupportedOracleError, \
    UsageError
from .verification import run_harness, self_test_fixtures

__all__ = ['main', 'cmd_params', 'cmd_thresholds', 'cmd_lebesgue',
           'cmd_verify', 'exitcodes']

logger = logging.getLogger(__name__)

exitcodes = {'success': 0, 'checkfailed': 1, 'usage': 2, 'capacity': 3}


def _clipmmax(config, basis):
    m_max = config.m_max
    if m_max is not None and m_max > basis.dim:
        warnings.warn(f"m_max {m_max} is larger than the dimension "
                      f"{basis.dim}; using {basis.dim}", UserWarning)
        m_max = basis.dim
    return m_max


def _normbounds(basis):
    c = EstimateValue(basis.dual_norm_bound,
                      'exact' if basis.dualnormsexact else 'lower_bound')
    d = EstimateValue(basis.vector_norm_bound, 'exact')
    return c, d


def cmd_params(config, basis_id, exact=False):
    """Writes params.csv with phi, psi, mu, k, SUCC, quasi-greedy and
    truncation quasi-greedy values of a basis."""
    entry = resolve_entry(basis_id)
    basis = entry.basis
    report = conditionality_report(basis, m_max=_clipmmax(config, basis),
                                   probe=config.probefamily(),
                                   vertexcap=config.vertex_cap,
                                   subset_cap=config.subset_cap, exact=exact,
                                   seed=config.seed)
    c, d = _normbounds(basis)
    write_params_report(config.outputdir / 'params', entry.id, report, c, d,
                        formats=config.formats, config=config)
    return exitcodes['success']


def threshold_tables(config, basis, exact=False):
    """Exhaustive-grid tables if the basis is small enough, else probe
    lower bounds with their monotone envelope; with `exact` a capacity
    error is raised instead of falling back to probes."""
    grid = config.thresholdgrid()
    try:
        return exact_grid_tables(basis, grid, config.levels)
    except CapacityError as e:
        if exact:
            raise
        logger.warning("no exhaustive threshold grid (%s); using probes", e)
    tables = probe_tables(basis, grid, config.probefamily())
    return {func_id: monotone_envelope(table)
            for func_id, table in tables.items()}


def cmd_thresholds(config, basis_id, exact=False):
    """Writes thresholds.csv with raw and envelope values of lambda, theta
    and phi on the threshold grid."""
    entry = resolve_entry(basis_id)
    tables = threshold_tables(config, entry.basis, exact=exact)
    write_thresholds_report(config.outputdir / 'thresholds', entry.id,
                            tables, formats=config.formats, config=config)
    return exitcodes['success']


def cmd_lebesgue(config, basis_id, exact=False):
    """Writes lebesgue.csv with lower bounds of the Lebesgue constants."""
    entry = resolve_entry(basis_id)
    basis = entry.basis
    table = lebesgue_constants(basis, probe=config.probefamily(),
                               m_max=_clipmmax(config, basis),
                               seed=config.seed)
    if exact and any(e.hasflag('sigma-upper-bound') for _, e in table):
        raise UnsupportedOracleError(f"no exact best m-term errors for "
                                     f"{basis.space.label}")
    C_g = greedy_constant(basis, table=table)
    write_lebesgue_report(config.outputdir / 'lebesgue', entry.id, table,
                          C_g, formats=config.formats, config=config)
    return exitcodes['success']


def cmd_verify(config, fixture=None):
    """Runs the verification harness, or the self-test fixtures when
    `fixture` is 'corrupted', writes verdicts.json and prints a summary.
    Returns 1 if any check failed."""
    if fixture == 'corrupted':
        results = self_test_fixtures()
    elif fixture is None:
        results = run_harness(config)
    else:
        raise UsageError(f"unknown fixture '{fixture}'")
    write_verdicts_report(config.outputdir / 'verify', results,
                          formats=config.formats, config=config)
    print(verdict_summary(results))
    if any(r.failed for r in results):
        return exitcodes['checkfailed']
    return exitcodes['success']


def _parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--config', help='JSON configuration file')
    common.add_argument('--dim', type=int, help='catalog dimension')
    common.add_argument('--seed', type=int, help='catalog seed')
    common.add_argument('--grid-s', type=float, help='threshold grid ratio')
    common.add_argument('--grid-k', type=int,
                        help='number of threshold grid points')
    common.add_argument('--out', help='output directory')
    common.add_argument('--threads', type=int,
                        help='number of threads (overrides '
                             'GREEDYLAB_THREADS)')
    common.add_argument('--exact', action='store_true',
                        help='fail with a capacity error instead of '
                             'falling back to estimates')
    common.add_argument('--verbose', action='store_true')
    parser = argparse.ArgumentParser(
        prog='greedylab',
        description='Greedy-type parameters of finite-dimensional bases.')
    parser.add_argument('--version', action='version',
                        version=f'greedylab {__version__}')
    sub = parser.add_subparsers(dest='command', required=True)
    for name, helptext in (('params', 'democracy, unconditionality and '
                                      'quasi-greedy parameters'),
                           ('thresholds', 'threshold functions lambda, '
                                          'theta and phi'),
                           ('lebesgue', 'Lebesgue constants')):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument('basis_id', help="e.g. 'lp:1.0:8', 'summing:4' or "
                                        "'file:basis.json'")
    p = sub.add_parser('verify', parents=[common],
                       help='run the verification harness')
    p.add_argument('--fixture', choices=['corrupted'],
                   help='run on the self-test fixtures instead')
    return parser


def main(argv=None):
    args = _parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else
                        logging.WARNING,
                        format='%(levelname)s %(name)s: %(message)s')
    try:
        if args.threads is not None:
            set_threads(args.threads)
        config = read_config(args.config).with_overrides(
            dim=args.dim, seed=args.seed, grid_s=args.grid_s,
            grid_k=args.grid_k, out=args.out)
        if args.command == 'verify':
            return cmd_verify(config, fixture=args.fixture)
        command = {'params': cmd_params, 'thresholds': cmd_thresholds,
                   'lebesgue': cmd_lebesgue}[args.command]
        return command(config, args.basis_id, exact=args.exact)
    except (CapacityError, UnsupportedOracleError) as e:
        print(f"greedylab: {e}", file=sys.stderr)
        return exitcodes['capacity']
    except (UsageError, ValueError, OSError) as e:
        print(f"greedylab: {e}", file=sys.stderr)
        return exitcodes['usage']
    except GreedylabError as e:
        print(f"greedylab: {e}", file=sys.stderr)
        return exitcodes['usage']
