"""Checks that tie computed tables to inequalities about greedy-type
parameters.

Each check returns a `CheckResult` with verdict 'pass', 'fail' or
'recorded'. Most computed values are lower bounds of sup-type quantities, so
an inequality can only fail when the estimate modes make the violation
real: an upper bound violated by a lower-bound estimate is a violation, but
a lower-bound estimate falling short of an upper bound proves nothing.
Checks that cannot fail soundly record their ratios instead.

"""
import logging
import math
from dataclasses import dataclass, field

import numpy as np

from .catalog import make_catalog, resolve_entry
from .estimates import EstimateValue, ParamTable, FunctionTable
from .lebesgue import lebesgue_constants, greedy_constant
from .parameters import fundamental_function, democracy_parameter, \
    unconditionality_constants, succ_constant, maxsuccdim
from .quasinorm import lorentz, weaklp, eval_norms
from .thresholds import ThresholdGrid, exact_grid_tables, probe_tables, \
    constant_coefficient_bound, succ_from_lambda, monotone_envelope
from .utils import UsageError, CapacityError

__all__ = ['CheckResult', 'verdicts', 'proof_constants',
           'check_theta_le_phi', 'check_monotone', 'check_thm_NUN_chain',
           'check_thm_NUCC', 'check_lebesgue_equivalence',
           'check_KT_dichotomy', 'check_lorentz_domination',
           'check_truncation_log_growth', 'check_succ_vs_lambda',
           'self_test_fixtures', 'run_harness', 'oracle_dim',
           'lebesgue_window', 'kt_bound']

logger = logging.getLogger(__name__)

verdicts = ('pass', 'fail', 'recorded')
oracle_dim = 4
lebesgue_window = (1. / 8., 8.)
kt_bound = 8.
kt_growth = 1.4
kt_mindim = 10
nuccspread = 50.


@dataclass(frozen=True)
class CheckResult:
    """Outcome of one check on one basis.

    Attributes
    ----------
    check_id: str
    basis_id: str
    verdict: {'pass', 'fail', 'recorded'}
    details: dict
        Named numbers (and lists of numbers) the verdict is based on.
    constants_used: dict
        Maps constant names to {'value': ..., 'formula': ...}.

    """
    check_id: str
    basis_id: str
    verdict: str
    details: dict = field(default_factory=dict, compare=False)
    constants_used: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if self.verdict not in verdicts:
            raise UsageError(f"verdict should be one of {verdicts}, not "
                             f"'{self.verdict}'")

    @property
    def failed(self):
        return self.verdict == 'fail'

    def to_dict(self):
        return {'check_id': self.check_id, 'basis_id': self.basis_id,
                'verdict': self.verdict, 'details': self.details,
                'constants_used': self.constants_used}


def proof_constants(p, s=2.):
    """Explicit constants of the threshold inequalities for a p-Banach space
    and grid ratio s."""
    if not 0 < p <= 1:
        raise UsageError(f"p should be in (0, 1], not {p}")
    if not s > 1:
        raise UsageError(f"s should be > 1, not {s}")
    cps = s * (1. - s ** -p) ** (-1. / p)
    theorem = 5. * 2. ** (1. / p + 5.) * (2. ** p - 1.) ** (-1. / p)
    return {
        'C_ps': {'value': cps, 'formula': 's*(1-s^-p)^(-1/p)'},
        'C_nun': {'value': theorem,
                  'formula': '5*2^(1/p+5)*(2^p-1)^(-1/p)'},
        'C_nun_intermediate': {'value': (s + 1.) * 2. ** (1. / p + 1.) * cps,
                               'formula': '(s+1)*2^(1/p+1)*C_ps'},
    }


def _checkgrids(*tables):
    grids = {t.grid for t in tables}
    if len(grids) != 1:
        raise UsageError(f"tables are on different grids: "
                         f"{sorted(map(str, grids))}")
    return tables[0].grid


def _ratios(numerators, denominators):
    numerators = np.asarray(numerators, dtype='float64')
    denominators = np.asarray(denominators, dtype='float64')
    return np.where(denominators > 0,
                    numerators / np.where(denominators > 0, denominators, 1.),
                    np.inf)


def check_theta_le_phi(basis_id, tables):
    """theta <= phi at every grid point.

    The inequality holds for tables computed over one search space, so it
    can fail only if both tables are exhaustive or both come from probes.

    """
    theta, phi = tables['theta'], tables['phi']
    _checkgrids(theta, phi)
    differences = theta.raw - phi.raw
    details = {'max_difference': float(differences.max()),
               'points': [float(a) for a in theta.grid.points],
               'theta': theta.raw.tolist(), 'phi': phi.raw.tolist()}
    if np.all(differences <= 0.):
        verdict = 'pass'
    elif theta.isexhaustive == phi.isexhaustive:
        verdict = 'fail'
    else:
        verdict = 'recorded'
    return CheckResult('theta_le_phi', basis_id, verdict, details)


def check_monotone(basis_id, tables, tolerance=1e-12):
    """Exhaustive tables are non-increasing in a; probe tables are only
    recorded."""
    details = {}
    exhaustive = []
    violated = False
    for func_id, table in sorted(tables.items()):
        raw = table.raw
        # grid order is decreasing a, so values should not decrease
        drops = raw[:-1] - raw[1:] - tolerance * np.abs(raw[:-1])
        nviolations = int(np.count_nonzero(drops > 0.))
        details[func_id] = {'violations': nviolations,
                            'exhaustive': table.isexhaustive,
                            'envelope_monotone': bool(np.all(
                                np.diff(table.envelope) >= 0.))}
        if table.isexhaustive:
            exhaustive.append(func_id)
            violated = violated or nviolations > 0
    if violated:
        verdict = 'fail'
    elif exhaustive:
        verdict = 'pass'
    else:
        verdict = 'recorded'
    return CheckResult('monotone', basis_id, verdict, details)


def check_thm_NUN_chain(basis_id, tables, p, C_u=None):
    """Ratios of the chain lambda <~ theta <~ phi <~ lambda/a.

    Records r1 = max lambda/theta, r2 = max theta/phi and
    r3 = max a phi/lambda. Fails if r2 > 1 on tables from one search space,
    or if r3 exceeds C_nun * C_u when lambda and phi are exhaustive and C_u
    is exact.

    """
    lam, theta, phi = tables['lambda'], tables['theta'], tables['phi']
    grid = _checkgrids(lam, theta, phi)
    points = grid.points
    r1 = float(_ratios(lam.raw, theta.raw).max())
    r2 = float(_ratios(theta.raw, phi.raw).max())
    r3 = float(_ratios(points * phi.raw, lam.raw).max())
    constants = proof_constants(p, grid.s)
    details = {'r1': r1, 'r2': r2, 'r3': r3, 'p': p}
    verdict = 'recorded'
    if r2 > 1. and theta.isexhaustive == phi.isexhaustive:
        verdict = 'fail'
    if C_u is not None:
        bound = constants['C_nun']['value'] * C_u.value
        constants['C_u'] = {'value': C_u.value, 'mode': C_u.mode,
                            'formula': 'max ||sum a_n x_n|| / '
                                       'min_eps ||1_{eps,A}||'}
        details['r3_bound'] = bound
        if lam.isexhaustive and phi.isexhaustive and C_u.isexact:
            if r3 > bound * (1. + 1e-12):
                verdict = 'fail'
            elif verdict != 'fail':
                verdict = 'pass'
    return CheckResult('thm_NUN_chain', basis_id, verdict, details,
                       constants)


def check_thm_NUCC(basis_id, lambda_table, k_table, p, c=None, d=None,
                   C_u=None):
    """k_m against lambda(m^(-1/p)) (log_2 m)^(1/p).

    For m >= 2, m^(-1/p) is snapped down to the grid. The ratios
    k_m / (lambda (log_2 m)^(1/p)) are recorded. A hard bound
    (2 (c d)^p + 2 C_u^p log_2(m) lambda^p)^(1/p) is checked when k_m is
    exact, the lambda table exhaustive, and c and C_u are exact.

    """
    grid = lambda_table.grid
    ratios, bounds = {}, {}
    hard = c is not None and d is not None and C_u is not None and \
        c.isexact and C_u.isexact and lambda_table.isexhaustive
    violated = False
    allhard = True
    for m, k in k_table:
        if m < 2:
            continue
        a = grid.snap_down(m ** (-1. / p))
        if a is None:
            continue
        lam = lambda_table.value_at(a)
        logm = math.log2(m)
        ratios[m] = k.value / (lam * logm ** (1. / p))
        if hard and k.isexact:
            bound = (2. * (c.value * d) ** p +
                     2. * C_u.value ** p * logm * lam ** p) ** (1. / p)
            bounds[m] = bound
            violated = violated or k.value > bound * (1. + 1e-12)
        else:
            allhard = False
    details = {'ratios': {str(m): r for m, r in ratios.items()},
               'bounds': {str(m): b for m, b in bounds.items()}, 'p': p}
    if ratios:
        values = np.array(list(ratios.values()))
        details['max_ratio'] = float(values.max())
        details['spread'] = float(values.max() / values.min()) \
            if values.min() > 0 else math.inf
        details['spread_bounded'] = details['spread'] <= nuccspread
    constants = {}
    if C_u is not None:
        constants['C_u'] = {'value': C_u.value, 'mode': C_u.mode,
                            'formula': 'max ||sum a_n x_n|| / '
                                       'min_eps ||1_{eps,A}||'}
    if violated:
        verdict = 'fail'
    elif hard and allhard and ratios:
        verdict = 'pass'
    else:
        verdict = 'recorded'
    return CheckResult('thm_NUCC', basis_id, verdict, details, constants)


def check_lebesgue_equivalence(basis_id, L_table, mu_table, k_table,
                               tags=frozenset()):
    """L_m / max(mu_m, k_m) within [1/8, 8] for unconditional democratic
    bases.

    A ratio above 8 fails when mu and k are exact (L_m is a lower bound); a
    ratio below 1/8 fails only when L_m is exact. The check passes only
    when every compared mu_m and k_m is exact and no L_m carries the
    'sigma-upper-bound' flag; otherwise in-window ratios are recorded.

    """
    low, high = lebesgue_window
    ratios = {}
    violated = False
    allexact = True
    for m, L in L_table:
        if m not in mu_table or m not in k_table:
            continue
        mu, k = mu_table[m], k_table[m]
        ratio = L.value / max(mu.value, k.value)
        ratios[m] = ratio
        allexact = allexact and mu.isexact and k.isexact and \
            not L.hasflag('sigma-upper-bound')
        if ratio > high and mu.isexact and k.isexact:
            violated = True
        if ratio < low and L.isexact:
            violated = True
    details = {'ratios': {str(m): r for m, r in ratios.items()},
               'window': [low, high]}
    relevant = {'unconditional', 'democratic'}.issubset(tags)
    if not relevant or not ratios:
        verdict = 'recorded'
    elif violated:
        verdict = 'fail'
    elif allexact and all(low <= r <= high for r in ratios.values()):
        verdict = 'pass'
    else:
        verdict = 'recorded'
    return CheckResult('lebesgue_equivalence', basis_id, verdict, details)


def check_KT_dichotomy(catalog_results):
    """Unconditional democratic entries have a bounded greedy constant;
    non-democratic unconditional entries show growing democracy parameters.

    Parameters
    ----------
    catalog_results: sequence of dict
        One per entry, with keys 'basis_id', 'tags', 'dim', and 'C_g'
        (EstimateValue) and/or 'mu' (ParamTable).

    The growth clause asks, at dim >= 10, for mu_m strictly increasing up to
    the largest block size (or all m when that is unknown), non-decreasing
    beyond, and mu_{m_max} >= 1.4 mu_1. It fails only on exact mu tables.

    """
    details = {}
    violated = False
    evaluated = 0
    for result in catalog_results:
        tags = set(result['tags'])
        bid = result['basis_id']
        if {'unconditional', 'democratic'}.issubset(tags) and \
                result.get('C_g') is not None:
            cg = result['C_g'].value
            details[bid] = {'C_g': cg}
            evaluated += 1
            if cg > kt_bound:
                violated = True
        elif {'unconditional', 'non-democratic'}.issubset(tags) and \
                result.get('mu') is not None:
            mu = result['mu']
            values = mu.values()
            entry = {'mu': values.tolist(), 'dim': result['dim']}
            if result['dim'] < kt_mindim:
                entry['skipped'] = f"dim < {kt_mindim}"
                details[bid] = entry
                continue
            strict = int(result.get('strict_until', len(values)))
            increasing = bool(np.all(np.diff(values[:strict]) > 0.)) and \
                bool(np.all(np.diff(values) >= 0.))
            growth = values[-1] / values[0]
            entry.update({'increasing': increasing, 'growth': float(growth)})
            details[bid] = entry
            evaluated += 1
            if mu.allexact and (not increasing or growth < kt_growth):
                violated = True
    if violated:
        verdict = 'fail'
    elif evaluated:
        verdict = 'pass'
    else:
        verdict = 'recorded'
    return CheckResult('KT_dichotomy', 'catalog', verdict, details,
                       {'C_g_bound': {'value': kt_bound, 'formula': '8'},
                        'mu_growth': {'value': kt_growth,
                                      'formula': '1.4'}})


def _referencespace(r, p, dim):
    if math.isinf(p):
        return weaklp(r, dim)
    return lorentz(r, p, dim)


def _signedsetsmax(basis, r):
    """max ||1_{eps,A}|| / |A|^(1/r) over all signed sets, n <= 12."""
    from .parameters import _ternarydigits
    n = basis.dim
    if n > maxsuccdim:
        raise CapacityError('signed_set_dim', maxsuccdim, n)
    states = np.arange(1, 3 ** n, dtype=np.int64)
    digits = _ternarydigits(states, n)
    signed = np.where(digits == 2, -1., digits.astype('float64'))
    sizes = (digits > 0).sum(axis=1)
    ratios = basis.norms_of_expansions(signed) / sizes ** (1. / r)
    i = int(np.argmax(ratios))
    A = [int(j) for j in np.flatnonzero(digits[i] > 0)]
    return float(ratios[i]), {'quantity': 'lorentz_indicator_ratio', 'A': A,
                              'signs': [1 if digits[i, j] == 1 else -1
                                        for j in A], 'r': r}


def check_lorentz_domination(basis_id, basis, r, p, probe):
    """Records C = max ||1_{eps,A}|| / |A|^(1/r) and
    D = max ||sum a_n x_n|| / ||a||_{r,p} over probe coefficients a.

    `probe` is a ProbeFamily or a 2-D array of coefficient rows. Fails only
    when D is not finite or is below the ratio attained by single
    coordinates.

    """
    if isinstance(probe, np.ndarray):
        C = np.atleast_2d(probe)
    else:
        C = probe.coefficients(basis.dim)
    C = C[np.any(C != 0., axis=1)]
    if C.shape[0] == 0:
        raise UsageError("probe family is empty")
    reference = _referencespace(r, p, basis.dim)
    Cval, Cwitness = _signedsetsmax(basis, r)
    ratios = basis.norms_of_expansions(C) / eval_norms(reference, C)
    i = int(np.argmax(ratios))
    D = float(ratios[i])
    single = float(basis.vectornorms.max() /
                   eval_norms(reference, np.eye(basis.dim)).max())
    finite = math.isfinite(D)
    details = {'r': r, 'p': p if math.isfinite(p) else 'inf', 'C': Cval,
               'D': D, 'single_coordinate_ratio': single,
               'C_witness': Cwitness,
               'D_witness': {'quantity': 'lorentz_domination_ratio',
                             'coefs': C[i].tolist(), 'r': r,
                             'p': p if math.isfinite(p) else 'inf'}}
    sane = finite and D >= single * (1. - 1e-12)
    return CheckResult('lorentz_domination', basis_id,
                       'recorded' if sane else 'fail', details)


def check_truncation_log_growth(basis_id, k_table, p):
    """Records k_m / (log_2 m)^(1/p) for m >= 2."""
    ratios = {str(m): k.value / math.log2(m) ** (1. / p)
              for m, k in k_table if m >= 2}
    return CheckResult('truncation_log_growth', basis_id, 'recorded',
                       {'ratios': ratios, 'p': p})


def check_succ_vs_lambda(basis_id, succ, lambda_table):
    """Records whether SUCC <= lambda at the largest grid point; the lambda
    value is a lower bound, so a violation is not a failure."""
    lam = succ_from_lambda(lambda_table)
    return CheckResult('succ_vs_lambda', basis_id, 'recorded',
                       {'succ': succ.value, 'succ_mode': succ.mode,
                        'lambda_first': lam.value,
                        'consistent': bool(succ.value <=
                                           lam.value * (1. + 1e-9))})


def _lorentzexponents(basis, phi):
    """(r, p): r from the growth phi(n) = n^(1/r) of the fundamental
    function, p the convexity exponent (capped at r)."""
    n = basis.dim
    phin = phi[n].value if n in phi else phi.max().value
    if phin <= 1. + 1e-12:
        r = math.inf
    else:
        r = round(math.log(n) / math.log(phin), 10)
    p = basis.space.p_convexity
    return r, min(p, r)


def _fixturetable(func_id, grid, values, exhaustive=True):
    flags = ('exhaustive-grid',) if exhaustive else ()
    entries = [EstimateValue(v, 'lower_bound', None, flags) for v in values]
    return FunctionTable(func_id, grid, entries)


def _fixtureparams(param_id, values, mode='exact'):
    return ParamTable(param_id, {m + 1: EstimateValue(v, mode)
                                 for m, v in enumerate(values)})


def self_test_fixtures():
    """Runs every check on synthetic inputs built to pass and to fail.

    Returns a list of CheckResult objects whose basis_id is
    'fixture:<name>:pass' or 'fixture:<name>:fail', naming the expected
    verdict ('recorded' for checks that never fail on their fixture).

    """
    grid = ThresholdGrid(2., 4)
    ones = [1.] * 4
    entry = resolve_entry('lp:1.0:4')
    basis = entry.basis
    exactone = EstimateValue(1., 'exact')
    good = {f: _fixturetable(f, grid, ones) for f in ('lambda', 'theta',
                                                      'phi')}
    results = [
        check_theta_le_phi('fixture:theta_le_phi:pass', good),
        check_theta_le_phi('fixture:theta_le_phi:fail', dict(
            good, theta=_fixturetable('theta', grid, [1., 1., 1.5, 1.]))),
        check_monotone('fixture:monotone:pass', good),
        check_monotone('fixture:monotone:fail', dict(
            good, **{'lambda': _fixturetable('lambda', grid,
                                               [1., 2., 1.5, 2.])})),
        check_thm_NUN_chain('fixture:thm_NUN_chain:pass', good, 1.,
                            exactone),
        check_thm_NUN_chain('fixture:thm_NUN_chain:fail', dict(
            good, phi=_fixturetable('phi', grid, [1e6, 1e6, 1e6, 1e6])),
            1., exactone),
        check_thm_NUCC('fixture:thm_NUCC:pass', good['lambda'],
                       _fixtureparams('k', ones), 1., exactone, 1.,
                       exactone),
        check_thm_NUCC('fixture:thm_NUCC:fail', good['lambda'],
                       _fixtureparams('k', [1., 1e6, 1e6, 1e6]), 1.,
                       exactone, 1., exactone),
        check_lebesgue_equivalence('fixture:lebesgue_equivalence:pass',
                                   _fixtureparams('L', ones),
                                   _fixtureparams('mu', ones),
                                   _fixtureparams('k', ones),
                                   entry.known_properties),
        check_lebesgue_equivalence('fixture:lebesgue_equivalence:fail',
                                   _fixtureparams('L', [1., .01, 1., 1.]),
                                   _fixtureparams('mu', ones),
                                   _fixtureparams('k', ones),
                                   entry.known_properties),
        check_lorentz_domination('fixture:lorentz_domination:recorded',
                                 basis, 1., 1., np.eye(4)),
        check_lorentz_domination('fixture:lorentz_domination:fail',
                                 resolve_entry('lp:2.0:4').basis, 1., 1.,
                                 np.array([[1., -1., 0., 0.]])),
        check_truncation_log_growth('fixture:truncation_log_growth:recorded',
                                    _fixtureparams('k', ones), 1.),
        check_succ_vs_lambda('fixture:succ_vs_lambda:recorded', exactone,
                             good['lambda']),
    ]
    for name, cg in (('pass', 1.), ('fail', 100.)):
        result = check_KT_dichotomy([{'basis_id': 'fixture',
                                      'tags': entry.known_properties,
                                      'dim': 4,
                                      'C_g': EstimateValue(cg,
                                                           'lower_bound')}])
        results.append(CheckResult(result.check_id,
                                   f'fixture:KT_dichotomy:{name}',
                                   result.verdict, result.details,
                                   result.constants_used))
    return sorted(results, key=lambda r: (r.check_id, r.basis_id))


def _entrytables(entry, config, probe, m_max):
    """Parameter tables of a catalog entry."""
    basis = entry.basis
    n = basis.dim
    m_max = n if m_max is None else min(m_max, n)
    phi = fundamental_function(basis, m_max, config.subset_cap)
    mu = democracy_parameter(basis, m_max, config.subset_cap)
    k = unconditionality_constants(basis, m_max, probe, config.vertex_cap,
                                   subset_cap=config.subset_cap)
    return phi, mu, k


def _lambdaforgrid(basis, grid, levels, probe):
    try:
        return exact_grid_tables(basis, grid, levels)
    except CapacityError as e:
        logger.info("%s: %s, using probes", basis, e)
        return {f: monotone_envelope(t) for f, t in
                probe_tables(basis, grid, probe).items()}


def _oraclechecks(entry, config, grid, probe):
    """Checks on threshold tables of an entry of the small catalog."""
    basis = entry.basis
    p = basis.space.p_convexity
    tables = _lambdaforgrid(basis, grid, config.levels, probe)
    try:
        C_u = constant_coefficient_bound(basis, grid, config.levels)
    except CapacityError:
        C_u = None
    k = unconditionality_constants(basis, None, probe, config.vertex_cap,
                                   subset_cap=config.subset_cap)
    succ = succ_constant(basis)
    c = EstimateValue(basis.dual_norm_bound,
                      'exact' if basis.dualnormsexact else 'lower_bound')
    return [
        check_theta_le_phi(entry.id, tables),
        check_monotone(entry.id, tables),
        check_thm_NUN_chain(entry.id, tables, p, C_u),
        check_thm_NUCC(entry.id, tables['lambda'], k, p, c,
                       basis.vector_norm_bound, C_u),
        check_succ_vs_lambda(entry.id, succ, tables['lambda']),
    ]


def _catalogchecks(entry, config, grid, probe):
    """Checks on parameter tables of an entry of the main catalog; also
    returns the entry's summary for the dichotomy check."""
    basis = entry.basis
    p = basis.space.p_convexity
    phi, mu, k = _entrytables(entry, config, probe, config.m_max)
    L = lebesgue_constants(basis, probe, k.m_max)
    cg = greedy_constant(basis, table=L)
    tables = probe_tables(basis, grid, probe)
    results = [
        check_lebesgue_equivalence(entry.id, L, mu, k,
                                   entry.known_properties),
        check_truncation_log_growth(entry.id, k, p),
        check_thm_NUCC(entry.id, monotone_envelope(tables['lambda']), k, p),
    ]
    r, q = _lorentzexponents(basis, phi)
    if math.isfinite(r) and basis.dim <= maxsuccdim:
        results.append(check_lorentz_domination(entry.id, basis, r, q,
                                                probe))
    summary = {'basis_id': entry.id, 'tags': entry.known_properties,
               'dim': basis.dim, 'C_g': cg, 'mu': mu,
               'strict_until': _strictuntil(basis)}
    return results, summary


def _strictuntil(basis):
    """Range of m over which mu_m of a block basis grows strictly: up to
    the largest block, and no further than the number of blocks."""
    space = basis.space
    if space.kind == 'l2blocks':
        blocks = space.params['blocks']
        return min(max(blocks), len(blocks))
    return basis.dim


def _blockentry():
    """The non-democratic unconditional basis with blocks 1, 2, 3, 4."""
    return resolve_entry('l2blocks:1.0:1+2+3+4')


def run_harness(config):
    """Runs all checks on the catalog of `config`.

    The threshold-table checks use the catalog in dimension
    min(dim, 4), where exhaustive grid tables exist; the others use the
    catalog in the configured dimension, plus custom bases. Results are
    ordered by (check_id, basis_id).

    """
    grid = config.thresholdgrid()
    probe = config.probefamily()
    catalog = make_catalog(config.dim, config.seed)
    catalog += [resolve_entry(f"file:{path}")
                for path in config.custom_basis_files]
    smallcatalog = make_catalog(min(config.dim, oracle_dim), config.seed)
    results = []
    summaries = []
    for entry in smallcatalog:
        logger.info("threshold checks on %s", entry.id)
        results.extend(_oraclechecks(entry, config, grid, probe))
    for entry in catalog:
        logger.info("catalog checks on %s", entry.id)
        entryresults, summary = _catalogchecks(entry, config, grid, probe)
        results.extend(entryresults)
        summaries.append(summary)
    block = _blockentry()
    if block.id not in {s['basis_id'] for s in summaries}:
        mu = democracy_parameter(block.basis, None, config.subset_cap)
        summaries.append({'basis_id': block.id,
                          'tags': block.known_properties,
                          'dim': block.basis.dim, 'mu': mu,
                          'strict_until': _strictuntil(block.basis)})
    results.append(check_KT_dichotomy(summaries))
    return sorted(results, key=lambda r: (r.check_id, r.basis_id))
