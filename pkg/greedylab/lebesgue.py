"""Best m-term approximation errors, Lebesgue constants and the greedy
constant.

sigma_m(f) is the smallest error ||f - g|| over g spanned by at most m basis
vectors. It is computed by enumerating supports B with |B| = m (larger
feasible sets never hurt, so smaller supports need not be considered) and
minimizing over the coefficients on B with a strategy chosen per space:

- identity bases of lattice spaces: ||f 1_{B^c}||, exact;
- l_2, also under a linear image: least squares, exact;
- polyhedral spaces: a linear program solved with HiGHS, exact;
- l_p with 1 < p < inf, also under a linear image: cyclic coordinate descent
  with golden-section line searches, exact within tolerance since the
  problem is smooth and convex;
- everything else: the same descent from 8 seeded starts, reported as an
  upper bound.

"""
import functools
import itertools
import logging
import math
from dataclasses import dataclass, field

import numpy as np
from scipy import optimize

from .estimates import EstimateValue, ParamTable
from .operators import all_greedy_sets_coefs, greedy_set_coefs, \
    project_coefs, defaulttiecap
from .parallel import mapblocks
from .quasinorm import is_lattice, is_polyhedral
from .utils import UsageError, CapacityError, check_vector

__all__ = ['BestApproxResult', 'sigma_m', 'sigma_m_coefs',
           'lebesgue_constants', 'greedy_constant']

logger = logging.getLogger(__name__)

defaultsupportcap = 10 ** 5
defaultlebesgueprobes = 64
nstarts = 8
descenttolerance = 1e-12
maxsweeps = 500
highsoptions = {'primal_feasibility_tolerance': 1e-10,
                'dual_feasibility_tolerance': 1e-10}


@dataclass(frozen=True)
class BestApproxResult:
    """A best m-term approximation of f.

    Attributes
    ----------
    m: int
    support: tuple
        Indices B with |B| <= m.
    coefficients: dict
        Maps every index of `support` to the coefficient of its basis vector
        in the approximant.
    error: float
        ||f - sum_{n in B} coefficients[n] x_n||.
    mode: {'exact', 'upper_bound'}

    """
    m: int
    support: tuple
    coefficients: dict = field(compare=False)
    error: float
    mode: str

    def approximant_coefs(self, dim):
        coefs = np.zeros(dim)
        for n, value in self.coefficients.items():
            coefs[n] = value
        return coefs

    def to_dict(self):
        return {'m': self.m, 'support': list(self.support),
                'coefficients': [self.coefficients[n] for n in self.support],
                'error': self.error, 'mode': self.mode}


def _space_strategy(basis):
    space = basis.space
    base = space.params['base'] if space.kind == 'linear' else space
    if basis.isidentity and is_lattice(space):
        return 'closedform'
    if base.kind == 'lp' and base.params['p'] == 2.:
        return 'leastsquares'
    if is_polyhedral(space):
        return 'linprog'
    if base.kind == 'lp' and 1. < base.params['p'] < math.inf:
        return 'descent'
    return 'multistart'


def _tocanonical(basis):
    """(T, base space) such that ||v|| equals the base norm of T v."""
    space = basis.space
    if space.kind == 'linear':
        return space.params['inverse'], space.params['base']
    return np.eye(space.dim), space


def _leastsquares(basis, coefs, B):
    T, _ = _tocanonical(basis)
    G = T @ basis.vectors[:, B]
    h = T @ (basis.vectors @ coefs)
    b, *_ = np.linalg.lstsq(G, h, rcond=None)
    return b, True


def _linprog(basis, coefs, B):
    T, base = _tocanonical(basis)
    G = T @ basis.vectors[:, B]
    h = T @ (basis.vectors @ coefs)
    n, nb = G.shape
    if base.params['p'] == 1.:
        # min sum(t) subject to -t <= h - G b <= t
        c = np.concatenate([np.zeros(nb), np.ones(n)])
        tblock = -np.eye(n)
    else:
        # min t subject to -t <= h - G b <= t
        c = np.concatenate([np.zeros(nb), [1.]])
        tblock = -np.ones((n, 1))
    A_ub = np.block([[-G, tblock], [G, tblock]])
    b_ub = np.concatenate([-h, h])
    bounds = [(None, None)] * nb + [(0., None)] * (c.shape[0] - nb)
    res = optimize.linprog(c, A_ub=A_ub, b_ub=b_ub, bounds=bounds,
                           method='highs', options=highsoptions)
    if res.status != 0:
        logger.warning("linear program failed on support %s (%s), falling "
                       "back to descent", B, res.message)
        return _descent(basis, coefs, B, nstarts=nstarts)[0], False
    return res.x[:nb], True


def _residualnorm(basis, coefs, B, b):
    approx = np.zeros(basis.dim)
    approx[B] = b
    return float(basis.norms_of_expansions(
        (coefs - approx)[np.newaxis, :])[0])


def _descent(basis, coefs, B, nstarts=1, seed=0):
    """Cyclic coordinate descent over the coefficients on B, from `nstarts`
    starting points; each coordinate update is a golden-section line search.
    Returns (best coefficients, error)."""
    rng = np.random.default_rng([seed, len(B)])
    scale = max(float(np.abs(coefs).max()), 1.)
    best = (None, math.inf)
    for start in range(nstarts):
        b = coefs[B].copy()
        if start > 0:
            b = b + rng.normal(scale=scale, size=len(B))
        error = _residualnorm(basis, coefs, B, b)
        for _ in range(maxsweeps):
            previous = error
            for j in range(len(B)):
                def restricted(t, j=j):
                    trial = b.copy()
                    trial[j] = t
                    return _residualnorm(basis, coefs, B, trial)
                res = optimize.minimize_scalar(
                    restricted, bracket=(b[j] - scale, b[j] + scale),
                    method='golden', options={'xtol': 1e-12})
                if res.fun < error:
                    b[j] = res.x
                    error = float(res.fun)
            if previous - error <= descenttolerance * max(previous, 1e-300):
                break
        if error < best[1]:
            best = (b, error)
    return best


@functools.lru_cache(maxsize=64)
def _combinationmasks(n, m):
    masks = np.zeros((math.comb(n, m), n), dtype=bool)
    for row, B in enumerate(itertools.combinations(range(n), m)):
        masks[row, B] = True
    masks.setflags(write=False)
    return masks


def _supportmasks(n, m, supportcap):
    count = math.comb(n, m)
    if count > supportcap:
        raise CapacityError('sigma_support_cap', supportcap, count)
    return _combinationmasks(n, m)


def sigma_m_coefs(basis, coefs, m, supportcap=defaultsupportcap, seed=0):
    """Best m-term approximation of the vector with basis coefficients
    `coefs`.

    Raises
    ------
    CapacityError
        If C(n, m) exceeds `supportcap`.

    """
    coefs = check_vector(coefs, dim=basis.dim, name='coefs')
    n = basis.dim
    if int(m) != m or not 0 <= m <= n:
        raise UsageError(f"m should be an integer in [0, {n}], not {m}")
    m = int(m)
    support = np.flatnonzero(coefs)
    if m == 0:
        error = float(basis.norms_of_expansions(coefs[np.newaxis, :])[0])
        return BestApproxResult(0, (), {}, error, 'exact')
    if support.size <= m:
        B = tuple(int(i) for i in support)
        return BestApproxResult(m, B, {i: float(coefs[i]) for i in B}, 0.,
                                'exact')
    strategy = _space_strategy(basis)
    masks = _supportmasks(n, m, supportcap)
    if strategy == 'closedform':
        errors = basis.norms_of_expansions(np.where(masks, 0., coefs))
        i = int(np.argmin(errors))
        B = tuple(int(j) for j in np.flatnonzero(masks[i]))
        return BestApproxResult(m, B, {j: float(coefs[j]) for j in B},
                                float(errors[i]), 'exact')
    best = (math.inf, None, None)
    allexact = True
    for mask in masks:
        B = np.flatnonzero(mask)
        if strategy == 'leastsquares':
            b, exact = _leastsquares(basis, coefs, B)
        elif strategy == 'linprog':
            b, exact = _linprog(basis, coefs, B)
        elif strategy == 'descent':
            b, exact = _descent(basis, coefs, B, seed=seed)[0], True
        else:
            b = _descent(basis, coefs, B, nstarts=nstarts, seed=seed)[0]
            exact = False
        allexact = allexact and exact
        error = _residualnorm(basis, coefs, B, b)
        if error < best[0]:
            best = (error, B, b)
    error, B, b = best
    return BestApproxResult(m, tuple(int(j) for j in B),
                            {int(j): float(v) for j, v in zip(B, b)},
                            error, 'exact' if allexact else 'upper_bound')


def sigma_m(basis, f, m, supportcap=defaultsupportcap, seed=0):
    """sigma_m(f) = inf ||f - g|| over g in the span of at most m basis
    vectors, with the approximant attaining it."""
    f = check_vector(f, dim=basis.dim)
    return sigma_m_coefs(basis, basis.coefficients(f), m, supportcap, seed)


def _lebesgueprobes(basis, probe, maxprobes):
    C = probe.coefficients(basis.dim)
    if C.shape[0] == 0:
        raise UsageError("probe family is empty")
    if _space_strategy(basis) == 'closedform' or C.shape[0] <= maxprobes:
        return C
    # spread the subsample over the whole family
    rows = np.unique(np.linspace(0, C.shape[0] - 1, maxprobes).round()
                     .astype(int))
    return C[rows]


def _greedyerror(basis, coefs, m, tiecap):
    """Largest ||f - G_m f|| over the greedy sets of f, with the set."""
    if basis.dim <= tiecap:
        selections = all_greedy_sets_coefs(coefs, m, tiecap=tiecap)
    else:
        selections = [greedy_set_coefs(coefs, m)]
    rows = np.array([coefs - project_coefs(coefs, s.indices)
                     for s in selections])
    errors = basis.norms_of_expansions(rows)
    i = int(np.argmax(errors))
    return float(errors[i]), sorted(selections[i].indices)


def lebesgue_constants(basis, probe=None, m_max=None,
                       maxprobes=defaultlebesgueprobes,
                       tiecap=defaulttiecap, supportcap=defaultsupportcap,
                       seed=0):
    """Lower bounds of L_m = sup ||f - G_m f|| / sigma_m(f) over probes f
    not in the span of m basis vectors, maximizing over all greedy sets of
    f when n <= `tiecap`.

    Entries whose best probe has a sigma_m that is only an upper bound are
    flagged 'sigma-upper-bound'; the ratio is then still a lower bound. An
    m for which every probe is skipped gets the trivial bound 1.

    """
    from .probes import ProbeFamily
    n = basis.dim
    if m_max is None:
        m_max = n
    if int(m_max) != m_max or not 1 <= m_max <= n:
        raise UsageError(f"m_max should be an integer in [1, {n}], not "
                         f"{m_max}")
    if probe is None:
        probe = ProbeFamily()
    C = _lebesgueprobes(basis, probe, maxprobes)
    cnorms = basis.norms_of_expansions(C)
    logger.info("Lebesgue constants of %s from %d probes", basis, len(C))

    def block(start, end):
        out = []
        for r in range(start, end):
            coefs = C[r]
            ratios = {}
            for m in range(1, int(m_max) + 1):
                if np.count_nonzero(coefs) <= m:
                    break
                sigma = sigma_m_coefs(basis, coefs, m, supportcap, seed)
                if sigma.error <= 1e-12 * cnorms[r]:
                    continue
                greedyerror, A = _greedyerror(basis, coefs, m, tiecap)
                ratios[m] = (greedyerror / sigma.error, A, sigma)
            out.append(ratios)
        return out

    results = [ratios for part in mapblocks(block, C.shape[0], 8)
               for ratios in part]
    entries = {}
    for m in range(1, int(m_max) + 1):
        best = None
        for r, ratios in enumerate(results):
            if m in ratios and (best is None or ratios[m][0] > best[0]):
                best = ratios[m] + (r,)
        if best is None:
            entries[m] = EstimateValue(1., 'lower_bound', None, ('trivial',))
            continue
        ratio, A, sigma, r = best
        witness = {'quantity': 'lebesgue_ratio', 'coefs': C[r].tolist(),
                   'A': A, 'support': list(sigma.support),
                   'approxcoefs': [sigma.coefficients[j]
                                   for j in sigma.support]}
        flags = () if sigma.mode == 'exact' else ('sigma-upper-bound',)
        entries[m] = EstimateValue(ratio, 'lower_bound', witness, flags)
    return ParamTable('L', entries)


def greedy_constant(basis, probe=None, m_max=None, table=None, **kwargs):
    """Lower bound of C_g = sup_m L_m: the maximum of the L_m table, which
    is computed unless given."""
    if table is None:
        table = lebesgue_constants(basis, probe, m_max, **kwargs)
    best = table.max()
    return EstimateValue(best.value, 'lower_bound', best.witness,
                         best.flags)
