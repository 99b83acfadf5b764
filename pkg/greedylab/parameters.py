"""Indexed parameters of a basis: fundamental function, democracy
parameters, unconditionality constants, the SUCC constant, and the
quasi-greedy and truncation quasi-greedy constants.

Every value is an `EstimateValue`. Values are exact when a finite oracle
exists (enumeration of all index sets, or maximization over the vertices of
a polyhedral unit ball), and certified lower bounds otherwise. Exactness is
never claimed for a value obtained from probes.

Index sets are enumerated as bit masks over 0..2^n - 1 in blocks; results of
blocks are reduced in block order, keeping the first witness among equal
values, so that results do not depend on the number of threads.

"""
import itertools
import logging
import math

import numpy as np

from .estimates import EstimateValue, ParamTable
from .operators import greedy_masks, restricted_truncation_batch, \
    all_greedy_sets_coefs, defaulttiecap
from .parallel import mapblocks, argmax_first
from .quasinorm import eval_norms, unit_ball_vertices, \
    unit_ball_vertex_count, is_polyhedral, is_lattice
from .utils import UsageError, CapacityError, UnsupportedOracleError

__all__ = ['fundamental_function', 'democracy_parameter',
           'lower_democracy_function', 'succ_constant',
           'unconditionality_constants', 'quasi_greedy_constant',
           'truncation_qg_constant', 'conditionality_report',
           'indicator_statistics', 'masktoindices', 'maskbits']

logger = logging.getLogger(__name__)

defaultsubsetcap = 5 * 10 ** 6
maxsweepdim = 24
maxsuccdim = 12
vertexworkcap = 2 ** 26
probeworkcap = 2 ** 24
blockrows = 2 ** 15


def masktoindices(mask):
    mask = int(mask)
    return [i for i in range(mask.bit_length()) if (mask >> i) & 1]


def maskbits(masks, n):
    """Rows of 0/1 floats, bit i of masks[r] in column i."""
    masks = np.asarray(masks, dtype=np.int64)
    return ((masks[:, np.newaxis] >> np.arange(n)) & 1).astype('float64')


def _checkmmax(basis, m_max):
    n = basis.dim
    if m_max is None:
        return n
    if int(m_max) != m_max or m_max < 1:
        raise UsageError(f"m_max should be a positive integer, not {m_max}")
    if m_max > n:
        raise UsageError(f"m_max ({m_max}) is larger than the dimension "
                         f"({n})")
    return int(m_max)


def _sweepfeasible(n, m_max, subset_cap):
    largest = max(math.comb(n, m) for m in range(1, m_max + 1))
    return n <= maxsweepdim and largest <= subset_cap, largest


def indicator_statistics(basis, m_max=None, subset_cap=defaultsubsetcap,
                         exact=False, seed=0, samples=2000):
    """Max and min of ||1_A|| over |A| = m, for m = 1..m_max.

    Returns
    -------
    tuple
        (stats, isexact) where stats maps m to (maxnorm, argmax set,
        minnorm, argmin set). When `isexact` is False the maxima are lower
        bounds and the minima upper bounds of the true values.

    Raises
    ------
    CapacityError
        If `exact` is True and enumeration exceeds `subset_cap`.

    """
    n = basis.dim
    m_max = _checkmmax(basis, m_max)
    feasible, largest = _sweepfeasible(n, m_max, subset_cap)
    if feasible:
        return _indicatorsweep(basis, m_max), True
    if exact:
        raise CapacityError('subset_cap', subset_cap, largest)
    logger.info("sampling index sets (C(%d, m) up to %d exceeds cap %d)",
                n, largest, subset_cap)
    return _indicatorsample(basis, m_max, seed, samples), False


def _indicatorsweep(basis, m_max):
    n = basis.dim

    def block(start, end):
        masks = np.arange(start, end, dtype=np.int64)
        bits = maskbits(masks, n)
        counts = bits.sum(axis=1).astype(int)
        norms = basis.norms_of_expansions(bits)
        out = {}
        for m in range(1, m_max + 1):
            sel = np.flatnonzero(counts == m)
            if sel.size == 0:
                continue
            imax = sel[argmax_first(norms[sel])]
            imin = sel[int(np.argmin(norms[sel]))]
            out[m] = (norms[imax], masks[imax], norms[imin], masks[imin])
        return out

    stats = {}
    for part in mapblocks(block, 2 ** n, blockrows):
        for m, (vmax, amax, vmin, amin) in part.items():
            if m not in stats:
                stats[m] = [vmax, amax, vmin, amin]
                continue
            if vmax > stats[m][0]:
                stats[m][0:2] = [vmax, amax]
            if vmin < stats[m][2]:
                stats[m][2:4] = [vmin, amin]
    return {m: (float(v[0]), masktoindices(v[1]), float(v[2]),
                masktoindices(v[3])) for m, v in sorted(stats.items())}


def _indicatorsample(basis, m_max, seed, samples):
    n = basis.dim
    rng = np.random.default_rng([seed, n, m_max])
    stats = {}
    for m in range(1, m_max + 1):
        sets = [list(range(start, start + m)) for start in range(n - m + 1)]
        sets += [sorted(rng.choice(n, size=m, replace=False).tolist())
                 for _ in range(samples)]
        bits = np.zeros((len(sets), n))
        for r, A in enumerate(sets):
            bits[r, A] = 1.
        norms = basis.norms_of_expansions(bits)
        imax = argmax_first(norms)
        imin = int(np.argmin(norms))
        stats[m] = (float(norms[imax]), sets[imax], float(norms[imin]),
                    sets[imin])
    return stats


def fundamental_function(basis, m_max=None, subset_cap=defaultsubsetcap,
                         exact=False, seed=0):
    """phi(m) = sup_{|A| <= m} ||sum_{k in A} x_k||, m = 1..m_max.

    Exact when all index sets can be enumerated, a sampled lower bound
    otherwise. The table is non-decreasing in m.

    """
    stats, isexact = indicator_statistics(basis, m_max, subset_cap, exact,
                                          seed)
    mode = 'exact' if isexact else 'lower_bound'
    raw = {m: EstimateValue(vmax, mode, {'quantity': 'indicator_norm',
                                         'A': amax})
           for m, (vmax, amax, _, _) in stats.items()}
    return ParamTable.running_max('phi', raw)


def lower_democracy_function(basis, m_max=None, subset_cap=defaultsubsetcap,
                             exact=False, seed=0):
    """psi(m) = min_{|B| = m} ||sum_{k in B} x_k||, m = 1..m_max.

    Exact when all index sets can be enumerated, otherwise a sampled upper
    bound.

    """
    stats, isexact = indicator_statistics(basis, m_max, subset_cap, exact,
                                          seed)
    mode = 'exact' if isexact else 'upper_bound'
    return ParamTable('psi', {
        m: EstimateValue(vmin, mode, {'quantity': 'indicator_norm',
                                      'A': amin})
        for m, (_, _, vmin, amin) in stats.items()})


def democracy_parameter(basis, m_max=None, subset_cap=defaultsubsetcap,
                        exact=False, seed=0):
    """mu_m = sup_{|A| = |B| <= m} ||1_A|| / ||1_B||, m = 1..m_max.

    Always at least 1. Exact when all index sets can be enumerated,
    otherwise a lower bound.

    """
    stats, isexact = indicator_statistics(basis, m_max, subset_cap, exact,
                                          seed)
    mode = 'exact' if isexact else 'lower_bound'
    raw = {m: EstimateValue(vmax / vmin, mode,
                            {'quantity': 'democracy_ratio', 'A': amax,
                             'B': amin})
           for m, (vmax, amax, vmin, amin) in stats.items()}
    return ParamTable.running_max('mu', raw)


def _ternarydigits(states, n):
    digits = np.empty((states.shape[0], n), dtype=np.int64)
    rest = states.copy()
    for i in range(n):
        digits[:, i] = rest % 3
        rest //= 3
    return digits


def succ_constant(basis, subset_cap=None, exact=False, seed=0,
                  samples=2000):
    """SUCC constant: sup ||1_{eps,B}|| / ||1_{eps,A}|| over signed sets
    (A, eps) with |A| <= subset_cap and B a subset of A.

    Exact for n <= 12, by a dynamic program over all 3^n signed sets: the
    best subset of a signed set is either itself or the best subset of one
    of its children, i.e. of the signed set with one index removed. Larger
    dimensions give a sampled lower bound.

    """
    n = basis.dim
    cap = n if subset_cap is None else min(int(subset_cap), n)
    if cap < 1:
        raise UsageError(f"subset_cap should be positive, not {subset_cap}")
    if n > maxsuccdim:
        if exact:
            raise CapacityError('succ_dim', maxsuccdim, n)
        return _succsample(basis, cap, seed, samples)
    nstates = 3 ** n
    # digit 0 -> not in A, 1 -> sign +1, 2 -> sign -1
    states = np.arange(nstates, dtype=np.int64)
    digits = _ternarydigits(states, n)
    coefs = np.where(digits == 2, -1., digits.astype('float64'))
    sizes = (digits > 0).sum(axis=1)
    norms = np.concatenate(mapblocks(
        lambda s, e: basis.norms_of_expansions(coefs[s:e]), nstates,
        blockrows))
    best = norms.copy()
    argbest = states.copy()
    powers = 3 ** np.arange(n, dtype=np.int64)
    for size in range(1, cap + 1):
        level = np.flatnonzero(sizes == size)
        for i in range(n):
            sel = level[digits[level, i] > 0]
            children = sel - digits[sel, i] * powers[i]
            better = best[children] > best[sel]
            best[sel[better]] = best[children[better]]
            argbest[sel[better]] = argbest[children[better]]
    admissible = (sizes >= 1) & (sizes <= cap)
    ratios = np.where(admissible & (norms > 0), best / np.where(
        norms > 0, norms, 1.), 0.)
    i = argmax_first(ratios)
    value = max(float(ratios[i]), 1.)
    A = [int(j) for j in np.flatnonzero(digits[i] > 0)]
    signs = [1 if digits[i, j] == 1 else -1 for j in A]
    B = [int(j) for j in np.flatnonzero(digits[argbest[i]] > 0)]
    witness = {'quantity': 'succ_ratio', 'A': A, 'signs': signs, 'B': B}
    if value > ratios[i]:
        witness = {'quantity': 'succ_ratio', 'A': A, 'signs': signs,
                   'B': A}
    return EstimateValue(value, 'exact', witness)


def _succsample(basis, cap, seed, samples):
    n = basis.dim
    rng = np.random.default_rng([seed, n, cap])
    best = (1., None)
    maxsize = min(cap, 10)
    for _ in range(samples):
        size = int(rng.integers(1, maxsize + 1))
        A = sorted(rng.choice(n, size=size, replace=False).tolist())
        signs = rng.choice((-1, 1), size=size).tolist()
        masks = np.arange(1, 2 ** size, dtype=np.int64)
        sub = maskbits(masks, size)
        rows = np.zeros((sub.shape[0], n))
        rows[:, A] = sub * np.array(signs, dtype='float64')
        norms = basis.norms_of_expansions(rows)
        full = norms[-1]
        if full <= 0:
            continue
        j = argmax_first(norms)
        if norms[j] / full > best[0]:
            B = [A[t] for t in masktoindices(masks[j])]
            best = (float(norms[j] / full),
                    {'quantity': 'succ_ratio', 'A': A, 'signs': signs,
                     'B': B})
    if best[1] is None:
        best = (1., {'quantity': 'succ_ratio', 'A': [0], 'signs': [1],
                     'B': [0]})
    return EstimateValue(best[0], 'lower_bound', best[1])


def _subsetmaskrange(n, m_max):
    """Bit masks of all index sets with 1 <= |A| <= m_max, in increasing
    order."""
    masks = np.arange(1, 2 ** n, dtype=np.int64)
    counts = maskbits(masks, n).sum(axis=1)
    return masks[counts <= m_max]


def _opnorms_vertex(basis, masks, vertexcap):
    vertices = unit_ball_vertices(basis.space, vertexcap=vertexcap)
    vnorms = eval_norms(basis.space, vertices)
    vcoefs = vertices @ basis.duals.T
    n = basis.dim
    nv = vertices.shape[0]
    perblock = max(1, blockrows // nv)

    def block(start, end):
        bits = maskbits(masks[start:end], n)
        projected = vcoefs[np.newaxis, :, :] * bits[:, np.newaxis, :]
        norms = basis.norms_of_expansions(projected.reshape(-1, n))
        ratios = norms.reshape(end - start, nv) / vnorms
        best = ratios.argmax(axis=1)
        return ratios[np.arange(end - start), best], best

    parts = mapblocks(block, masks.shape[0], perblock)
    values = np.concatenate([p[0] for p in parts])
    which = np.concatenate([p[1] for p in parts])
    return values, [vertices[j] for j in which]


def _opnorms_probe(basis, masks, C):
    n = basis.dim
    cnorms = basis.norms_of_expansions(C)
    keep = cnorms > 0
    C, cnorms = C[keep], cnorms[keep]
    nc = C.shape[0]
    perblock = max(1, blockrows // nc)

    def block(start, end):
        bits = maskbits(masks[start:end], n)
        projected = C[np.newaxis, :, :] * bits[:, np.newaxis, :]
        norms = basis.norms_of_expansions(projected.reshape(-1, n))
        ratios = norms.reshape(end - start, nc) / cnorms
        best = ratios.argmax(axis=1)
        return ratios[np.arange(end - start), best], best

    parts = mapblocks(block, masks.shape[0], perblock)
    values = np.concatenate([p[0] for p in parts])
    which = np.concatenate([p[1] for p in parts])
    return values, [C[j] for j in which]


def _candidatesets(coefs, m):
    """Index sets of size <= m likely to have large projections: the m
    largest coefficients overall, among positive and among negative ones,
    and the first and last m of the support."""
    n = coefs.shape[0]
    order = np.argsort(-np.abs(coefs), kind='stable')
    support = [int(i) for i in np.flatnonzero(coefs)]
    pos = [int(i) for i in order if coefs[i] > 0]
    neg = [int(i) for i in order if coefs[i] < 0]
    sets = [order[:m].tolist(), pos[:m], neg[:m], support[:m],
            support[-m:] if m else []]
    return [sorted(set(A)) for A in sets if A and len(A) <= n]


def _kprobe_candidates(basis, m_max, C):
    cnorms = basis.norms_of_expansions(C)
    entries = {}
    for m in range(1, m_max + 1):
        best = (0., None)
        for r in range(C.shape[0]):
            if cnorms[r] <= 0:
                continue
            for A in _candidatesets(C[r], m):
                proj = np.zeros(basis.dim)
                proj[A] = C[r, A]
                value = float(basis.norms_of_expansions(
                    proj[np.newaxis, :])[0] / cnorms[r])
                if value > best[0]:
                    best = (value, {'quantity': 'projection_ratio', 'A': A,
                                    'coefs': C[r].tolist()})
        entries[m] = best
    return entries


def unconditionality_constants(basis, m_max=None, probe=None, vertexcap=16,
                               exact=False, subset_cap=defaultsubsetcap):
    """k_m = sup_{|A| <= m} ||S_A||, m = 1..m_max.

    Exact for unit vector bases of lattice spaces, where every coordinate
    projection has norm 1. Exact for polyhedral spaces of dimension up to
    `vertexcap`, where the operator norm of S_A is the maximum of
    ||S_A v|| over the vertices v of the unit ball. Otherwise a lower bound
    from the probe family. The table is non-decreasing in m.

    Raises
    ------
    CapacityError or UnsupportedOracleError
        Only if `exact` is True and the exact oracle is not available.

    """
    from .probes import ProbeFamily
    n = basis.dim
    m_max = _checkmmax(basis, m_max)
    feasible, largest = _sweepfeasible(n, m_max, subset_cap)
    if basis.isidentity and is_lattice(basis.space):
        raw = {m: EstimateValue(1., 'exact', {
            'quantity': 'projection_ratio', 'A': list(range(m)),
            'f': [1.] + [0.] * (n - 1)}) for m in range(1, m_max + 1)}
        return ParamTable.running_max('k', raw)
    if is_polyhedral(basis.space) and n <= vertexcap and feasible:
        nv = unit_ball_vertex_count(basis.space)
        nmasks = sum(math.comb(n, m) for m in range(1, m_max + 1))
        if nmasks * nv <= vertexworkcap:
            masks = _subsetmaskrange(n, m_max)
            values, witnesses = _opnorms_vertex(basis, masks, vertexcap)
            counts = maskbits(masks, n).sum(axis=1).astype(int)
            raw = {}
            for m in range(1, m_max + 1):
                sel = np.flatnonzero(counts == m)
                i = sel[argmax_first(values[sel])]
                raw[m] = EstimateValue(values[i], 'exact', {
                    'quantity': 'projection_ratio',
                    'A': masktoindices(masks[i]),
                    'f': witnesses[i].tolist()})
            return ParamTable.running_max('k', raw)
        elif exact:
            raise CapacityError('vertex_cap', vertexworkcap, nmasks * nv)
    elif exact:
        if not is_polyhedral(basis.space):
            raise UnsupportedOracleError(f"no exact operator norms in "
                                         f"{basis.space.label}")
        raise CapacityError('vertex_cap', vertexcap, n)
    if probe is None:
        probe = ProbeFamily()
    C = probe.coefficients(n)
    nmasks = sum(math.comb(n, m) for m in range(1, m_max + 1))
    if nmasks * C.shape[0] <= probeworkcap:
        masks = _subsetmaskrange(n, m_max)
        values, witnesses = _opnorms_probe(basis, masks, C)
        counts = maskbits(masks, n).sum(axis=1).astype(int)
        raw = {}
        for m in range(1, m_max + 1):
            sel = np.flatnonzero(counts == m)
            i = sel[argmax_first(values[sel])]
            raw[m] = EstimateValue(values[i], 'lower_bound', {
                'quantity': 'projection_ratio',
                'A': masktoindices(masks[i]),
                'coefs': witnesses[i].tolist()})
    else:
        raw = {m: EstimateValue(v, 'lower_bound', w) for m, (v, w) in
               _kprobe_candidates(basis, m_max, C).items()}
    return ParamTable.running_max('k', raw)


def _greedycandidates(C, m, tiecap):
    """Pairs (row index, greedy set mask) covering the tie-rule greedy set
    of every row, plus every other greedy set of rows with ties at the
    cut-off when n <= tiecap."""
    masks = greedy_masks(C, m)
    rows = np.arange(C.shape[0])
    n = C.shape[1]
    if m == 0 or m == n or n > tiecap:
        return rows, masks
    mags = np.sort(np.abs(C), axis=1)[:, ::-1]
    tied = np.flatnonzero(mags[:, m - 1] == mags[:, m])
    extrarows, extramasks = [], []
    for r in tied:
        for selection in all_greedy_sets_coefs(C[r], m, tiecap=tiecap)[1:]:
            mask = np.zeros(n, dtype=bool)
            mask[list(selection.indices)] = True
            extrarows.append(r)
            extramasks.append(mask)
    if extrarows:
        rows = np.concatenate([rows, np.array(extrarows)])
        masks = np.concatenate([masks, np.array(extramasks)])
    return rows, masks


def _greedytypeconstant(basis, probe, operator, quantity, tiecap):
    from .probes import ProbeFamily
    if probe is None:
        probe = ProbeFamily()
    n = basis.dim
    C = probe.coefficients(n)
    if C.shape[0] == 0:
        raise UsageError("probe family is empty")
    cnorms = basis.norms_of_expansions(C)
    best = (0., None)
    for m in range(1, n + 1):
        rows, masks = _greedycandidates(C, m, tiecap)
        if operator == 'greedy':
            images = np.where(masks, C[rows], 0.)
        else:
            images = restricted_truncation_batch(C[rows], masks)
        norms = basis.norms_of_expansions(images)
        denominators = cnorms[rows]
        ratios = np.where(denominators > 0, norms / np.where(
            denominators > 0, denominators, 1.), 0.)
        i = argmax_first(ratios)
        if ratios[i] > best[0]:
            best = (float(ratios[i]), {
                'quantity': quantity, 'm': m,
                'A': [int(j) for j in np.flatnonzero(masks[i])],
                'coefs': C[rows[i]].tolist()})
    return EstimateValue(best[0], 'lower_bound', best[1])


def quasi_greedy_constant(basis, probe=None, tiecap=defaulttiecap):
    """Lower bound of sup_m ||G_m|| from the probe family, maximizing over
    all greedy sets of probes with ties."""
    return _greedytypeconstant(basis, probe, 'greedy', 'greedy_ratio',
                               tiecap)


def truncation_qg_constant(basis, probe=None, tiecap=defaulttiecap):
    """Lower bound of sup_m ||R_m|| from the probe family, maximizing over
    all greedy sets of probes with ties."""
    return _greedytypeconstant(basis, probe, 'truncation',
                               'truncation_ratio', tiecap)


def conditionality_report(basis, m_max=None, probe=None, vertexcap=16,
                          subset_cap=defaultsubsetcap, exact=False,
                          seed=0):
    """All parameters of a basis, as a dictionary of ParamTable and
    EstimateValue objects keyed by 'phi', 'psi', 'mu', 'k', 'succ',
    'quasigreedy', 'truncationqg'."""
    m_max = _checkmmax(basis, m_max)
    logger.info("computing parameters of %s", basis)
    return {
        'phi': fundamental_function(basis, m_max, subset_cap, exact, seed),
        'psi': lower_democracy_function(basis, m_max, subset_cap, exact,
                                        seed),
        'mu': democracy_parameter(basis, m_max, subset_cap, exact, seed),
        'k': unconditionality_constants(basis, m_max, probe, vertexcap,
                                        exact, subset_cap),
        'succ': succ_constant(basis, exact=exact, seed=seed),
        'quasigreedy': quasi_greedy_constant(basis, probe),
        'truncationqg': truncation_qg_constant(basis, probe),
    }
