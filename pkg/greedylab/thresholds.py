"""Threshold-indexed functions of a basis on a geometric grid.

For a threshold a in (0, 1) and f with all coefficients of magnitude at
most 1, A(a, f) is the set of indices with coefficient magnitude >= a. The
three functions are, as sups over such f,

- lambda(a): ||R(f, A(a, f))|| / ||f||,
- theta(a): ||S_{A(a, f)} f|| / ||f||,
- phi(a): ||S_A f|| / ||f|| over all A contained in A(a, f).

They are evaluated at the points a_k = s^(-k), k = 1..K of a
`ThresholdGrid`, either exhaustively over coefficient vectors with entries
in a finite value set (`exact_grid_oracle`, small n only), or over a probe
family (`probe_estimate`). Both give lower bounds of the true sups; entries
of exhaustive tables carry the flag 'exhaustive-grid'.

The value set used at a_k is {0} U {+-s^(-j) : 0 <= j <= levels - K + k}.
These sets grow as a_k decreases and the set at a_k contains s^(-1) times
the set at a_(k-1), so scaling a witness at a_(k-1) by 1/s gives a witness
at a_k with the same ratio; exhaustive tables are therefore non-increasing
in a.

"""
import logging
import math

import numpy as np

from .estimates import EstimateValue, FunctionTable
from .operators import restricted_truncation_batch
from .parallel import mapblocks
from .parameters import maskbits, masktoindices, _ternarydigits
from .utils import UsageError, CapacityError

__all__ = ['ThresholdGrid', 'exact_grid_oracle', 'exact_grid_tables',
           'probe_estimate', 'probe_tables', 'monotone_envelope',
           'succ_from_lambda', 'constant_coefficient_bound', 'gridvalues']

logger = logging.getLogger(__name__)

maxoracledim = 6
maxgridrows = 2 * 10 ** 7
maxsubsetdim = 12
blockrows = 2 ** 12

witnessquantities = {'lambda': 'threshold_truncation_ratio',
                     'theta': 'threshold_projection_ratio',
                     'phi': 'subthreshold_projection_ratio'}


class ThresholdGrid:
    """Geometric grid of thresholds a_k = s^(-k), k = 1..K.

    Parameters
    ----------
    s: float
        Grid ratio, > 1.
    K: int
        Number of grid points, >= 1.

    """

    def __init__(self, s=2., K=8):
        s = float(s)
        if not (s > 1. and math.isfinite(s)):
            raise UsageError(f"grid ratio s should be > 1, not {s}")
        if int(K) != K or K < 1:
            raise UsageError(f"grid size K should be a positive integer, "
                             f"not {K}")
        self._s = s
        self._K = int(K)
        points = s ** -np.arange(1, self._K + 1, dtype='float64')
        if not np.all(points > 0.):
            raise UsageError(f"grid s={s}, K={K} underflows")
        points.setflags(write=False)
        self._points = points

    @property
    def s(self):
        return self._s

    @property
    def K(self):
        return self._K

    @property
    def points(self):
        """Grid points in decreasing order."""
        return self._points

    def __len__(self):
        return self._K

    def __eq__(self, other):
        if not isinstance(other, ThresholdGrid):
            return NotImplemented
        return (self._s, self._K) == (other._s, other._K)

    def __hash__(self):
        return hash((self._s, self._K))

    def __repr__(self):
        return f"ThresholdGrid(s={self._s:g}, K={self._K})"

    def index(self, a):
        """Position of grid point `a`."""
        matches = np.flatnonzero(np.isclose(self._points, a, rtol=1e-12,
                                            atol=0.))
        if matches.size == 0:
            raise UsageError(f"{a} is not a point of {self}")
        return int(matches[0])

    def snap_down(self, x):
        """Largest grid point <= x, or None if x is below the grid."""
        below = np.flatnonzero(self._points <= x * (1. + 1e-12))
        if below.size == 0:
            return None
        return float(self._points[below[0]])

    def to_dict(self):
        return {'s': self._s, 'K': self._K}


def gridvalues(s, levels):
    """Coefficient values {0} U {+-s^(-j) : 0 <= j <= levels} with their
    levels (-1 for 0), in enumeration order."""
    magnitudes = s ** -np.arange(levels + 1, dtype='float64')
    values = np.zeros(2 * levels + 3)
    values[1::2] = magnitudes
    values[2::2] = -magnitudes
    valuelevels = np.full(2 * levels + 3, -1)
    valuelevels[1::2] = np.arange(levels + 1)
    valuelevels[2::2] = np.arange(levels + 1)
    return values, valuelevels


def _gridrows(n, values, valuelevels, start, end):
    base = values.shape[0]
    rows = np.arange(start, end, dtype=np.int64)
    codes = np.empty((rows.shape[0], n), dtype=np.int64)
    for i in range(n):
        codes[:, i] = rows % base
        rows //= base
    return values[codes], valuelevels[codes].max(axis=1)


def _checkoracle(basis, grid, levels):
    n = basis.dim
    if int(levels) != levels or levels < grid.K + 1:
        raise UsageError(f"levels should be an integer >= K + 1 = "
                         f"{grid.K + 1}, not {levels}")
    if n > maxoracledim:
        raise CapacityError('threshold_dim', maxoracledim, n)
    nrows = (2 * int(levels) + 3) ** n
    if nrows > maxgridrows:
        raise CapacityError('threshold_rows', maxgridrows, nrows)
    return nrows


def _subsetmax(ratios):
    """For every row and subset mask T, the max of ratios over subsets of T
    and the subset attaining it."""
    nsub = ratios.shape[1]
    n = nsub.bit_length() - 1
    best = ratios.copy()
    arg = np.broadcast_to(np.arange(nsub), ratios.shape).copy()
    masks = np.arange(nsub)
    for i in range(n):
        bit = 1 << i
        sup = masks[(masks & bit) != 0]
        sub = sup ^ bit
        better = best[:, sub] > best[:, sup]
        best[:, sup] = np.where(better, best[:, sub], best[:, sup])
        arg[:, sup] = np.where(better, arg[:, sub], arg[:, sup])
    return best, arg


def _candidatesubsets(C, inA):
    """Subsets of A(a, f) tried for phi when subsets cannot be enumerated:
    the positive and the negative part of A(a, f)."""
    return [inA & (C > 0), inA & (C < 0)]


def _evaluateblock(basis, C, admissible, points):
    """Best ratios of a block of coefficient rows, per grid point and
    function: dict func_id -> list of (value, row, subset mask) or None."""
    n = basis.dim
    b = C.shape[0]
    cnorms = basis.norms_of_expansions(C)
    valid = cnorms > 0.
    safenorms = np.where(valid, cnorms, 1.)
    absC = np.abs(C)
    weights = 1 << np.arange(n, dtype=np.int64)
    rows = np.arange(b)
    fullsubsets = n <= maxsubsetdim
    if fullsubsets:
        allmasks = maskbits(np.arange(2 ** n), n)
        projected = C[:, np.newaxis, :] * allmasks[np.newaxis, :, :]
        pratios = basis.norms_of_expansions(projected.reshape(-1, n))
        pratios = pratios.reshape(b, 2 ** n) / safenorms[:, np.newaxis]
        submax, argsub = _subsetmax(pratios)
    out = {func_id: [] for func_id in witnessquantities}
    for k, a in enumerate(points):
        inA = absC >= a
        Amask = inA.astype(np.int64) @ weights
        usable = valid & admissible[:, k]
        lam = basis.norms_of_expansions(
            restricted_truncation_batch(C, inA)) / safenorms
        if fullsubsets:
            theta = pratios[rows, Amask]
            phi = submax[rows, Amask]
            phimask = argsub[rows, Amask]
        else:
            theta = basis.norms_of_expansions(np.where(inA, C, 0.)) / \
                safenorms
            phi, phimask = theta.copy(), Amask.copy()
            for sub in _candidatesubsets(C, inA):
                values = basis.norms_of_expansions(np.where(sub, C, 0.)) / \
                    safenorms
                better = values > phi
                phi = np.where(better, values, phi)
                phimask = np.where(better, sub.astype(np.int64) @ weights,
                                   phimask)
        for func_id, values, masks in (('lambda', lam, Amask),
                                       ('theta', theta, Amask),
                                       ('phi', phi, phimask)):
            candidates = np.flatnonzero(usable)
            if candidates.size == 0:
                out[func_id].append(None)
                continue
            i = candidates[int(np.argmax(values[candidates]))]
            out[func_id].append((float(values[i]), int(i), int(masks[i])))
    return out


def _reduceblocks(parts, nk):
    """Merges block results in block order, keeping the first maximum.
    Entries become (value, block index, row, subset mask)."""
    best = {func_id: [None] * nk for func_id in witnessquantities}
    for blockindex, part in enumerate(parts):
        for func_id, entries in part.items():
            for k, entry in enumerate(entries):
                if entry is None:
                    continue
                current = best[func_id][k]
                if current is None or entry[0] > current[0]:
                    best[func_id][k] = (entry[0], blockindex) + entry[1:]
    return best


def _tables(grid, best, rowof, flags):
    tables = {}
    for func_id, quantity in witnessquantities.items():
        entries = []
        for k, a in enumerate(grid.points):
            entry = best[func_id][k]
            if entry is None:
                raise UsageError(f"no admissible vector at threshold {a:g}")
            value, blockindex, row, mask = entry
            witness = {'quantity': quantity, 'a': float(a),
                       'coefs': rowof(blockindex, row).tolist()}
            if func_id == 'phi':
                witness['A'] = masktoindices(mask)
            entries.append(EstimateValue(value, 'lower_bound', witness,
                                         flags))
        tables[func_id] = FunctionTable(func_id, grid, entries)
    return tables


def exact_grid_tables(basis, grid, levels):
    """lambda, theta and phi tables from exhaustive enumeration of grid
    coefficient vectors, as a dict keyed by func_id.

    Raises
    ------
    CapacityError
        If n > 6 or the number of coefficient vectors exceeds the row cap.

    """
    nrows = _checkoracle(basis, grid, levels)
    n = basis.dim
    levels = int(levels)
    values, valuelevels = gridvalues(grid.s, levels)
    # largest level admissible at a_k, k = 1..K
    maxlevels = levels - grid.K + np.arange(1, grid.K + 1)
    logger.info("exhaustive threshold grid: %d coefficient vectors in "
                "dimension %d", nrows, n)

    def block(start, end):
        C, rowlevels = _gridrows(n, values, valuelevels, start, end)
        admissible = rowlevels[:, np.newaxis] <= maxlevels[np.newaxis, :]
        return _evaluateblock(basis, C, admissible, grid.points)

    best = _reduceblocks(mapblocks(block, nrows, blockrows), grid.K)

    def rowof(blockindex, row):
        start = blockindex * blockrows + row
        return _gridrows(n, values, valuelevels, start, start + 1)[0][0]

    return _tables(grid, best, rowof, ('exhaustive-grid',))


def exact_grid_oracle(basis, func_id, grid, levels):
    """Exhaustive-grid table of one of 'lambda', 'theta' or 'phi'."""
    if func_id not in witnessquantities:
        raise UsageError(f"func_id should be one of "
                         f"{tuple(witnessquantities)}, not '{func_id}'")
    return exact_grid_tables(basis, grid, levels)[func_id]


def _probecoefficients(basis, probe):
    C = probe.coefficients(basis.dim)
    if C.shape[0] == 0:
        raise UsageError("probe family is empty")
    # scale into the unit ball of coefficients
    peaks = np.abs(C).max(axis=1)
    return C / np.maximum(peaks, 1.)[:, np.newaxis]


def probe_tables(basis, grid, probe):
    """lambda, theta and phi lower-bound tables from a probe family, as a
    dict keyed by func_id."""
    C = _probecoefficients(basis, probe)
    admissible = np.ones((C.shape[0], grid.K), dtype=bool)

    def block(start, end):
        return _evaluateblock(basis, C[start:end], admissible[start:end],
                              grid.points)

    best = _reduceblocks(mapblocks(block, C.shape[0], blockrows), grid.K)
    return _tables(grid, best,
                   lambda blockindex, row: C[blockindex * blockrows + row],
                   ())


def probe_estimate(basis, func_id, grid, probe):
    """Lower-bound table of one of 'lambda', 'theta' or 'phi' from a probe
    family."""
    if func_id not in witnessquantities:
        raise UsageError(f"func_id should be one of "
                         f"{tuple(witnessquantities)}, not '{func_id}'")
    return probe_tables(basis, grid, probe)[func_id]


def monotone_envelope(table):
    """Table whose envelope at a_k is the max of the values at a_j, j <= k,
    i.e. the smallest non-increasing function of a above the table."""
    values = np.maximum(table.raw, table.envelope)
    return table.replace(envelope=np.maximum.accumulate(values))


def succ_from_lambda(table_lambda):
    """The lambda envelope at the largest grid point, which stands in for
    lambda(1-), a bound of the SUCC constant."""
    if table_lambda.func_id != 'lambda':
        raise UsageError(f"expected a lambda table, not "
                         f"'{table_lambda.func_id}'")
    first = table_lambda.entries[0]
    return EstimateValue(table_lambda.envelope[0], first.mode, first.witness,
                         first.flags + ('largest-grid-point',))


def constant_coefficient_bound(basis, grid, levels):
    """C_u = max ||sum a_n x_n|| / ||1_{eps,A}|| over grid coefficient
    vectors a with |a_n| <= 1, sets A containing the support of a and signs
    eps.

    Exact for Banach spaces (the max over the coefficient box is attained at
    sign vectors, which lie on the grid), a lower bound otherwise; flagged
    'grid-exact' in both cases.

    """
    nrows = _checkoracle(basis, grid, levels)
    n = basis.dim
    nsub = 2 ** n
    # min over signs of ||1_{eps,A}|| for every A
    states = np.arange(3 ** n, dtype=np.int64)
    digits = _ternarydigits(states, n)
    signed = np.where(digits == 2, -1., digits.astype('float64'))
    signednorms = basis.norms_of_expansions(signed)
    supports = (digits > 0).astype(np.int64) @ (1 << np.arange(n))
    order = np.lexsort((states, signednorms, supports))
    _, first = np.unique(supports[order], return_index=True)
    minstate = order[first]
    minnorm = signednorms[minstate]
    # min over supersets
    U = minnorm.copy()
    Ustate = minstate.copy()
    masks = np.arange(nsub)
    for i in range(n):
        bit = 1 << i
        sub = masks[(masks & bit) == 0]
        better = U[sub | bit] < U[sub]
        U[sub] = np.where(better, U[sub | bit], U[sub])
        Ustate[sub] = np.where(better, Ustate[sub | bit], Ustate[sub])
    values, valuelevels = gridvalues(grid.s, int(levels))

    def block(start, end):
        C, _ = _gridrows(n, values, valuelevels, start, end)
        supp = (C != 0.).astype(np.int64) @ (1 << np.arange(n))
        ratios = basis.norms_of_expansions(C) / \
            np.where(supp == 0, 1., U[supp])
        ratios[supp == 0] = 0.
        i = int(np.argmax(ratios))
        return float(ratios[i]), start + i

    best = (0., 0)
    for value, row in mapblocks(block, nrows, blockrows):
        if value > best[0]:
            best = (value, row)
    coefs = _gridrows(n, values, valuelevels, best[1], best[1] + 1)[0][0]
    supp = int((coefs != 0.).astype(np.int64) @ (1 << np.arange(n)))
    statedigits = digits[Ustate[supp]]
    A = [int(j) for j in np.flatnonzero(statedigits > 0)]
    witness = {'quantity': 'constant_coefficient_ratio',
               'coefs': coefs.tolist(), 'A': A,
               'signs': [1 if statedigits[j] == 1 else -1 for j in A]}
    mode = 'exact' if basis.space.p_convexity == 1. else 'lower_bound'
    return EstimateValue(best[0], mode, witness, ('grid-exact',))
