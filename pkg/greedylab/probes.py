"""Probe vectors for lower-bound estimation of sup-type constants.

Probes are coefficient vectors (rows of a 2-D array); the corresponding
ambient vectors are obtained by expanding them in the basis. A probe family
is the union, in this order, of

1. sign vectors eps 1_A on supports of size up to `support_cap`,
2. layered vectors whose coefficient magnitudes lie on the geometric grid
   s^(-j), constant on bands of indices,
3. seeded uniform random vectors in [-1, 1]^n,
4. witnesses imported from other estimators.

The family is a deterministic function of its parameters.

"""
import itertools
import logging
import math

import numpy as np

from .utils import UsageError

__all__ = ['ProbeFamily']

logger = logging.getLogger(__name__)

maxfullsignenumeration = 3 ** 10


class ProbeFamily:
    """Deterministic family of probe coefficient vectors.

    Parameters
    ----------
    seed: int
    random_count: int
        Number of random vectors, and of sampled sign and layered vectors
        when those cannot be enumerated.
    support_cap: int
        Largest support of sign vectors.
    s: float
        Ratio of the geometric grid of layered vectors.
    levels: int
        Largest exponent j of layered magnitudes s^(-j).
    gridonly: bool
        Only produce vectors with entries in {0} U {+-s^(-j)}; no uniform
        random vectors.
    extra: array-like, optional
        Rows of additional probe coefficients (imported witnesses).

    """

    def __init__(self, seed=0, random_count=200, support_cap=8, s=2.,
                 levels=6, gridonly=False, extra=None):
        if random_count < 0 or support_cap < 1 or levels < 0 or not s > 1:
            raise UsageError(f"invalid probe parameters (random_count="
                             f"{random_count}, support_cap={support_cap}, "
                             f"s={s}, levels={levels})")
        self.seed = int(seed)
        self.random_count = int(random_count)
        self.support_cap = int(support_cap)
        self.s = float(s)
        self.levels = int(levels)
        self.gridonly = bool(gridonly)
        self.extra = None if extra is None else \
            np.atleast_2d(np.asarray(extra, dtype='float64'))

    def __repr__(self):
        return f"ProbeFamily(seed={self.seed}, random_count=" \
               f"{self.random_count}, support_cap={self.support_cap}, " \
               f"s={self.s:g}, levels={self.levels}, " \
               f"gridonly={self.gridonly})"

    def with_extra(self, rows):
        """Returns a family that additionally contains `rows`."""
        rows = np.atleast_2d(np.asarray(rows, dtype='float64'))
        if rows.size == 0:
            return self
        extra = rows if self.extra is None else \
            np.concatenate([self.extra, rows])
        return ProbeFamily(self.seed, self.random_count, self.support_cap,
                           self.s, self.levels, self.gridonly, extra)

    def signvectors(self, dim, rng):
        cap = min(self.support_cap, dim)
        if 3 ** dim <= maxfullsignenumeration:
            rows = [r for r in itertools.product((0., 1., -1.), repeat=dim)
                    if 0 < sum(map(abs, r)) <= cap]
            return np.array(rows)
        rows = []
        for size in range(1, cap + 1):
            # contiguous supports with alternating and constant signs
            for start in range(0, dim - size + 1):
                for pattern in (1., -1.):
                    row = np.zeros(dim)
                    row[start:start + size] = pattern ** np.arange(size)
                    rows.append(row)
                    row = np.zeros(dim)
                    row[start:start + size] = 1.
                    rows.append(row)
        sizes = rng.integers(1, cap + 1, size=self.random_count)
        for size in sizes:
            row = np.zeros(dim)
            support = rng.choice(dim, size=size, replace=False)
            row[support] = rng.choice((-1., 1.), size=size)
            rows.append(row)
        return np.unique(np.array(rows), axis=0)[::-1]

    def layeredvectors(self, dim, rng):
        s, levels = self.s, self.levels
        rows = []
        # deterministic staircases: band j gets magnitude s^(-j)
        for nbands in range(1, min(levels + 1, dim) + 1):
            bandof = (np.arange(dim) * nbands) // dim
            magnitudes = s ** (-bandof.astype('float64'))
            for signs in (np.ones(dim), (-1.) ** np.arange(dim)):
                rows.append(magnitudes * signs)
                rows.append(magnitudes[::-1] * signs)
        exponents = rng.integers(0, levels + 2, size=(self.random_count, dim))
        signs = rng.choice((-1., 1.), size=(self.random_count, dim))
        layered = np.where(exponents <= levels,
                           signs * s ** (-exponents.astype('float64')), 0.)
        rows.extend(layered)
        return np.array(rows)

    def coefficients(self, dim):
        """All probe coefficient vectors for dimension `dim`, as rows of a
        2-D array; zero rows are removed."""
        rng = np.random.default_rng([self.seed, dim])
        parts = [self.signvectors(dim, rng), self.layeredvectors(dim, rng)]
        if not self.gridonly:
            parts.append(rng.uniform(-1., 1., size=(self.random_count, dim)))
        if self.extra is not None:
            if self.extra.shape[1] != dim:
                raise UsageError(f"extra probes have dimension "
                                 f"{self.extra.shape[1]}, expected {dim}")
            parts.append(self.extra)
        C = np.concatenate(parts)
        C = C[np.any(C != 0., axis=1)]
        logger.debug("%d probe vectors in dimension %d", C.shape[0], dim)
        return C

    def maxlevel(self):
        """Largest exponent j such that s^(-j) occurs in grid-only probes."""
        return self.levels if self.gridonly else math.inf
