"""Nonlinear operators of the thresholding greedy algorithm.

All operators come in two flavours. The public functions take a basis and
an ambient vector f, compute its coefficients (x_n^*(f))_n, and return
ambient vectors. The functions ending in `_coefs` take coefficient vectors
and return coefficient vectors; estimators that already hold exact
coefficients use those, so that ties between equal coefficients are not
broken by rounding noise. The `batch` helpers operate on the rows of 2-D
coefficient arrays.

Greedy sets are ordered by non-increasing coefficient magnitude, ties
being resolved by ascending index.

"""
import itertools
import math
from dataclasses import dataclass

import numpy as np

from .basis import coefficients
from .utils import UsageError, CapacityError, check_indices, check_vector

__all__ = ['GreedySelection', 'SignedSet', 'greedy_set', 'all_greedy_sets',
           'project', 'greedy_operator', 'restricted_truncation',
           'restricted_truncation_m', 'truncation_operator',
           'threshold_set', 'thresholding_greedy',
           'thresholding_truncation', 'indicator', 'greedy_set_coefs',
           'all_greedy_sets_coefs', 'project_coefs',
           'restricted_truncation_coefs', 'truncation_operator_coefs',
           'threshold_set_coefs', 'greedy_masks',
           'restricted_truncation_batch']

defaulttiecap = 12


@dataclass(frozen=True)
class GreedySelection:
    """A greedy set of cardinality m, ordered by non-increasing coefficient
    magnitude."""
    indices: tuple

    @property
    def m(self):
        return len(self.indices)

    def asset(self):
        return frozenset(self.indices)


class SignedSet:
    """An index set A together with signs (eps_n)_{n in A} in {-1, +1}.

    Parameters
    ----------
    signs: dict
        Maps each index in A to -1 or +1.

    """

    def __init__(self, signs):
        signs = {int(k): int(v) for k, v in dict(signs).items()}
        if any(v not in (-1, 1) for v in signs.values()):
            raise UsageError(f"signs should be -1 or +1, not "
                             f"{sorted(set(signs.values()))}")
        self._signs = signs

    @property
    def indices(self):
        return frozenset(self._signs)

    @property
    def signs(self):
        return dict(self._signs)

    def __len__(self):
        return len(self._signs)

    def __eq__(self, other):
        if not isinstance(other, SignedSet):
            return NotImplemented
        return self._signs == other._signs

    def __hash__(self):
        return hash(tuple(sorted(self._signs.items())))

    def __repr__(self):
        items = ', '.join(f"{k}:{'+' if v > 0 else '-'}"
                          for k, v in sorted(self._signs.items()))
        return f"SignedSet({{{items}}})"

    def restrict(self, indices):
        return SignedSet({k: self._signs[k] for k in indices})

    def ascoefs(self, dim):
        """Coefficient vector of 1_{eps,A}."""
        coefs = np.zeros(dim)
        for k, v in self._signs.items():
            coefs[k] = v
        return coefs

    @classmethod
    def allsigns(cls, indices):
        """Yields every signed set on `indices`, first sign varying
        slowest, '+' before '-'."""
        indices = sorted(indices)
        for signs in itertools.product((1, -1), repeat=len(indices)):
            yield cls(dict(zip(indices, signs)))


def indicator(basis, signedset):
    """Returns 1_{eps,A} = sum_{n in A} eps_n x_n in ambient coordinates."""
    check_indices(signedset.indices, basis.dim)
    return basis.vectors @ signedset.ascoefs(basis.dim)


def _checkm(m, dim):
    if int(m) != m or m < 0:
        raise UsageError(f"m should be a non-negative integer, not {m}")
    if m > dim:
        raise UsageError(f"m ({m}) is larger than the dimension ({dim})")
    return int(m)


def greedyorder(coefs):
    """Indices sorted by non-increasing |coefs|, ties by ascending index."""
    return np.argsort(-np.abs(coefs), kind='stable')


def greedy_set_coefs(coefs, m):
    coefs = check_vector(coefs, name='coefs')
    m = _checkm(m, coefs.shape[0])
    return GreedySelection(tuple(int(i) for i in greedyorder(coefs)[:m]))


def greedy_set(basis, f, m):
    """Greedy set A_m(f) of cardinality m.

    Raises UsageError if m > n.

    """
    return greedy_set_coefs(coefficients(basis, f), m)


def all_greedy_sets_coefs(coefs, m, tiecap=defaulttiecap):
    """Returns every greedy set of cardinality m as a list of
    GreedySelection objects; the first one is the set chosen by the tie
    rule.

    Raises CapacityError if ties would have to be enumerated in a dimension
    larger than `tiecap`.

    """
    coefs = check_vector(coefs, name='coefs')
    n = coefs.shape[0]
    m = _checkm(m, n)
    first = greedy_set_coefs(coefs, m)
    if m == 0 or m == n:
        return [first]
    mags = np.abs(coefs)
    threshold = mags[first.indices[-1]]
    larger = [int(i) for i in np.flatnonzero(mags > threshold)]
    tied = [int(i) for i in np.flatnonzero(mags == threshold)]
    nfree = m - len(larger)
    if len(tied) == nfree:
        return [first]
    if n > tiecap:
        raise CapacityError('tie_cap', tiecap, n)
    selections = []
    order = greedyorder(coefs)
    rank = {int(i): r for r, i in enumerate(order)}
    for chosen in itertools.combinations(tied, nfree):
        indices = sorted(larger + list(chosen), key=rank.get)
        selections.append(GreedySelection(tuple(indices)))
    return selections


def all_greedy_sets(basis, f, m, tiecap=defaulttiecap):
    return all_greedy_sets_coefs(coefficients(basis, f), m, tiecap=tiecap)


def project_coefs(coefs, A):
    coefs = check_vector(coefs, name='coefs')
    A = check_indices(A, coefs.shape[0])
    out = np.zeros_like(coefs)
    out[A] = coefs[A]
    return out


def project(basis, f, A):
    """Coordinate projection S_A(f) = sum_{n in A} x_n^*(f) x_n.

    Raises UsageError if an index is out of range.

    """
    return basis.vectors @ project_coefs(coefficients(basis, f), A)


def greedy_operator(basis, f, m):
    """G_m(f) = S_{A_m(f)}(f)."""
    coefs = coefficients(basis, f)
    A = greedy_set_coefs(coefs, m).indices
    return basis.vectors @ project_coefs(coefs, A)


def restricted_truncation_coefs(coefs, A):
    coefs = check_vector(coefs, name='coefs')
    A = check_indices(A, coefs.shape[0])
    out = np.zeros_like(coefs)
    if not A:
        return out
    minimum = np.abs(coefs[A]).min()
    if minimum == 0.:
        return out
    out[A] = minimum * np.sign(coefs[A])
    return out


def restricted_truncation(basis, f, A):
    """R(f, A) = min_{n in A} |x_n^*(f)| sum_{n in A} sgn(x_n^*(f)) x_n.

    Empty A, or A containing an index with zero coefficient, gives the zero
    vector.

    """
    return basis.vectors @ restricted_truncation_coefs(
        coefficients(basis, f), A)


def restricted_truncation_m(basis, f, m):
    """R_m(f) = R(f, A_m(f)); R_0(f) = 0."""
    coefs = coefficients(basis, f)
    A = greedy_set_coefs(coefs, m).indices
    return basis.vectors @ restricted_truncation_coefs(coefs, A)


def truncation_operator_coefs(coefs, m):
    coefs = check_vector(coefs, name='coefs')
    A = greedy_set_coefs(coefs, m).indices
    return restricted_truncation_coefs(coefs, A) + coefs - \
        project_coefs(coefs, A)


def truncation_operator(basis, f, m):
    """T_m(f) = R_m(f) + f - G_m(f), with one greedy set shared by R_m and
    G_m."""
    f = check_vector(f, dim=basis.dim)
    coefs = coefficients(basis, f)
    A = greedy_set_coefs(coefs, m).indices
    tail = f - basis.vectors @ project_coefs(coefs, A)
    return basis.vectors @ restricted_truncation_coefs(coefs, A) + tail


def threshold_set_coefs(coefs, a):
    coefs = check_vector(coefs, name='coefs')
    if not (a >= 0 and math.isfinite(a)):
        raise UsageError(f"threshold should be finite and non-negative, not "
                         f"{a}")
    return frozenset(int(i) for i in np.flatnonzero(np.abs(coefs) >= a))


def threshold_set(basis, f, a):
    """A(a, f) = {n : |x_n^*(f)| >= a}."""
    return threshold_set_coefs(coefficients(basis, f), a)


def thresholding_greedy(basis, f, a):
    """G^(a)(f) = S_{A(a,f)}(f)."""
    coefs = coefficients(basis, f)
    return basis.vectors @ project_coefs(coefs,
                                         threshold_set_coefs(coefs, a))


def thresholding_truncation(basis, f, a):
    """R^(a)(f) = R(f, A(a,f)), zero when A(a,f) is empty."""
    coefs = coefficients(basis, f)
    return basis.vectors @ restricted_truncation_coefs(
        coefs, threshold_set_coefs(coefs, a))


def greedy_masks(C, m):
    """Boolean masks of the tie-rule greedy sets of cardinality m of every
    row of coefficient array `C`."""
    C = np.asarray(C, dtype='float64')
    order = np.argsort(-np.abs(C), axis=1, kind='stable')
    masks = np.zeros(C.shape, dtype=bool)
    rows = np.arange(C.shape[0])[:, np.newaxis]
    masks[rows, order[:, :m]] = True
    return masks


def restricted_truncation_batch(C, masks):
    """Coefficients of R(f, A) for every row of `C`, A given by the
    corresponding row of boolean `masks`."""
    C = np.asarray(C, dtype='float64')
    masked = np.where(masks, np.abs(C), np.inf)
    minima = masked.min(axis=1)
    minima[np.isinf(minima)] = 0.
    return np.where(masks, np.sign(C) * minima[:, np.newaxis], 0.)
