"""Bases of finite-dimensional quasi-normed spaces with their biorthogonal
dual functionals.

A `BasisSystem` stores the basis vectors as the columns of a square matrix
and the dual functionals as the rows of another, both in the ambient
coordinates of its space. The coefficient of f with respect to the j-th basis
vector is thus ``duals[j] @ f``.

"""
import json
import logging
import math
import warnings
from pathlib import Path

import numpy as np
from packaging import version

from .quasinorm import QuasiNorm, eval_norms, unit_ball_vertices, \
    is_polyhedral
from .utils import UsageError, CapacityError, UnsupportedOracleError, \
    check_vector
from ._version import __version__

__all__ = ['BasisSystem', 'coefficients', 'expand', 'load_basis',
           'functional_norm']

logger = logging.getLogger(__name__)

biorthogonalitytolerance = 1e-10
conditionwarninglevel = 1e8


def functional_norm(space, y, vertexcap=16, nprobes=2000, seed=0):
    """Norm of the linear functional f -> y @ f on `space`.

    Returns
    -------
    tuple
        (value, exact), where `exact` is False when the value is a lower
        bound obtained from random probes.

    """
    y = check_vector(y, dim=space.dim, name='y')
    kind = space.kind
    par = space.params
    absy = np.abs(y)
    if is_polyhedral(space):
        try:
            vertices = unit_ball_vertices(space, vertexcap=vertexcap)
        except CapacityError:
            pass
        else:
            return float(np.abs(vertices @ y).max()), True
    if kind == 'lp':
        p = par['p']
        if p <= 1.:
            # the convex hull of the unit ball is the l_1 ball
            return float(absy.max()), True
        elif math.isinf(p):
            return float(absy.sum()), True
        pdual = p / (p - 1.)
        return float((absy ** pdual).sum() ** (1. / pdual)), True
    elif kind == 'l2blocks':
        p = par['p']
        edges = np.cumsum((0,) + par['blocks'])
        blocknorms = np.array([np.sqrt((absy[s:e] ** 2).sum())
                               for s, e in zip(edges[:-1], edges[1:])])
        if p <= 1.:
            return float(blocknorms.max()), True
        elif math.isinf(p):
            return float(blocknorms.sum()), True
        pdual = p / (p - 1.)
        return float((blocknorms ** pdual).sum() ** (1. / pdual)), True
    elif kind == 'weaklp':
        # the decreasing vector (n^(-1/p)) dominates the unit ball
        n = np.arange(1, space.dim + 1, dtype='float64')
        ystar = -np.sort(-absy)
        return float((ystar * n ** (-1. / par['p'])).sum()), True
    elif kind == 'lorentz' and par['q'] == 1.:
        # extreme points of the l_{p,1} ball are normalized signed
        # indicator vectors
        ystar = -np.sort(-absy)
        n = np.arange(1, space.dim + 1, dtype='float64')
        indicatornorms = np.cumsum(n ** (1. / par['p'] - 1.))
        return float((np.cumsum(ystar) / indicatornorms).max()), True
    rng = np.random.default_rng(seed)
    probes = rng.standard_normal((nprobes, space.dim))
    probes = np.concatenate([probes, np.sign(y)[np.newaxis, :],
                             np.eye(space.dim)])
    norms = eval_norms(space, probes)
    keep = norms > 0
    return float((np.abs(probes[keep] @ y) / norms[keep]).max()), False


class BasisSystem:
    """A basis of a finite-dimensional quasi-normed space together with its
    dual basis.

    Parameters
    ----------
    space: QuasiNorm
        The ambient space.
    vectors: array-like of shape (n, n)
        Column j is basis vector x_j in ambient coordinates.
    duals: array-like of shape (n, n), optional
        Row j is the dual functional x_j^*. Obtained by matrix inversion when
        not provided.
    labels: sequence of str, optional
        Names of the basis vectors.

    Raises
    ------
    UsageError
        If shapes do not match, a basis vector is zero, or biorthogonality
        fails by more than 1e-10 in any entry.

    """

    def __init__(self, space, vectors, duals=None, labels=None,
                 vertexcap=16):
        if not isinstance(space, QuasiNorm):
            raise UsageError(f"'space' should be a QuasiNorm, not "
                             f"{type(space)}")
        n = space.dim
        vectors = np.array(vectors, dtype='float64')
        if vectors.shape != (n, n):
            raise UsageError(f"vectors should have shape {(n, n)}, not "
                             f"{vectors.shape}")
        if not np.all(np.isfinite(vectors)):
            raise UsageError("vectors have non-finite entries")
        if np.any(np.all(vectors == 0., axis=0)):
            raise UsageError("basis vectors should be nonzero")
        condition = np.linalg.cond(vectors)
        if condition > conditionwarninglevel:
            warnings.warn(f"basis matrix is ill-conditioned (condition "
                          f"number {condition:.3g})", UserWarning)
        if duals is None:
            try:
                duals = np.linalg.inv(vectors)
            except np.linalg.LinAlgError:
                raise UsageError("basis vectors are linearly dependent")
        duals = np.array(duals, dtype='float64')
        if duals.shape != (n, n):
            raise UsageError(f"duals should have shape {(n, n)}, not "
                             f"{duals.shape}")
        residual = np.abs(duals @ vectors - np.eye(n)).max()
        if not residual < biorthogonalitytolerance:
            raise UsageError(f"duals and vectors are not biorthogonal "
                             f"(max residual {residual:.3g})")
        if labels is None:
            labels = [f"x{j + 1}" for j in range(n)]
        labels = [str(l) for l in labels]
        if len(labels) != n:
            raise UsageError(f"{len(labels)} labels for {n} basis vectors")
        vectors.setflags(write=False)
        duals.setflags(write=False)
        self._space = space
        self._vectors = vectors
        self._duals = duals
        self._labels = tuple(labels)
        self._residual = float(residual)
        self._vectornorms = eval_norms(space, vectors.T)
        self._vectornorms.setflags(write=False)
        dualnorms = [functional_norm(space, row, vertexcap=vertexcap)
                     for row in duals]
        self._dualnorms = np.array([v for v, _ in dualnorms])
        self._dualnorms.setflags(write=False)
        self._dualnormsexact = all(exact for _, exact in dualnorms)

    @property
    def space(self):
        return self._space

    @property
    def dim(self):
        return self._space.dim

    @property
    def vectors(self):
        """Read-only matrix whose columns are the basis vectors."""
        return self._vectors

    @property
    def duals(self):
        """Read-only matrix whose rows are the dual functionals."""
        return self._duals

    @property
    def labels(self):
        return self._labels

    @property
    def residual(self):
        """Max entrywise deviation of duals @ vectors from the identity."""
        return self._residual

    @property
    def vectornorms(self):
        """Norms ||x_j|| of the basis vectors."""
        return self._vectornorms

    @property
    def dualnorms(self):
        """Norms ||x_j^*|| of the dual functionals; lower bounds unless
        `dualnormsexact` is True."""
        return self._dualnorms

    @property
    def dualnormsexact(self):
        return self._dualnormsexact

    @property
    def vector_norm_bound(self):
        """d = max_j ||x_j||."""
        return float(self._vectornorms.max())

    @property
    def dual_norm_bound(self):
        """c = max_j ||x_j^*||."""
        return float(self._dualnorms.max())

    @property
    def isidentity(self):
        """True if the basis is the unit vector basis of its space."""
        eye = np.eye(self.dim)
        return bool(np.array_equal(self._vectors, eye) and
                    np.array_equal(self._duals, eye))

    def __repr__(self):
        return f"BasisSystem(dim={self.dim}, space={self._space.label})"

    __str__ = __repr__

    def coefficients(self, f):
        return coefficients(self, f)

    def expand(self, coefs):
        return expand(self, coefs)

    def norms_of_expansions(self, C):
        """Norms of sum_j C[i, j] x_j for every row i of `C`."""
        C = np.asarray(C, dtype='float64')
        return eval_norms(self._space, C @ self._vectors.T)

    def to_dict(self):
        return {'space': self._space.to_dict(),
                'vectors': self._vectors.tolist(),
                'duals': self._duals.tolist(),
                'labels': list(self._labels),
                'greedylabversion': __version__}

    @classmethod
    def from_dict(cls, d, vertexcap=16):
        requiredkeys = {'space', 'vectors'}
        if not isinstance(d, dict) or not requiredkeys.issubset(d.keys()):
            raise UsageError(f"basis description should be a dictionary "
                             f"with keys {sorted(requiredkeys)}")
        if 'greedylabversion' in d:
            vfile = version.Version(str(d['greedylabversion']))
            vlib = version.Version(__version__)
            if vfile > vlib:
                warnings.warn(f"Format version of basis file "
                              f"({d['greedylabversion']}) is newer than "
                              f"your version of greedylab ({__version__}). "
                              f"This is not guaranteed to work", UserWarning)
        space = QuasiNorm.from_dict(d['space'])
        return cls(space=space, vectors=d['vectors'], duals=d.get('duals'),
                   labels=d.get('labels'), vertexcap=vertexcap)


def coefficients(basis, f):
    """Returns the coefficients (x_n^*(f))_n of ambient vector `f`.

    Raises UsageError on a dimension mismatch or non-finite entries.

    """
    f = check_vector(f, dim=basis.dim)
    return basis.duals @ f


def expand(basis, coefs):
    """Returns sum_n coefs[n] x_n in ambient coordinates."""
    coefs = check_vector(coefs, dim=basis.dim, name='coefs')
    return basis.vectors @ coefs


def load_basis(path, vertexcap=16):
    """Reads a custom basis from a JSON file with keys 'space', 'vectors'
    and optionally 'duals' and 'labels'."""
    path = Path(path)
    try:
        with open(path, 'r', encoding='utf-8') as fp:
            d = json.load(fp)
    except (OSError, ValueError) as e:
        raise UsageError(f"could not read basis file '{path}': {e}")
    logger.debug("loaded basis description from %s", path)
    return BasisSystem.from_dict(d, vertexcap=vertexcap)
