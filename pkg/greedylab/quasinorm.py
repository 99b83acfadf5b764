"""Quasi-norms on finite-dimensional real sequence spaces.

A space is described by a `QuasiNorm` object, which knows its kind, its
parameters, its dimension and the exponent `p_convexity`, i.e. the p in
(0, 1] for which the space is p-Banach. Norms are evaluated on coordinate
vectors by `eval_norm`, or on the rows of a 2-D array by `eval_norms`, which
is what all enumerating oracles use.

Supported kinds:

- 'lp': (sum |x_n|^p)^(1/p), 0 < p <= inf
- 'lorentz': (sum a_n^q n^(q/p-1))^(1/q) where (a_n) is the non-increasing
  rearrangement of |x|; q = inf gives sup a_n n^(1/p)
- 'weaklp': the Lorentz kind with q = inf
- 'l2blocks': (sum ||x_block||_2^p)^(1/p) over consecutive coordinate blocks
- 'linear': the norm of a base kind composed with the inverse of an
  invertible matrix M, so that the unit ball is M times the base unit ball

"""
import itertools
import logging
import math

import numpy as np

from .utils import UsageError, CapacityError, UnsupportedOracleError, \
    check_vector

__all__ = ['QuasiNorm', 'lp', 'lorentz', 'weaklp', 'l2blocks',
           'linearimage', 'eval_norm', 'eval_norms', 'rearrange_nonincreasing',
           'unit_ball_vertices', 'unit_ball_vertex_count', 'is_polyhedral',
           'is_lattice']

logger = logging.getLogger(__name__)

kinds = ('lp', 'lorentz', 'weaklp', 'l2blocks', 'linear')

defaultvertexcap = 16


def _parseexponent(value, name):
    if isinstance(value, str):
        if value.lower() in ('inf', 'infinity'):
            return math.inf
        try:
            value = float(value)
        except ValueError:
            raise UsageError(f"'{name}' should be a number or 'inf', not "
                             f"'{value}'")
    value = float(value)
    if not value > 0:
        raise UsageError(f"'{name}' should be positive, not {value}")
    return value


def _exponenttojson(value):
    return 'inf' if math.isinf(value) else value


class QuasiNorm:
    """Descriptor of a finite-dimensional quasi-normed sequence space.

    Use the factory functions `lp`, `lorentz`, `weaklp`, `l2blocks` and
    `linearimage` rather than instantiating directly.

    Parameters
    ----------
    kind: str
        One of 'lp', 'lorentz', 'weaklp', 'l2blocks', 'linear'.
    dim: int
        Dimension of the space.
    params: dict
        Kind-specific parameters.
    p_convexity: float
        The p in (0, 1] for which ||f+g||^p <= ||f||^p + ||g||^p.

    """

    def __init__(self, kind, dim, params, p_convexity):
        if kind not in kinds:
            raise UsageError(f"'{kind}' is not a valid space kind, use one "
                             f"of {kinds}")
        if int(dim) != dim or dim < 1:
            raise UsageError(f"invalid dimension ({dim})")
        if not (0 < p_convexity <= 1):
            raise UsageError(f"p_convexity should be in (0, 1], not "
                             f"{p_convexity}")
        self._kind = kind
        self._dim = int(dim)
        self._params = params
        self._p_convexity = float(p_convexity)

    @property
    def kind(self):
        return self._kind

    @property
    def dim(self):
        return self._dim

    @property
    def params(self):
        return dict(self._params)

    @property
    def p_convexity(self):
        """Exponent p in (0, 1] for which the space is p-Banach."""
        return self._p_convexity

    def __eq__(self, other):
        if not isinstance(other, QuasiNorm):
            return NotImplemented
        return self.to_dict() == other.to_dict()

    def __hash__(self):
        return hash(self.label)

    def __repr__(self):
        return f"QuasiNorm({self.label}, dim={self._dim}, " \
               f"p_convexity={self._p_convexity:g})"

    __str__ = __repr__

    @property
    def label(self):
        """Short human-readable description, e.g. 'lp(1)'."""
        par = self._params
        if self._kind == 'lp':
            return f"lp({par['p']:g})"
        elif self._kind == 'lorentz':
            return f"lorentz({par['p']:g},{par['q']:g})"
        elif self._kind == 'weaklp':
            return f"weaklp({par['p']:g})"
        elif self._kind == 'l2blocks':
            blocks = '+'.join(str(b) for b in par['blocks'])
            return f"l2blocks({par['p']:g};{blocks})"
        else:
            return f"linear({par['base'].label})"

    def to_dict(self):
        par = self._params
        d = {'kind': self._kind, 'dim': self._dim,
             'p_convexity': self._p_convexity}
        if self._kind in ('lp', 'weaklp', 'l2blocks', 'lorentz'):
            d['p'] = _exponenttojson(par['p'])
        if self._kind == 'lorentz':
            d['q'] = _exponenttojson(par['q'])
        if self._kind == 'l2blocks':
            d['blocks'] = list(par['blocks'])
        if self._kind == 'linear':
            d['base'] = par['base'].to_dict()
            d['matrix'] = par['matrix'].tolist()
        return d

    @classmethod
    def from_dict(cls, d):
        """Creates a QuasiNorm from a dictionary as written by `to_dict` or
        as found in configuration and basis files, e.g.
        {"kind": "lp", "p": 1.0, "dim": 8}."""
        if not isinstance(d, dict) or 'kind' not in d:
            raise UsageError(f"space description should be a dictionary "
                             f"with a 'kind' key, not {d}")
        kind = d['kind']
        pc = d.get('p_convexity')
        try:
            if kind == 'lp':
                return lp(d['p'], d['dim'], p_convexity=pc)
            elif kind == 'lorentz':
                return lorentz(d['p'], d['q'], d['dim'], p_convexity=pc)
            elif kind == 'weaklp':
                return weaklp(d['p'], d['dim'], p_convexity=pc)
            elif kind == 'l2blocks':
                space = l2blocks(d['p'], d['blocks'], p_convexity=pc)
                if 'dim' in d and d['dim'] != space.dim:
                    raise UsageError(f"block sizes {d['blocks']} do not add "
                                     f"up to dimension {d['dim']}")
                return space
            elif kind == 'linear':
                return linearimage(cls.from_dict(d['base']), d['matrix'])
        except KeyError as e:
            raise UsageError(f"space description {d} lacks key {e}")
        raise UsageError(f"'{kind}' is not a valid space kind, use one of "
                         f"{kinds}")


def _checkpc(p_convexity, maximum, kind):
    if p_convexity is None:
        return maximum
    p_convexity = float(p_convexity)
    if p_convexity > maximum:
        raise UsageError(f"p_convexity {p_convexity} too large for {kind}; "
                         f"maximum is {maximum:g}")
    return p_convexity


def lp(p, dim, p_convexity=None):
    """The space l_p^dim, 0 < p <= inf."""
    p = _parseexponent(p, 'p')
    pc = _checkpc(p_convexity, min(1., p), 'lp')
    return QuasiNorm('lp', dim, {'p': p}, pc)


def lorentz(p, q, dim, p_convexity=None):
    """The Lorentz space l_{p,q}^dim, 0 < p < inf, 0 < q <= p or q = inf.

    For q <= p the weights n^(q/p-1) are non-increasing, and the quasi-norm
    is a norm when q >= 1 and a q-norm when q < 1. The case q = inf is the
    weak-l_p quasi-norm.

    """
    p = _parseexponent(p, 'p')
    q = _parseexponent(q, 'q')
    if math.isinf(p):
        raise UsageError("Lorentz spaces need finite p")
    if math.isinf(q):
        return weaklp(p, dim, p_convexity=p_convexity)
    if q > p:
        raise UsageError(f"Lorentz spaces with q > p ({q} > {p}) are not "
                         f"supported")
    pc = _checkpc(p_convexity, min(1., q), 'lorentz')
    return QuasiNorm('lorentz', dim, {'p': p, 'q': q}, pc)


def weaklp(p, dim, p_convexity=None):
    """Weak-l_p, quasi-normed by sup_n a_n n^(1/p).

    The quasi-norm satisfies the r-triangle inequality for r = p/(p+1),
    since (f+g)*(i+j-1) <= f*(i) + g*(j).

    """
    p = _parseexponent(p, 'p')
    if math.isinf(p):
        raise UsageError("weak-l_p needs finite p")
    pc = _checkpc(p_convexity, min(1., p / (p + 1.)), 'weaklp')
    return QuasiNorm('weaklp', dim, {'p': p}, pc)


def l2blocks(p, blocks, p_convexity=None):
    """The direct sum of l_2^b (b in `blocks`) in the sense of l_p."""
    p = _parseexponent(p, 'p')
    blocks = tuple(int(b) for b in blocks)
    if not blocks or min(blocks) < 1:
        raise UsageError(f"invalid block sizes {blocks}")
    pc = _checkpc(p_convexity, min(1., p), 'l2blocks')
    return QuasiNorm('l2blocks', sum(blocks), {'p': p, 'blocks': blocks}, pc)


def linearimage(base, matrix):
    """The image of space `base` under invertible `matrix`: the norm of f
    is the base norm of matrix^(-1) f."""
    if base.kind == 'linear':
        inner = base.params
        return linearimage(inner['base'],
                           np.asarray(matrix, dtype='float64') @
                           inner['matrix'])
    matrix = np.array(matrix, dtype='float64')
    if matrix.shape != (base.dim, base.dim):
        raise UsageError(f"matrix shape {matrix.shape} does not match "
                         f"dimension {base.dim}")
    if not np.all(np.isfinite(matrix)):
        raise UsageError("matrix has non-finite entries")
    try:
        inverse = np.linalg.inv(matrix)
    except np.linalg.LinAlgError:
        raise UsageError("change of basis matrix is not invertible")
    if not np.all(np.isfinite(inverse)):
        raise UsageError("change of basis matrix is not invertible")
    matrix.setflags(write=False)
    inverse.setflags(write=False)
    return QuasiNorm('linear', base.dim,
                     {'base': base, 'matrix': matrix, 'inverse': inverse},
                     base.p_convexity)


def is_polyhedral(space):
    """True for l_1, l_inf, and linear images thereof, whose unit balls are
    polytopes."""
    if space.kind == 'linear':
        return is_polyhedral(space.params['base'])
    return space.kind == 'lp' and space.params['p'] in (1., math.inf)


def is_lattice(space):
    """True if ||f|| only depends on |f| coordinatewise and is monotone in
    it, which holds for every kind except linear images."""
    return space.kind != 'linear'


def _rearranged(absF):
    return -np.sort(-absF, axis=1)


def eval_norms(space, F):
    """Evaluates the quasi-norm of every row of 2-D array `F`.

    Parameters
    ----------
    space: QuasiNorm
    F: array-like of shape (N, dim)

    Returns
    -------
    numpy.ndarray
        1-D float64 array of length N

    """
    F = np.asarray(F, dtype='float64')
    if F.ndim != 2 or F.shape[1] != space.dim:
        raise UsageError(f"array of shape {F.shape} does not match space "
                         f"dimension {space.dim}")
    kind = space.kind
    par = space.params
    if kind == 'linear':
        return eval_norms(par['base'], F @ par['inverse'].T)
    absF = np.abs(F)
    if kind == 'lp':
        p = par['p']
        if math.isinf(p):
            return absF.max(axis=1)
        elif p == 1.:
            return absF.sum(axis=1)
        elif p == 2.:
            return np.sqrt((absF * absF).sum(axis=1))
        return (absF ** p).sum(axis=1) ** (1. / p)
    elif kind == 'lorentz':
        p, q = par['p'], par['q']
        n = np.arange(1, space.dim + 1, dtype='float64')
        weights = n ** (q / p - 1.)
        a = _rearranged(absF)
        if q == 1.:
            return (a * weights).sum(axis=1)
        return ((a ** q) * weights).sum(axis=1) ** (1. / q)
    elif kind == 'weaklp':
        n = np.arange(1, space.dim + 1, dtype='float64')
        a = _rearranged(absF)
        return (a * n ** (1. / par['p'])).max(axis=1)
    else:  # l2blocks
        p = par['p']
        edges = np.cumsum((0,) + par['blocks'])
        blocknorms = np.stack([np.sqrt((absF[:, s:e] ** 2).sum(axis=1))
                               for s, e in zip(edges[:-1], edges[1:])],
                              axis=1)
        if math.isinf(p):
            return blocknorms.max(axis=1)
        elif p == 1.:
            return blocknorms.sum(axis=1)
        return (blocknorms ** p).sum(axis=1) ** (1. / p)


def eval_norm(space, f):
    """Returns the quasi-norm of coordinate vector `f` in `space`.

    Raises UsageError when the length of `f` differs from the dimension of
    the space or when `f` has non-finite entries.

    """
    f = check_vector(f, dim=space.dim)
    return float(eval_norms(space, f[np.newaxis, :])[0])


def rearrange_nonincreasing(f):
    """Returns |f| sorted in non-increasing order. Ties keep ascending
    original index order."""
    f = check_vector(f)
    absf = np.abs(f)
    return absf[np.argsort(-absf, kind='stable')]


def unit_ball_vertices(space, vertexcap=defaultvertexcap):
    """Returns the vertices of the closed unit ball of a polyhedral space
    as the rows of a 2-D array.

    The maximum of any convex function over the unit ball equals its maximum
    over these vertices, which makes exact operator norms computable.

    Raises
    ------
    UnsupportedOracleError
        If the space is not polyhedral.
    CapacityError
        If the dimension exceeds `vertexcap`.

    """
    if not is_polyhedral(space):
        raise UnsupportedOracleError(f"unit ball of {space.label} is not a "
                                     f"polytope")
    if space.dim > vertexcap:
        raise CapacityError('vertex_cap', vertexcap, space.dim)
    if space.kind == 'linear':
        base = unit_ball_vertices(space.params['base'], vertexcap=vertexcap)
        return base @ space.params['matrix'].T
    n = space.dim
    if space.params['p'] == 1.:
        eye = np.eye(n)
        return np.concatenate([eye, -eye])
    return np.array(list(itertools.product((1., -1.), repeat=n)))


def unit_ball_vertex_count(space):
    """Number of rows `unit_ball_vertices` returns for a polyhedral space,
    without building them."""
    if not is_polyhedral(space):
        raise UnsupportedOracleError(f"unit ball of {space.label} is not a "
                                     f"polytope")
    if space.kind == 'linear':
        return unit_ball_vertex_count(space.params['base'])
    if space.params['p'] == 1.:
        return 2 * space.dim
    return 2 ** space.dim
