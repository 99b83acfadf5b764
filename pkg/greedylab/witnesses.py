"""Re-evaluation of witnesses.

A witness is a dictionary with a 'quantity' key naming what was measured
and the inputs needed to measure it again, e.g.

    {'quantity': 'projection_ratio', 'A': [0, 2], 'coefs': [1.0, -1.0, 0.5]}

`reevaluate(basis, witness)` recomputes the value from scratch, through the
public operators, so that stored values can be checked independently of
the estimator that produced them. Index sets are 0-based.

"""
import numpy as np

from .operators import SignedSet, project_coefs, \
    restricted_truncation_coefs, threshold_set_coefs
from .quasinorm import eval_norm, lorentz, weaklp
from .utils import UsageError

__all__ = ['reevaluate', 'quantities']


def _indicatorcoefs(dim, A, signs=None):
    if signs is None:
        signs = [1] * len(A)
    if len(signs) != len(A):
        raise UsageError("witness signs do not match its index set")
    return SignedSet(dict(zip(A, signs))).ascoefs(dim)


def _coefs(basis, w):
    if 'coefs' in w:
        return np.asarray(w['coefs'], dtype='float64')
    return basis.coefficients(w['f'])


def _norm(basis, coefs):
    return eval_norm(basis.space, basis.vectors @ coefs)


def _ratio(numerator, denominator):
    return numerator / denominator if denominator > 0 else 0.


def indicator_norm(basis, w):
    return _norm(basis, _indicatorcoefs(basis.dim, w['A'], w.get('signs')))


def democracy_ratio(basis, w):
    return _ratio(_norm(basis, _indicatorcoefs(basis.dim, w['A'])),
                  _norm(basis, _indicatorcoefs(basis.dim, w['B'])))


def succ_ratio(basis, w):
    signs = dict(zip(w['A'], w['signs']))
    B = w['B']
    return _ratio(
        _norm(basis, _indicatorcoefs(basis.dim, B, [signs[b] for b in B])),
        _norm(basis, _indicatorcoefs(basis.dim, w['A'], w['signs'])))


def projection_ratio(basis, w):
    coefs = _coefs(basis, w)
    return _ratio(_norm(basis, project_coefs(coefs, w['A'])),
                  _norm(basis, coefs))


def truncation_ratio(basis, w):
    coefs = _coefs(basis, w)
    return _ratio(_norm(basis, restricted_truncation_coefs(coefs, w['A'])),
                  _norm(basis, coefs))


def threshold_projection_ratio(basis, w):
    coefs = _coefs(basis, w)
    A = threshold_set_coefs(coefs, w['a'])
    return _ratio(_norm(basis, project_coefs(coefs, A)), _norm(basis, coefs))


def threshold_truncation_ratio(basis, w):
    coefs = _coefs(basis, w)
    A = threshold_set_coefs(coefs, w['a'])
    return _ratio(_norm(basis, restricted_truncation_coefs(coefs, A)),
                  _norm(basis, coefs))


def subthreshold_projection_ratio(basis, w):
    coefs = _coefs(basis, w)
    if not set(w['A']).issubset(threshold_set_coefs(coefs, w['a'])):
        raise UsageError("witness set is not contained in the threshold set")
    return _ratio(_norm(basis, project_coefs(coefs, w['A'])),
                  _norm(basis, coefs))


def lebesgue_ratio(basis, w):
    coefs = _coefs(basis, w)
    greedyerror = _norm(basis, coefs - project_coefs(coefs, w['A']))
    approx = np.zeros(basis.dim)
    approx[list(w['support'])] = w['approxcoefs']
    return _ratio(greedyerror, _norm(basis, coefs - approx))


def constant_coefficient_ratio(basis, w):
    coefs = _coefs(basis, w)
    return _ratio(_norm(basis, coefs),
                  _norm(basis, _indicatorcoefs(basis.dim, w['A'],
                                               w['signs'])))


def lorentz_indicator_ratio(basis, w):
    norm = _norm(basis, _indicatorcoefs(basis.dim, w['A'], w['signs']))
    return norm / len(w['A']) ** (1. / w['r'])


def lorentz_domination_ratio(basis, w):
    coefs = _coefs(basis, w)
    r, p = w['r'], w['p']
    reference = weaklp(r, basis.dim) if p == 'inf' else \
        lorentz(r, p, basis.dim)
    return _ratio(_norm(basis, coefs), eval_norm(reference, coefs))


quantities = {
    'indicator_norm': indicator_norm,
    'democracy_ratio': democracy_ratio,
    'succ_ratio': succ_ratio,
    'projection_ratio': projection_ratio,
    'greedy_ratio': projection_ratio,
    'truncation_ratio': truncation_ratio,
    'threshold_projection_ratio': threshold_projection_ratio,
    'threshold_truncation_ratio': threshold_truncation_ratio,
    'subthreshold_projection_ratio': subthreshold_projection_ratio,
    'lebesgue_ratio': lebesgue_ratio,
    'constant_coefficient_ratio': constant_coefficient_ratio,
    'lorentz_indicator_ratio': lorentz_indicator_ratio,
    'lorentz_domination_ratio': lorentz_domination_ratio,
}


def reevaluate(basis, witness):
    """Recomputes the value a witness stands for.

    Raises UsageError for unknown quantities.

    """
    if not isinstance(witness, dict) or 'quantity' not in witness:
        raise UsageError(f"witness should be a dictionary with a 'quantity' "
                         f"key, not {witness}")
    quantity = witness['quantity']
    if quantity not in quantities:
        raise UsageError(f"'{quantity}' is not a known witness quantity "
                         f"({sorted(quantities)})")
    return float(quantities[quantity](basis, witness))
