"""Numeric values tagged with how they were obtained.

Every sup-type quantity computed by greedylab is an `EstimateValue`: a value
with a mode that says whether it is exact or only a bound, and a witness,
i.e. a JSON-serializable description of the input that attains the value.
Witnesses can be re-evaluated with `greedylab.witnesses.reevaluate`.

"""
from dataclasses import dataclass, field

import numpy as np

from .utils import UsageError

__all__ = ['EstimateValue', 'ParamTable', 'FunctionTable', 'modes',
           'combine_modes']

modes = ('exact', 'lower_bound', 'upper_bound')


@dataclass(frozen=True)
class EstimateValue:
    """A value with its estimate mode and witness.

    Attributes
    ----------
    value: float
    mode: {'exact', 'lower_bound', 'upper_bound'}
    witness: dict or None
        Input attaining `value`; None only when there is nothing to witness
        (e.g. a derived quantity).
    flags: tuple of str
        Extra qualifications, such as 'exhaustive-grid'.

    """
    value: float
    mode: str
    witness: dict = field(default=None, compare=False)
    flags: tuple = ()

    def __post_init__(self):
        if self.mode not in modes:
            raise UsageError(f"mode should be one of {modes}, not "
                             f"'{self.mode}'")
        object.__setattr__(self, 'value', float(self.value))
        object.__setattr__(self, 'flags', tuple(sorted(set(self.flags))))

    @property
    def isexact(self):
        return self.mode == 'exact'

    def hasflag(self, flag):
        return flag in self.flags

    def withflags(self, *flags):
        return EstimateValue(self.value, self.mode, self.witness,
                             self.flags + tuple(flags))

    def to_dict(self):
        return {'value': self.value, 'mode': self.mode,
                'flags': list(self.flags), 'witness': self.witness}


def combine_modes(*estimates):
    """Mode of a quantity derived from several estimates: exact only if all
    of them are exact."""
    if all(e.isexact for e in estimates):
        return 'exact'
    return 'lower_bound'


class ParamTable:
    """Map m -> EstimateValue for m in 1..m_max.

    Parameters
    ----------
    param_id: str
        Name of the parameter, e.g. 'phi', 'mu', 'k', 'L'.
    entries: dict
        Maps m to EstimateValue.

    """

    def __init__(self, param_id, entries):
        self._param_id = str(param_id)
        self._entries = {int(m): e for m, e in sorted(entries.items())}
        for e in self._entries.values():
            if not isinstance(e, EstimateValue):
                raise UsageError(f"entries should be EstimateValue "
                                 f"objects, not {type(e)}")

    @property
    def param_id(self):
        return self._param_id

    @property
    def ms(self):
        return tuple(self._entries)

    @property
    def m_max(self):
        return max(self._entries) if self._entries else 0

    def __getitem__(self, m):
        return self._entries[m]

    def __contains__(self, m):
        return m in self._entries

    def __len__(self):
        return len(self._entries)

    def __iter__(self):
        return iter(self._entries.items())

    def __repr__(self):
        values = ', '.join(f"{m}: {e.value:.6g}" for m, e in self)
        return f"ParamTable({self._param_id}, {{{values}}})"

    def values(self):
        return np.array([e.value for e in self._entries.values()])

    @property
    def allexact(self):
        return all(e.isexact for e in self._entries.values())

    def isnondecreasing(self, tolerance=0.):
        v = self.values()
        return bool(np.all(np.diff(v) >= -tolerance))

    def max(self):
        """The entry with the largest value, the smallest m on ties."""
        best = None
        for _, e in self:
            if best is None or e.value > best.value:
                best = e
        return best

    @classmethod
    def running_max(cls, param_id, entries):
        """Table whose entry at m is the best of the raw entries at m' <= m.

        Valid for sup-type parameters over families that grow with m: a
        witness at m' is admissible at every m >= m'. The result at m is
        exact when all raw entries up to m are exact.

        """
        out = {}
        best = None
        allexact = True
        for m in sorted(entries):
            e = entries[m]
            allexact = allexact and e.isexact
            if best is None or e.value > best.value:
                best = e
            mode = 'exact' if allexact else 'lower_bound'
            out[m] = EstimateValue(best.value, mode, best.witness,
                                   best.flags)
        return cls(param_id, out)


class FunctionTable:
    """Values of a threshold function on a geometric grid.

    Parameters
    ----------
    func_id: {'lambda', 'theta', 'phi'}
    grid: ThresholdGrid
    entries: sequence of EstimateValue
        Raw values, one per grid point, in grid order (decreasing a).
    envelope: sequence of float, optional
        Monotone envelope of the raw values; computed when not given.

    """
    func_ids = ('lambda', 'theta', 'phi')

    def __init__(self, func_id, grid, entries, envelope=None):
        if func_id not in self.func_ids:
            raise UsageError(f"func_id should be one of {self.func_ids}, "
                             f"not '{func_id}'")
        entries = tuple(entries)
        if len(entries) != len(grid):
            raise UsageError(f"{len(entries)} entries for a grid of "
                             f"{len(grid)} points")
        raw = np.array([e.value for e in entries])
        if envelope is None:
            envelope = np.maximum.accumulate(raw) if len(raw) else raw
        envelope = np.array(envelope, dtype='float64')
        envelope.setflags(write=False)
        self._func_id = func_id
        self._grid = grid
        self._entries = entries
        self._envelope = envelope

    @property
    def func_id(self):
        return self._func_id

    @property
    def grid(self):
        return self._grid

    @property
    def entries(self):
        return self._entries

    @property
    def raw(self):
        return np.array([e.value for e in self._entries])

    @property
    def envelope(self):
        return self._envelope

    @property
    def isexhaustive(self):
        return all(e.hasflag('exhaustive-grid') for e in self._entries)

    def __len__(self):
        return len(self._entries)

    def __repr__(self):
        values = ', '.join(f"{a:g}: {v:.6g}"
                           for a, v in zip(self._grid.points, self.raw))
        return f"FunctionTable({self._func_id}, {{{values}}})"

    def value_at(self, a, envelope=True):
        """Value at grid point `a`."""
        k = self._grid.index(a)
        return float(self._envelope[k] if envelope else
                     self._entries[k].value)

    def replace(self, entries=None, envelope=None):
        return FunctionTable(self._func_id, self._grid,
                             self._entries if entries is None else entries,
                             envelope=envelope)
