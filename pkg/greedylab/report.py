"""Writing computed tables to an output directory.

CSV files reference witnesses by id; the witnesses themselves go to
'witnesses.json' in the same directory. Nothing that depends on time or
on the number of threads is written, so identical runs give identical
files.

"""
import logging

from ._version import __version__
from .estimates import EstimateValue, ParamTable
from .outputdir import create_outputdir

__all__ = ['WitnessRegistry', 'params_rows', 'threshold_rows',
           'lebesgue_rows', 'write_params_report', 'write_thresholds_report',
           'write_lebesgue_report', 'write_verdicts_report',
           'verdict_summary']

logger = logging.getLogger(__name__)

paramsheader = ('param_id', 'm', 'value', 'mode', 'witness_ref')
thresholdsheader = ('func_id', 'a', 'raw_value', 'envelope_value', 'mode',
                    'witness_ref')
lebesgueheader = ('m', 'sigma_mode', 'L_m_value', 'witness_ref')
plotheader = ('x', 'y')


class WitnessRegistry:
    """Assigns ids 'w00000', 'w00001', ... to witnesses in the order they
    are registered."""

    def __init__(self):
        self._witnesses = {}

    def __len__(self):
        return len(self._witnesses)

    def __contains__(self, ref):
        return ref in self._witnesses

    def register(self, estimate):
        """Id of the witness of `estimate`; None if it has none."""
        if estimate.witness is None:
            return None
        ref = f"w{len(self._witnesses):05d}"
        self._witnesses[ref] = estimate.witness
        return ref

    def to_dict(self):
        return dict(self._witnesses)


def params_rows(report, registry, c=None, d=None):
    """CSV rows of a parameter report as produced by
    `conditionality_report`; `c` and `d` are optional EstimateValues of the
    basis norm bounds."""
    rows = []
    extras = {'c': c, 'd': d}
    for param_id, value in list(report.items()) + list(extras.items()):
        if value is None:
            continue
        if isinstance(value, ParamTable):
            for m, e in value:
                rows.append((param_id, m, e.value, e.mode,
                             registry.register(e)))
        else:
            rows.append((param_id, None, value.value, value.mode,
                         registry.register(value)))
    return rows


def threshold_rows(tables, registry):
    rows = []
    for func_id in ('lambda', 'theta', 'phi'):
        table = tables[func_id]
        for a, e, env in zip(table.grid.points, table.entries,
                             table.envelope):
            rows.append((func_id, float(a), e.value, float(env), e.mode,
                         registry.register(e)))
    return rows


def _sigmamode(e):
    if e.hasflag('trivial'):
        return None
    return 'upper_bound' if e.hasflag('sigma-upper-bound') else 'exact'


def lebesgue_rows(table, registry):
    return [(m, _sigmamode(e), e.value, registry.register(e))
            for m, e in table]


def _writeplot(od, name, xs, ys):
    od.write_csv(f"plot_{name}.csv", plotheader,
                 [(float(x), float(y)) for x, y in zip(xs, ys)],
                 overwrite=True)


def _plotparams(od, report):
    for param_id, value in report.items():
        if isinstance(value, ParamTable):
            _writeplot(od, param_id, value.ms, value.values())


def _finish(od, registry, basis_id, formats, results):
    od.write_jsondict('witnesses.json',
                      {'greedylabversion': __version__,
                       'basis_id': basis_id,
                       'witnesses': registry.to_dict()}, overwrite=True)
    if 'json' in formats:
        results = dict(results)
        results['greedylabversion'] = __version__
        results['basis_id'] = basis_id
        od.write_jsondict('results.json', results, overwrite=True)
    od.write_checksums()
    logger.info("wrote report to %s", od.path)
    return od


def _tojson(value):
    if isinstance(value, EstimateValue):
        return value.to_dict()
    if isinstance(value, ParamTable):
        return {str(m): e.to_dict() for m, e in value}
    return value


def write_params_report(path, basis_id, report, c=None, d=None,
                        formats=('csv', 'json'), config=None):
    """Writes params.csv, one plot file per parameter table and
    witnesses.json; results.json too when 'json' is in `formats`."""
    od = create_outputdir(path)
    registry = WitnessRegistry()
    rows = params_rows(report, registry, c, d)
    if 'csv' in formats:
        od.write_csv('params.csv', paramsheader, rows, overwrite=True)
        _plotparams(od, report)
    results = {key: _tojson(value) for key, value in report.items()}
    for key, value in (('c', c), ('d', d)):
        if value is not None:
            results[key] = value.to_dict()
    if config is not None:
        results['config'] = config.to_dict()
    return _finish(od, registry, basis_id, formats, results)


def write_thresholds_report(path, basis_id, tables, formats=('csv', 'json'),
                            config=None):
    """Writes thresholds.csv with raw and envelope values of the lambda,
    theta and phi tables."""
    od = create_outputdir(path)
    registry = WitnessRegistry()
    rows = threshold_rows(tables, registry)
    if 'csv' in formats:
        od.write_csv('thresholds.csv', thresholdsheader, rows,
                     overwrite=True)
        for func_id, table in sorted(tables.items()):
            _writeplot(od, func_id, table.grid.points, table.envelope)
    results = {func_id: {'grid': table.grid.to_dict(),
                         'entries': [e.to_dict() for e in table.entries],
                         'envelope': table.envelope.tolist()}
               for func_id, table in tables.items()}
    if config is not None:
        results['config'] = config.to_dict()
    return _finish(od, registry, basis_id, formats, results)


def write_lebesgue_report(path, basis_id, table, C_g,
                          formats=('csv', 'json'), config=None):
    """Writes lebesgue.csv with the L_m lower bounds and how the best
    m-term errors behind them were obtained."""
    od = create_outputdir(path)
    registry = WitnessRegistry()
    rows = lebesgue_rows(table, registry)
    if 'csv' in formats:
        od.write_csv('lebesgue.csv', lebesgueheader, rows, overwrite=True)
        _writeplot(od, 'L', table.ms, table.values())
    results = {'L': _tojson(table), 'C_g': C_g.to_dict()}
    if config is not None:
        results['config'] = config.to_dict()
    return _finish(od, registry, basis_id, formats, results)


def verdict_summary(results):
    """Human-readable table of check results, failures listed last."""
    width = max([len(r.check_id) for r in results] + [5])
    lines = []
    counts = {}
    for r in sorted(results, key=lambda r: (r.failed, r.check_id,
                                            r.basis_id)):
        counts[r.verdict] = counts.get(r.verdict, 0) + 1
        lines.append(f"{r.check_id:<{width}}  {r.verdict:<8}  "
                     f"{r.basis_id}")
    total = ', '.join(f"{counts[v]} {v}" for v in sorted(counts))
    lines.append(f"{len(results)} checks: {total}")
    return '\n'.join(lines)


def write_verdicts_report(path, results, formats=('csv', 'json'),
                          config=None):
    """Writes verdicts.json, and verdicts.csv when 'csv' is in `formats`.
    The JSON file is always written since it is the report of record."""
    od = create_outputdir(path)
    d = {'greedylabversion': __version__,
         'results': [r.to_dict() for r in results]}
    if config is not None:
        d['config'] = config.to_dict()
    od.write_jsondict('verdicts.json', d, overwrite=True)
    if 'csv' in formats:
        od.write_csv('verdicts.csv', ('check_id', 'basis_id', 'verdict'),
                     [(r.check_id, r.basis_id, r.verdict) for r in results],
                     overwrite=True)
    od.write_checksums()
    logger.info("wrote %d verdicts to %s", len(results), od.path)
    return od
