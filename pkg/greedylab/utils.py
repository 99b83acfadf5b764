import hashlib
import json
import shutil
import tempfile as tf
from contextlib import contextmanager
from pathlib import Path

import numpy as np


class GreedylabError(Exception):
    pass


class UsageError(GreedylabError, ValueError):
    """Invalid arguments: wrong dimensions, non-finite entries, indices out
    of range, unknown identifiers."""
    pass


class ConfigError(UsageError):
    pass


class CapacityError(GreedylabError):
    """A configured enumeration cap would be exceeded."""

    def __init__(self, capname, capvalue, needed):
        self.capname = capname
        self.capvalue = capvalue
        self.needed = needed
        super().__init__(f"'{capname}' cap of {capvalue} exceeded "
                         f"(would need {needed})")


class UnsupportedOracleError(GreedylabError):
    pass


def check_vector(f, dim=None, name='f'):
    """Returns `f` as a 1-D float64 array, raising UsageError on wrong
    length or non-finite entries."""
    f = np.asarray(f, dtype='float64')
    if f.ndim != 1:
        raise UsageError(f"'{name}' should be one-dimensional, not of shape "
                         f"{f.shape}")
    if dim is not None and f.shape[0] != dim:
        raise UsageError(f"'{name}' has length {f.shape[0]}, expected {dim}")
    if not np.all(np.isfinite(f)):
        raise UsageError(f"'{name}' has non-finite entries")
    return f


def check_indices(indices, dim):
    indices = sorted(int(i) for i in set(indices))
    if indices and (indices[0] < 0 or indices[-1] >= dim):
        raise UsageError(f"indices {indices} out of range for dimension "
                         f"{dim}")
    return indices


class GLJSONEncoder(json.JSONEncoder):
    """Converts numpy scalars and arrays silently to Python primitive
    types, so that results can be written without preprocessing."""

    def default(self, obj):
        if isinstance(obj, np.integer):
            return int(obj)
        elif isinstance(obj, np.floating):
            return float(obj)
        elif isinstance(obj, np.bool_):
            return bool(obj)
        elif isinstance(obj, np.ndarray):
            return obj.tolist()
        elif isinstance(obj, (set, frozenset)):
            return sorted(obj)
        else:
            return super(GLJSONEncoder, self).default(obj)


def dumps_json(data, sort_keys=True, indent=4):
    try:
        return json.dumps(data, sort_keys=sort_keys, ensure_ascii=True,
                          indent=indent, cls=GLJSONEncoder)
    except TypeError:
        raise TypeError(f"Unable to serialize to JSON: {data}.\n"
                        f"Use character strings as dictionary keys, and "
                        f"only numbers, strings, booleans, None, lists, and "
                        f"dictionaries as objects.")


def write_jsonfile(path, data, sort_keys=True, indent=4, overwrite=False):
    path = Path(path)
    if path.exists() and not overwrite:
        raise OSError(f"'{path}' exists, use 'overwrite' argument")
    json_string = dumps_json(data, sort_keys=sort_keys, indent=indent)
    # utf-8 is ascii compatible
    with open(path, 'w', encoding='utf-8', newline='\n') as fp:
        fp.write(json_string)


def formatfloat(value):
    """17 significant digits, which round-trips float64 exactly."""
    return '%.17g' % value


def fit_blocks(totallen, blocklen):
    """How many whole blocks of `blocklen` fit in `totallen`.

    Returns
    -------
    tuple
        (number of blocks, length covered by them, remainder)

    """
    if totallen % 1 != 0 or totallen < 0:
        raise ValueError(f"invalid total length ({totallen})")
    if blocklen % 1 != 0 or blocklen <= 0:
        raise ValueError(f"invalid block length ({blocklen})")
    nblocks, remainder = divmod(int(totallen), int(blocklen))
    return nblocks, nblocks * int(blocklen), remainder


def iterblocks(totallen, blocklen):
    """Yields (start, end) index pairs of consecutive blocks that cover
    range(totallen); the last block may be shorter."""
    nblocks, covered, remainder = fit_blocks(totallen, blocklen)
    for start in range(0, covered, int(blocklen)):
        yield start, start + int(blocklen)
    if remainder > 0:
        yield covered, int(totallen)


def filesha256(filepath, blocksize=2 ** 20):
    """sha256 hex digest of a file, read in blocks."""
    m = hashlib.sha256()
    with open(filepath, 'rb') as f:
        for buf in iter(lambda: f.read(blocksize), b''):
            m.update(buf)
    return m.hexdigest()


@contextmanager
def tempdir(dirname=None, keep=False):
    """Yields the Path of a new temporary directory, which is removed on
    exit unless `keep` is True."""
    path = Path(tf.mkdtemp(dir=dirname))
    try:
        yield path
    finally:
        if not keep:
            shutil.rmtree(path)
