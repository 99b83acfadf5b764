"""Ordered block-parallel evaluation.

Enumerations are split into consecutive blocks of indices; blocks are
evaluated on a thread pool (numpy releases the GIL in the heavy parts) and
results are returned in block order, so that reductions over them do not
depend on the number of threads.

The number of threads is taken from the environment variable
GREEDYLAB_THREADS, unless set explicitly by `set_threads`.

"""
import logging
import os
import warnings
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .utils import iterblocks

__all__ = ['get_threads', 'set_threads', 'mapblocks', 'argmax_first']

logger = logging.getLogger(__name__)

envvar = 'GREEDYLAB_THREADS'
_threads = None


def set_threads(n):
    """Sets the number of worker threads; None reverts to the environment
    variable."""
    global _threads
    if n is not None and (int(n) != n or n < 1):
        raise ValueError(f"number of threads should be a positive integer, "
                         f"not {n}")
    _threads = None if n is None else int(n)


def get_threads():
    if _threads is not None:
        return _threads
    value = os.environ.get(envvar)
    if value is None:
        return 1
    try:
        n = int(value)
        if n < 1:
            raise ValueError
    except ValueError:
        warnings.warn(f"ignoring invalid {envvar} value '{value}', using 1 "
                      f"thread", UserWarning)
        return 1
    return n


def mapblocks(func, totallen, blocklen):
    """Calls func(start, end) for consecutive blocks covering
    range(totallen) and returns the results in block order."""
    blocks = list(iterblocks(totallen, max(1, int(blocklen))))
    nthreads = min(get_threads(), len(blocks))
    logger.debug("%d blocks on %d threads", len(blocks), max(nthreads, 1))
    if nthreads <= 1:
        return [func(start, end) for start, end in blocks]
    with ThreadPoolExecutor(max_workers=nthreads) as executor:
        return list(executor.map(lambda b: func(*b), blocks))


def argmax_first(values):
    """Index of the maximum, the lowest index among equal maxima; -1 for an
    empty array or one without finite values."""
    values = np.asarray(values, dtype='float64')
    if values.size == 0:
        return -1
    values = np.where(np.isnan(values), -np.inf, values)
    i = int(np.argmax(values))
    if not np.isfinite(values[i]) and values[i] < 0:
        return -1
    return i
