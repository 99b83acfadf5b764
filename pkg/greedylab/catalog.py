"""Ready-made example bases, addressable by id strings such as
'lp:1.0:8', 'summing:8', 'l2blocks:1.0:1+2+3' or 'perturbed:8:0'.

"""
import logging
from dataclasses import dataclass, field

import numpy as np

from .basis import BasisSystem, load_basis
from .quasinorm import lp, l2blocks, weaklp, lorentz
from .utils import UsageError

__all__ = ['CatalogEntry', 'make_catalog', 'resolve_entry', 'find_entry',
           'unitvectorbasis', 'summingbasis', 'blockbasis', 'perturbedbasis',
           'blocksizes', 'propertytags']

logger = logging.getLogger(__name__)

propertytags = frozenset({'unconditional', 'democratic', 'greedy',
                          'conditional', 'non-democratic'})


@dataclass(frozen=True)
class CatalogEntry:
    id: str
    basis: BasisSystem = field(compare=False)
    known_properties: frozenset = frozenset()

    def __post_init__(self):
        unknown = set(self.known_properties) - propertytags
        if unknown:
            raise UsageError(f"unknown property tags {sorted(unknown)}")
        object.__setattr__(self, 'known_properties',
                           frozenset(self.known_properties))

    def has(self, *tags):
        return set(tags).issubset(self.known_properties)


def _fmt(p):
    return str(float(p))


def unitvectorbasis(space):
    return BasisSystem(space, np.eye(space.dim), np.eye(space.dim))


def summingbasis(dim):
    """Summing basis of l_inf^dim: x_j = e_1 + ... + e_j, with dual
    functionals e_j^* - e_{j+1}^* (and e_dim^* for the last one).

    The vectors are the columns of the upper-triangular matrix of ones; the
    transposed, lower-triangular form holds them as rows."""
    vectors = np.triu(np.ones((dim, dim)))
    duals = np.eye(dim) - np.eye(dim, k=1)
    return BasisSystem(lp('inf', dim), vectors, duals,
                       labels=[f"s{j + 1}" for j in range(dim)])


def blocksizes(dim):
    """Block sizes 1, 2, 3, ... as long as they fit in `dim`; what is left
    forms a last, smaller block."""
    sizes = []
    k = 1
    while sum(sizes) + k <= dim:
        sizes.append(k)
        k += 1
    remainder = dim - sum(sizes)
    if remainder > 0:
        sizes.append(remainder)
    return tuple(sizes)


def blockbasis(outer_p, sizes):
    """Canonical basis of the l_p-sum of l_2^k spaces."""
    return unitvectorbasis(l2blocks(outer_p, sizes))


def perturbedbasis(dim, seed=0, scale=0.25):
    """Identity plus a small random strictly upper-triangular matrix in
    l_1^dim, for fuzzing."""
    rng = np.random.default_rng(seed)
    upper = np.triu(rng.uniform(-scale, scale, size=(dim, dim)), k=1)
    vectors = np.eye(dim) + upper
    return BasisSystem(lp(1, dim), vectors)


def _checkdim(dim):
    dim = int(dim)
    if dim < 2:
        raise UsageError(f"dimension should be at least 2, not {dim}")
    return dim


def make_catalog(dim, seed=0):
    """Returns the list of example bases of dimension `dim`.

    The catalog holds the unit vector bases of l_p^dim for p in {1/2, 1, 2},
    the summing basis of l_inf^dim, the canonical basis of a sum of l_2^k
    blocks in the sense of l_1, unit vector bases of weak-l_1 and of the
    Lorentz space l_{2,1}, and a seeded random perturbation of the identity.
    The result is deterministic given (dim, seed).

    """
    dim = _checkdim(dim)
    ids = [f"lp:{_fmt(p)}:{dim}" for p in (0.5, 1., 2.)]
    ids += [f"summing:{dim}",
            f"l2blocks:{_fmt(1.)}:{'+'.join(map(str, blocksizes(dim)))}",
            f"weaklp:{_fmt(1.)}:{dim}",
            f"lorentz:{_fmt(2.)}:{_fmt(1.)}:{dim}",
            f"perturbed:{dim}:{int(seed)}"]
    catalog = [resolve_entry(entryid) for entryid in ids]
    logger.debug("catalog for dim %d: %s", dim, ids)
    return catalog


def find_entry(catalog, entryid):
    for entry in catalog:
        if entry.id == entryid:
            return entry
    raise UsageError(f"no basis with id '{entryid}' in catalog")


def _number(s, entryid):
    try:
        return float(s)
    except ValueError:
        raise UsageError(f"invalid number '{s}' in basis id '{entryid}'")


def _integer(s, entryid):
    try:
        return int(s)
    except ValueError:
        raise UsageError(f"invalid integer '{s}' in basis id '{entryid}'")


def resolve_entry(entryid):
    """Builds the catalog entry with id `entryid`.

    Recognized forms are 'lp:<p>:<dim>', 'summing:<dim>',
    'l2blocks:<p>:<b1+b2+...>', 'perturbed:<dim>:<seed>',
    'weaklp:<p>:<dim>', 'lorentz:<p>:<q>:<dim>' and 'file:<path>' for custom
    bases in JSON format.

    """
    parts = str(entryid).split(':')
    family, args = parts[0], parts[1:]
    nargs = {'lp': 2, 'summing': 1, 'l2blocks': 2, 'perturbed': 2,
             'weaklp': 2, 'lorentz': 3}
    if family == 'file' and args:
        basis = load_basis(':'.join(args))
        return CatalogEntry(entryid, basis, frozenset())
    if family not in nargs:
        raise UsageError(f"unknown basis id '{entryid}'")
    if len(args) != nargs[family]:
        raise UsageError(f"basis id '{entryid}' should have "
                         f"{nargs[family]} parameters")
    if family == 'lp':
        p = _number(args[0], entryid)
        dim = _checkdim(_integer(args[1], entryid))
        return CatalogEntry(entryid, unitvectorbasis(lp(p, dim)),
                            {'unconditional', 'democratic', 'greedy'})
    elif family == 'summing':
        dim = _checkdim(_integer(args[0], entryid))
        return CatalogEntry(entryid, summingbasis(dim),
                            {'conditional', 'democratic'})
    elif family == 'l2blocks':
        p = _number(args[0], entryid)
        sizes = tuple(_integer(b, entryid) for b in args[1].split('+'))
        return CatalogEntry(entryid, blockbasis(p, sizes),
                            {'unconditional', 'non-democratic'})
    elif family == 'perturbed':
        dim = _checkdim(_integer(args[0], entryid))
        seed = _integer(args[1], entryid)
        return CatalogEntry(entryid, perturbedbasis(dim, seed=seed),
                            frozenset())
    elif family == 'weaklp':
        p = _number(args[0], entryid)
        dim = _checkdim(_integer(args[1], entryid))
        return CatalogEntry(entryid, unitvectorbasis(weaklp(p, dim)),
                            {'unconditional', 'democratic', 'greedy'})
    else:
        p = _number(args[0], entryid)
        q = _number(args[1], entryid)
        dim = _checkdim(_integer(args[2], entryid))
        return CatalogEntry(entryid, unitvectorbasis(lorentz(p, q, dim)),
                            {'unconditional', 'democratic', 'greedy'})
