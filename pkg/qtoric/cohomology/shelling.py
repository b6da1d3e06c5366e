import logging
from collections import Counter
from functools import lru_cache
from itertools import product
from typing import Iterator, List, Tuple

from qtoric.fan.fan import Fan, IndexSet, anticanonical_functional
from qtoric.fano.tier import NotFano, Tier, require_tier
from qtoric.lattice import LatticeVector, dot
from qtoric.util import one_based

logger = logging.getLogger(__name__)


class Shelling:
    """
    Maximal cones mu_1, ..., mu_s ordered so that y_1(v) > ... > y_s(v) for the perturbation v,
    where y_i is the point of M equal to 1 on the generators of mu_i, and the cones
    tau_i = mu_i meet (mu_j for the neighbours j > i). The classes [X(tau_i)] form a basis of homology.
    """

    def __init__(self, order: Tuple[int, ...], cones: Tuple[IndexSet, ...], tau: Tuple[IndexSet, ...],
                 perturbation: LatticeVector, values: Tuple[int, ...]):
        self.order = order
        self.cones = cones
        self.tau = tau
        self.perturbation = perturbation
        self.values = values

    @property
    def census(self) -> Counter:
        return Counter(len(t) for t in self.tau)

    def betti_numbers(self, dim: int) -> List[int]:
        census = self.census
        return [census.get(d, 0) for d in range(dim + 1)]

    def to_dict(self) -> dict:
        return {
            'order': [i + 1 for i in self.order],
            'tau': [list(one_based(t)) for t in self.tau],
            'perturbation': list(self.perturbation),
            'values': list(self.values),
        }

    def __repr__(self):
        return f'<Shelling(tau={[one_based(t) for t in self.tau]})>'


def _candidates(dim: int, radius: int) -> Iterator[Tuple[int, ...]]:
    """
    Integer vectors of max-norm at most radius, by increasing max-norm, lexicographic within a shell.
    """
    yield (0,) * dim
    for r in range(1, radius + 1):
        for v in product(range(-r, r + 1), repeat=dim):
            if max(abs(x) for x in v) == r:
                yield v


@lru_cache(maxsize=None)
def shelling(fan: Fan) -> Shelling:
    """
    :raises NotFano: for a fan that is not Fano; its anticanonical functionals need not separate the cones.
    """
    fan.require_accepted()
    require_tier(fan, Tier.FANO)
    functionals = [anticanonical_functional(fan, i) for i in range(len(fan.max_cones))]
    base = [sum(ray[k] for ray in fan.rays) for k in range(fan.dim)]

    # each hyperplane y_i = y_j holds at most (2r+1)^(n-1) points of the box of radius r
    pairs = len(functionals) * (len(functionals) - 1) // 2
    for v in _candidates(fan.dim, pairs // 2 + 1):
        perturbation = tuple(b + x for b, x in zip(base, v))
        values = [dot(y, perturbation) for y in functionals]
        if len(set(values)) == len(values):
            break
    else:
        raise NotFano('No perturbation separates the maximal cones.')

    order = tuple(sorted(range(len(fan.max_cones)), key=lambda i: -values[i]))
    cones = tuple(fan.max_cones[i] for i in order)

    tau = []
    for i, mu in enumerate(cones):
        kept = set(mu)
        for nu in cones[i + 1:]:
            if len(set(mu).intersection(nu)) == fan.dim - 1:
                kept.intersection_update(nu)
        tau.append(tuple(sorted(kept)))

    logger.debug('shelling perturbation %s, tau %s', perturbation, tau)
    return Shelling(order, cones, tuple(tau), perturbation, tuple(values[i] for i in order))
