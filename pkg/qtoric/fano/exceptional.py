import logging
from functools import lru_cache
from itertools import combinations
from typing import List, NamedTuple, Sequence, Tuple

from qtoric.fan.fan import CurveClass, Fan, IndexSet, containing_maximal_cone, require_cone
from qtoric.fan.primitive import primitive_data
from qtoric.fano.tier import Tier, require_tier
from qtoric.lattice import LatticeVector, rank
from qtoric.util import format_index_set, one_based

logger = logging.getLogger(__name__)


class ExceptionalData:
    """
    Linearly independent rays whose sum is the ray of the exceptional divisor.
    The class pairs 1 with the members, -1 with the exceptional divisor and 0 elsewhere.
    """

    def __init__(self, eset: IndexSet, exc_divisor: int, cls: CurveClass):
        self.set = eset
        self.exc_divisor = exc_divisor
        self.cls = cls

    @property
    def k(self) -> int:
        return len(self.set)

    def is_special(self, sigma: Sequence[int]) -> bool:
        sigma = set(sigma)
        return self.exc_divisor in sigma and len(sigma.intersection(self.set)) == self.k - 1

    def to_dict(self) -> dict:
        return {
            'set': list(one_based(self.set)),
            'exc_divisor': self.exc_divisor + 1,
            'class': list(self.cls.pairings),
        }

    def _key(self):
        return self.set, self.exc_divisor

    def __eq__(self, other):
        return isinstance(other, self.__class__) and self._key() == other._key()

    def __lt__(self, other: 'ExceptionalData') -> bool:
        return self._key() < other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return f'<ExceptionalData({format_index_set(self.set)} -> D{self.exc_divisor + 1})>'


def _exceptional(fan: Fan, eset: IndexSet, exc: int) -> ExceptionalData:
    pairings = [0] * fan.m
    for i in eset:
        pairings[i] = 1
    pairings[exc] = -1
    return ExceptionalData(eset, exc, CurveClass(pairings))


def _search(fan: Fan, exc: int, target: LatticeVector, coords: Sequence[LatticeVector], chosen: IndexSet,
            partial: LatticeVector, start: int, result: List[ExceptionalData]):
    size = len(chosen)
    if size >= 2 and partial == target and rank(fan.generators(chosen)) == size:
        result.append(_exceptional(fan, chosen, exc))
    left = fan.dim - size - 1
    if left < 0:
        return
    for i in range(start, fan.m):
        if i == exc:
            continue
        extended = tuple(p + c for p, c in zip(partial, coords[i]))
        # every further member moves each coordinate by at most one
        if any(abs(t - p) > left for t, p in zip(target, extended)):
            continue
        _search(fan, exc, target, coords, chosen + (i,), extended, i + 1, result)


@lru_cache(maxsize=None)
def exceptional_sets(fan: Fan) -> Tuple[ExceptionalData, ...]:
    """
    All sets of at least two independent rays summing to a ray generator, sorted by (set, divisor).
    For each candidate divisor the search runs in the basis of a maximal cone containing it,
    where every ray has coordinates in {-1, 0, 1}.
    """
    require_tier(fan, Tier.SUBVARIETIES_FANO)
    result: List[ExceptionalData] = []
    for exc in range(fan.m):
        mu = containing_maximal_cone(fan, (exc,))
        coords = [fan.coordinates(mu, ray) for ray in fan.rays]
        _search(fan, exc, coords[exc], coords, (), (0,) * fan.dim, 0, result)
    logger.debug('%d exceptional sets', len(result))
    return tuple(sorted(result))


def special_exceptional_sets(fan: Fan, sigma) -> List[ExceptionalData]:
    """
    Exceptional sets with their divisor and all but one member in the cone sigma.
    :raises NotACone: if sigma is not a cone.
    """
    sigma = require_cone(fan, sigma)
    return [e for e in exceptional_sets(fan) if e.is_special(sigma)]


@lru_cache(maxsize=None)
def exceptional_divisors(fan: Fan) -> Tuple[ExceptionalData, ...]:
    """
    The primitive exceptional data: one per primitive relation rho_1 + ... + rho_k = rho_hat,
    ordered by the index of rho_hat.
    """
    require_tier(fan, Tier.SUBVARIETIES_FANO)
    result = [ExceptionalData(pd.set, pd.rhs_cone[0], pd.cls)
              for pd in primitive_data(fan)
              if len(pd.rhs_cone) == 1 and pd.rhs_coeffs == (1,)]
    return tuple(sorted(result, key=lambda e: (e.exc_divisor, e.set)))


class FamilyPredicates(NamedTuple):
    distinct_exc: bool
    no_overlaps: bool
    no_cycles: bool

    def to_dict(self) -> dict:
        return self._asdict()


def family_predicates(family: Sequence[ExceptionalData]) -> FamilyPredicates:
    """
    Relations among a family of exceptional sets S_1, ..., S_t.
    distinct_exc: the exceptional divisors are pairwise distinct.
    no_overlaps: no exceptional divisor of any set lies in any set of the family.
    no_cycles: the graph with an edge S_i -> S_j whenever exc(S_j) lies in S_i is acyclic.
    """
    divisors = [e.exc_divisor for e in family]
    distinct_exc = len(set(divisors)) == len(divisors)
    no_overlaps = not any(e.exc_divisor in f.set for e in family for f in family)

    edges = {i: [j for j, g in enumerate(family) if g.exc_divisor in f.set] for i, f in enumerate(family)}
    state = {}

    def cyclic(node: int) -> bool:
        state[node] = 1
        for nxt in edges[node]:
            if state.get(nxt) == 1:
                return True
            if nxt not in state and cyclic(nxt):
                return True
        state[node] = 2
        return False

    no_cycles = not any(cyclic(i) for i in range(len(family)) if i not in state)
    return FamilyPredicates(distinct_exc, no_overlaps, no_cycles)


def special_families(fan: Fan, sigma, overlaps_allowed: bool) -> List[Tuple[ExceptionalData, ...]]:
    """
    Families of special exceptional sets for sigma with distinct exceptional divisors and either
    no cycles (overlaps_allowed) or no overlaps at all. The empty family comes first.
    """
    special = special_exceptional_sets(fan, sigma)
    result = []
    for size in range(len(special) + 1):
        for family in combinations(special, size):
            predicates = family_predicates(family)
            if not predicates.distinct_exc:
                continue
            if predicates.no_overlaps or (overlaps_allowed and predicates.no_cycles):
                result.append(family)
    return result


def family_class(fan: Fan, family: Sequence[ExceptionalData]) -> CurveClass:
    total = CurveClass.zero(fan.m)
    for e in family:
        total = total + e.cls
    return total
