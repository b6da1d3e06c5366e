import logging
from collections import Counter
from functools import lru_cache
from itertools import combinations
from typing import List, Tuple

from qtoric.fan.fan import CurveClass, Fan, IndexSet
from qtoric.lattice import express_in_cone
from qtoric.predefined import EFFECTIVE_SEARCH_LIMIT
from qtoric.util import QtoricError, format_index_set, one_based

logger = logging.getLogger(__name__)


class LocateFailure(QtoricError):
    pass


class NotPrimitive(QtoricError):
    pass


class NotEffective(QtoricError):
    pass


class PrimitiveData:
    """
    A primitive set with its relation sum(rho_i, i in set) = sum(a_j rho_j, j in rhs_cone)
    and the associated primitive class.
    """

    def __init__(self, pset: IndexSet, rhs_cone: IndexSet, rhs_coeffs: Tuple[int, ...], cls: CurveClass):
        self.set = pset
        self.rhs_cone = rhs_cone
        self.rhs_coeffs = rhs_coeffs
        self.cls = cls

    @property
    def k(self) -> int:
        return len(self.set)

    @property
    def coefficient_sum(self) -> int:
        return sum(self.rhs_coeffs)

    def relation_text(self) -> str:
        lhs = ' + '.join(f'r{i + 1}' for i in self.set)
        if not self.rhs_cone:
            return f'{lhs} = 0'
        rhs = ' + '.join((f'{a}*' if a != 1 else '') + f'r{j + 1}' for j, a in zip(self.rhs_cone, self.rhs_coeffs))
        return f'{lhs} = {rhs}'

    def to_dict(self) -> dict:
        return {
            'set': list(one_based(self.set)),
            'rhs_cone': list(one_based(self.rhs_cone)),
            'rhs_coeffs': list(self.rhs_coeffs),
            'class': list(self.cls.pairings),
        }

    def _key(self):
        return self.set, self.rhs_cone, self.rhs_coeffs, self.cls

    def __eq__(self, other):
        return isinstance(other, self.__class__) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return f'<PrimitiveData({format_index_set(self.set)}: {self.relation_text()})>'


@lru_cache(maxsize=None)
def primitive_sets(fan: Fan) -> Tuple[IndexSet, ...]:
    """
    The minimal non-faces of the fan, sorted lexicographically.
    """
    fan.require_accepted()
    result = []
    for size in range(2, fan.dim + 2):
        for candidate in combinations(range(fan.m), size):
            if fan.is_face(candidate):
                continue
            if all(fan.is_face(sub) for sub in combinations(candidate, size - 1)):
                result.append(candidate)
    return tuple(sorted(result))


def primitive_relation(fan: Fan, pset) -> PrimitiveData:
    """
    Locate the cone whose relative interior contains the sum of the rays of a primitive set.
    Cones are scanned by increasing dimension.
    :raises NotPrimitive: if the set is not a primitive set of the fan.
    :raises LocateFailure: if no cone contains the sum in its relative interior.
    """
    pset = fan.check_index_set(pset)
    if pset not in primitive_sets(fan):
        raise NotPrimitive(f'{format_index_set(pset)} is not a primitive set.', {'set': list(one_based(pset))})
    return _primitive_relation(fan, pset)


@lru_cache(maxsize=None)
def _primitive_relation(fan: Fan, pset: IndexSet) -> PrimitiveData:
    total = [sum(fan.rays[i][k] for i in pset) for k in range(fan.dim)]

    if not any(total):
        pairings = [1 if i in pset else 0 for i in range(fan.m)]
        return PrimitiveData(pset, (), (), CurveClass(pairings))

    for d in range(1, fan.dim + 1):
        for face in fan.faces_of_dim(d):
            coords = express_in_cone(total, fan.generators(face))
            if coords is None or not coords.interior:
                continue
            if any(c.denominator != 1 for c in coords.coefficients):
                raise LocateFailure(f'Sum of {format_index_set(pset)} has fractional coordinates in a cone.',
                                    {'set': list(one_based(pset))})
            coeffs = tuple(int(c) for c in coords.coefficients)
            pairings = [1 if i in pset else 0 for i in range(fan.m)]
            for j, a in zip(face, coeffs):
                pairings[j] -= a
            logger.debug('primitive relation %s -> %s %s', format_index_set(pset), format_index_set(face), coeffs)
            return PrimitiveData(pset, face, coeffs, CurveClass(pairings))

    raise LocateFailure(f'Sum of {format_index_set(pset)} lies in no cone of the fan.', {'set': list(one_based(pset))})


@lru_cache(maxsize=None)
def primitive_data(fan: Fan) -> Tuple[PrimitiveData, ...]:
    return tuple(_primitive_relation(fan, p) for p in primitive_sets(fan))


Decomposition = List[Tuple[PrimitiveData, int]]


def decompose_effective(fan: Fan, beta: CurveClass) -> Decomposition:
    """
    Write beta as a nonnegative integer combination of primitive classes.
    Greedy when the divisors beta meets negatively span a cone, bounded exhaustive search otherwise.
    :return: (primitive data, multiplicity) pairs in primitive-set order.
    :raises NotEffective: if no decomposition exists (or the search cannot be bounded).
    """
    return list(_decompose_effective(fan, beta))


def is_effective(fan: Fan, beta: CurveClass) -> bool:
    try:
        _decompose_effective(fan, beta)
    except NotEffective:
        return False
    return True


@lru_cache(maxsize=None)
def _decompose_effective(fan: Fan, beta: CurveClass) -> Tuple[Tuple[PrimitiveData, int], ...]:
    fan.require_accepted()
    if len(beta) != fan.m:
        raise NotEffective(f'Class {list(beta.pairings)} has the wrong length.', {'beta': list(beta.pairings)})
    if beta.is_zero():
        return ()

    data = primitive_data(fan)
    if fan.is_face(beta.support(-1)):
        counts = _greedy(fan, data, beta)
    else:
        counts = _exhaustive(data, beta)

    return tuple((pd, counts[pd]) for pd in data if counts[pd])


def _greedy(fan: Fan, data: Tuple[PrimitiveData, ...], beta: CurveClass) -> Counter:
    counts = Counter()
    current = beta
    for _ in range(EFFECTIVE_SEARCH_LIMIT):
        if current.is_zero():
            return counts
        positive = set(current.support(1))
        chosen = next((pd for pd in data if positive.issuperset(pd.set)), None)
        if chosen is None:
            break
        current = current - chosen.cls
        counts[chosen] += 1
    raise NotEffective(f'{list(beta.pairings)} is not a sum of primitive classes.', {'beta': list(beta.pairings)})


def _exhaustive(data: Tuple[PrimitiveData, ...], beta: CurveClass) -> Counter:
    if any(pd.cls.degree <= 0 for pd in data):
        raise NotEffective('Primitive classes of nonpositive degree leave the search unbounded.',
                           {'beta': list(beta.pairings)})
    if beta.degree <= 0:
        raise NotEffective(f'{list(beta.pairings)} has degree {beta.degree}.', {'beta': list(beta.pairings)})

    classes = sorted(data, key=lambda pd: -pd.cls.degree)
    budget = [EFFECTIVE_SEARCH_LIMIT]

    def search(remaining: CurveClass, position: int):
        if remaining.is_zero():
            return Counter()
        if position == len(classes) or remaining.degree <= 0:
            return None
        budget[0] -= 1
        if budget[0] < 0:
            return None
        pd = classes[position]
        for multiple in range(remaining.degree // pd.cls.degree, -1, -1):
            found = search(remaining - pd.cls * multiple, position + 1)
            if found is not None:
                if multiple:
                    found[pd] += multiple
                return found
        return None

    counts = search(beta, 0)
    if counts is None:
        raise NotEffective(f'{list(beta.pairings)} is not a sum of primitive classes.', {'beta': list(beta.pairings)})
    logger.debug('exhaustive decomposition of %s used %d nodes', beta, EFFECTIVE_SEARCH_LIMIT - budget[0])
    return counts
