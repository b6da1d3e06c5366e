import logging
from collections import Counter
from enum import IntEnum
from functools import lru_cache
from typing import List, NamedTuple, Optional, Tuple

from qtoric.fan.fan import Fan, IndexSet
from qtoric.fan.primitive import PrimitiveData, primitive_data
from qtoric.util import QtoricError, one_based

logger = logging.getLogger(__name__)


class NotInTier(QtoricError):
    pass


class NotFano(NotInTier):
    pass


class NotInClass(NotInTier):
    pass


class Tier(IntEnum):
    NOT_FANO = 0
    FANO = 1
    SUBVARIETIES_FANO = 2
    FULL_CLASS = 3

    def __str__(self):
        return {
            Tier.NOT_FANO: 'NotFano',
            Tier.FANO: 'Fano',
            Tier.SUBVARIETIES_FANO: 'SubvarietiesFano',
            Tier.FULL_CLASS: 'FullClass',
        }[self]


class RelationCertificate(NamedTuple):
    set: IndexSet
    coefficient_sum: int
    rhs_ray: Optional[int]
    rhs_multiplicity: int

    def to_dict(self) -> dict:
        return {
            'set': list(one_based(self.set)),
            'coefficient_sum': self.coefficient_sum,
            'rhs_ray': None if self.rhs_ray is None else self.rhs_ray + 1,
            'rhs_multiplicity': self.rhs_multiplicity,
        }


class ClassTier:
    def __init__(self, tier: Tier, certificates: List[RelationCertificate]):
        self.tier = tier
        self.certificates = certificates

    def to_dict(self) -> dict:
        return {'tier': str(self.tier), 'certificates': [c.to_dict() for c in self.certificates]}

    def __repr__(self):
        return f'<ClassTier({self.tier})>'


def _rhs_ray(pd: PrimitiveData) -> Optional[int]:
    if len(pd.rhs_cone) == 1 and pd.rhs_coeffs == (1,):
        return pd.rhs_cone[0]
    return None


@lru_cache(maxsize=None)
def classify(fan: Fan) -> ClassTier:
    """
    Place the fan in the dictionary read off its primitive relations:
    Fano iff sum(a) < k for every relation, toric subvarieties Fano iff sum(a) <= 1,
    and the full class when additionally every ray is the right-hand side of at most one relation.
    """
    data = primitive_data(fan)
    uses = Counter(j for pd in data for j in pd.rhs_cone)
    certificates = [RelationCertificate(pd.set, pd.coefficient_sum, _rhs_ray(pd),
                                        max((uses[j] for j in pd.rhs_cone), default=0))
                    for pd in data]

    if any(pd.coefficient_sum >= pd.k for pd in data):
        tier = Tier.NOT_FANO
    elif any(pd.coefficient_sum > 1 for pd in data):
        tier = Tier.FANO
    elif any(c > 1 for c in uses.values()):
        tier = Tier.SUBVARIETIES_FANO
    else:
        tier = Tier.FULL_CLASS

    logger.debug('fan classified as %s', tier)
    return ClassTier(tier, certificates)


def require_tier(fan: Fan, tier: Tier) -> ClassTier:
    """
    :raises NotFano, NotInTier, NotInClass: when the fan sits below the requested tier.
    """
    result = classify(fan)
    if result.tier >= tier:
        return result

    message = f'Fan is {result.tier}, but {tier} is required.'
    details = {'tier': str(result.tier), 'required': str(tier)}
    if tier == Tier.FANO:
        raise NotFano(message, details)
    if tier == Tier.FULL_CLASS:
        raise NotInClass(message, details)
    raise NotInTier(message, details)


class ConditionCheck(NamedTuple):
    passed: bool
    cone: Optional[int] = None
    ray: Optional[int] = None
    coordinates: Tuple[int, ...] = ()

    def to_dict(self) -> dict:
        result = {'passed': self.passed}
        if not self.passed:
            result['witness'] = {'cone': self.cone + 1, 'ray': self.ray + 1, 'coordinates': list(self.coordinates)}
        return result


def check_condition_iii(fan: Fan) -> ConditionCheck:
    """
    Every ray has coordinates in [-1, 1] in the basis of every maximal cone, with at most one coordinate 1.
    :return: The result with the first violating (maximal cone, ray) as witness.
    """
    fan.require_accepted()
    for index in range(len(fan.max_cones)):
        for ray in range(fan.m):
            coords = fan.coordinates(index, fan.rays[ray])
            if any(abs(c) > 1 for c in coords) or sum(1 for c in coords if c == 1) > 1:
                return ConditionCheck(False, index, ray, coords)
    return ConditionCheck(True)
