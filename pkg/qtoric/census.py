import logging
from functools import cmp_to_key
from itertools import combinations, product
from multiprocessing import Pool
from typing import List, NamedTuple, Optional, Sequence, Tuple

from qtoric.fan.fan import Fan
from qtoric.fan.io import fan_to_dict
from qtoric.fan.isomorphism import is_isomorphic
from qtoric.fano.tier import Tier, classify
from qtoric.predefined import CENSUS_BOX, CENSUS_DEFAULT_MAX_RAYS, CENSUS_DIM
from qtoric.util import QtoricError

logger = logging.getLogger(__name__)

Vector = Tuple[int, int]


class CensusError(QtoricError):
    pass


class CensusEntry(NamedTuple):
    fan: Fan
    tier: Tier

    def to_dict(self) -> dict:
        return {'fan': fan_to_dict(self.fan), 'rays': self.fan.m, 'tier': str(self.tier)}


def _half(v: Vector) -> int:
    return 0 if v[1] > 0 or (v[1] == 0 and v[0] > 0) else 1


def _cross(a: Vector, b: Vector) -> int:
    return a[0] * b[1] - a[1] * b[0]


def _by_angle(a: Vector, b: Vector) -> int:
    if _half(a) != _half(b):
        return _half(a) - _half(b)
    cross = _cross(a, b)
    return -1 if cross > 0 else (1 if cross < 0 else 0)


def _candidate(extra: Sequence[Vector]) -> Optional[Fan]:
    """
    The fan whose maximal cones join angularly consecutive rays, if it is smooth, complete and in the full class.
    """
    rays = sorted([(1, 0), (0, 1), *extra], key=cmp_to_key(_by_angle))
    k = len(rays)
    if any(_cross(rays[i], rays[(i + 1) % k]) != 1 for i in range(k)):
        return None

    fan = Fan(CENSUS_DIM, rays, [sorted((i, (i + 1) % k)) for i in range(k)])
    if not fan.report.accepted:
        return None
    if classify(fan).tier != Tier.FULL_CLASS:
        return None
    return fan


def _extras(max_rays: int) -> List[Tuple[Vector, ...]]:
    box = [v for v in product(CENSUS_BOX, repeat=CENSUS_DIM) if any(v) and v not in ((1, 0), (0, 1))]
    return [extra for size in range(1, max_rays - 1) for extra in combinations(box, size)]


def census(dim: int = CENSUS_DIM, max_rays: int = CENSUS_DEFAULT_MAX_RAYS, jobs: int = 1) -> List[CensusEntry]:
    """
    Isomorphism classes of smooth complete fans of the full class with at most max_rays rays.
    Every such fan has a maximal cone spanned by a basis and, in that basis, ray coordinates in {-1, 0, 1},
    so candidates are drawn from that box. The first representative of each class is kept, in order of
    ray count and candidate order.
    :param jobs: Worker processes for checking candidates.
    :raises CensusError: for a dimension other than 2.
    """
    if dim != CENSUS_DIM:
        raise CensusError(f'The census is only available in dimension {CENSUS_DIM}.', {'dim': dim})

    candidates = _extras(max_rays)
    if jobs > 1:
        with Pool(jobs) as pool:
            fans = pool.map(_candidate, candidates)
    else:
        fans = [_candidate(c) for c in candidates]

    result: List[CensusEntry] = []
    for fan in sorted((f for f in fans if f is not None), key=lambda f: f.m):
        if any(is_isomorphic(fan, entry.fan) for entry in result):
            continue
        logger.debug('census: new class with %d rays', fan.m)
        result.append(CensusEntry(fan, classify(fan).tier))
    return result
