import logging
from typing import List, NamedTuple, Optional, Sequence, Tuple

from qtoric.fan.fan import Fan, ValidationFailed
from qtoric.fan.io import fan_to_dict
from qtoric.fan.primitive import primitive_data, primitive_sets
from qtoric.fano.exceptional import ExceptionalData, exceptional_divisors
from qtoric.fano.tier import NotInTier, Tier, require_tier
from qtoric.util import QtoricError, format_index_set, one_based

logger = logging.getLogger(__name__)


class BlowDownInvalid(QtoricError):
    pass


def blow_down(fan: Fan, exc: ExceptionalData) -> Fan:
    """
    Contract the exceptional divisor of a primitive relation rho_1 + ... + rho_k = rho_hat.
    Maximal cones avoiding rho_hat are kept; a cone containing rho_hat is replaced by
    (cone - {rho_hat}) + {rho_1, ..., rho_k}. The ray rho_hat is dropped and later rays shift down.
    :raises BlowDownInvalid: if exc is not a primitive exceptional datum or the result is not a valid fan.
    """
    require_tier(fan, Tier.FULL_CLASS)
    if exc not in exceptional_divisors(fan):
        raise BlowDownInvalid(f'{format_index_set(exc.set)} -> D{exc.exc_divisor + 1} is not a primitive '
                              f'exceptional relation.', {'set': list(one_based(exc.set)),
                                                         'exc_divisor': exc.exc_divisor + 1})

    hat = exc.exc_divisor
    cones = []
    seen = set()
    for cone in fan.max_cones:
        if hat in cone:
            cone = tuple(sorted(set(cone).difference([hat]).union(exc.set)))
        if cone not in seen:
            seen.add(cone)
            cones.append(cone)

    shift = {i: (i if i < hat else i - 1) for i in range(fan.m) if i != hat}
    rays = [ray for i, ray in enumerate(fan.rays) if i != hat]
    result = Fan(fan.dim, rays, [[shift[i] for i in cone] for cone in cones])

    if not result.report.accepted:
        raise BlowDownInvalid(f'Blowing down D{hat + 1} does not give a nonsingular complete fan.',
                              {'exc_divisor': hat + 1, 'validation': result.report.to_dict()})
    logger.debug('blew down D%d: %d rays left', hat + 1, result.m)
    return result


class Tower(NamedTuple):
    fans: List[Fan]
    removed: List[int]  # original indices of the contracted rays, in order

    def to_dict(self) -> dict:
        return {'fans': [fan_to_dict(f) for f in self.fans], 'removed': [i + 1 for i in self.removed]}


def build_tower(fan: Fan, order: Optional[Sequence[int]] = None) -> Tower:
    """
    Blow down exceptional divisors until none is left.
    :param order: Original ray indices to contract first, in this order; every one of them must be
        exceptional when its turn comes. Afterwards the smallest exceptional ray goes first.
    :raises BlowDownInvalid: on a bad order or when an intermediate fan leaves the full class.
    """
    require_tier(fan, Tier.FULL_CLASS)
    pending = list(order or [])
    origin = list(range(fan.m))
    fans = [fan]
    removed = []
    current = fan

    while True:
        candidates = exceptional_divisors(current)
        if pending:
            target = pending.pop(0)
            if target not in origin:
                raise BlowDownInvalid(f'Ray {target + 1} is not a ray of the current fan.', {'ray': target + 1})
            position = origin.index(target)
            exc = next((e for e in candidates if e.exc_divisor == position), None)
            if exc is None:
                raise BlowDownInvalid(f'Ray {target + 1} is not exceptional at this stage.',
                                      {'ray': target + 1, 'stage': len(removed)})
        elif candidates:
            exc = candidates[0]
        else:
            break

        current = blow_down(current, exc)
        try:
            require_tier(current, Tier.FULL_CLASS)
        except (NotInTier, ValidationFailed) as e:
            raise BlowDownInvalid(f'Blowing down ray {origin[exc.exc_divisor] + 1} leaves the class.',
                                  {'ray': origin[exc.exc_divisor] + 1, 'reason': e.message})
        removed.append(origin.pop(exc.exc_divisor))
        fans.append(current)

    return Tower(fans, removed)


def blow_down_tower(fan: Fan, order: Optional[Sequence[int]] = None) -> List[Fan]:
    return build_tower(fan, order).fans


class ProductCheck(NamedTuple):
    is_product: bool
    factor_dims: Tuple[int, ...]

    def to_dict(self) -> dict:
        return {'is_product': self.is_product, 'factor_dims': list(self.factor_dims)}


def is_product_of_projective_spaces(fan: Fan) -> ProductCheck:
    """
    True iff the primitive sets partition the rays and every primitive relation sums to zero.
    The factor dimensions are |P| - 1 for each primitive set P.
    """
    psets = primitive_sets(fan)
    covered = sorted(i for p in psets for i in p)
    if covered != list(range(fan.m)) or any(pd.rhs_cone for pd in primitive_data(fan)):
        return ProductCheck(False, ())
    return ProductCheck(True, tuple(len(p) - 1 for p in psets))


def removable_rays(fan: Fan, target: Fan) -> Tuple[int, ...]:
    """
    Rays of fan whose generator is not a ray of target, e.g. the end of a tower.
    """
    kept = set(target.rays)
    return tuple(i for i, ray in enumerate(fan.rays) if ray not in kept)


def tower_orders(fan: Fan) -> List[Tuple[int, ...]]:
    """
    Every sequence of blow-downs (as original ray indices) available from fan, one per path
    of choices until no exceptional divisor is left.
    """
    result = []

    def walk(current: Fan, origin: List[int], prefix: Tuple[int, ...]):
        candidates = exceptional_divisors(current)
        if not candidates:
            result.append(prefix)
            return
        for exc in candidates:
            following = origin[:exc.exc_divisor] + origin[exc.exc_divisor + 1:]
            walk(blow_down(current, exc), following, prefix + (origin[exc.exc_divisor],))

    require_tier(fan, Tier.FULL_CLASS)
    walk(fan, list(range(fan.m)), ())
    return result

