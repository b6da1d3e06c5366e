import logging
from typing import List, NamedTuple, Tuple

from qtoric.fan.fan import CurveClass, Fan, IndexSet
from qtoric.fan.primitive import decompose_effective, primitive_data
from qtoric.fano.tier import Tier, require_tier
from qtoric.util import one_based

logger = logging.getLogger(__name__)


class DeformedRelation(NamedTuple):
    """
    D_P = q^beta * (product of the right-hand side divisors, with multiplicity).
    """
    set: IndexSet
    rhs: Tuple[int, ...]
    cls: CurveClass

    def text(self) -> str:
        lhs = '*'.join(f'D{i + 1}' for i in self.set)
        rhs = '*'.join([str(self.cls)] + [f'D{i + 1}' for i in self.rhs])
        return f'{lhs} = {rhs}'

    def to_dict(self) -> dict:
        return {'set': list(one_based(self.set)), 'rhs': list(one_based(self.rhs)), 'beta': list(self.cls.pairings)}


class Presentation(NamedTuple):
    """
    QH*(X) = Q[C][D_1, ..., D_m] / (linear relations, deformed monomial relations).
    """
    m: int
    linear_relations: List[Tuple[int, ...]]
    deformed_relations: List[DeformedRelation]

    @property
    def generators(self) -> List[str]:
        return [f'D{i + 1}' for i in range(self.m)]

    def linear_text(self, relation: Tuple[int, ...]) -> str:
        text = ''
        for i, c in enumerate(relation):
            if not c:
                continue
            sign = '-' if c < 0 else '+'
            body = f'D{i + 1}' if abs(c) == 1 else f'{abs(c)}*D{i + 1}'
            text = (('-' if sign == '-' else '') + body) if not text else f'{text} {sign} {body}'
        return f'{text} = 0'

    def to_dict(self) -> dict:
        return {
            'generators': self.generators,
            'linear_relations': [list(r) for r in self.linear_relations],
            'deformed_relations': [r.to_dict() for r in self.deformed_relations],
        }


def presentation(fan: Fan) -> Presentation:
    """
    Linear relations sum(phi(rho_i) D_i) for phi in the standard basis of M, and
    one deformed monomial relation per primitive set.
    :raises NotFano: below the Fano tier.
    """
    require_tier(fan, Tier.FANO)
    linear = [tuple(ray[k] for ray in fan.rays) for k in range(fan.dim)]
    deformed = []
    for pd in primitive_data(fan):
        rhs = tuple(j for j, a in zip(pd.rhs_cone, pd.rhs_coeffs) for _ in range(a))
        deformed.append(DeformedRelation(pd.set, rhs, pd.cls))
    return Presentation(fan.m, linear, deformed)


class EffectiveRelation(NamedTuple):
    """
    prod(D_i^c_i) = q^beta * prod(D_j^a_j) with c_i, -a_j the positive and negative pairings of beta.
    """
    lhs: Tuple[int, ...]
    cls: CurveClass
    rhs: Tuple[int, ...]

    def text(self) -> str:
        lhs = '*'.join(f'D{i + 1}' for i in self.lhs) or '1'
        rhs = '*'.join([str(self.cls)] + [f'D{i + 1}' for i in self.rhs])
        return f'{lhs} = {rhs}'


def effective_relation(fan: Fan, beta: CurveClass) -> EffectiveRelation:
    """
    The relation attached to an effective class.
    :raises NotEffective: if beta is not effective.
    """
    decompose_effective(fan, beta)
    lhs = tuple(i for i, b in enumerate(beta.pairings) if b > 0 for _ in range(b))
    rhs = tuple(i for i, b in enumerate(beta.pairings) if b < 0 for _ in range(-b))
    return EffectiveRelation(lhs, beta, rhs)
