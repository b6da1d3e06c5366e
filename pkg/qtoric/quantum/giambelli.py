import logging
from functools import lru_cache

from qtoric.cohomology.ring import cohomology_ring
from qtoric.fan.fan import Fan, IndexSet, require_cone
from qtoric.fano.exceptional import family_class, special_families
from qtoric.fano.tier import Tier, require_tier
from qtoric.quantum.qclass import QuantumClass, QuantumPolynomial
from qtoric.util import format_index_set

logger = logging.getLogger(__name__)


def giambelli(fan: Fan, sigma) -> QuantumPolynomial:
    """
    Quantum Giambelli formula: [X(sigma)] as a quantum polynomial in the divisors.
    Sum over families S_1..S_t of special exceptional sets for sigma with distinct exceptional
    divisors and no cycles of q^(beta_1 + ... + beta_t) times the divisors of sigma outside every S_i.
    :raises NotInClass: below the full class.
    """
    require_tier(fan, Tier.FULL_CLASS)
    return _giambelli(fan, require_cone(fan, sigma))


@lru_cache(maxsize=None)
def _giambelli(fan: Fan, sigma: IndexSet) -> QuantumPolynomial:
    result = QuantumPolynomial()
    for family in special_families(fan, sigma, overlaps_allowed=True):
        covered = set(i for e in family for i in e.set)
        rest = tuple(i for i in sigma if i not in covered)
        result = result + QuantumPolynomial.monomial(fan.m, rest, family_class(fan, family))
    logger.debug('giambelli %s = %s', format_index_set(sigma), result.text())
    return result


def divisor_product_closed_form(fan: Fan, sigma) -> QuantumClass:
    """
    The quantum product of the divisors of a cone: sum over families of special exceptional
    classes with distinct exceptional divisors and no overlaps of
    (-1)^t q^beta [D_I], beta the sum of the family and I the members i of sigma with beta.D_i != 1.
    :raises NotInClass: below the full class.
    """
    require_tier(fan, Tier.FULL_CLASS)
    return _closed_form(fan, require_cone(fan, sigma))


@lru_cache(maxsize=None)
def _closed_form(fan: Fan, sigma: IndexSet) -> QuantumClass:
    ring = cohomology_ring(fan)
    result = QuantumClass()
    for family in special_families(fan, sigma, overlaps_allowed=False):
        beta = family_class(fan, family)
        kept = tuple(i for i in sigma if beta[i] != 1)
        term = QuantumClass({beta: ring.stratum(kept)})
        result = result + (term * (-1) ** len(family))
    return result
