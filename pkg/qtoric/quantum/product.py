import logging
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Optional, Sequence, TypeVar

from qtoric.cohomology.ring import CohomologyClass, Monomial, cohomology_ring
from qtoric.fan.fan import CurveClass, Fan
from qtoric.fan.primitive import NotEffective, decompose_effective, is_effective, primitive_data
from qtoric.fano.tier import Tier, require_tier
from qtoric.lattice import dual_basis_functional
from qtoric.quantum.giambelli import _closed_form, _giambelli
from qtoric.quantum.qclass import QuantumClass, QuantumPolynomial
from qtoric.util import QtoricError

logger = logging.getLogger(__name__)

T = TypeVar('T')
Chooser = Callable[[Sequence[T]], T]


def _first(options: Sequence[T]) -> T:
    return options[0]


def _step(fan: Fan, monomial: Monomial, choose: Chooser, recurse: Callable[[Fan, Monomial], QuantumClass]) \
        -> QuantumClass:
    support = sorted(set(monomial))

    # a primitive set in the support: apply its deformed relation
    contained = [pd for pd in primitive_data(fan) if set(pd.set).issubset(support)]
    if contained:
        pd = choose(contained)
        rest = list(monomial)
        for i in pd.set:
            rest.remove(i)
        rest.extend(j for j, a in zip(pd.rhs_cone, pd.rhs_coeffs) for _ in range(a))
        return recurse(fan, tuple(sorted(rest))).shift(pd.cls)

    # the support is a cone
    if len(support) == len(monomial):
        return _closed_form(fan, tuple(support))

    # a repeated divisor: trade one copy for divisors outside a maximal cone
    i = choose([j for j in support if monomial.count(j) > 1])
    mu = choose(sorted(c for c in fan.max_cones if set(support).issubset(c)))
    phi = dual_basis_functional(fan.generators(mu), mu.index(i))
    rest = list(monomial)
    rest.remove(i)

    result = QuantumClass()
    for k in range(fan.m):
        if k in mu:
            continue
        c = phi(fan.rays[k])
        if c:
            result = result + recurse(fan, tuple(sorted(rest + [k]))) * (-c)
    return result


@lru_cache(maxsize=None)
def _reduce_canonical(fan: Fan, monomial: Monomial) -> QuantumClass:
    return _step(fan, monomial, _first, _reduce_canonical)


def _check_exponents(fan: Fan, a: QuantumClass) -> QuantumClass:
    for beta in a.exponents():
        if not is_effective(fan, beta):
            raise NotEffective(f'Computed exponent {list(beta.pairings)} is not effective.',
                               {'beta': list(beta.pairings)})
    return a


def reduce_monomial(fan: Fan, monomial: Iterable[int], chooser: Optional[Chooser] = None) -> QuantumClass:
    """
    The quantum product of the listed divisors (with multiplicity) in normal form.
    Rewrites in order: a primitive set in the support is replaced through its deformed relation;
    a square-free cone monomial is evaluated by the closed formula; otherwise one copy of a
    repeated divisor is traded through the linear relation of a maximal cone containing the support.
    :param chooser: Picks among the applicable primitive sets, repeated divisors and maximal cones.
        Defaults to the first (smallest) option, with memoization.
    :raises NotInClass: below the full class.
    """
    require_tier(fan, Tier.FULL_CLASS)
    monomial = tuple(sorted(int(i) for i in monomial))
    fan.check_index_set(monomial)

    if chooser is None:
        return _check_exponents(fan, _reduce_canonical(fan, monomial))

    def recurse(f: Fan, mono: Monomial) -> QuantumClass:
        return _step(f, mono, chooser, recurse)

    return _check_exponents(fan, recurse(fan, monomial))


def evaluate_polynomial(fan: Fan, poly: QuantumPolynomial, chooser: Optional[Chooser] = None) -> QuantumClass:
    """
    Evaluate a formal quantum polynomial by reducing every monomial.
    """
    result = QuantumClass()
    for (beta, mono), c in poly.items():
        result = result + reduce_monomial(fan, mono, chooser).shift(beta) * c
    return result


@lru_cache(maxsize=None)
def _basis_product(fan: Fan, i: int, j: int) -> QuantumClass:
    ring = cohomology_ring(fan)
    poly = _giambelli(fan, ring.basis[i]) * _giambelli(fan, ring.basis[j])
    return evaluate_polynomial(fan, poly)


def lift(fan: Fan, a: CohomologyClass) -> QuantumClass:
    return QuantumClass.classical(a, fan.m)


def quantum_product(fan: Fan, a: QuantumClass, b: QuantumClass) -> QuantumClass:
    """
    Product in QH*(X): basis classes are lifted to their Giambelli polynomials, multiplied formally
    and reduced monomial by monomial; q-exponents add.
    :raises NotInClass: below the full class.
    """
    require_tier(fan, Tier.FULL_CLASS)
    result = QuantumClass()
    for beta1, x in a.items():
        for beta2, y in b.items():
            shift = beta1 + beta2
            for i, ci in x.items():
                for j, cj in y.items():
                    product = _basis_product(fan, min(i, j), max(i, j))
                    result = result + product.shift(shift) * (ci * cj)
    return _check_exponents(fan, result)


def quantum_power(fan: Fan, a: QuantumClass, k: int) -> QuantumClass:
    if k < 0:
        raise QtoricError(f'Negative power {k}.', {'power': k})
    result = lift(fan, cohomology_ring(fan).unit())
    for _ in range(k):
        result = quantum_product(fan, result, a)
    return result


def gw3(fan: Fan, a: CohomologyClass, b: CohomologyClass, c: CohomologyClass, beta: CurveClass) -> Fraction:
    """
    Three-point invariant <a, b, c>_beta: the integral of (q^beta coefficient of a*b) cup c.
    :raises NotEffective: for a nonzero class that is not effective.
    """
    require_tier(fan, Tier.FULL_CLASS)
    if not beta.is_zero():
        decompose_effective(fan, beta)
    ring = cohomology_ring(fan)
    product = quantum_product(fan, lift(fan, a), lift(fan, b))
    return ring.integrate(ring.cup(product.coefficient(beta), c))
