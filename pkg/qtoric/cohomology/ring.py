import logging
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement
from typing import Dict, Iterable, List, Mapping, NamedTuple, Optional, Tuple

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from qtoric.cohomology.shelling import Shelling, shelling
from qtoric.fan.fan import Fan, IndexSet, require_cone
from qtoric.fan.primitive import primitive_sets
from qtoric.util import QtoricError, Rational, to_fraction

logger = logging.getLogger(__name__)

Monomial = Tuple[int, ...]
Polynomial = Mapping[Monomial, Rational]


class BasisMismatch(QtoricError):
    pass


class CohomologyClass:
    """
    A rational combination of the shelling basis classes [X(tau_i)], keyed by basis index.
    """

    def __init__(self, coords: Optional[Mapping[int, Rational]] = None):
        self._coords: Dict[int, Fraction] = {}
        for i, c in (coords or {}).items():
            c = Fraction(c)
            if c:
                self._coords[int(i)] = c

    @staticmethod
    def basis(index: int) -> 'CohomologyClass':
        return CohomologyClass({index: 1})

    @property
    def coords(self) -> Dict[int, Fraction]:
        return dict(self._coords)

    def items(self):
        return sorted(self._coords.items())

    def is_zero(self) -> bool:
        return not self._coords

    def __bool__(self):
        return bool(self._coords)

    def __getitem__(self, index: int) -> Fraction:
        return self._coords.get(index, Fraction(0))

    def __add__(self, other: 'CohomologyClass') -> 'CohomologyClass':
        result = dict(self._coords)
        for i, c in other._coords.items():
            result[i] = result.get(i, 0) + c
        return CohomologyClass(result)

    def __neg__(self) -> 'CohomologyClass':
        return CohomologyClass({i: -c for i, c in self._coords.items()})

    def __sub__(self, other: 'CohomologyClass') -> 'CohomologyClass':
        return self + (-other)

    def __mul__(self, scalar: Rational) -> 'CohomologyClass':
        return CohomologyClass({i: c * scalar for i, c in self._coords.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, self.__class__) and self._coords == other._coords

    def __hash__(self):
        return hash(frozenset(self._coords.items()))

    def __repr__(self):
        return f'<CohomologyClass({dict(self.items())})>'


class _DegreeReduction(NamedTuple):
    others: List[Monomial]
    basis: List[Monomial]
    rows: List[List[Fraction]]
    pivots: Tuple[int, ...]


class CohomologyRing:
    """
    H*(X, Q) of a nonsingular projective toric variety, as the quotient of Q[D_1..D_m] by the
    linear relations and the Stanley-Reisner monomials, written in the shelling basis.
    Reduction tables are built degree by degree on first use.
    """

    def __init__(self, fan: Fan):
        self.fan = fan.require_accepted()
        self.shelling: Shelling = shelling(fan)
        self.basis: Tuple[IndexSet, ...] = self.shelling.tau
        self._by_monomial = {tau: i for i, tau in enumerate(self.basis)}
        self._tables: Dict[int, Dict[Monomial, CohomologyClass]] = {}
        self._products: Dict[Tuple[int, int], CohomologyClass] = {}

        top = [i for i, tau in enumerate(self.basis) if len(tau) == fan.dim]
        if len(top) != 1:
            raise BasisMismatch(f'Expected one top-degree basis class, found {len(top)}.', {'top': top})
        self.top = top[0]
        self.unit_index = self._by_monomial.get(())

    @property
    def dim(self) -> int:
        return self.fan.dim

    def degree(self, index: int) -> int:
        return len(self.basis[index])

    def basis_of_degree(self, d: int) -> List[int]:
        return [i for i, tau in enumerate(self.basis) if len(tau) == d]

    def unit(self) -> CohomologyClass:
        return CohomologyClass.basis(self.unit_index)

    def point(self) -> CohomologyClass:
        return CohomologyClass.basis(self.top)

    def class_degrees(self, a: CohomologyClass) -> List[int]:
        return sorted(set(self.degree(i) for i, _ in a.items()))

    # --- reduction ---

    @lru_cache(maxsize=None)
    def _reduction(self, d: int) -> _DegreeReduction:
        fan = self.fan
        monomials = list(combinations_with_replacement(range(fan.m), d))
        basis = [tau for tau in self.basis if len(tau) == d]
        pinned = set(basis)
        others = [mono for mono in monomials if mono not in pinned]
        column = {mono: j for j, mono in enumerate(others + basis)}
        width = len(column)

        rows = []
        if d >= 1:
            for k in range(fan.dim):
                linear = [(i, ray[k]) for i, ray in enumerate(fan.rays) if ray[k]]
                for low in combinations_with_replacement(range(fan.m), d - 1):
                    row = [0] * width
                    for i, c in linear:
                        row[column[tuple(sorted(low + (i,)))]] += c
                    rows.append(row)
        for pset in primitive_sets(fan):
            if len(pset) > d:
                continue
            for low in combinations_with_replacement(range(fan.m), d - len(pset)):
                row = [0] * width
                row[column[tuple(sorted(pset + low))]] = 1
                rows.append(row)

        if not rows:
            return _DegreeReduction(others, basis, [], ())

        matrix = DomainMatrix([[QQ(x) for x in row] for row in rows], (len(rows), width), QQ)
        echelon, pivots = matrix.rref()
        dense = echelon.to_Matrix()
        reduced = [[to_fraction(dense[r, c]) for c in range(width)] for r in range(len(pivots))]
        logger.debug('degree %d: %d monomials, %d relations, rank %d', d, width, len(rows), len(pivots))
        return _DegreeReduction(others, basis, reduced, tuple(pivots))

    def quotient_dimension(self, d: int) -> int:
        """
        Dimension of the degree-d part computed by row reduction alone.
        """
        reduction = self._reduction(d)
        return len(reduction.others) + len(reduction.basis) - len(reduction.pivots)

    def _table(self, d: int) -> Dict[Monomial, CohomologyClass]:
        if d in self._tables:
            return self._tables[d]

        reduction = self._reduction(d)
        offset = len(reduction.others)
        if reduction.pivots != tuple(range(offset)):
            raise BasisMismatch(f'Shelling monomials of degree {d} are not a basis of the quotient.',
                                {'degree': d, 'rank': len(reduction.pivots), 'non_basis': offset})

        table = {}
        for r, mono in enumerate(reduction.others):
            row = reduction.rows[r]
            table[mono] = CohomologyClass({self._by_monomial[b]: -row[offset + j]
                                           for j, b in enumerate(reduction.basis)})
        for b in reduction.basis:
            table[b] = CohomologyClass.basis(self._by_monomial[b])

        self._tables[d] = table
        return table

    def reduce(self, monomial: Iterable[int]) -> CohomologyClass:
        monomial = tuple(sorted(monomial))
        if len(monomial) > self.dim:
            return CohomologyClass()
        return self._table(len(monomial))[monomial]

    def normal_form(self, poly: Polynomial) -> CohomologyClass:
        result = CohomologyClass()
        for mono, c in poly.items():
            self.fan.check_index_set(mono)
            result = result + self.reduce(mono) * c
        return result

    # --- products ---

    def basis_product(self, i: int, j: int) -> CohomologyClass:
        key = (min(i, j), max(i, j))
        if key not in self._products:
            self._products[key] = self.reduce(self.basis[i] + self.basis[j])
        return self._products[key]

    def cup(self, a: CohomologyClass, b: CohomologyClass) -> CohomologyClass:
        result = CohomologyClass()
        for i, x in a.items():
            for j, y in b.items():
                result = result + self.basis_product(i, j) * (x * y)
        return result

    def stratum(self, cone: Iterable[int]) -> CohomologyClass:
        return self.reduce(cone)

    def integrate(self, a: CohomologyClass) -> Fraction:
        return a[self.top]


@lru_cache(maxsize=None)
def cohomology_ring(fan: Fan) -> CohomologyRing:
    return CohomologyRing(fan)


def normal_form(fan: Fan, poly: Polynomial) -> CohomologyClass:
    """
    Image of a polynomial in the divisor classes, given as {sorted monomial: coefficient}.
    Monomials of degree above dim reduce to zero.
    :raises NotFano: the basis comes from the shelling, which needs a Fano fan.
    """
    return cohomology_ring(fan).normal_form(poly)


def cup(fan: Fan, a: CohomologyClass, b: CohomologyClass) -> CohomologyClass:
    return cohomology_ring(fan).cup(a, b)


def stratum_class(fan: Fan, sigma) -> CohomologyClass:
    """
    The class Poincare dual to the intersection of the divisors of sigma.
    :raises NotACone: if sigma is not a cone.
    """
    return cohomology_ring(fan).stratum(require_cone(fan, sigma))


def integrate(fan: Fan, a: CohomologyClass) -> Fraction:
    return cohomology_ring(fan).integrate(a)


def betti_numbers(fan: Fan) -> List[int]:
    return shelling(fan).betti_numbers(fan.dim)


def poincare_pairing(fan: Fan) -> List[List[Fraction]]:
    ring = cohomology_ring(fan)
    size = len(ring.basis)
    return [[ring.integrate(ring.basis_product(i, j)) for j in range(size)] for i in range(size)]
