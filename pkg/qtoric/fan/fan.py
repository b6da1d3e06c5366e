import logging
from functools import cached_property
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from qtoric.lattice import (LatticeVector, basis_coordinates, content, determinant, dot, dual_basis,
                            primitive_vector, quotient_projection)
from qtoric.util import QtoricError, format_index_set, one_based

logger = logging.getLogger(__name__)

IndexSet = Tuple[int, ...]


class IndexOutOfRange(QtoricError):
    pass


class NotACone(QtoricError):
    pass


class DimensionMismatch(QtoricError):
    pass


class InvalidCurveClass(QtoricError):
    pass


class ValidationFailed(QtoricError):
    def __init__(self, report: 'ValidationReport'):
        super().__init__('Fan is not a complete nonsingular fan: ' + '; '.join(f.message for f in report.failures),
                         {'failures': [f.to_dict() for f in report.failures]})
        self.report = report


class Fan:
    """
    A simplicial fan given by its ray generators and maximal cones.
    Index sets are 0-based and sorted; the order of rays and cones is the input order.
    """

    def __init__(self, dim: int, rays: Iterable[Sequence[int]], max_cones: Iterable[Iterable[int]]):
        self._dim = int(dim)
        self._rays: Tuple[LatticeVector, ...] = tuple(tuple(int(x) for x in r) for r in rays)
        self._max_cones: Tuple[IndexSet, ...] = tuple(tuple(sorted(int(i) for i in c)) for c in max_cones)
        self._hash = hash((self._dim, self._rays, self._max_cones))

    @property
    def dim(self) -> int:
        return self._dim

    @property
    def rays(self) -> Tuple[LatticeVector, ...]:
        return self._rays

    @property
    def max_cones(self) -> Tuple[IndexSet, ...]:
        return self._max_cones

    @property
    def m(self) -> int:
        return len(self._rays)

    def __eq__(self, other):
        return isinstance(other, self.__class__) \
            and self._dim == other._dim \
            and self._rays == other._rays \
            and self._max_cones == other._max_cones

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f'<Fan(dim={self._dim}, rays={list(self._rays)}, max_cones={[one_based(c) for c in self._max_cones]})>'

    # --- faces ---

    @cached_property
    def faces(self) -> FrozenSet[IndexSet]:
        result = set()
        for cone in self._max_cones:
            for size in range(len(cone) + 1):
                result.update(combinations(cone, size))
        return frozenset(result)

    def is_face(self, indices: Iterable[int]) -> bool:
        return tuple(sorted(indices)) in self.faces

    def faces_of_dim(self, d: int) -> List[IndexSet]:
        return sorted(f for f in self.faces if len(f) == d)

    @cached_property
    def facet_map(self) -> Dict[IndexSet, Tuple[int, ...]]:
        """
        Maps every (n-1)-subset of a maximal cone to the indices of the maximal cones containing it.
        """
        result: Dict[IndexSet, List[int]] = {}
        for index, cone in enumerate(self._max_cones):
            for facet in combinations(cone, len(cone) - 1):
                result.setdefault(facet, []).append(index)
        return {k: tuple(v) for k, v in result.items()}

    def generators(self, cone: Iterable[int]) -> List[LatticeVector]:
        return [self._rays[i] for i in cone]

    # --- maximal cone coordinates ---

    def coordinates(self, cone_index: int, v: Sequence[int]) -> LatticeVector:
        """
        Coordinates of v in the basis given by the generators of a maximal cone.
        """
        return basis_coordinates(self.generators(self._max_cones[cone_index]), v)

    def neighbor(self, cone_index: int, position: int) -> Optional[int]:
        """
        The maximal cone across the wall obtained by dropping the generator at `position`.
        """
        cone = self._max_cones[cone_index]
        wall = cone[:position] + cone[position + 1:]
        others = [i for i in self.facet_map.get(wall, ()) if i != cone_index]
        return others[0] if others else None

    # --- validation ---

    @cached_property
    def report(self) -> 'ValidationReport':
        return validate(self)

    def require_accepted(self) -> 'Fan':
        if not self.report.accepted:
            raise ValidationFailed(self.report)
        return self

    def check_index_set(self, indices: Iterable[int]) -> IndexSet:
        result = tuple(sorted(set(int(i) for i in indices)))
        for i in result:
            if not 0 <= i < self.m:
                raise IndexOutOfRange(f'Ray index {i + 1} is outside 1..{self.m}.', {'index': i + 1, 'm': self.m})
        return result


class CurveClass:
    """
    An element of H_2(X, Z), stored as its intersection numbers with D_1..D_m.
    """

    def __init__(self, pairings: Iterable[int]):
        self._pairings = tuple(int(b) for b in pairings)

    @staticmethod
    def zero(m: int) -> 'CurveClass':
        return CurveClass((0,) * m)

    @property
    def pairings(self) -> Tuple[int, ...]:
        return self._pairings

    @property
    def degree(self) -> int:
        """
        Anticanonical degree: the sum of the pairings, since -K_X = D_1 + ... + D_m.
        """
        return sum(self._pairings)

    def is_zero(self) -> bool:
        return not any(self._pairings)

    def is_very_effective(self) -> bool:
        return not self.is_zero() and all(b >= 0 for b in self._pairings)

    def support(self, sign: int) -> IndexSet:
        """
        Indices where the pairing has the given sign (+1 or -1).
        """
        return tuple(i for i, b in enumerate(self._pairings) if b * sign > 0)

    def __getitem__(self, item: int) -> int:
        return self._pairings[item]

    def __len__(self):
        return len(self._pairings)

    def __add__(self, other: 'CurveClass') -> 'CurveClass':
        return CurveClass(a + b for a, b in zip(self._pairings, other._pairings))

    def __sub__(self, other: 'CurveClass') -> 'CurveClass':
        return CurveClass(a - b for a, b in zip(self._pairings, other._pairings))

    def __neg__(self) -> 'CurveClass':
        return CurveClass(-a for a in self._pairings)

    def __mul__(self, k: int) -> 'CurveClass':
        return CurveClass(k * a for a in self._pairings)

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, self.__class__) and self._pairings == other._pairings

    def __lt__(self, other: 'CurveClass') -> bool:
        return (self.degree, self._pairings) < (other.degree, other._pairings)

    def __hash__(self):
        return hash(self._pairings)

    def __repr__(self):
        return f'<CurveClass{self._pairings}>'

    def __str__(self):
        return 'q^(' + ','.join(str(b) for b in self._pairings) + ')'


def curve_class(fan: Fan, pairings: Iterable[int]) -> CurveClass:
    """
    Build a curve class, checking the kernel condition sum b_i rho_i = 0.
    :raises InvalidCurveClass: on a wrong length or a vector outside H_2.
    """
    beta = CurveClass(pairings)
    if len(beta) != fan.m:
        raise InvalidCurveClass(f'A curve class needs {fan.m} pairings, got {len(beta)}.', {'m': fan.m})
    image = [sum(b * ray[k] for b, ray in zip(beta.pairings, fan.rays)) for k in range(fan.dim)]
    if any(image):
        raise InvalidCurveClass(f'{list(beta.pairings)} is not a relation among the rays.', {'image': image})
    return beta


class ValidationFailure:
    def __init__(self, invariant: str, message: str):
        self.invariant = invariant
        self.message = message

    def to_dict(self) -> dict:
        return {'invariant': self.invariant, 'message': self.message}

    def __repr__(self):
        return f'<ValidationFailure({self.invariant}: {self.message})>'


class ValidationReport:
    def __init__(self, failures: List[ValidationFailure]):
        self._failures = failures

    @property
    def failures(self) -> List[ValidationFailure]:
        return self._failures

    @property
    def accepted(self) -> bool:
        return not self._failures

    def failed(self, invariant: str) -> bool:
        return any(f.invariant == invariant for f in self._failures)

    def to_dict(self) -> dict:
        return {'accepted': self.accepted, 'failures': [f.to_dict() for f in self._failures]}


def _validate_rays(fan: Fan, failures: List[ValidationFailure]):
    seen = {}
    for i, ray in enumerate(fan.rays):
        if len(ray) != fan.dim:
            failures.append(ValidationFailure('ray_length', f'Ray {i + 1} has {len(ray)} entries, expected {fan.dim}.'))
            continue
        if not any(ray):
            failures.append(ValidationFailure('ray_nonzero', f'Ray {i + 1} is zero.'))
            continue
        if content(ray) != 1:
            failures.append(ValidationFailure('ray_primitive', f'Ray {i + 1} {list(ray)} is not primitive.'))
        if ray in seen:
            failures.append(ValidationFailure('ray_distinct', f'Rays {seen[ray] + 1} and {i + 1} are equal.'))
        else:
            seen[ray] = i


def _validate_cones(fan: Fan, failures: List[ValidationFailure]):
    seen = set()
    for index, cone in enumerate(fan.max_cones):
        label = f'Cone {index + 1} {list(one_based(cone))}'
        if len(cone) != fan.dim or len(set(cone)) != len(cone):
            failures.append(ValidationFailure('cone_arity', f'{label} does not have {fan.dim} distinct rays.'))
            continue
        if any(not 0 <= i < fan.m for i in cone):
            failures.append(ValidationFailure('cone_range', f'{label} refers to a ray outside 1..{fan.m}.'))
            continue
        if cone in seen:
            failures.append(ValidationFailure('cone_distinct', f'{label} is listed twice.'))
        seen.add(cone)

    used = set(i for cone in fan.max_cones for i in cone)
    for i in range(fan.m):
        if i not in used:
            failures.append(ValidationFailure('ray_unused', f'Ray {i + 1} lies in no maximal cone.'))


def _validate_unimodular(fan: Fan, failures: List[ValidationFailure]):
    for index, cone in enumerate(fan.max_cones):
        det = determinant(fan.generators(cone))
        if abs(det) != 1:
            failures.append(ValidationFailure(
                'unimodular', f'Cone {index + 1} {list(one_based(cone))} has determinant {det}.'))


def _validate_completeness(fan: Fan, failures: List[ValidationFailure]):
    for facet, cones in sorted(fan.facet_map.items()):
        if len(cones) != 2:
            failures.append(ValidationFailure(
                'facet_pairing', f'Facet {format_index_set(facet)} occurs in {len(cones)} maximal cone(s).'))

    # connectivity of the dual graph
    if fan.max_cones:
        reached = {0}
        stack = [0]
        while stack:
            current = stack.pop()
            for position in range(len(fan.max_cones[current])):
                other = fan.neighbor(current, position)
                if other is not None and other not in reached:
                    reached.add(other)
                    stack.append(other)
        if len(reached) != len(fan.max_cones):
            failures.append(ValidationFailure('connected', 'The dual graph of maximal cones is disconnected.'))


def _validate_overlap(fan: Fan, failures: List[ValidationFailure]):
    for index, cone in enumerate(fan.max_cones):
        barycenter = [sum(fan.rays[i][k] for i in cone) for k in range(fan.dim)]
        for other in range(len(fan.max_cones)):
            if other == index:
                continue
            if all(c >= 0 for c in fan.coordinates(other, barycenter)):
                failures.append(ValidationFailure(
                    'overlap', f'Cones {index + 1} and {other + 1} overlap.'))
                return


def validate(fan: Fan) -> ValidationReport:
    """
    Check that the fan is nonsingular, simplicial and complete.
    :return: A report listing every failed invariant; empty when the fan is accepted.
    """
    failures: List[ValidationFailure] = []
    if fan.dim < 0:
        failures.append(ValidationFailure('dim', f'Dimension {fan.dim} is negative.'))
        return ValidationReport(failures)
    if fan.dim == 0:
        # a point: no rays and the single empty cone
        if fan.rays or fan.max_cones != ((),):
            failures.append(ValidationFailure('dim', 'A zero-dimensional fan has no rays and one empty cone.'))
        return ValidationReport(failures)

    _validate_rays(fan, failures)
    _validate_cones(fan, failures)
    if failures:
        return ValidationReport(failures)

    _validate_unimodular(fan, failures)
    _validate_completeness(fan, failures)
    if not failures:
        _validate_overlap(fan, failures)

    if failures:
        logger.debug('fan rejected: %s', failures)
    return ValidationReport(failures)


def is_cone(fan: Fan, rays: Iterable[int]) -> bool:
    """
    True iff the rays span a cone of the fan, i.e. lie in a common maximal cone.
    :raises IndexOutOfRange: for an index outside the ray list.
    """
    return fan.is_face(fan.check_index_set(rays))


def require_cone(fan: Fan, rays: Iterable[int]) -> Tuple[int, ...]:
    cone = fan.check_index_set(rays)
    if not fan.is_face(cone):
        raise NotACone(f'{format_index_set(cone)} does not span a cone.', {'cone': list(one_based(cone))})
    return cone


def containing_maximal_cone(fan: Fan, cone: Iterable[int]) -> Optional[int]:
    """
    Index of the lexicographically smallest maximal cone containing the cone, or None.
    """
    cone = set(cone)
    candidates = [i for i, mu in enumerate(fan.max_cones) if cone.issubset(mu)]
    if not candidates:
        return None
    return min(candidates, key=lambda i: fan.max_cones[i])


def wall_class(fan: Fan, wall: Iterable[int]) -> CurveClass:
    """
    Class of the toric curve X(wall) for an (n-1)-dimensional cone.
    """
    wall = tuple(sorted(wall))
    cones = fan.facet_map.get(wall, ())
    if len(cones) != 2:
        raise NotACone(f'{format_index_set(wall)} is not an interior wall.', {'cone': list(one_based(wall))})
    mu, nu = (fan.max_cones[i] for i in cones)
    a = next(i for i in mu if i not in wall)
    b = next(i for i in nu if i not in wall)

    coords = fan.coordinates(cones[0], fan.rays[b])
    pairings = [0] * fan.m
    pairings[a] = 1
    pairings[b] = 1
    for position, i in enumerate(mu):
        if i != a:
            pairings[i] = -coords[position]
    return CurveClass(pairings)


def star(fan: Fan, cone: Iterable[int]) -> Fan:
    """
    The star of a cone: a fan in N / <cone> whose cones are the images of the cones containing it.
    Rays keep the order of their original indices.
    :raises NotACone: if the index set is not a cone.
    """
    fan.require_accepted()
    sigma = require_cone(fan, cone)
    if not sigma:
        return fan

    projection = quotient_projection(fan.generators(sigma), fan.dim)
    containing = [mu for mu in fan.max_cones if set(sigma).issubset(mu)]
    kept = sorted(set(i for mu in containing for i in mu) - set(sigma))
    new_index = {old: new for new, old in enumerate(kept)}

    rays = [primitive_vector([dot(row, fan.rays[i]) for row in projection]) for i in kept]
    max_cones = [tuple(new_index[i] for i in mu if i not in sigma) for mu in containing]
    logger.debug('star of %s: %d rays', format_index_set(sigma), len(rays))
    return Fan(fan.dim - len(sigma), rays, max_cones)


def anticanonical_functional(fan: Fan, cone_index: int) -> LatticeVector:
    """
    The point y of M taking the value 1 on every generator of a maximal cone.
    """
    basis = dual_basis(fan.generators(fan.max_cones[cone_index]))
    return tuple(sum(phi.coefficients[k] for phi in basis) for k in range(fan.dim))
