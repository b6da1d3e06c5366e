import logging
from typing import Iterable, List, NamedTuple, Tuple

from qtoric.fan.fan import CurveClass, Fan, IndexSet, NotACone, containing_maximal_cone, curve_class, wall_class
from qtoric.fano.tier import NotInTier, Tier, classify, require_tier
from qtoric.predefined import TREE_WALK_FACTOR
from qtoric.util import QtoricError, format_index_set, one_based

logger = logging.getLogger(__name__)


class PreconditionFailed(QtoricError):
    pass


class TreeMismatch(QtoricError):
    pass


class TreeEdge(NamedTuple):
    """
    The toric curve X(wall) joining the fixed points of two adjacent maximal cones, taken `multiplicity` times.
    """
    wall: IndexSet
    multiplicity: int
    cls: CurveClass  # class of a single copy
    source: int
    target: int

    def to_dict(self, fan: Fan) -> dict:
        return {
            'wall': list(one_based(self.wall)),
            'multiplicity': self.multiplicity,
            'beta': list(self.cls.pairings),
            'from': list(one_based(fan.max_cones[self.source])),
            'to': list(one_based(fan.max_cones[self.target])),
        }


class ToricTree(NamedTuple):
    """
    A chain of toric curves from the fixed point X(root) to a point of the divisor D_divisor.
    """
    root: int
    divisor: int
    edges: Tuple[TreeEdge, ...]
    cls: CurveClass

    @property
    def degree(self) -> int:
        return self.cls.degree

    def to_dict(self, fan: Fan) -> dict:
        return {
            'root': list(one_based(fan.max_cones[self.root])),
            'divisor': self.divisor + 1,
            'edges': [e.to_dict(fan) for e in self.edges],
            'beta': list(self.cls.pairings),
            'degree': self.degree,
        }


class Forest(NamedTuple):
    """
    Trees rooted at a common maximal cone, each taken `copies` times; their classes add up to cls.
    """
    root: int
    trees: Tuple[Tuple[ToricTree, int], ...]
    cls: CurveClass
    verified_degree: bool

    @property
    def degree(self) -> int:
        return self.cls.degree

    def to_dict(self, fan: Fan) -> dict:
        return {
            'root': list(one_based(fan.max_cones[self.root])),
            'trees': [{'copies': copies, 'tree': tree.to_dict(fan)} for tree, copies in self.trees],
            'beta': list(self.cls.pairings),
            'degree': self.degree,
            'verified_degree': self.verified_degree,
        }


def _maximal_cone_index(fan: Fan, mu: Iterable[int]) -> int:
    cone = fan.check_index_set(mu)
    if cone not in fan.max_cones:
        raise NotACone(f'{format_index_set(cone)} is not a maximal cone.', {'cone': list(one_based(cone))})
    return fan.max_cones.index(cone)


def _divisor(fan: Fan, d: int) -> int:
    return fan.check_index_set((d,))[0]


def signed_distance(fan: Fan, mu: Iterable[int], rho: int) -> int:
    """
    Signed integer distance from ray rho to the affine span of the generators of a maximal cone,
    i.e. 1 minus the sum of the coordinates of rho in the basis of mu.
    """
    fan.require_accepted()
    index = _maximal_cone_index(fan, mu)
    return 1 - sum(fan.coordinates(index, fan.rays[_divisor(fan, rho)]))


def _walk(fan: Fan, root: int, d: int, general: bool) -> ToricTree:
    """
    Cross walls from X(root) until the current fixed point lies on D_d.
    The wall crossed drops the first generator with coordinate -1 (or, with `general`, any negative
    coordinate c, the edge then taking multiplicity -c).
    """
    limit = TREE_WALK_FACTOR * len(fan.max_cones)
    edges: List[TreeEdge] = []
    total = CurveClass.zero(fan.m)
    current = root

    while d not in fan.max_cones[current]:
        if len(edges) >= limit:
            raise PreconditionFailed(f'No tree from {format_index_set(fan.max_cones[root])} to D{d + 1} '
                                     f'within {limit} walls.', {'root': list(one_based(fan.max_cones[root])),
                                                                'divisor': d + 1})
        coords = fan.coordinates(current, fan.rays[d])
        if general:
            position = next(p for p, c in enumerate(coords) if c < 0)
        else:
            position = next((p for p, c in enumerate(coords) if c == -1), None)
            if position is None:
                raise NotInTier(f'D{d + 1} has no coordinate -1 in the basis of '
                                f'{format_index_set(fan.max_cones[current])}.', {'divisor': d + 1})

        multiplicity = -coords[position]
        cone = fan.max_cones[current]
        wall = cone[:position] + cone[position + 1:]
        target = fan.neighbor(current, position)
        cls = wall_class(fan, wall)
        edges.append(TreeEdge(wall, multiplicity, cls, current, target))
        total = total + cls * multiplicity
        current = target

    logger.debug('tree %s -> D%d: %d edges, degree %d', format_index_set(fan.max_cones[root]), d + 1,
                 len(edges), total.degree)
    return ToricTree(root, d, tuple(edges), total)


def min_tree(fan: Fan, mu: Iterable[int], d: int) -> ToricTree:
    """
    A tree of toric curves joining the fixed point X(mu) to a point of D_d of minimal degree
    signed_distance(mu, d). Its class pairs 1 with D_d, -rho^(i) with the i-th generator of mu,
    and 0 with every other divisor (zero when D_d passes through X(mu)).
    :param mu: Index set of a maximal cone.
    :raises NotInTier: below the SubvarietiesFano tier.
    :raises NotACone: if mu is not a maximal cone.
    """
    require_tier(fan, Tier.SUBVARIETIES_FANO)
    return _walk(fan, _maximal_cone_index(fan, mu), _divisor(fan, d), general=False)


def tree_for_class(fan: Fan, beta: CurveClass) -> Forest:
    """
    Represent a curve class by trees of toric curves: rooted at the smallest maximal cone containing every
    divisor beta meets negatively, with beta.D copies of the tree to D for each D outside that cone.
    Below the SubvarietiesFano tier the walk uses the general multiplicity rule and the degrees of the
    individual trees are not claimed minimal.
    :raises PreconditionFailed: if the negatively met divisors do not share a cone.
    """
    fan.require_accepted()
    beta = curve_class(fan, beta.pairings)
    general = classify(fan).tier < Tier.SUBVARIETIES_FANO

    negative = beta.support(-1)
    root = containing_maximal_cone(fan, negative)
    if root is None:
        raise PreconditionFailed(f'The divisors {format_index_set(negative)} met negatively by {beta} do not '
                                 f'span a cone.', {'beta': list(beta.pairings), 'negative': list(one_based(negative))})

    trees = []
    total = CurveClass.zero(fan.m)
    for rho in range(fan.m):
        copies = beta[rho]
        if rho in fan.max_cones[root] or not copies:
            continue
        tree = _walk(fan, root, rho, general)
        trees.append((tree, copies))
        total = total + tree.cls * copies

    if total != beta:
        raise TreeMismatch(f'Trees add up to {total}, expected {beta}.',
                           {'beta': list(beta.pairings), 'total': list(total.pairings)})
    return Forest(root, tuple(trees), beta, not general)
