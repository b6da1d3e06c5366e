import logging
from itertools import permutations
from typing import Optional, Tuple

from qtoric.fan.fan import DimensionMismatch, Fan
from qtoric.lattice import basis_coordinates

logger = logging.getLogger(__name__)


def find_isomorphism(a: Fan, b: Fan) -> Optional[Tuple[int, ...]]:
    """
    Search for a unimodular map N_a -> N_b carrying the fan a onto the fan b.
    The first maximal cone of a is sent to every maximal cone of b in every generator order.
    :return: The induced ray bijection (ray i of a goes to ray result[i] of b), or None.
    :raises DimensionMismatch: if the lattices have different ranks.
    """
    if a.dim != b.dim:
        raise DimensionMismatch(f'Fans of dimension {a.dim} and {b.dim} can not be compared.',
                                {'dims': [a.dim, b.dim]})
    a.require_accepted()
    b.require_accepted()
    if a.m != b.m or len(a.max_cones) != len(b.max_cones):
        return None

    anchor = a.generators(a.max_cones[0])
    # coordinates of every ray of a in the anchor basis; the map is then fixed by the image basis
    coords = [basis_coordinates(anchor, ray) for ray in a.rays]
    ray_index = {ray: i for i, ray in enumerate(b.rays)}
    target_cones = set(b.max_cones)

    for cone in b.max_cones:
        for order in permutations(cone):
            image_basis = b.generators(order)
            mapping = []
            for c in coords:
                image = tuple(sum(c[k] * image_basis[k][j] for k in range(a.dim)) for j in range(a.dim))
                index = ray_index.get(image)
                if index is None:
                    break
                mapping.append(index)
            else:
                if len(set(mapping)) != a.m:
                    continue
                if set(tuple(sorted(mapping[i] for i in mu)) for mu in a.max_cones) == target_cones:
                    logger.debug('isomorphism found: %s', mapping)
                    return tuple(mapping)
    return None


def is_isomorphic(a: Fan, b: Fan) -> bool:
    return find_isomorphism(a, b) is not None
