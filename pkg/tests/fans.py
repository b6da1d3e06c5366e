from qtoric.fan.fan import Fan


def p2() -> Fan:
    return Fan(2, [(1, 0), (0, 1), (-1, -1)], [(0, 1), (1, 2), (0, 2)])


def p1xp1() -> Fan:
    return Fan(2, [(1, 0), (-1, 0), (0, 1), (0, -1)], [(0, 2), (0, 3), (1, 2), (1, 3)])


def f1() -> Fan:
    return Fan(2, [(1, 0), (0, 1), (-1, -1), (1, 1)], [(0, 3), (1, 3), (1, 2), (0, 2)])


def bl2p2() -> Fan:
    return Fan(2, [(1, 0), (0, 1), (-1, -1), (1, 1), (-1, 0)], [(0, 3), (1, 3), (1, 4), (2, 4), (0, 2)])


def bl3p2() -> Fan:
    return Fan(2, [(1, 0), (0, 1), (-1, -1), (1, 1), (-1, 0), (0, -1)],
               [(0, 3), (1, 3), (1, 4), (2, 4), (2, 5), (0, 5)])


def f2() -> Fan:
    return Fan(2, [(1, 0), (-1, 2), (0, 1), (0, -1)], [(0, 2), (0, 3), (1, 2), (1, 3)])


def p3() -> Fan:
    return Fan(3, [(1, 0, 0), (0, 1, 0), (0, 0, 1), (-1, -1, -1)],
               [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)])


def p1xp1xp1() -> Fan:
    rays = [(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1)]
    cones = [(a, b, c) for a in (0, 1) for b in (2, 3) for c in (4, 5)]
    return Fan(3, rays, cones)


def blpt_p3() -> Fan:
    return Fan(3, [(1, 0, 0), (0, 1, 0), (0, 0, 1), (-1, -1, -1), (1, 1, 1)],
               [(0, 1, 4), (0, 2, 4), (1, 2, 4), (0, 1, 3), (0, 2, 3), (1, 2, 3)])


def bundle_p2() -> Fan:
    """
    P(O + O(2)) over P^2: Fano, but the relation rho_1 + rho_2 + rho_3 = 2 rho_4 keeps it out of the class.
    """
    rays = [(1, 0, 0), (0, 1, 0), (-1, -1, 2), (0, 0, 1), (0, 0, -1)]
    cones = [(a, b, c) for a, b in ((0, 1), (0, 2), (1, 2)) for c in (3, 4)]
    return Fan(3, rays, cones)


SURFACES = {'p2': p2, 'p1xp1': p1xp1, 'f1': f1, 'bl2p2': bl2p2, 'bl3p2': bl3p2}
THREEFOLDS = {'p3': p3, 'p1xp1xp1': p1xp1xp1, 'blpt_p3': blpt_p3}
CORPUS = {**SURFACES, **THREEFOLDS}


