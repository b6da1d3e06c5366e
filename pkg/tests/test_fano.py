from itertools import combinations, permutations

import pytest

from fans import CORPUS, bl2p2, bl3p2, blpt_p3, bundle_p2, f1, f2, p1xp1, p2, p3
from qtoric.fan import CurveClass, is_isomorphic, primitive_data
from qtoric.fano import (BlowDownInvalid, ExceptionalData, NotFano, NotInClass, NotInTier, Tier, blow_down,
                         blow_down_tower, build_tower, check_condition_iii, classify, exceptional_divisors,
                         exceptional_sets, family_class, family_predicates, is_product_of_projective_spaces,
                         removable_rays, require_tier, special_exceptional_sets, special_families, tower_orders)
from qtoric.lattice import express_in_cone, rank


# --- tiers ---

@pytest.mark.parametrize('name', sorted(CORPUS))
def test_corpus_is_in_the_full_class(name):
    assert classify(CORPUS[name]()).tier == Tier.FULL_CLASS


def test_f2_is_not_fano():
    result = classify(f2())
    assert result.tier == Tier.NOT_FANO
    assert str(result.tier) == 'NotFano'
    with pytest.raises(NotFano):
        require_tier(f2(), Tier.FANO)


def test_bundle_is_fano_only():
    fan = bundle_p2()
    assert fan.report.accepted
    assert classify(fan).tier == Tier.FANO
    with pytest.raises(NotInTier):
        require_tier(fan, Tier.SUBVARIETIES_FANO)
    with pytest.raises(NotInClass):
        require_tier(fan, Tier.FULL_CLASS)


def test_full_class_relations_have_at_most_one_unit_ray(corpus_fan):
    for pd in primitive_data(corpus_fan):
        assert len(pd.rhs_cone) <= 1
        assert pd.rhs_coeffs in ((), (1,))


def test_certificates():
    certificates = classify(f1()).to_dict()['certificates']
    assert certificates == [
        {'set': [1, 2], 'coefficient_sum': 1, 'rhs_ray': 4, 'rhs_multiplicity': 1},
        {'set': [3, 4], 'coefficient_sum': 0, 'rhs_ray': None, 'rhs_multiplicity': 0},
    ]


def test_condition_iii_matches_the_tier(corpus_fan):
    assert check_condition_iii(corpus_fan).passed


@pytest.mark.parametrize('fan', [f2(), bundle_p2()])
def test_condition_iii_fails_below_the_tier(fan):
    check = check_condition_iii(fan)
    assert not check.passed
    assert 2 in check.coordinates or -2 in check.coordinates
    assert check.to_dict()['witness']['ray'] >= 1


# --- exceptional sets ---

def test_exceptional_sets_of_f1():
    (e,) = exceptional_sets(f1())
    assert e.set == (0, 1)
    assert e.exc_divisor == 3
    assert e.cls == CurveClass((1, 1, 0, -1))


def test_exceptional_sets_of_the_hexagon():
    sets = exceptional_sets(bl3p2())
    assert len(sets) == 6
    assert [e.exc_divisor for e in exceptional_divisors(bl3p2())] == [0, 1, 2, 3, 4, 5]


def test_exceptional_sets_need_no_relation():
    # in Bl_pt P^3 the pairs e_i + e_j are not rays, the triple sums to (1,1,1)
    sets = exceptional_sets(blpt_p3())
    assert [(e.set, e.exc_divisor) for e in sets] == [((0, 1, 2), 4)]


def test_exceptional_sets_require_the_tier():
    with pytest.raises(NotInTier):
        exceptional_sets(bundle_p2())


def test_special_sets():
    fan = f1()
    assert [e.set for e in special_exceptional_sets(fan, (0, 3))] == [(0, 1)]
    assert [e.set for e in special_exceptional_sets(fan, (1, 3))] == [(0, 1)]
    assert special_exceptional_sets(fan, (1, 2)) == []
    assert special_exceptional_sets(fan, (3,)) == []


def test_exceptional_classes_pair_as_in_the_definition(corpus_fan):
    for e in exceptional_sets(corpus_fan):
        total = tuple(sum(corpus_fan.rays[i][k] for i in e.set) for k in range(corpus_fan.dim))
        assert total == corpus_fan.rays[e.exc_divisor]
        assert e.cls[e.exc_divisor] == -1
        assert e.cls.degree == e.k - 1


def test_family_predicates():
    sets = exceptional_sets(bl3p2())
    by_divisor = {e.exc_divisor: e for e in sets}
    # {1,2} -> 4 and {4,5} -> 2: each divisor lies in the other set
    a, b = by_divisor[4], by_divisor[2]
    assert a.set == (1, 2) and b.set == (4, 5)
    assert family_predicates((a, b)) == (True, False, False)
    assert family_predicates((a,)) == (True, True, True)
    assert not family_predicates((a, a)).distinct_exc
    assert family_predicates(()) == (True, True, True)


def test_families_are_pairwise_disjoint(corpus_fan):
    for sigma in corpus_fan.faces:
        for family in special_families(corpus_fan, sigma, overlaps_allowed=True):
            members = [i for e in family for i in e.set]
            assert len(members) == len(set(members))


def test_family_class():
    fan = f1()
    (e,) = exceptional_sets(fan)
    assert family_class(fan, ()) == CurveClass.zero(4)
    assert family_class(fan, (e,)) == e.cls


# --- blow-downs ---

def test_blow_down_f1_gives_p2():
    (e,) = exceptional_divisors(f1())
    fan = blow_down(f1(), e)
    assert fan.m == 3
    assert is_isomorphic(fan, p2())


def test_blow_down_blpt_p3_gives_p3():
    fan = blpt_p3()
    (e,) = exceptional_divisors(fan)
    result = blow_down(fan, e)
    assert result.m == 4
    assert is_isomorphic(result, p3())


@pytest.mark.parametrize('eset, exc, pairings', [
    # {D1,D4} spans a cone, so it is not a primitive set
    ((0, 3), 1, (1, -1, 0, 1)),
    # a primitive set with the wrong right-hand side
    ((0, 1), 2, (1, 1, -1, 0)),
])
def test_blow_down_rejects_data_outside_the_primitive_relations(eset, exc, pairings):
    fan = f1()
    datum = ExceptionalData(eset, exc, CurveClass(pairings))
    assert datum not in exceptional_divisors(fan)
    with pytest.raises(BlowDownInvalid) as e:
        blow_down(fan, datum)
    assert e.value.details['exc_divisor'] == exc + 1


@pytest.mark.parametrize('order', list(permutations((3, 4, 5))))
def test_hexagon_tower_in_every_order(order):
    tower = build_tower(bl3p2(), order)
    assert tower.removed == list(order)
    assert len(tower.fans) == 4
    for fan in tower.fans:
        assert classify(fan).tier == Tier.FULL_CLASS
    assert is_isomorphic(tower.fans[-1], p2())
    assert is_product_of_projective_spaces(tower.fans[-1]).factor_dims == (2,)


def test_default_tower_ends_in_a_product(corpus_fan):
    fans = blow_down_tower(corpus_fan)
    assert is_product_of_projective_spaces(fans[-1]).is_product


def test_tower_to_p1xp1():
    # (1,1) then (-1,0) ends in P^2, (0,1) alone ends in P^1 x P^1
    tower = build_tower(bl2p2(), [3, 4])
    assert is_isomorphic(tower.fans[-1], p2())
    tower = build_tower(bl2p2(), [1])
    assert is_isomorphic(tower.fans[-1], p1xp1())


def test_tower_bad_order():
    with pytest.raises(BlowDownInvalid):
        build_tower(p2(), [0])
    with pytest.raises(BlowDownInvalid):
        build_tower(bl3p2(), [3, 3])


def test_tower_orders_of_the_hexagon():
    orders = tower_orders(bl3p2())
    for order in permutations((3, 4, 5)):
        assert order in orders
    for order in orders:
        fan = build_tower(bl3p2(), order).fans[-1]
        assert is_product_of_projective_spaces(fan).is_product


def test_products_of_projective_spaces():
    assert is_product_of_projective_spaces(p1xp1()).factor_dims == (1, 1)
    assert is_product_of_projective_spaces(p3()).factor_dims == (3,)
    assert not is_product_of_projective_spaces(f1()).is_product


def test_removable_rays():
    tower = build_tower(bl3p2(), (3, 4, 5))
    assert removable_rays(bl3p2(), tower.fans[-1]) == (3, 4, 5)


def _in_cone_of_other_rays(fan, rho: int) -> bool:
    others = [i for i in range(fan.m) if i != rho]
    for size in range(2, fan.dim + 1):
        for subset in combinations(others, size):
            generators = fan.generators(subset)
            if rank(generators) == size and express_in_cone(fan.rays[rho], generators) is not None:
                return True
    return False


def test_rays_inside_the_other_rays_are_exceptional(corpus_fan):
    divisors = {e.exc_divisor for e in exceptional_divisors(corpus_fan)}
    for rho in range(corpus_fan.m):
        if _in_cone_of_other_rays(corpus_fan, rho):
            assert rho in divisors


def test_special_classes_are_independent(corpus_fan):
    for sigma in corpus_fan.faces:
        special = special_exceptional_sets(corpus_fan, sigma)
        if special:
            assert rank([e.cls.pairings for e in special]) == len(special)


def test_special_sets_with_distinct_divisors_are_disjoint(corpus_fan):
    for sigma in corpus_fan.faces:
        for a, b in combinations(special_exceptional_sets(corpus_fan, sigma), 2):
            if a.exc_divisor != b.exc_divisor:
                assert not set(a.set).intersection(b.set)


def test_special_sets_with_the_same_divisor_meet(corpus_fan):
    primitive = {e.exc_divisor: e for e in exceptional_divisors(corpus_fan)}
    for mu in corpus_fan.max_cones:
        special = special_exceptional_sets(corpus_fan, mu)
        for e in special:
            # the primitive set of the divisor is special too, and shares its members in mu with e
            p = primitive[e.exc_divisor]
            assert p in special
            assert set(p.set).intersection(mu) <= set(e.set)
        for a, b in combinations(special, 2):
            if a.exc_divisor == b.exc_divisor:
                assert set(a.set).intersection(b.set)


def test_relations_with_nearby_right_hand_sides_have_disjoint_sets(corpus_fan):
    relations = [pd for pd in primitive_data(corpus_fan) if pd.rhs_cone]
    for a, b in combinations(relations, 2):
        (ra,), (rb,) = a.rhs_cone, b.rhs_cone
        if ra == rb or corpus_fan.is_face((ra, rb)):
            assert not set(a.set).intersection(b.set)


def test_hexagon_relations_around_a_cone_are_disjoint():
    fan = bl3p2()
    by_rhs = {pd.rhs_cone: pd.set for pd in primitive_data(fan) if pd.rhs_cone}
    # r1 + r2 = r4 and r4 + r5 = r2, with {D2,D4} a cone
    assert by_rhs[(3,)] == (0, 1)
    assert by_rhs[(1,)] == (3, 4)
    assert fan.is_face((1, 3))


def test_exceptional_search_matches_a_subset_scan(corpus_fan):
    expected = []
    for size in range(2, corpus_fan.dim + 1):
        for eset in combinations(range(corpus_fan.m), size):
            total = tuple(sum(corpus_fan.rays[i][k] for i in eset) for k in range(corpus_fan.dim))
            if total in corpus_fan.rays and rank(corpus_fan.generators(eset)) == size:
                expected.append((eset, corpus_fan.rays.index(total)))
    assert sorted(expected) == [(e.set, e.exc_divisor) for e in exceptional_sets(corpus_fan)]
