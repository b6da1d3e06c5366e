import random
from itertools import combinations_with_replacement

import pytest

from fans import SURFACES, bl3p2, blpt_p3, bundle_p2, f1, f2, p1xp1, p2, p3
from qtoric.cohomology import CohomologyClass, cohomology_ring, normal_form
from qtoric.fan import CurveClass, NotEffective, primitive_data
from qtoric.fano import NotFano, NotInClass, NotInTier
from qtoric.quantum import (QuantumClass, QuantumPolynomial, divisor_product_closed_form, effective_relation,
                            evaluate_polynomial, giambelli, gw3, lift, presentation, quantum_power,
                            quantum_product, reduce_monomial)
from qtoric.util import QtoricError

E = CurveClass((1, 1, 0, -1))
FIBRE = CurveClass((0, 0, 1, 1))


def divisor(fan, i) -> CohomologyClass:
    return normal_form(fan, {(i,): 1})


def basis(fan):
    ring = cohomology_ring(fan)
    return [CohomologyClass.basis(i) for i in range(len(ring.basis))]


# --- presentation ---

def test_presentation_of_p2():
    p = presentation(p2())
    assert p.generators == ['D1', 'D2', 'D3']
    assert [p.linear_text(r) for r in p.linear_relations] == ['D1 - D3 = 0', 'D2 - D3 = 0']
    assert [r.text() for r in p.deformed_relations] == ['D1*D2*D3 = q^(1,1,1)']


def test_presentation_of_f1():
    p = presentation(f1())
    assert [r.text() for r in p.deformed_relations] == ['D1*D2 = q^(1,1,0,-1)*D4', 'D3*D4 = q^(0,0,1,1)']
    assert p.to_dict()['deformed_relations'][0] == {'set': [1, 2], 'rhs': [4], 'beta': [1, 1, 0, -1]}


def test_presentation_needs_a_fano_fan():
    with pytest.raises(NotFano):
        presentation(f2())
    assert len(presentation(bundle_p2()).deformed_relations) == 2


def test_effective_relation():
    relation = effective_relation(f1(), E + FIBRE)
    assert relation.lhs == (0, 1, 2)
    assert relation.rhs == ()
    assert relation.text() == 'D1*D2*D3 = q^(1,1,1,0)'
    with pytest.raises(NotEffective):
        effective_relation(f1(), -E)


def test_effective_relations_hold_in_the_ring(surface):
    classes = [pd.cls for pd in primitive_data(surface)]
    for a, b in combinations_with_replacement(classes, 2):
        relation = effective_relation(surface, a + b)
        lhs = reduce_monomial(surface, relation.lhs)
        rhs = reduce_monomial(surface, relation.rhs).shift(relation.cls)
        assert lhs == rhs


# --- divisor products ---

def test_p2_cube_of_a_line():
    fan = p2()
    unit = cohomology_ring(fan).unit()
    assert reduce_monomial(fan, (0, 0, 0)) == QuantumClass({CurveClass((1, 1, 1)): unit})
    assert quantum_power(fan, lift(fan, divisor(fan, 0)), 3) == QuantumClass({CurveClass((1, 1, 1)): unit})
    assert quantum_power(fan, lift(fan, divisor(fan, 0)), 0) == lift(fan, unit)
    with pytest.raises(QtoricError):
        quantum_power(fan, lift(fan, unit), -1)


def test_f1_square_of_the_exceptional_divisor():
    fan = f1()
    ring = cohomology_ring(fan)
    expected = QuantumClass({
        CurveClass.zero(4): -ring.point(),
        E: ring.stratum((3,)),
        FIBRE: ring.unit(),
    })
    assert reduce_monomial(fan, (3, 3)) == expected


def test_f1_closed_form():
    fan = f1()
    ring = cohomology_ring(fan)
    expected = QuantumClass({CurveClass.zero(4): ring.point(), E: -ring.stratum((3,))})
    assert divisor_product_closed_form(fan, (0, 3)) == expected
    assert reduce_monomial(fan, (0, 3)) == expected


def test_closed_form_classical_part(surface):
    ring = cohomology_ring(surface)
    mu = surface.max_cones[0]
    result = divisor_product_closed_form(surface, ())
    assert result == lift(surface, ring.unit())
    assert divisor_product_closed_form(surface, mu).q_zero() == ring.point()


def test_reduction_needs_the_full_class():
    with pytest.raises(NotInClass):
        reduce_monomial(f2(), (0,))
    with pytest.raises(NotInTier):
        reduce_monomial(bundle_p2(), (0, 1))


# --- giambelli ---

def test_f1_giambelli():
    formula = giambelli(f1(), (0, 3))
    assert formula.text() == 'D1*D4 + q^(1,1,0,-1)*D4'
    assert formula == QuantumPolynomial({(CurveClass.zero(4), (0, 3)): 1, (E, (3,)): 1})
    assert giambelli(f1(), (1, 2)).text() == 'D2*D3'


def test_giambelli_evaluates_to_the_stratum(corpus_fan):
    ring = cohomology_ring(corpus_fan)
    for sigma in sorted(corpus_fan.faces):
        assert evaluate_polynomial(corpus_fan, giambelli(corpus_fan, sigma)) == lift(corpus_fan, ring.stratum(sigma))


# --- the quantum product ---

def test_p2_point_squared():
    fan = p2()
    pt = lift(fan, cohomology_ring(fan).point())
    assert quantum_product(fan, pt, pt) == QuantumClass({CurveClass((1, 1, 1)): divisor(fan, 0)})


def test_classical_limit(corpus_fan):
    ring = cohomology_ring(corpus_fan)
    for a, b in combinations_with_replacement(basis(corpus_fan), 2):
        product = quantum_product(corpus_fan, lift(corpus_fan, a), lift(corpus_fan, b))
        assert product.q_zero() == ring.cup(a, b)


def test_product_is_graded(corpus_fan):
    ring = cohomology_ring(corpus_fan)
    size = len(ring.basis)
    for i in range(size):
        for j in range(size):
            a, b = CohomologyClass.basis(i), CohomologyClass.basis(j)
            for beta, value in quantum_product(corpus_fan, lift(corpus_fan, a), lift(corpus_fan, b)).items():
                assert beta.degree >= 0
                for d in ring.class_degrees(value):
                    assert d + beta.degree == ring.degree(i) + ring.degree(j)


def test_product_is_commutative(corpus_fan):
    for a, b in combinations_with_replacement(basis(corpus_fan), 2):
        x, y = lift(corpus_fan, a), lift(corpus_fan, b)
        assert quantum_product(corpus_fan, x, y) == quantum_product(corpus_fan, y, x)


@pytest.mark.parametrize('fan', [f1(), bl3p2(), p3(), blpt_p3()])
def test_product_is_associative(fan):
    classes = [lift(fan, a) for a in basis(fan)]
    for x, y, z in combinations_with_replacement(classes, 3):
        left = quantum_product(fan, quantum_product(fan, x, y), z)
        right = quantum_product(fan, x, quantum_product(fan, y, z))
        assert left == right


@pytest.mark.parametrize('name', sorted(SURFACES))
@pytest.mark.parametrize('seed', [0, 1, 2])
def test_reduction_is_confluent(name, seed):
    fan = SURFACES[name]()
    rng = random.Random(seed)
    for degree in range(fan.dim + 2):
        for monomial in combinations_with_replacement(range(fan.m), degree):
            assert reduce_monomial(fan, monomial, rng.choice) == reduce_monomial(fan, monomial)


def test_reduction_is_confluent_in_dimension_three():
    fan = blpt_p3()
    rng = random.Random(7)
    for monomial in combinations_with_replacement(range(fan.m), 3):
        assert reduce_monomial(fan, monomial, rng.choice) == reduce_monomial(fan, monomial)


# --- Gromov-Witten invariants ---

def test_p2_invariants():
    fan = p2()
    ring = cohomology_ring(fan)
    line = CurveClass((1, 1, 1))
    assert gw3(fan, ring.point(), ring.point(), divisor(fan, 0), line) == 1
    assert gw3(fan, divisor(fan, 0), divisor(fan, 1), divisor(fan, 2), line) == 0
    assert gw3(fan, divisor(fan, 0), divisor(fan, 1), ring.unit(), CurveClass.zero(3)) == 1


def test_f1_invariants():
    fan = f1()
    ring = cohomology_ring(fan)
    d4 = divisor(fan, 3)
    assert gw3(fan, d4, d4, d4, E) == -1
    assert gw3(fan, ring.point(), divisor(fan, 2), d4, FIBRE) == 1
    assert gw3(fan, ring.point(), divisor(fan, 0), divisor(fan, 2), FIBRE) == 0


def test_divisor_axiom_on_the_exceptional_curve():
    fan = f1()
    for i, j, k in combinations_with_replacement(range(fan.m), 3):
        value = gw3(fan, divisor(fan, i), divisor(fan, j), divisor(fan, k), E)
        assert value == E[i] * E[j] * E[k]


def test_p1xp1_three_points():
    fan = p1xp1()
    pt = cohomology_ring(fan).point()
    assert gw3(fan, pt, pt, pt, CurveClass((1, 1, 1, 1))) == 1


def test_invariant_of_a_non_effective_class():
    fan = f1()
    d4 = divisor(fan, 3)
    with pytest.raises(NotEffective):
        gw3(fan, d4, d4, d4, -E)


def test_invariants_need_the_full_class():
    fan = f2()
    with pytest.raises(NotInTier):
        gw3(fan, CohomologyClass(), CohomologyClass(), CohomologyClass(), CurveClass.zero(4))


def test_divisor_axiom_kills_classes_missing_the_divisor(surface):
    for i in range(surface.m):
        d = lift(surface, divisor(surface, i))
        for b in basis(surface):
            for beta, _ in quantum_product(surface, d, lift(surface, b)).items():
                assert beta.is_zero() or beta[i] != 0
