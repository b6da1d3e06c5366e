from fractions import Fraction

import pytest

from fans import f1, p2
from qtoric.cohomology import CohomologyClass, cohomology_ring
from qtoric.expr import (ExpressionError, LexerError, Node, SemanticError, SyntaxerError,
                         evaluate_classical_expression, evaluate_expression, parse_expression)
from qtoric.fan import CurveClass
from qtoric.quantum import QuantumClass, lift
from qtoric.report import class_text

E = CurveClass((1, 1, 0, -1))


# --- parsing ---

def test_parse_a_divisor():
    ast = parse_expression('D1', p2())
    assert ast['node'] == Node.SUM
    (term,) = ast['terms']
    assert term['scalar'] == {'node': Node.SCALAR, 'numerator': 1, 'denominator': 1}
    (factor,) = term['factors']
    assert factor == {'node': Node.DIVISOR, 'index': 1, 'ray': 0}


def test_parse_a_sum():
    ast = parse_expression('2*D1*D4 - 1/2*[1,2]\n + (D2 + D3)*D1', f1())
    first, second, third = ast['terms']
    assert first['scalar']['numerator'] == 2
    assert [f['ray'] for f in first['factors']] == [0, 3]
    assert (second['scalar']['numerator'], second['scalar']['denominator']) == (-1, 2)
    assert second['factors'][0]['cone'] == (0, 1)
    assert third['factors'][0]['node'] == Node.GROUP


def test_parse_scalars_and_strata():
    ast = parse_expression('-3 + 2D2 - [] - -D1', p2())
    scalars = [(t['scalar']['numerator'], len(t['factors'])) for t in ast['terms']]
    assert scalars == [(-3, 0), (2, 1), (-1, 1), (1, 1)]
    assert ast['terms'][2]['factors'][0]['cone'] == ()


@pytest.mark.parametrize('text, error', [
    ('D1 ? D2', LexerError),
    ('x', LexerError),
    ('D1 +', SyntaxerError),
    ('D1 D2', SyntaxerError),
    ('[1,2', SyntaxerError),
    ('D1/2', SyntaxerError),
    ('', SyntaxerError),
    ('D4', SemanticError),
    ('[1,1]', SemanticError),
    ('[1,2,3]', SemanticError),
    ('1/0', SemanticError),
])
def test_bad_expressions(text, error):
    with pytest.raises(error):
        parse_expression(text, p2())
    with pytest.raises(ExpressionError):
        parse_expression(text, p2())


def test_lexer_error_column():
    with pytest.raises(LexerError) as e:
        parse_expression('D1 ? D2', p2())
    assert e.value.details['column'] == 4


def test_semantic_errors_are_collected():
    with pytest.raises(SemanticError) as e:
        parse_expression('D5 + [0] + D7', p2())
    assert len(e.value.details['errors']) == 3


# --- evaluation ---

def test_evaluate_on_p2():
    fan = p2()
    ring = cohomology_ring(fan)
    h = ring.stratum((0,))
    assert evaluate_expression('D1*D1*D1', fan) == QuantumClass({CurveClass((1, 1, 1)): ring.unit()})
    assert evaluate_expression('D1 - D2', fan) == QuantumClass()
    assert evaluate_expression('2D1', fan) == lift(fan, h * 2)
    assert evaluate_expression('-D1', fan) == lift(fan, -h)
    assert evaluate_expression('[]', fan) == lift(fan, ring.unit())
    assert evaluate_expression('3/4*[1,2]', fan) == lift(fan, ring.point() * Fraction(3, 4))
    assert evaluate_expression('(D1 + D2)*D3', fan) == lift(fan, ring.point() * 2)


def test_evaluate_on_f1():
    fan = f1()
    ring = cohomology_ring(fan)
    d4 = ring.stratum((3,))
    assert evaluate_expression('D1*D4', fan) == QuantumClass({CurveClass.zero(4): ring.point(), E: -d4})
    assert evaluate_expression('[1,4] - D1*D4', fan) == QuantumClass({E: d4})


def test_evaluate_classical():
    fan = p2()
    assert evaluate_classical_expression('D1*D2', fan) == cohomology_ring(fan).point()
    with pytest.raises(SemanticError):
        evaluate_classical_expression('D1*D1*D1', fan)


def test_class_text_parses_back(surface):
    ring = cohomology_ring(surface)
    size = len(ring.basis)
    for i in range(size):
        a = CohomologyClass({i: 3, (i + 1) % size: Fraction(-1, 2)})
        for value in (a, -a, CohomologyClass.basis(i)):
            assert evaluate_expression(class_text(ring, value), surface) == lift(surface, value)
