import logging
from fractions import Fraction

from qtoric.cohomology.ring import CohomologyClass, cohomology_ring
from qtoric.expr.sem.analyze import SemanticError
from qtoric.expr.syntax.ast import Node
from qtoric.fan.fan import Fan
from qtoric.quantum.product import lift, quantum_product, reduce_monomial
from qtoric.quantum.qclass import QuantumClass

logger = logging.getLogger(__name__)


def evaluate(ast, fan: Fan) -> QuantumClass:
    """
    Evaluate an analyzed expression in QH*(X); '*' is the quantum product.
    """
    node_type = ast['node']

    if node_type == Node.SUM:
        result = QuantumClass()
        for term in ast['terms']:
            result = result + evaluate(term, fan)
        return result

    if node_type == Node.TERM:
        scalar = ast['scalar']
        result = lift(fan, cohomology_ring(fan).unit())
        for factor in ast['factors']:
            result = quantum_product(fan, result, evaluate(factor, fan))
        return result * Fraction(scalar['numerator'], scalar['denominator'])

    if node_type == Node.DIVISOR:
        return reduce_monomial(fan, (ast['ray'],))

    if node_type == Node.STRATUM:
        return lift(fan, cohomology_ring(fan).stratum(ast['cone']))

    if node_type == Node.GROUP:
        return evaluate(ast['expression'], fan)

    raise NotImplementedError(node_type)


def evaluate_classical(ast, fan: Fan) -> CohomologyClass:
    """
    Evaluate an expression that must not carry q-terms.
    :raises SemanticError: if the value has a nonzero q-exponent.
    """
    value = evaluate(ast, fan)
    quantum = [b for b in value.exponents() if not b.is_zero()]
    if quantum:
        raise SemanticError(f'Expression has quantum terms {", ".join(str(b) for b in quantum)}.',
                            {'exponents': [list(b.pairings) for b in quantum]})
    return value.q_zero()
