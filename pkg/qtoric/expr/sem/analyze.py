# Here goes AST analyze process
import logging
from typing import List

from qtoric.expr.lex import ExpressionError
from qtoric.expr.syntax.ast import Node
from qtoric.fan.fan import Fan
from qtoric.util import format_index_set, zero_based

logger = logging.getLogger(__name__)


class SemanticError(ExpressionError):
    pass


def analyze(ast, fan: Fan) -> dict:
    """
    Check the indices, strata and scalars of a parsed expression against a fan and annotate
    divisor nodes with 'ray' and stratum nodes with 'cone' (0-based).
    :param ast: The AST.
    :param fan: The fan the expression refers to.
    :return: The annotated AST.
    :raises SemanticError: listing every problem found.
    """
    errors: List[str] = []
    _analyze_node(ast, fan, errors)
    if errors:
        for e in errors:
            logger.debug('semantic error: %s', e)
        raise SemanticError(errors[0], {'errors': errors})
    return ast


def _check_index(index: int, fan: Fan, errors: List[str]) -> bool:
    if not 1 <= index <= fan.m:
        errors.append(f'Divisor index {index} is outside 1..{fan.m}.')
        return False
    return True


def _analyze_node(node, fan: Fan, errors: List[str]):
    node_type = node['node']

    if node_type == Node.SUM:
        for term in node['terms']:
            _analyze_node(term, fan, errors)

    elif node_type == Node.TERM:
        _analyze_node(node['scalar'], fan, errors)
        for factor in node['factors']:
            _analyze_node(factor, fan, errors)

    elif node_type == Node.SCALAR:
        if node['denominator'] == 0:
            errors.append(f'Zero denominator in {node["numerator"]}/0.')

    elif node_type == Node.DIVISOR:
        if _check_index(node['index'], fan, errors):
            node['ray'] = node['index'] - 1

    elif node_type == Node.STRATUM:
        indices = node['indices']
        if len(set(indices)) != len(indices):
            errors.append(f'Repeated index in stratum {indices}.')
            return
        if not all([_check_index(i, fan, errors) for i in indices]):
            return
        cone = tuple(sorted(zero_based(indices)))
        if not fan.is_face(cone):
            errors.append(f'{format_index_set(cone)} does not span a cone.')
            return
        node['cone'] = cone

    elif node_type == Node.GROUP:
        _analyze_node(node['expression'], fan, errors)

    else:
        raise NotImplementedError(node_type)
