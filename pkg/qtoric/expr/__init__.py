"""
Class expressions: sums of scalar multiples of quantum products of divisors D<i>,
strata [i,j,...] and parenthesized expressions, e.g. '2*D1*D4 - 1/2*[1,2] + (D2 + D3)*D1'.
"""
import logging
from functools import lru_cache

import ply.lex
import ply.yacc

import qtoric.expr.lex
import qtoric.expr.syntax
from qtoric.cohomology.ring import CohomologyClass
from qtoric.expr.evaluate import evaluate, evaluate_classical
from qtoric.expr.lex import ExpressionError, LexerError
from qtoric.expr.sem import SemanticError, analyze
from qtoric.expr.syntax import Node, SyntaxerError
from qtoric.fan.fan import Fan
from qtoric.quantum.qclass import QuantumClass

logger = logging.getLogger(__name__)


@lru_cache(maxsize=None)
def _lexer():
    return ply.lex.lex(module=qtoric.expr.lex, errorlog=logger)


@lru_cache(maxsize=None)
def _parser():
    return ply.yacc.yacc(module=qtoric.expr.syntax, debug=False, write_tables=False, errorlog=logger)


def parse_expression(text: str, fan: Fan) -> dict:
    """
    Parse and analyze a class expression.
    :return: The annotated AST.
    :raises ExpressionError: on a lexer, syntax or semantic error.
    """
    ast = _parser().parse(text, lexer=_lexer().clone())
    return analyze(ast, fan)


def evaluate_expression(text: str, fan: Fan) -> QuantumClass:
    return evaluate(parse_expression(text, fan), fan)


def evaluate_classical_expression(text: str, fan: Fan) -> CohomologyClass:
    return evaluate_classical(parse_expression(text, fan), fan)
