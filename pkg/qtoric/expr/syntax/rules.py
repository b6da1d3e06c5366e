from qtoric.expr.lex import ExpressionError, tokens
from qtoric.expr.syntax.ast import Node

start = 'expression'


def _negate(term):
    scalar = term['scalar']
    return {**term, 'scalar': {**scalar, 'numerator': -scalar['numerator']}}


def p_expression(p):
    """
    expression  : term
                | expression PLUS term
                | expression MINUS term
    """
    if len(p) == 2:
        p[0] = {'node': Node.SUM, 'terms': [p[1]]}
    elif p[2] == '+':
        p[0] = {'node': Node.SUM, 'terms': [*p[1]['terms'], p[3]]}
    else:
        p[0] = {'node': Node.SUM, 'terms': [*p[1]['terms'], _negate(p[3])]}


# --- Terms ---

def p_term(p):
    """
    term    : product
            | scalar product
            | scalar MUL product
            | scalar
            | MINUS product
    """
    if len(p) == 2 and isinstance(p[1], list):
        p[0] = {'node': Node.TERM, 'scalar': _scalar(1, 1), 'factors': p[1]}
    elif len(p) == 2:
        p[0] = {'node': Node.TERM, 'scalar': p[1], 'factors': []}
    elif p[1] == '-':
        p[0] = {'node': Node.TERM, 'scalar': _scalar(-1, 1), 'factors': p[2]}
    else:
        p[0] = {'node': Node.TERM, 'scalar': p[1], 'factors': p[len(p) - 1]}


def _scalar(numerator, denominator):
    return {'node': Node.SCALAR, 'numerator': numerator, 'denominator': denominator}


def p_scalar(p):
    """
    scalar  : number
            | MINUS number
    """
    if len(p) == 2:
        p[0] = p[1]
    else:
        p[0] = _scalar(-p[2]['numerator'], p[2]['denominator'])


def p_number(p):
    """
    number  : INT
            | INT DIV INT
    """
    if len(p) == 2:
        p[0] = _scalar(p[1], 1)
    else:
        p[0] = _scalar(p[1], p[3])


# --- Products ---

def p_product(p):
    """
    product : factor
            | product MUL factor
    """
    if len(p) == 2:
        p[0] = [p[1]]
    else:
        p[0] = p[1] + [p[3]]


def p_factor_divisor(p):
    """
    factor  : DIVISOR
    """
    p[0] = {'node': Node.DIVISOR, 'index': p[1]}


def p_factor_stratum(p):
    """
    factor  : LBRACKET indices RBRACKET
    """
    p[0] = {'node': Node.STRATUM, 'indices': p[2]}


def p_factor_group(p):
    """
    factor  : LPAREN expression RPAREN
    """
    p[0] = {'node': Node.GROUP, 'expression': p[2]}


def p_indices(p):
    """
    indices :
            | indices_list
    """
    if len(p) <= 1:
        p[0] = []
    else:
        p[0] = p[1]


def p_indices_list(p):
    """
    indices_list    : INT
                    | indices_list COMMA INT
    """
    if len(p) == 2:
        p[0] = [p[1]]
    else:
        p[0] = p[1] + [p[3]]


# --- Other ---

class SyntaxerError(ExpressionError):
    pass


# Error rule for syntax errors
def p_error(p):
    if p is not None:
        raise SyntaxerError(f"Unexpected '{p.value}' at column {p.lexpos + 1}.",
                            {'column': p.lexpos + 1, 'token': p.type})
    raise SyntaxerError('Unexpected end of expression.')
