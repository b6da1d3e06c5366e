from qtoric.expr.lex.defs import ExpressionError
from qtoric.predefined import DIVISOR_PREFIX

t_COMMA = r'\,'

t_PLUS = r'\+'
t_MINUS = r'-'
t_MUL = r'\*'
t_DIV = r'/'

t_LPAREN = r'\('
t_RPAREN = r'\)'
t_LBRACKET = r'\['
t_RBRACKET = r'\]'


def t_DIVISOR(t):
    r"""
    D[0-9]+
    """
    t.value = int(t.value[len(DIVISOR_PREFIX):])
    return t


def t_INT(t):
    r"""
    [0-9]+
    """
    t.value = int(t.value)
    return t


# A string containing ignored characters (spaces and tabs)
t_ignore = ' \t\n'


class LexerError(ExpressionError):
    pass


# Error handling rule
def t_error(t):
    raise LexerError(f"Unexpected character '{t.value[0]}' at column {t.lexpos + 1}.",
                     {'column': t.lexpos + 1, 'character': t.value[0]})
