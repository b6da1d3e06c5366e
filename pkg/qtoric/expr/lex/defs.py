from qtoric.util import QtoricError


class ExpressionError(QtoricError):
    """
    A class expression that does not lex, parse or make sense on the given fan.
    """
    pass


# List of token names. This is always required
tokens = (
    # Symbols
    'DIVISOR',
    'INT',

    'COMMA',

    # Operators
    'PLUS',
    'MINUS',
    'MUL',
    'DIV',

    # Grouping
    'LPAREN',
    'RPAREN',
    'LBRACKET',
    'RBRACKET',
)
