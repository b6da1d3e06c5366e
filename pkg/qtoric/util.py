from fractions import Fraction
from typing import Any, Dict, Iterable, Optional, Tuple, Union

Rational = Union[int, Fraction]


class QtoricError(Exception):
    """
    Base of every error raised by the package.
    :param message: Human readable message.
    :param details: Extra data rendered into the structured CLI error object.
    """

    def __init__(self, message: str = '', details: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.message = message
        self.details = details or {}


def to_fraction(value) -> Fraction:
    """
    Convert an exact scalar (int, Fraction, sympy Rational/Integer or a domain element
    with numerator/denominator) to a Fraction.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if hasattr(value, 'p') and hasattr(value, 'q'):
        return Fraction(int(value.p), int(value.q))
    if hasattr(value, 'numerator') and hasattr(value, 'denominator'):
        return Fraction(int(value.numerator), int(value.denominator))
    raise TypeError(f'Not an exact scalar: {value!r}')


def format_rational(value: Rational) -> Union[int, str]:
    """
    JSON rendering of a rational: integers stay numbers, the rest become 'p/q' strings.
    """
    value = Fraction(value)
    if value.denominator == 1:
        return value.numerator
    return f'{value.numerator}/{value.denominator}'


def one_based(indices: Iterable[int]) -> Tuple[int, ...]:
    return tuple(i + 1 for i in indices)


def zero_based(indices: Iterable[int]) -> Tuple[int, ...]:
    return tuple(i - 1 for i in indices)


def format_index_set(indices: Iterable[int]) -> str:
    """
    Render a 0-based index set as 1-based divisor names, e.g. {D1,D4}.
    """
    return '{' + ','.join(f'D{i + 1}' for i in sorted(indices)) + '}'
