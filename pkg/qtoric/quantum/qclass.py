from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Tuple

from qtoric.cohomology.ring import CohomologyClass, Monomial
from qtoric.fan.fan import CurveClass
from qtoric.util import Rational


class QuantumClass:
    """
    An element of Q[C] (x) H*(X, Q): cohomology classes keyed by their q-exponent.
    """

    def __init__(self, terms: Optional[Mapping[CurveClass, CohomologyClass]] = None):
        self._terms: Dict[CurveClass, CohomologyClass] = {}
        for beta, a in (terms or {}).items():
            if a:
                self._terms[beta] = a

    @staticmethod
    def classical(a: CohomologyClass, m: int) -> 'QuantumClass':
        return QuantumClass({CurveClass.zero(m): a})

    @property
    def terms(self) -> Dict[CurveClass, CohomologyClass]:
        return dict(self._terms)

    def items(self) -> List[Tuple[CurveClass, CohomologyClass]]:
        return sorted(self._terms.items(), key=lambda t: t[0])

    def exponents(self) -> List[CurveClass]:
        return sorted(self._terms)

    def coefficient(self, beta: CurveClass) -> CohomologyClass:
        return self._terms.get(beta, CohomologyClass())

    def is_zero(self) -> bool:
        return not self._terms

    def shift(self, beta: CurveClass) -> 'QuantumClass':
        """
        Multiply by q^beta.
        """
        return QuantumClass({b + beta: a for b, a in self._terms.items()})

    def q_zero(self) -> CohomologyClass:
        """
        The classical part: every q-exponent except 0 dropped.
        """
        return next((a for b, a in self._terms.items() if b.is_zero()), CohomologyClass())

    def __bool__(self):
        return bool(self._terms)

    def __add__(self, other: 'QuantumClass') -> 'QuantumClass':
        result = dict(self._terms)
        for beta, a in other._terms.items():
            result[beta] = result[beta] + a if beta in result else a
        return QuantumClass(result)

    def __neg__(self) -> 'QuantumClass':
        return QuantumClass({b: -a for b, a in self._terms.items()})

    def __sub__(self, other: 'QuantumClass') -> 'QuantumClass':
        return self + (-other)

    def __mul__(self, scalar: Rational) -> 'QuantumClass':
        return QuantumClass({b: a * scalar for b, a in self._terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, self.__class__) and self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __repr__(self):
        return '<QuantumClass(' + ', '.join(f'{b}: {a!r}' for b, a in self.items()) + ')>'


class QuantumPolynomial:
    """
    A formal sum of q^beta times a monomial in the divisor symbols, e.g. a Giambelli expression.
    """

    def __init__(self, terms: Optional[Mapping[Tuple[CurveClass, Monomial], Rational]] = None):
        self._terms: Dict[Tuple[CurveClass, Monomial], Fraction] = {}
        for (beta, mono), c in (terms or {}).items():
            key = (beta, tuple(sorted(mono)))
            c = self._terms.get(key, 0) + Fraction(c)
            if c:
                self._terms[key] = c
            else:
                self._terms.pop(key, None)

    @staticmethod
    def monomial(m: int, mono: Iterable[int], beta: Optional[CurveClass] = None,
                 coefficient: Rational = 1) -> 'QuantumPolynomial':
        return QuantumPolynomial({(beta or CurveClass.zero(m), tuple(mono)): coefficient})

    def items(self) -> List[Tuple[Tuple[CurveClass, Monomial], Fraction]]:
        return sorted(self._terms.items(), key=lambda t: (t[0][0], t[0][1]))

    def __add__(self, other: 'QuantumPolynomial') -> 'QuantumPolynomial':
        result = dict(self._terms)
        for key, c in other._terms.items():
            result[key] = result.get(key, 0) + c
        return QuantumPolynomial(result)

    def __mul__(self, other: 'QuantumPolynomial') -> 'QuantumPolynomial':
        result: Dict[Tuple[CurveClass, Monomial], Fraction] = {}
        for (b1, m1), c1 in self._terms.items():
            for (b2, m2), c2 in other._terms.items():
                key = (b1 + b2, tuple(sorted(m1 + m2)))
                result[key] = result.get(key, 0) + c1 * c2
        return QuantumPolynomial(result)

    def scale(self, scalar: Rational) -> 'QuantumPolynomial':
        return QuantumPolynomial({k: c * scalar for k, c in self._terms.items()})

    def __eq__(self, other):
        return isinstance(other, self.__class__) and self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def text(self) -> str:
        """
        Human readable form such as 'D1*D4 + q^(1,1,0,-1)*D4'.
        """
        parts = []
        for (beta, mono), c in self.items():
            factors = []
            if not beta.is_zero():
                factors.append(str(beta))
            factors.extend(f'D{i + 1}' for i in mono)
            body = '*'.join(factors) or '1'
            if c == 1:
                parts.append(('+', body))
            elif c == -1:
                parts.append(('-', body))
            else:
                parts.append(('-' if c < 0 else '+', f'{abs(c)}*{body}'))
        if not parts:
            return '0'
        text = ('-' if parts[0][0] == '-' else '') + parts[0][1]
        for sign, body in parts[1:]:
            text += f' {sign} {body}'
        return text

    def __repr__(self):
        return f'<QuantumPolynomial({self.text()})>'
