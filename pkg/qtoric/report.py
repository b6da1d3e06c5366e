"""
Text and JSON renderings shared by the command line sub-commands.
Indices are 1-based; classes are written on the shelling basis, basis class i being the stratum [tau_i].
"""
from fractions import Fraction
from typing import Dict, List, Union

from qtoric.cohomology.ring import CohomologyClass, CohomologyRing
from qtoric.quantum.qclass import QuantumClass
from qtoric.util import format_rational, one_based


def stratum_text(cone) -> str:
    return '[' + ','.join(str(i) for i in one_based(cone)) + ']'


def _scaled(c: Fraction, body: str) -> str:
    return body if c == 1 else f'{c}*{body}'


def class_text(ring: CohomologyRing, a: CohomologyClass) -> str:
    """
    A re-parseable form such as '3*[1,2] + [4] - 1/2*[]'.
    """
    parts = []
    for i, c in a.items():
        body = stratum_text(ring.basis[i])
        sign = '-' if c < 0 else '+'
        parts.append((sign, _scaled(abs(c), body)))
    if not parts:
        return '0'
    text = ('-' if parts[0][0] == '-' else '') + parts[0][1]
    for sign, body in parts[1:]:
        text += f' {sign} {body}'
    return text


def quantum_class_text(ring: CohomologyRing, a: QuantumClass) -> str:
    parts = []
    for beta, value in a.items():
        body = class_text(ring, value)
        parts.append(body if beta.is_zero() else f'{beta}*({body})')
    return ' + '.join(parts) or '0'


def class_to_dict(a: CohomologyClass) -> Dict[str, Union[int, str]]:
    return {str(i + 1): format_rational(c) for i, c in a.items()}


def quantum_class_to_dict(a: QuantumClass) -> dict:
    return {'terms': [{'beta': list(beta.pairings), 'class': class_to_dict(value)} for beta, value in a.items()]}


def basis_table(ring: CohomologyRing) -> List[dict]:
    return [{'index': i + 1, 'cone': list(one_based(tau)), 'degree': len(tau)} for i, tau in enumerate(ring.basis)]


def basis_text(ring: CohomologyRing) -> str:
    width = len(str(len(ring.basis)))
    return '\n'.join(f'{i + 1:>{width}}  deg {len(tau)}  {stratum_text(tau)}' for i, tau in enumerate(ring.basis))
