# Exact linear algebra over N = Z^n and M = Hom(N, Z)
import logging
from fractions import Fraction
from functools import lru_cache, reduce
from math import gcd
from typing import List, NamedTuple, Optional, Sequence, Tuple

from sympy import Matrix, ZZ
from sympy.matrices.normalforms import invariant_factors as _invariant_factors

from qtoric.util import QtoricError, to_fraction

logger = logging.getLogger(__name__)

LatticeVector = Tuple[int, ...]
IntMatrix = List[List[int]]


class NonUnimodular(QtoricError):
    pass


class DependentGenerators(QtoricError):
    pass


class DualFunctional:
    """
    An element of M, paired with points of N by the integer dot product.
    """

    def __init__(self, coefficients: Sequence[int]):
        self._coefficients = tuple(int(c) for c in coefficients)

    @property
    def coefficients(self) -> LatticeVector:
        return self._coefficients

    def __call__(self, v: Sequence[int]) -> int:
        return dot(self._coefficients, v)

    def __eq__(self, other):
        return isinstance(other, self.__class__) \
            and self._coefficients == other._coefficients

    def __hash__(self):
        return hash(self._coefficients)

    def __repr__(self):
        return f'<DualFunctional{self._coefficients}>'


class ConeCoordinates(NamedTuple):
    coefficients: Tuple[Fraction, ...]
    interior: bool


def dot(a: Sequence[int], b: Sequence[int]) -> int:
    return sum(x * y for x, y in zip(a, b))


def content(v: Sequence[int]) -> int:
    return reduce(gcd, (abs(x) for x in v), 0)


def is_primitive(v: Sequence[int]) -> bool:
    return content(v) == 1


def primitive_vector(v: Sequence[int]) -> LatticeVector:
    g = content(v)
    if g == 0:
        return tuple(v)
    return tuple(x // g for x in v)


def _egcd(a: int, b: int) -> Tuple[int, int, int]:
    """
    Extended Euclid.
    :return: (g, x, y) with a*x + b*y == g == gcd(a, b) >= 0.
    """
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r != 0:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_x, x = x, old_x - q * x
        old_y, y = y, old_y - q * y
    if old_r < 0:
        old_r, old_x, old_y = -old_r, -old_x, -old_y
    return old_r, old_x, old_y


def _combine(u: List[int], v: List[int], a: int, b: int) -> Tuple[List[int], List[int]]:
    """
    Unimodular 2x2 combination of u and v that sends the pair of entries (a, b) to (gcd, 0).
    """
    g, x, y = _egcd(a, b)
    if g == 0:
        return u, v
    new_u = [x * p + y * q for p, q in zip(u, v)]
    new_v = [(-b // g) * p + (a // g) * q for p, q in zip(u, v)]
    return new_u, new_v


def column_reduce(matrix: Sequence[Sequence[int]]) -> Tuple[IntMatrix, IntMatrix, int]:
    """
    Column echelon form by unimodular column operations.
    :param matrix: r x c integer matrix (list of rows).
    :return: (H, T, rank) with matrix @ T == H, T unimodular and columns rank.. of H zero.
    """
    rows = len(matrix)
    cols = len(matrix[0]) if rows else 0

    # work on columns, transposed copies keep the gcd combination row-like
    h_cols = [[int(matrix[i][j]) for i in range(rows)] for j in range(cols)]
    t_cols = [[1 if i == j else 0 for i in range(cols)] for j in range(cols)]

    pivot = 0
    for i in range(rows):
        if pivot >= cols:
            break
        for j in range(pivot + 1, cols):
            b = h_cols[j][i]
            if b == 0:
                continue
            a = h_cols[pivot][i]
            h_cols[pivot], h_cols[j] = _combine(h_cols[pivot], h_cols[j], a, b)
            t_cols[pivot], t_cols[j] = _combine(t_cols[pivot], t_cols[j], a, b)
        if h_cols[pivot][i] != 0:
            pivot += 1

    h = [[h_cols[j][i] for j in range(cols)] for i in range(rows)]
    t = [[t_cols[j][i] for j in range(cols)] for i in range(cols)]
    return h, t, pivot


def hermite_rows(vectors: Sequence[Sequence[int]]) -> List[LatticeVector]:
    """
    Row Hermite normal form of a list of vectors: a canonical basis of the lattice they span.
    Positive pivots, entries above a pivot reduced into [0, pivot).
    """
    rows = [list(int(x) for x in v) for v in vectors]
    if not rows:
        return []
    width = len(rows[0])

    pivot_row = 0
    for col in range(width):
        if pivot_row >= len(rows):
            break
        for i in range(pivot_row + 1, len(rows)):
            b = rows[i][col]
            if b == 0:
                continue
            a = rows[pivot_row][col]
            rows[pivot_row], rows[i] = _combine(rows[pivot_row], rows[i], a, b)

        p = rows[pivot_row][col]
        if p == 0:
            continue
        if p < 0:
            rows[pivot_row] = [-x for x in rows[pivot_row]]
            p = -p
        for k in range(pivot_row):
            f = rows[k][col] // p
            if f:
                rows[k] = [x - f * y for x, y in zip(rows[k], rows[pivot_row])]
        pivot_row += 1

    return [tuple(r) for r in rows[:pivot_row]]


def integer_kernel(matrix: Sequence[Sequence[int]]) -> List[LatticeVector]:
    """
    A Z-basis of the kernel of the integer matrix (columns are the images of e_i).
    :param matrix: n x m integer matrix.
    :return: m - rank vectors of length m, in row Hermite normal form.
    """
    if not matrix or not matrix[0]:
        return []
    h, t, rank = column_reduce(matrix)
    cols = len(matrix[0])
    basis = [tuple(t[i][j] for i in range(cols)) for j in range(rank, cols)]
    return hermite_rows(basis)


def quotient_projection(generators: Sequence[Sequence[int]], dim: int) -> List[LatticeVector]:
    """
    Rows of a surjection Z^dim -> Z^(dim-k) whose kernel is the span of the k generators.
    The generators must be part of a Z-basis.
    """
    if not generators:
        return [tuple(1 if i == j else 0 for j in range(dim)) for i in range(dim)]

    h, t, rank = column_reduce(generators)
    k = len(generators)
    if rank != k:
        raise DependentGenerators('Generators are linearly dependent.', {'generators': [list(g) for g in generators]})
    if abs(determinant([row[:k] for row in h])) != 1:
        raise NonUnimodular('Generators are not part of a Z-basis.', {'generators': [list(g) for g in generators]})

    return [tuple(t[i][j] for i in range(dim)) for j in range(k, dim)]


def rank(vectors: Sequence[Sequence[int]]) -> int:
    if not vectors:
        return 0
    return Matrix([list(v) for v in vectors]).rank()


def determinant(matrix: Sequence[Sequence[int]]) -> int:
    if not matrix:
        return 1
    return int(Matrix([list(r) for r in matrix]).det())


def invariant_factors(matrix: Sequence[Sequence[int]]) -> Tuple[int, ...]:
    """
    Smith invariant factors (nonzero diagonal of the Smith normal form).
    """
    if not matrix or not matrix[0]:
        return ()
    factors = _invariant_factors(Matrix([list(r) for r in matrix]), domain=ZZ)
    return tuple(abs(int(f)) for f in factors if f != 0)


@lru_cache(maxsize=None)
def _dual_basis(generators: Tuple[LatticeVector, ...]) -> Tuple[DualFunctional, ...]:
    g = Matrix([list(v) for v in generators]).T
    if g.rows != g.cols:
        raise NonUnimodular('A basis needs exactly n generators.', {'generators': [list(v) for v in generators]})
    det = g.det()
    if abs(det) != 1:
        raise NonUnimodular(f'Determinant {det} is not a unit.', {'generators': [list(v) for v in generators]})
    inverse = g.inv()
    return tuple(DualFunctional([int(x) for x in inverse.row(i)]) for i in range(g.rows))


def dual_basis(generators: Sequence[Sequence[int]]) -> Tuple[DualFunctional, ...]:
    """
    The dual basis of a unimodular basis of N.
    :raises NonUnimodular: if |det| != 1.
    """
    return _dual_basis(tuple(tuple(int(x) for x in v) for v in generators))


def dual_basis_functional(generators: Sequence[Sequence[int]], index: int) -> DualFunctional:
    """
    The functional phi with phi(generators[index]) == 1 and phi == 0 on the other generators.
    :param generators: n vectors forming a unimodular basis of N.
    :param index: Position of the generator the functional picks out.
    """
    return dual_basis(generators)[index]


def basis_coordinates(generators: Sequence[Sequence[int]], v: Sequence[int]) -> LatticeVector:
    """
    Integer coordinates of v in a unimodular basis.
    """
    return tuple(phi(v) for phi in dual_basis(generators))


def express_in_cone(v: Sequence[int], generators: Sequence[Sequence[int]]) -> Optional[ConeCoordinates]:
    """
    Write v as a nonnegative combination of linearly independent cone generators.
    :return: coefficients and relative-interior flag, or None when v is not in the cone.
    :raises DependentGenerators: if the generators are linearly dependent.
    """
    if not generators:
        if any(v):
            return None
        return ConeCoordinates((), True)

    g = Matrix([list(x) for x in generators]).T
    if g.rank() < len(generators):
        raise DependentGenerators('Cone generators are linearly dependent.',
                                  {'generators': [list(x) for x in generators]})
    try:
        solution, params = g.gauss_jordan_solve(Matrix(list(v)))
    except ValueError:
        return None

    coefficients = tuple(to_fraction(x) for x in solution)
    if any(c < 0 for c in coefficients):
        return None
    return ConeCoordinates(coefficients, all(c > 0 for c in coefficients))
