"""diagonal.linalg.

Exact rational nullspaces, computed with sympy's DomainMatrix over QQ.
"""

from fractions import Fraction
from math import gcd, lcm
from typing import List, Sequence

from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix

from .errors import DomainError
from .polynomial import to_fraction


def _to_domain(value):
    value = Fraction(value)
    return QQ(value.numerator, value.denominator)


def nullspace(rows: Sequence[Sequence]) -> List[List[Fraction]]:
    """Basis of {v : rows . v = 0}, one list of Fractions per basis vector."""
    if not rows:
        raise DomainError('Cannot take the nullspace of an empty system')
    ncols = len(rows[0])
    if any(len(row) != ncols for row in rows):
        raise DomainError('Ragged linear system')
    matrix = DomainMatrix([[_to_domain(value) for value in row] for row in rows], (len(rows), ncols), QQ)
    basis = matrix.nullspace().to_Matrix()
    return [[to_fraction(value) for value in basis.row(i)] for i in range(basis.rows)]


def primitive_integer_vector(vector: Sequence[Fraction]) -> List[int]:
    """Scale a rational vector to coprime integers, keeping its direction."""
    vector = [Fraction(value) for value in vector]
    denominator = lcm(*[value.denominator for value in vector])
    integers = [int(value * denominator) for value in vector]
    content = gcd(*integers)
    if content == 0:
        raise DomainError('Cannot normalize the zero vector')
    return [value // content for value in integers]
