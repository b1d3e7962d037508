"""diagonal.polynomial.

Sparse multivariate polynomials with exact rational coefficients and the
multi-index helpers shared by the series engine and the smooth point checks.
"""

from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

import sympy

from .errors import DomainError

MultiIndex = Tuple[int, ...]


def check_index(index):
    if len(index) < 1:
        raise DomainError('A multi-index needs at least one entry')
    if any(entry < 0 for entry in index):
        raise DomainError('Multi-index entries must be nonnegative: {}'.format(tuple(index)))


def sorted_key(index) -> MultiIndex:
    """Symmetry-reduced form of a multi-index: entries in nonincreasing order."""
    return tuple(sorted(index, reverse=True))


def to_fraction(value) -> Fraction:
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    value = sympy.Rational(value)
    return Fraction(int(value.p), int(value.q))


def to_rational(value):
    value = Fraction(value)
    return sympy.Rational(value.numerator, value.denominator)


def variables(d):
    return sympy.symbols('x1:{}'.format(d + 1))


def elementary_symmetric(values) -> List:
    """Return [e_0, ..., e_d] of values.

    Uses e_i(x_1, ..., x_d) = x_1 e_{i-1}(x_2, ..., x_d) + e_i(x_2, ..., x_d),
    so the arithmetic stays exact for Fraction input.
    """
    esp = [1] + [0] * len(values)
    for count, value in enumerate(values, start=1):
        for i in range(count, 0, -1):
            esp[i] += value * esp[i - 1]
    return esp


class SparsePolynomial():
    """Polynomial in x_1, ..., x_d over QQ.

    Thin wrapper around a sympy Poly that exposes its terms as a map from
    exponent vectors to Fractions, without stored zero coefficients.
    """

    def __init__(self, poly):
        self.poly = poly

    @classmethod
    def from_expr(cls, expr, gens):
        return cls(sympy.Poly(expr, *gens, domain='QQ'))

    @classmethod
    def from_terms(cls, terms: Dict[MultiIndex, Fraction], gens):
        expr = sympy.Add(*[to_rational(coefficient) * sympy.Mul(*[gen ** e for gen, e in zip(gens, exponent)])
                           for exponent, coefficient in terms.items()])
        return cls.from_expr(expr, gens)

    @property
    def gens(self):
        return self.poly.gens

    @property
    def nvars(self):
        return len(self.poly.gens)

    @property
    def terms(self) -> Dict[MultiIndex, Fraction]:
        return {tuple(monom): to_fraction(coefficient)
                for monom, coefficient in self.poly.terms() if coefficient != 0}

    def coefficient(self, exponent) -> Fraction:
        return self.terms.get(tuple(exponent), Fraction(0))

    def nonconstant_exponents(self) -> List[MultiIndex]:
        return [exponent for exponent in self.terms if any(exponent)]

    def degree(self, i):
        return self.poly.degree(self.gens[i])

    def diff(self, i):
        return SparsePolynomial(self.poly.diff(self.gens[i]))

    def evaluate(self, point: Sequence) -> Fraction:
        if len(point) != self.nvars:
            raise DomainError('Expected {} coordinates, got {}'.format(self.nvars, len(point)))
        return to_fraction(self.poly(*[to_rational(value) for value in point]))

    def is_symmetric(self):
        terms = self.terms
        return all(terms.get(sorted_key(exponent)) == coefficient for exponent, coefficient in terms.items())

    def __mul__(self, other):
        return SparsePolynomial(self.poly * other.poly)

    def __sub__(self, other):
        return SparsePolynomial(self.poly - other.poly)

    def __eq__(self, other):
        return isinstance(other, SparsePolynomial) and self.terms == other.terms

    def __len__(self):
        return len(self.terms)

    def __repr__(self):
        return 'SparsePolynomial({})'.format(self.poly.as_expr())
