"""diagonal.recurrence.

Guessing, checking and applying P-recurrences

    sum_{i=0}^{k} p_i(n) a(n - i) = 0,    n >= offset,

with polynomial coefficients p_i over QQ, from an exact integer series.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence, Tuple

import sympy

from .errors import ConsistencyError, DomainError, SingularLeadingCoefficientError
from .linalg import nullspace, primitive_integer_vector
from .roots import polynomial_roots

log = logging.getLogger('diagasym')

# Equations the ansatz must have beyond its unknowns.
MARGIN = 10


def _strip(coefficients):
    coefficients = list(coefficients)
    while coefficients and coefficients[-1] == 0:
        coefficients.pop()
    return tuple(coefficients)


@dataclass(frozen=True)
class PRecurrence:
    """coeffs[i] holds p_i lowest degree first."""
    coeffs: Tuple[Tuple[Fraction, ...], ...]
    offset: int

    @classmethod
    def from_coefficients(cls, coeffs, offset=None):
        coeffs = tuple(_strip(Fraction(c) for c in p) for p in coeffs)
        if len(coeffs) < 2:
            raise DomainError('A recurrence needs order >= 1')
        if not coeffs[0]:
            raise DomainError('p_0 must not be the zero polynomial')
        return cls(coeffs=coeffs, offset=len(coeffs) - 1 if offset is None else offset)

    @property
    def order(self):
        return len(self.coeffs) - 1

    @property
    def degree(self):
        return max(len(p) - 1 for p in self.coeffs if p)

    def evaluate(self, i, n) -> Fraction:
        value = Fraction(0)
        for coefficient in reversed(self.coeffs[i]):
            value = value * n + coefficient
        return value

    def residual(self, terms, n) -> Fraction:
        return sum(self.evaluate(i, n) * terms[n - i] for i in range(self.order + 1))

    def characteristic(self) -> List[Fraction]:
        """sum_i lc(p_i) lambda^(k - i), lowest degree first, with lc taken at the top n-degree."""
        degree = self.degree
        leading = [p[degree] if len(p) > degree else Fraction(0) for p in self.coeffs]
        return list(reversed(leading))


def _ansatz_rows(terms, order, degree):
    rows = []
    for n in range(order, len(terms)):
        row = []
        for i in range(order + 1):
            value = terms[n - i]
            power = 1
            for _ in range(degree + 1):
                row.append(power * value)
                power *= n
        rows.append(row)
    return rows


def required_terms(max_order, max_degree):
    return (max_order + 1) * (max_degree + 1) + MARGIN + max_order


def ansatz_solutions(terms: Sequence[int], order, degree) -> List[PRecurrence]:
    """Recurrences of exactly this order and degree bound that all terms satisfy, one per nullspace vector."""
    if len(terms) < required_terms(order, degree):
        raise DomainError('Order {} and degree {} need at least {} terms, got {}'.format(
            order, degree, required_terms(order, degree), len(terms)))
    rows = _ansatz_rows([Fraction(t) for t in terms], order, degree)
    basis = nullspace(rows)
    log.debug('Ansatz order=%d degree=%d: %d equations, nullity %d', order, degree, len(rows), len(basis))
    return [_normalize(vector, order, degree) for vector in basis if any(vector[:degree + 1])]


def guess_p_recurrence(terms: Sequence[int], max_order, max_degree):
    """Smallest order, then smallest degree, P-recurrence consistent with all terms.

    Returns None when no recurrence fits inside the ansatz.
    """
    if max_order < 1 or max_degree < 0:
        raise DomainError('Need max_order >= 1 and max_degree >= 0')
    needed = required_terms(max_order, max_degree)
    if len(terms) < needed:
        raise DomainError('Order {} and degree {} need at least {} terms, got {}'.format(
            max_order, max_degree, needed, len(terms)))
    for order in range(1, max_order + 1):
        for degree in range(max_degree + 1):
            solutions = ansatz_solutions(terms, order, degree)
            if solutions:
                return solutions[0]
    log.info('No recurrence of order <= %d and degree <= %d found in %d terms', max_order, max_degree, len(terms))
    return None


def _normalize(vector, order, degree):
    integers = primitive_integer_vector(vector)
    coeffs = [_strip(integers[i * (degree + 1):(i + 1) * (degree + 1)]) for i in range(order + 1)]
    if coeffs[0][-1] < 0:
        coeffs = [tuple(-c for c in p) for p in coeffs]
    return PRecurrence.from_coefficients(coeffs, offset=order)


def verify_recurrence(recurrence: PRecurrence, terms: Sequence[int]) -> bool:
    start = max(recurrence.offset, recurrence.order)
    if len(terms) <= start:
        raise DomainError('No n in [{}, {}) to check the recurrence on'.format(start, len(terms)))
    return all(recurrence.residual(terms, n) == 0 for n in range(start, len(terms)))


def extend_series(recurrence: PRecurrence, terms: Sequence[int], n_target) -> List[int]:
    """Terms 0..n_target, computing the missing ones from the recurrence."""
    if len(terms) <= recurrence.order:
        raise DomainError('Need more than {} initial terms, got {}'.format(recurrence.order, len(terms)))
    values = list(terms)
    for n in range(len(values), n_target + 1):
        lead = recurrence.evaluate(0, n)
        if lead == 0:
            raise SingularLeadingCoefficientError(n)
        value = -sum(recurrence.evaluate(i, n) * values[n - i] for i in range(1, recurrence.order + 1)) / lead
        if value.denominator != 1:
            raise ConsistencyError('Recurrence produced the non-integer term {} at n={}'.format(value, n))
        values.append(int(value))
    return values[:n_target + 1]


@dataclass
class GrowthCandidate:
    value: object
    multiplicity: int
    uncertainty: object


def growth_candidates(recurrence: PRecurrence, digits=50) -> List[GrowthCandidate]:
    """Roots of the characteristic polynomial, exact linear factors first-class."""
    characteristic = recurrence.characteristic()
    if not any(characteristic):
        raise ConsistencyError('Characteristic polynomial vanishes identically')
    lam = sympy.Symbol('lambda')
    poly = sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in reversed(characteristic)], lam, domain='QQ')
    precision_bits = int(digits * 3.33) + 16
    candidates = []
    for factor, multiplicity in poly.factor_list()[1]:
        if factor.degree() == 1:
            a, b = factor.all_coeffs()
            candidates.append(GrowthCandidate(value=-sympy.Rational(b) / sympy.Rational(a),
                                              multiplicity=multiplicity, uncertainty=0))
            continue
        coefficients = [Fraction(int(c.p), int(c.q)) for c in reversed(factor.all_coeffs())]
        for root in polynomial_roots(coefficients, precision_bits):
            candidates.append(GrowthCandidate(value=root.value, multiplicity=multiplicity * root.multiplicity,
                                              uncertainty=root.uncertainty))
    candidates.sort(key=lambda candidate: -abs(complex(candidate.value)))
    return candidates


def recurrence_to_json(recurrence: PRecurrence):
    return {
        'order': recurrence.order,
        'offset': recurrence.offset,
        'degree': recurrence.degree,
        'coefficients': [['{}/{}'.format(c.numerator, c.denominator) for c in p] for p in recurrence.coeffs],
    }


def recurrence_from_json(data) -> PRecurrence:
    return PRecurrence.from_coefficients([[Fraction(c) for c in p] for p in data['coefficients']],
                                         offset=data['offset'])
