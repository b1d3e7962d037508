"""diagonal.roots.

Roots of exact rational univariate polynomials at a requested mpmath
precision: squarefree factorization with sympy, eigenvalues of the
companion matrix of each factor, then Newton polishing.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence

import mpmath
import sympy

from .errors import DomainError
from .polynomial import to_fraction, to_rational

log = logging.getLogger('diagasym')

GUARD_BITS = 32
NEWTON_STEPS = 100


@dataclass
class Root:
    value: object
    multiplicity: int
    uncertainty: object

    @property
    def is_real(self):
        return isinstance(self.value, mpmath.mpf)


def _to_mpf(value):
    return mpmath.mpf(value.numerator) / value.denominator


def _mp_coefficients(coefficients):
    """Fractions lowest degree first to mpf highest degree first, as mpmath.polyval wants."""
    return [_to_mpf(c) for c in reversed(coefficients)]


def _newton(coefficients, start, precision_bits):
    highest_first = _mp_coefficients(coefficients)
    root = start
    step = mpmath.inf
    tolerance = mpmath.mpf(2) ** (-precision_bits)
    for _ in range(NEWTON_STEPS):
        value, derivative = mpmath.polyval(highest_first, root, derivative=True)
        if derivative == 0:
            break
        step = value / derivative
        root -= step
        if abs(step) <= tolerance * max(abs(root), 1):
            break
    value, derivative = mpmath.polyval(highest_first, root, derivative=True)
    uncertainty = abs(value / derivative) if derivative != 0 else abs(step)
    return root, max(uncertainty, tolerance * abs(root))


def _eigen_estimates(coefficients):
    degree = len(coefficients) - 1
    lead = coefficients[-1]
    if degree == 1:
        return [-_to_mpf(coefficients[0] / lead)]
    companion = mpmath.zeros(degree, degree)
    for i in range(1, degree):
        companion[i, i - 1] = 1
    for i in range(degree):
        ratio = coefficients[i] / lead
        companion[i, degree - 1] = -_to_mpf(ratio)
    try:
        return list(mpmath.eig(companion, left=False, right=False))
    except (RuntimeError, mpmath.libmp.NoConvergence):
        log.warning('Companion eigenvalues did not converge for degree %d, using polyroots', degree)
        return list(mpmath.polyroots(_mp_coefficients(coefficients), maxsteps=200, extraprec=2 * degree * 32))


def simple_roots(coefficients: Sequence[Fraction], precision_bits) -> List[Root]:
    """Roots of a squarefree polynomial given lowest degree first."""
    coefficients = [Fraction(c) for c in coefficients]
    if len(coefficients) < 2:
        return []
    roots = []
    with mpmath.workprec(precision_bits + GUARD_BITS):
        for estimate in _eigen_estimates(coefficients):
            root, uncertainty = _newton(coefficients, mpmath.mpc(estimate), precision_bits)
            if abs(root.imag) <= uncertainty:
                root, uncertainty = _newton(coefficients, mpmath.mpf(root.real), precision_bits)
            roots.append(Root(value=root, multiplicity=1, uncertainty=uncertainty))
    return roots


def polynomial_roots(coefficients: Sequence[Fraction], precision_bits=256) -> List[Root]:
    """All roots with multiplicities, ordered by modulus, of a polynomial given lowest degree first."""
    coefficients = [Fraction(c) for c in coefficients]
    while coefficients and coefficients[-1] == 0:
        coefficients.pop()
    if not coefficients:
        raise DomainError('The zero polynomial has no finite root set')
    x = sympy.Symbol('x')
    poly = sympy.Poly([to_rational(c) for c in reversed(coefficients)], x, domain='QQ')
    roots = []
    for factor, multiplicity in poly.sqf_list()[1]:
        factor_coefficients = [to_fraction(c) for c in reversed(factor.all_coeffs())]
        for root in simple_roots(factor_coefficients, precision_bits):
            root.multiplicity = multiplicity
            roots.append(root)
    roots.sort(key=lambda root: (abs(root.value), mpmath.re(root.value), mpmath.im(root.value)))
    return roots
