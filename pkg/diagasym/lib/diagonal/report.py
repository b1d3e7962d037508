"""diagonal.report.

Rendering of exact and high precision values into JSON-ready structures.
Rationals become "p/q" strings, mpmath numbers become decimal strings with
as many digits as the working precision supports.
"""

import json
from fractions import Fraction
from math import log10

import mpmath
import sympy


def digits_for(precision_bits):
    return max(15, int(precision_bits * log10(2)))


def rational(value):
    if value is None:
        return None
    if isinstance(value, sympy.Rational):
        value = Fraction(int(value.p), int(value.q))
    value = Fraction(value)
    return '{}/{}'.format(value.numerator, value.denominator)


def decimal(value, precision_bits=64):
    """Decimal string of an mpf, or {'re', 'im'} strings of an mpc."""
    if value is None:
        return None
    if isinstance(value, sympy.Rational) or isinstance(value, Fraction):
        return rational(value)
    digits = digits_for(precision_bits)
    if isinstance(value, mpmath.mpc):
        if value.imag == 0:
            return mpmath.nstr(value.real, digits)
        return {'re': mpmath.nstr(value.real, digits), 'im': mpmath.nstr(value.imag, digits)}
    return mpmath.nstr(mpmath.mpf(value), digits)


def estimate(value, precision_bits=64):
    """Rendering of a SingularityEstimate or a GrowthCandidate."""
    rendered = {
        'location': decimal(getattr(value, 'location', getattr(value, 'value', None)), precision_bits),
        'uncertainty': mpmath.nstr(mpmath.mpf(value.uncertainty), 5),
        'multiplicity': value.multiplicity,
    }
    if hasattr(value, 'n_supporting'):
        rendered['exponent'] = decimal(value.exponent, 64)
        rendered['n_supporting'] = value.n_supporting
        rendered['spurious'] = value.spurious
        rendered['members'] = list(value.members)
    return rendered


def dumps(data):
    return json.dumps(data, sort_keys=True, indent=2)
