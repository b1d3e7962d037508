"""diagonal.smooth_point.

Exact verification that c = (1/(d-1), ..., 1/(d-1)) is a smooth, strictly
minimal, isolated critical point of H_d, and evaluation of the leading term

    C_d(n) ~ constant * ((d - 1)^d)^n * n^((1 - d) / 2)

together with the diagnostics that compare it against computed series.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import List, Optional, Tuple

import mpmath
import numpy as np
import sympy

from .errors import ConsistencyError, DomainError
from .polynomial import elementary_symmetric, to_rational
from .series import build_denominator, build_product_factor, build_subtracted_part, build_symmetric_factor

log = logging.getLogger('diagasym')

DEFAULT_PRECISION_BITS = 200
# Bits the assembled constant may lose against its closed form.
PRECISION_SLACK = 50


def _require_smooth_range(d):
    if d < 3:
        raise DomainError('The smooth point analysis needs d >= 3, got d={}'.format(d))


def critical_point(d) -> Fraction:
    _require_smooth_range(d)
    return Fraction(1, d - 1)


def verify_on_variety(d) -> Fraction:
    """S_d(c) using e_i(k, ..., k) = C(d, i) k^i. Zero for every d >= 3."""
    c = critical_point(d)
    return 1 - sum((i - 1) * comb(d, i) * c ** i for i in range(2, d + 1))


@dataclass(frozen=True)
class PartialDerivatives:
    dH: Fraction
    ddH: Fraction
    d1dH: Fraction

    def as_dict(self):
        return {'dH': self.dH, 'ddH': self.ddH, 'd1dH': self.d1dH}


def closed_form_partials(d) -> PartialDerivatives:
    _require_smooth_range(d)
    return PartialDerivatives(
        dH=Fraction(-(d - 2) ** d * d ** (d - 2), (d - 1) ** (2 * d - 2)),
        ddH=Fraction(2 * d ** (d - 2) * (d - 2) ** (d - 1), (d - 1) ** (2 * d - 3)),
        d1dH=Fraction(4 * d ** (d - 3) * (d - 2) ** (d - 1), (d - 1) ** (2 * d - 3)),
    )


def partials_by_differentiation(d) -> PartialDerivatives:
    """Differentiate the expanded H_d and evaluate at c."""
    c = critical_point(d)
    point = [c] * d
    last = d - 1
    dH = build_denominator(d).diff(last)
    return PartialDerivatives(dH=dH.evaluate(point),
                              ddH=dH.diff(last).evaluate(point),
                              d1dH=dH.diff(0).evaluate(point))


def partials_via_symmetric(d) -> PartialDerivatives:
    """Product rule on H_d = P_d * S_d.

    S_d is multilinear, so its pure second derivative vanishes, and its first
    and mixed derivatives at c are sums of elementary symmetric polynomials of
    d - 1 and d - 2 copies of c.
    """
    c = critical_point(d)
    p_c = (1 - c) ** d
    dP = -(1 - c) ** (d - 1)
    d1dP = (1 - c) ** (d - 2)
    s_c = verify_on_variety(d)
    without_one = elementary_symmetric([c] * (d - 1))
    without_two = elementary_symmetric([c] * (d - 2))
    dS = -sum((i - 1) * without_one[i - 1] for i in range(2, d + 1))
    d1dS = -sum((i - 1) * without_two[i - 2] for i in range(2, d + 1))
    return PartialDerivatives(dH=dP * s_c + p_c * dS,
                              ddH=2 * dP * dS,
                              d1dH=d1dP * s_c + 2 * dP * dS + p_c * d1dS)


def partials_at_c(d) -> PartialDerivatives:
    """The partials of H_d at c, after checking both routes against the closed forms."""
    expected = closed_form_partials(d)
    for route in (partials_by_differentiation, partials_via_symmetric):
        computed = route(d)
        for name, value in computed.as_dict().items():
            if value != expected.as_dict()[name]:
                raise ConsistencyError('{} mismatch for d={} ({}): got {}, expected {}'.format(
                    name, d, route.__name__, value, expected.as_dict()[name]))
    return expected


def check_criticality(d) -> bool:
    """c_j * dH/dx_j(c) takes one common value for every j."""
    c = critical_point(d)
    point = [c] * d
    H = build_denominator(d)
    values = {c * H.diff(j).evaluate(point) for j in range(d)}
    return len(values) == 1


@dataclass(frozen=True)
class HessianQuantities:
    q: Fraction
    det_g: Fraction


def hessian_quantities(d) -> HessianQuantities:
    c = critical_point(d)
    partials = partials_at_c(d)
    q = 1 + (c / partials.dH) * (partials.ddH - partials.d1dH)
    if q != Fraction(d - 2, d):
        raise ConsistencyError('q mismatch for d={}: got {}, expected {}'.format(d, q, Fraction(d - 2, d)))
    det_g = d * q ** (d - 1)
    expected = Fraction((d - 2) ** (d - 1), d ** (d - 2))
    if det_g != expected:
        raise ConsistencyError('det_g mismatch for d={}: got {}, expected {}'.format(d, det_g, expected))
    if det_g == 0:
        raise ConsistencyError('Degenerate Hessian for d={}'.format(d))
    return HessianQuantities(q=q, det_g=det_g)


@dataclass(frozen=True)
class ConstantExpression:
    """pi^pi_power * prod base^exponent, with integer bases and rational exponents."""
    power_terms: Tuple[Tuple[int, Fraction], ...]
    pi_power: Fraction

    @classmethod
    def for_dimension(cls, d):
        return cls(power_terms=((d - 1, Fraction(d - 1)),
                                (2, Fraction(-(d - 1), 2)),
                                (d, Fraction(-(d - 2), 2)),
                                (d - 2, Fraction(-(3 * d - 1), 2))),
                   pi_power=Fraction(-(d - 1), 2))

    def to_sympy(self):
        expr = sympy.pi ** to_rational(self.pi_power)
        for base, exponent in self.power_terms:
            expr *= sympy.Integer(base) ** to_rational(exponent)
        return expr

    def evaluate(self):
        """Value at the current mpmath working precision."""
        value = mpmath.power(mpmath.pi, mpmath.mpf(self.pi_power.numerator) / self.pi_power.denominator)
        for base, exponent in self.power_terms:
            value *= mpmath.power(base, mpmath.mpf(exponent.numerator) / exponent.denominator)
        return value

    def __str__(self):
        return str(self.to_sympy())


def to_mpf(value):
    value = Fraction(value)
    return mpmath.mpf(value.numerator) / value.denominator


def agreement_bits(value, reference, precision_bits):
    difference = abs(value - reference)
    if difference == 0:
        return precision_bits
    scale = abs(reference) or 1
    return max(0, min(precision_bits, int(-mpmath.log(difference / scale, 2))))


@dataclass
class AsymptoticForm:
    d: int
    growth: int
    poly_exponent: Fraction
    L0: Fraction
    det_g: Fraction
    constant_exact: ConstantExpression
    constant: mpmath.mpf
    precision_bits: int
    agreement_bits: int


def leading_constant(d, precision_bits=DEFAULT_PRECISION_BITS) -> AsymptoticForm:
    """Assemble the leading constant and check it against its closed form."""
    c = critical_point(d)
    partials = partials_at_c(d)
    hessian = hessian_quantities(d)
    L0 = c ** d / (-c * partials.dH)
    expected = Fraction((d - 1) ** (d - 1), d ** (d - 2) * (d - 2) ** d)
    if L0 != expected:
        raise ConsistencyError('L0 mismatch for d={}: got {}, expected {}'.format(d, L0, expected))
    exact = ConstantExpression.for_dimension(d)
    with mpmath.workprec(precision_bits):
        assembled = to_mpf(L0) / mpmath.sqrt((2 * mpmath.pi) ** (d - 1) * to_mpf(hessian.det_g))
        closed = exact.evaluate()
        bits = agreement_bits(assembled, closed, precision_bits)
    if bits < precision_bits - PRECISION_SLACK:
        raise ConsistencyError('Leading constant for d={} agrees with its closed form to {} bits only'.format(d, bits))
    return AsymptoticForm(d=d, growth=(d - 1) ** d, poly_exponent=Fraction(1 - d, 2), L0=L0,
                          det_g=hessian.det_g, constant_exact=exact, constant=assembled,
                          precision_bits=precision_bits, agreement_bits=bits)


def lattice_index(vectors) -> int:
    """Index of the lattice spanned by integer vectors in Z^n, 0 when it is not full rank.

    Column by column Euclidean row reduction; the index is the product of the
    absolute values of the pivots.
    """
    rows = [list(vector) for vector in vectors]
    if not rows:
        return 0
    dim = len(rows[0])
    index = 1
    top = 0
    for col in range(dim):
        candidates = [row for row in rows[top:] if row[col]]
        if not candidates:
            return 0
        while len(candidates) > 1:
            pivot = min(candidates, key=lambda row: abs(row[col]))
            for row in candidates:
                if row is not pivot:
                    quotient = row[col] // pivot[col]
                    for j in range(col, dim):
                        row[j] -= quotient * pivot[j]
            candidates = [row for row in candidates if row[col]]
        pivot = candidates[0]
        index *= abs(pivot[col])
        rows = rows[:top] + [pivot] + [row for row in rows[top:] if row is not pivot]
        top += 1
    return index


def check_aperiodic(polynomial) -> bool:
    """The exponents of the nonconstant monomials span Z^d."""
    exponents = polynomial.nonconstant_exponents()
    if not exponents:
        raise DomainError('A constant polynomial has no exponent lattice')
    return lattice_index(exponents) == 1


def minimality_value(point) -> Fraction:
    """sum_{i>=2} (i - 1) e_i(point), which is 1 at c and below 1 inside the box."""
    esp = elementary_symmetric(point)
    return sum((i - 1) * esp[i] for i in range(2, len(point) + 1))


@dataclass
class MinimalityReport:
    d: int
    n_samples: int
    seed: int
    passed: int
    value_at_c: Fraction
    max_value: Fraction
    max_point: List[Fraction] = field(default_factory=list)

    @property
    def ok(self):
        return self.passed == self.n_samples and self.value_at_c == 1


def check_minimality_samples(d, n_samples, seed) -> MinimalityReport:
    """Sample y in (0, c_1] x ... x (0, c_d] and evaluate the subtracted part exactly.

    This is numerical evidence, not a proof: the draws are binary floats
    converted exactly to rationals.
    """
    c = critical_point(d)
    if n_samples < 1:
        raise DomainError('n_samples must be positive, got {}'.format(n_samples))
    rng = np.random.default_rng(seed)
    passed = 0
    max_value = None
    max_point = []
    for _ in range(n_samples):
        point = [c] * d
        while all(coordinate == c for coordinate in point):
            point = [c * Fraction(float(draw)) for draw in 1.0 - rng.random(d)]
        value = minimality_value(point)
        if value < 1:
            passed += 1
        else:
            log.warning('Minimality sample for d=%d reached %s at %s', d, value, point)
        if max_value is None or value > max_value:
            max_value = value
            max_point = point
    return MinimalityReport(d=d, n_samples=n_samples, seed=seed, passed=passed,
                            value_at_c=minimality_value([c] * d), max_value=max_value, max_point=max_point)


def isolation_identities(d):
    """The univariate restrictions of S_d and P_d to the diagonal x_i = y."""
    c = critical_point(d)
    y = sympy.Symbol('y')
    restricted = sympy.Poly(1 - sum((i - 1) * sympy.binomial(d, i) * y ** i for i in range(2, d + 1)), y, domain='QQ')
    factored = sympy.Poly((y + 1) ** (d - 1) * (1 - (d - 1) * y), y, domain='QQ')
    positive = [root for root in factored.real_roots() if root > 0]
    product = sum(to_rational(coefficient) * y ** sum(exponent)
                  for exponent, coefficient in build_product_factor(d).terms.items())
    symmetric = sum(to_rational(coefficient) * y ** sum(exponent)
                    for exponent, coefficient in build_symmetric_factor(d).terms.items())
    return {
        's_identity': restricted == factored,
        's_restriction': sympy.Poly(symmetric, y, domain='QQ') == restricted,
        'unique_positive_root': positive == [to_rational(c)],
        'p_identity': sympy.Poly(product, y, domain='QQ') == sympy.Poly((1 - y) ** d, y, domain='QQ'),
    }


def check_isolation_identity(d) -> bool:
    """1 - sum (i-1) C(d,i) y^i = (y + 1)^(d-1) (1 - (d-1) y), with 1/(d-1) its only positive root."""
    identities = isolation_identities(d)
    return identities['s_identity'] and identities['unique_positive_root']


def verify_subtracted_coefficients(d) -> bool:
    """Coefficients of the subtracted part are |T| - 1 on each squarefree monomial x_T."""
    return all(coefficient == sum(exponent) - 1 and max(exponent) == 1
               for exponent, coefficient in build_subtracted_part(d).terms.items())


@dataclass
class RatioRow:
    n: int
    ratio: mpmath.mpf
    richardson: Optional[mpmath.mpf]
    richardson2: Optional[mpmath.mpf]
    estimate: mpmath.mpf


@dataclass
class RatioDiagnostics:
    d: int
    rows: List[RatioRow]
    constant: mpmath.mpf
    constant_estimate: mpmath.mpf
    tolerance: float
    converging: bool
    precision_bits: int

    @property
    def final_ratio(self):
        return self.rows[-1].ratio

    @property
    def final_richardson(self):
        return self.rows[-1].richardson

    @property
    def final_richardson2(self):
        return self.rows[-1].richardson2


def _second_order(values, n):
    """Cancel the 1/n and 1/n^2 corrections of values[-3:], taken at n - 2, n - 1 and n."""
    return (n * n * values[-1] - 2 * (n - 1) ** 2 * values[-2] + (n - 2) ** 2 * values[-3]) / 2


def ratio_diagnostics(series, d, precision_bits=DEFAULT_PRECISION_BITS, tolerance=0.1) -> RatioDiagnostics:
    """r_n = C(n) / (constant rho^n n^theta) with first and second order Richardson extrapolation.

    Flags a mismatch when the last ratio is farther than tolerance from 1 or
    when extrapolation moves it away from 1. The constant estimate is the
    second order extrapolation of C(n) / (rho^n n^theta).
    """
    if len(series) < 10:
        raise DomainError('Ratio diagnostics need at least 10 terms, got {}'.format(len(series)))
    form = leading_constant(d, precision_bits)
    rows = []
    with mpmath.workprec(precision_bits):
        theta = mpmath.mpf(form.poly_exponent.numerator) / form.poly_exponent.denominator
        for n in range(1, len(series)):
            estimate = mpmath.mpf(series[n]) / (mpmath.mpf(form.growth) ** n * mpmath.power(n, theta))
            ratio = estimate / form.constant
            richardson = richardson2 = None
            if rows:
                richardson = n * ratio - (n - 1) * rows[-1].ratio
            if len(rows) >= 2:
                richardson2 = _second_order([rows[-2].ratio, rows[-1].ratio, ratio], n)
            rows.append(RatioRow(n=n, ratio=ratio, richardson=richardson, richardson2=richardson2, estimate=estimate))
        last = rows[-1]
        constant_estimate = _second_order([row.estimate for row in rows[-3:]], last.n)
        raw_error = abs(last.ratio - 1)
        converging = bool(raw_error <= tolerance and abs(last.richardson - 1) <= raw_error)
    if not converging:
        log.warning('Ratio diagnostics for d=%d do not approach 1: r_N=%s', d, mpmath.nstr(last.ratio, 10))
    return RatioDiagnostics(d=d, rows=rows, constant=form.constant, constant_estimate=constant_estimate,
                            tolerance=tolerance, converging=converging, precision_bits=precision_bits)


def estimate_constant(series, d, precision_bits=DEFAULT_PRECISION_BITS):
    """Second order Richardson estimate of C(n) / (rho^n n^theta) at the last available n."""
    return ratio_diagnostics(series, d, precision_bits).constant_estimate


@dataclass
class SmoothPointReport:
    d: int
    c: Fraction
    s_at_c: Fraction
    partials: PartialDerivatives
    hessian: HessianQuantities
    L0: Fraction
    aperiodic: bool
    critical: bool
    isolated: bool
    minimality: MinimalityReport
    form: AsymptoticForm
    checks: dict = field(default_factory=dict)
    failures: List[str] = field(default_factory=list)

    @property
    def passed(self):
        return not self.failures


def smooth_point_report(d, n_samples=1000, seed=0, precision_bits=DEFAULT_PRECISION_BITS) -> SmoothPointReport:
    """Run every exact check and the sampled minimality evidence for one d.

    Raises ConsistencyError from the exact routes; the caller reports which
    quantity disagreed.
    """
    c = critical_point(d)
    s_at_c = verify_on_variety(d)
    partials = partials_at_c(d)
    hessian = hessian_quantities(d)
    form = leading_constant(d, precision_bits)
    aperiodic = check_aperiodic(build_subtracted_part(d))
    critical = check_criticality(d)
    isolated = check_isolation_identity(d)
    minimality = check_minimality_samples(d, n_samples, seed)
    checks = {
        'on_variety': 'proof',
        'partials': 'proof',
        'hessian': 'proof',
        'critical': 'proof',
        'aperiodic': 'proof',
        'isolation': 'proof',
        'leading_constant': 'proof',
        'minimality': 'evidence',
    }
    failures = []
    if s_at_c != 0:
        failures.append('on_variety')
    if not aperiodic:
        failures.append('aperiodic')
    if not critical:
        failures.append('critical')
    if not isolated:
        failures.append('isolation')
    if not minimality.ok:
        failures.append('minimality')
    return SmoothPointReport(d=d, c=c, s_at_c=s_at_c, partials=partials, hessian=hessian, L0=form.L0,
                             aperiodic=aperiodic, critical=critical, isolated=isolated, minimality=minimality,
                             form=form, checks=checks, failures=failures)
