"""diagonal.approximants.

Differential approximants

    Q_K F^(K) + ... + Q_1 F' + Q_0 F = P

fitted exactly to a truncated series, the singularities they predict (the
roots of Q_K) and the pooling of those predictions over a family of
approximants.
"""

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import perm
from typing import List, Optional, Sequence, Tuple

import mpmath
import psutil

from . import report
from .errors import DegenerateFitError, DegenerateIndicialError, DomainError
from .linalg import nullspace
from .roots import polynomial_roots

log = logging.getLogger('diagasym')

DEFAULT_PRECISION_BITS = 256
DEFAULT_RADIUS = 1e-3
FAMILY_ORDERS = (1, 2, 3)
FAMILY_OFFSETS = (-1, 0, 1)
FAMILY_INHOMOGENEOUS = (0, 1, 2)


@dataclass(frozen=True)
class DifferentialApproximant:
    """q_polys[k] is Q_k lowest degree first; inhom is P."""
    order: int
    q_polys: Tuple[Tuple[Fraction, ...], ...]
    inhom: Tuple[Fraction, ...]
    terms_used: int

    @property
    def degrees(self):
        return tuple(len(q) - 1 for q in self.q_polys)

    @property
    def inhom_degree(self):
        return len(self.inhom) - 1


def required_terms(order, degrees, inhom_degree):
    """Series terms the fit consumes: one equation less than unknowns, plus the order."""
    unknowns = sum(degree + 1 for degree in degrees) + inhom_degree + 1
    return unknowns - 1 + order


def fit_approximant(terms: Sequence, order, degrees, inhom_degree) -> DifferentialApproximant:
    """Match the coefficients of x^0, ..., x^(L-1) of Q_K F^(K) + ... + Q_0 F - P."""
    degrees = tuple(degrees)
    if order < 1 or len(degrees) != order + 1 or min(degrees) < 0 or inhom_degree < 0:
        raise DomainError('Bad approximant shape: order={}, degrees={}, inhom_degree={}'.format(
            order, degrees, inhom_degree))
    needed = required_terms(order, degrees, inhom_degree)
    if len(terms) < needed:
        raise DomainError('Approximant of order {} with degrees {} and inhom degree {} needs {} terms, got {}'.format(
            order, degrees, inhom_degree, needed, len(terms)))
    conditions = needed - order
    rows = []
    for j in range(conditions):
        row = []
        for k, degree in enumerate(degrees):
            for i in range(degree + 1):
                m = j - i
                row.append(perm(m + k, k) * terms[m + k] if m >= 0 else 0)
        row.extend(-1 if i == j else 0 for i in range(inhom_degree + 1))
        rows.append(row)
    basis = nullspace(rows)
    if len(basis) != 1:
        raise DegenerateFitError('Approximant {}/{}/{} has a {}-dimensional solution space'.format(
            order, degrees, inhom_degree, len(basis)))
    vector = basis[0]
    q_polys = []
    position = 0
    for degree in degrees:
        q_polys.append(vector[position:position + degree + 1])
        position += degree + 1
    inhom = vector[position:]
    pivot = next((c for c in q_polys[order] if c != 0), None)
    if pivot is None:
        raise DegenerateFitError('Q_{} vanishes for approximant {}/{}/{}'.format(order, order, degrees, inhom_degree))
    return DifferentialApproximant(order=order,
                                   q_polys=tuple(tuple(c / pivot for c in q) for q in q_polys),
                                   inhom=tuple(c / pivot for c in inhom),
                                   terms_used=needed)


@dataclass
class SingularityEstimate:
    location: object
    uncertainty: object
    exponent: Optional[object] = None
    n_supporting: int = 1
    multiplicity: int = 1
    spurious: bool = False
    members: List[int] = field(default_factory=list)

    def is_positive_real(self, radius=DEFAULT_RADIUS):
        location = mpmath.mpc(self.location)
        return location.real > 0 and abs(location.imag) <= max(self.uncertainty, radius * abs(location))


def singularities(approximant: DifferentialApproximant, precision_bits=DEFAULT_PRECISION_BITS) -> List[SingularityEstimate]:
    """Roots of Q_K with their multiplicities and Newton uncertainties."""
    leading = approximant.q_polys[approximant.order]
    if not any(leading[1:]):
        return []
    return [SingularityEstimate(location=root.value, uncertainty=root.uncertainty, multiplicity=root.multiplicity)
            for root in polynomial_roots(leading, precision_bits)]


def _polyval(coefficients, x):
    return mpmath.polyval([mpmath.mpf(c.numerator) / c.denominator for c in reversed(coefficients)], x)


def exponent_at(approximant: DifferentialApproximant, location, precision_bits=DEFAULT_PRECISION_BITS):
    """Critical exponent K - 1 - Q_{K-1}(x_c) / Q_K'(x_c) at a simple root x_c of Q_K."""
    order = approximant.order
    leading = approximant.q_polys[order]
    derivative = [i * c for i, c in enumerate(leading)][1:]
    with mpmath.workprec(precision_bits):
        slope = _polyval(derivative, location) if derivative else mpmath.mpf(0)
        scale = sum(abs(mpmath.mpf(c.numerator) / c.denominator) * abs(location) ** i for i, c in enumerate(derivative))
        if scale == 0 or abs(slope) <= scale * mpmath.mpf(2) ** (-precision_bits // 2):
            raise DegenerateIndicialError('Q_{}\' vanishes at {}'.format(order, mpmath.nstr(location, 15)))
        exponent = order - 1 - _polyval(approximant.q_polys[order - 1], location) / slope
        if isinstance(exponent, mpmath.mpc) and abs(exponent.imag) <= abs(exponent) * mpmath.mpf(2) ** (-precision_bits // 2):
            exponent = exponent.real
    return exponent


def pool_estimates(approximants: Sequence[DifferentialApproximant], radius=DEFAULT_RADIUS,
                   precision_bits=DEFAULT_PRECISION_BITS) -> List[SingularityEstimate]:
    """Cluster the singularities of several approximants.

    Roots are visited by (real part, imaginary part, approximant index) and
    join the first cluster whose seed lies within radius * |seed|. A cluster
    reports the mean location, the largest deviation from it as uncertainty,
    the mean exponent and the number of distinct approximants behind it.
    """
    if len(approximants) < 3:
        raise DomainError('Pooling needs at least 3 approximants, got {}'.format(len(approximants)))
    entries = []
    with mpmath.workprec(precision_bits):
        for index, approximant in enumerate(approximants):
            for estimate in singularities(approximant, precision_bits):
                exponent = None
                if estimate.multiplicity == 1:
                    try:
                        exponent = exponent_at(approximant, estimate.location, precision_bits)
                    except DegenerateIndicialError as e:
                        log.debug('Skipping exponent: %s', e)
                location = mpmath.mpc(estimate.location)
                entries.append((location, index, exponent, estimate.multiplicity))
        entries.sort(key=lambda entry: (entry[0].real, entry[0].imag, entry[1]))
        clusters = []
        for entry in entries:
            for cluster in clusters:
                seed = cluster[0][0]
                if abs(entry[0] - seed) <= radius * abs(seed):
                    cluster.append(entry)
                    break
            else:
                clusters.append([entry])
        estimates = []
        for cluster in clusters:
            mean = mpmath.fsum(entry[0] for entry in cluster) / len(cluster)
            if mean.imag == 0:
                mean = mean.real
            exponents = [entry[2] for entry in cluster if entry[2] is not None]
            members = sorted({entry[1] for entry in cluster})
            estimates.append(SingularityEstimate(
                location=mean,
                uncertainty=max(abs(entry[0] - mean) for entry in cluster),
                exponent=mpmath.fsum(exponents) / len(exponents) if exponents else None,
                n_supporting=len(members),
                multiplicity=max(entry[3] for entry in cluster),
                spurious=2 * len(members) < len(approximants),
                members=members))
    estimates.sort(key=lambda estimate: abs(estimate.location))
    return estimates


def subdominance_report(estimates: Sequence[SingularityEstimate], d=None, radius=DEFAULT_RADIUS):
    """Look for a closest positive real singularity that is resolved worse than a farther one.

    That ordering is the signature of a weakly represented subdominant
    singularity sitting between the origin and the dominant one.
    """
    if len(estimates) < 2:
        raise DomainError('Subdominance needs at least 2 pooled estimates, got {}'.format(len(estimates)))
    candidates = sorted([estimate for estimate in estimates if not estimate.spurious and estimate.is_positive_real(radius)],
                        key=lambda estimate: abs(estimate.location))
    report = {'signature': False, 'candidates': candidates, 'closest': None, 'best_resolved': None}
    if len(candidates) < 2:
        return report
    closest = candidates[0]
    best = min(candidates, key=lambda estimate: estimate.uncertainty)
    report['closest'] = closest
    report['best_resolved'] = best
    report['signature'] = any(closest.uncertainty > other.uncertainty for other in candidates[1:])
    if d is not None:
        expected = {'subdominant': Fraction(1, (2 * d - 3) ** (d - 1)), 'dominant': Fraction(1, (d - 1) ** d)}
        report['expected'] = expected
        report['agreement_digits'] = {
            'subdominant': agreement_digits(closest.location, expected['subdominant']),
            'dominant': agreement_digits(best.location, expected['dominant']),
        }
    return report


def agreement_digits(value, reference, precision_bits=DEFAULT_PRECISION_BITS):
    with mpmath.workprec(precision_bits):
        reference = mpmath.mpf(reference.numerator) / reference.denominator
        difference = abs(mpmath.mpc(value) - reference)
        if difference == 0:
            return int(mpmath.mp.dps)
        return max(0, int(-mpmath.log10(difference / abs(reference))))


def family_shapes(n_terms, orders=FAMILY_ORDERS, offsets=FAMILY_OFFSETS, inhom_degrees=FAMILY_INHOMOGENEOUS):
    """(order, degrees, inhom_degree) of the largest balanced approximants fitting n_terms.

    All Q_k share one degree D except Q_K, whose degree is D + offset.
    """
    shapes = []
    for order in orders:
        for inhom_degree in inhom_degrees:
            for offset in offsets:
                # required_terms = (order + 1)(D + 1) + offset + inhom_degree + order
                budget = n_terms - offset - inhom_degree - order
                degree = budget // (order + 1) - 1
                if degree < 0 or degree + offset < 0:
                    continue
                degrees = (degree,) * order + (degree + offset,)
                shapes.append((order, degrees, inhom_degree))
    return shapes


def _fit_shape(job):
    terms, (order, degrees, inhom_degree) = job
    try:
        return fit_approximant(terms, order, degrees, inhom_degree)
    except DegenerateFitError as e:
        log.warning('Skipping approximant: %s', e)
        return None


def approximant_family(terms: Sequence, workers=1, **kwargs) -> List[DifferentialApproximant]:
    """Fit the default family, skipping degenerate members; order of the result is deterministic."""
    terms = list(terms)
    shapes = family_shapes(len(terms), **kwargs)
    jobs = [(terms, shape) for shape in shapes]
    if workers == 0:
        workers = psutil.cpu_count()
    log.info('Fitting %d differential approximants to %d terms with %d workers', len(jobs), len(terms), workers)
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as executor:
            fitted = list(executor.map(_fit_shape, jobs))
    else:
        fitted = [_fit_shape(job) for job in jobs]
    return [approximant for approximant in fitted if approximant is not None]


def _member(approximant, precision_bits):
    return {'order': approximant.order,
            'degrees': list(approximant.degrees),
            'inhom_degree': approximant.inhom_degree,
            'roots': [report.estimate(root, precision_bits) for root in singularities(approximant, precision_bits)]}


def analyze_series(terms: Sequence, d=None, radius=DEFAULT_RADIUS, precision_bits=DEFAULT_PRECISION_BITS,
                   workers=1, **kwargs):
    """Family fit, pooling and subdominance as one JSON-ready record.

    Members that fail to fit are left out; a family too small to pool gives
    null clusters instead of an error. Every cluster is listed, spurious
    ones carry their flag.
    """
    family = approximant_family(terms, workers=workers, **kwargs)
    result = {
        'n_terms': len(terms),
        'family': {
            'orders': list(kwargs.get('orders', FAMILY_ORDERS)),
            'offsets': list(kwargs.get('offsets', FAMILY_OFFSETS)),
            'inhom_degrees': list(kwargs.get('inhom_degrees', FAMILY_INHOMOGENEOUS)),
            'note': 'a subset of Q_K degree offsets -2..2 and inhomogeneous degrees 0..4',
        },
        'family_size': len(family),
        'members': [_member(approximant, precision_bits) for approximant in family],
        'radius': radius,
        'uncertainty': 'largest deviation from the cluster mean',
        'clusters': None,
        'subdominance': None,
    }
    if len(family) < 3:
        log.warning('Only %d approximants could be fitted, not pooling', len(family))
        return result
    estimates = pool_estimates(family, radius=radius, precision_bits=precision_bits)
    spurious = [estimate for estimate in estimates if estimate.spurious]
    if spurious:
        log.debug('%d of %d clusters are supported by fewer than half of the family', len(spurious), len(estimates))
    result['clusters'] = [report.estimate(estimate, precision_bits) for estimate in estimates]
    if d is not None:
        result['dominant_check'] = dominant_check(estimates, d)
    if len(estimates) >= 2:
        subdominance = subdominance_report(estimates, d=d, radius=radius)
        rendered = {
            'signature': subdominance['signature'],
            'closest': report.estimate(subdominance['closest'], precision_bits) if subdominance['closest'] else None,
            'best_resolved': report.estimate(subdominance['best_resolved'], precision_bits) if subdominance['best_resolved'] else None,
        }
        if 'expected' in subdominance:
            rendered['expected'] = {name: report.rational(value) for name, value in subdominance['expected'].items()}
            rendered['agreement_digits'] = subdominance['agreement_digits']
        result['subdominance'] = rendered
    return result


def dominant_check(estimates: Sequence[SingularityEstimate], d):
    """Supported cluster closest to 1/(d-1)^d and the digits it shares with it."""
    expected = Fraction(1, (d - 1) ** d)
    supported = [estimate for estimate in estimates if not estimate.spurious]
    if not supported:
        return {'expected': report.rational(expected), 'cluster': None, 'agreement_digits': 0}
    target = mpmath.mpf(expected.numerator) / expected.denominator
    closest = min(supported, key=lambda estimate: abs(mpmath.mpc(estimate.location) - target))
    return {'expected': report.rational(expected),
            'cluster': report.estimate(closest),
            'agreement_digits': agreement_digits(closest.location, expected)}
