"""diagonal.series.

Coefficients a_d(m) of the tuple-count generating function A_d = G / H_d and
its cubical diagonal C_d(n) = a_d(n, ..., n).

Two independent evaluators are provided: the kernel recurrence driven by the
coefficients of the denominator, and a direct expansion of the product
formula for a single multi-index. The first one is used for series, the
second one as an oracle.
"""

import functools
import itertools
import logging
import os
from math import comb, log2
from types import MappingProxyType

import psutil
import sympy
from sympy import multinomial_coefficients

from .errors import ConsistencyError, DomainError, ResourceError
from .polynomial import SparsePolynomial, check_index, sorted_key, variables

log = logging.getLogger('diagasym')

memory_fraction = float(os.getenv('DIAGASYM_MEMORY_FRACTION')) if os.getenv('DIAGASYM_MEMORY_FRACTION') else 0.5

MODES = ('reduced', 'direct')


def _check_dimension(d):
    if d < 2:
        raise DomainError('The denominator H_d needs d >= 2, got d={}'.format(d))


@functools.lru_cache(maxsize=None)
def build_subtracted_part(d) -> SparsePolynomial:
    """sum_{i=2}^{d} (i - 1) e_i(x_1, ..., x_d)."""
    _check_dimension(d)
    gens = variables(d)
    expr = sympy.Add(*[(i - 1) * sympy.Add(*[sympy.Mul(*subset) for subset in itertools.combinations(gens, i)])
                       for i in range(2, d + 1)])
    return SparsePolynomial.from_expr(expr, gens)


@functools.lru_cache(maxsize=None)
def build_symmetric_factor(d) -> SparsePolynomial:
    """S_d = 1 - sum_{i>=2} (i - 1) e_i."""
    _check_dimension(d)
    return SparsePolynomial.from_expr(1 - build_subtracted_part(d).poly.as_expr(), variables(d))


@functools.lru_cache(maxsize=None)
def build_product_factor(d) -> SparsePolynomial:
    """P_d = prod (1 - x_i)."""
    _check_dimension(d)
    gens = variables(d)
    return SparsePolynomial.from_expr(sympy.Mul(*[1 - gen for gen in gens]), gens)


@functools.lru_cache(maxsize=None)
def build_denominator(d) -> SparsePolynomial:
    """H_d = P_d * S_d, expanded."""
    log.debug('Expanding H_%d', d)
    return build_product_factor(d) * build_symmetric_factor(d)


def build_numerator(d) -> SparsePolynomial:
    gens = variables(d)
    return SparsePolynomial.from_expr(sympy.Mul(*gens), gens)


def kernel_terms(d, mode='reduced'):
    """Return the nonconstant terms (exponent, integer coefficient) of the kernel.

    In 'direct' mode the kernel is H_d itself and the numerator is
    x_1 ... x_d. In 'reduced' mode the kernel is S_d, which turns the
    numerator into G / P_d, whose coefficients are 1 on every index with
    all entries positive.
    """
    if mode == 'direct':
        kernel = build_denominator(d)
    elif mode == 'reduced':
        kernel = build_symmetric_factor(d)
    else:
        raise DomainError('Unknown series mode {!r}, expected one of {}'.format(mode, ', '.join(MODES)))
    terms = kernel.terms
    if terms.get((0,) * d) != 1:
        raise ConsistencyError('Kernel constant term is not 1 for d={}'.format(d))
    result = []
    for exponent, coefficient in terms.items():
        if not any(exponent):
            continue
        if coefficient.denominator != 1:
            raise ConsistencyError('Kernel coefficient {} at {} is not an integer'.format(coefficient, exponent))
        result.append((exponent, int(coefficient)))
    result.sort()
    return result


def _entry_bytes(d, n_max):
    # key tuple, dict slot and an integer of about n_max * d * log2(d - 1) bits
    value_bits = n_max * d * max(log2(d - 1), 1)
    return 120 + 8 * d + int(value_bits / 8)


def _check_memory(d, n_max, entries, what):
    needed = entries * _entry_bytes(d, n_max)
    budget = psutil.virtual_memory().available * memory_fraction
    log.debug('%s for d=%d, n_max=%d: %d entries, about %d MiB (budget %d MiB)',
              what, d, n_max, entries, needed >> 20, int(budget) >> 20)
    if needed > budget:
        raise ResourceError('{} for d={}, n_max={} needs about {} MiB, the budget is {} MiB'.format(
            what, d, n_max, needed >> 20, int(budget) >> 20))


def _levels(d, n_max, mode):
    """Yield (k, level) where level maps every sorted index with minimum k to a_d.

    An entry of level k only depends on its own level (on keys that come
    earlier in the iteration order) and on the levels k - 1, ..., k - w, where
    w is the largest exponent in the kernel. Only those levels are retained.
    """
    terms = kernel_terms(d, mode)
    width = max(max(exponent) for exponent, _ in terms)
    first = 1 if mode == 'reduced' else 0
    ones = (1,) * d
    window = {}
    for k in range(first, n_max + 1):
        level = {}
        window[k] = level
        for rest in itertools.combinations_with_replacement(range(k, n_max + 1), d - 1):
            index = rest[::-1] + (k,)
            if mode == 'reduced':
                total = 1
            else:
                total = 1 if index == ones else 0
            for exponent, coefficient in terms:
                shifted = tuple(sorted([entry - step for entry, step in zip(index, exponent)], reverse=True))
                low = shifted[-1]
                if low < first:
                    continue
                total -= coefficient * window[low][shifted]
            level[index] = total
        yield k, level
        window.pop(k - width, None)


class CoefficientTable():
    """Coefficients a_d(m) for 0 <= m_i <= n_max, stored by sorted index."""

    def __init__(self, d, n_max, values):
        self.d = d
        self.n_max = n_max
        self._values = values

    @property
    def values(self):
        return MappingProxyType(self._values)

    def __getitem__(self, index):
        index = tuple(index)
        if len(index) != self.d:
            raise DomainError('Expected an index of length {}, got {}'.format(self.d, index))
        check_index(index)
        if max(index) > self.n_max:
            raise DomainError('Index {} lies outside the table (n_max={})'.format(index, self.n_max))
        key = sorted_key(index)
        if key[-1] == 0:
            return 0
        return self._values[key]

    def __len__(self):
        return len(self._values)

    def diagonal(self):
        return [self[(n,) * self.d] for n in range(self.n_max + 1)]


def gf_coefficients(d, n_max, mode='reduced') -> CoefficientTable:
    """All a_d(m) with 0 <= m_i <= n_max, computed by the kernel recurrence."""
    _check_dimension(d)
    if n_max < 0:
        raise DomainError('n_max must be nonnegative, got {}'.format(n_max))
    _check_memory(d, n_max, comb(n_max + d, d), 'Coefficient table')
    values = {}
    for _, level in _levels(d, n_max, mode):
        values.update(level)
    log.debug('Computed %d coefficients for d=%d, n_max=%d', len(values), d, n_max)
    return CoefficientTable(d, n_max, values)


def cubical_series(d, n_max, mode='reduced'):
    """[C_d(0), ..., C_d(n_max)], keeping only the levels the recurrence still needs."""
    _check_dimension(d)
    if n_max < 0:
        raise DomainError('n_max must be nonnegative, got {}'.format(n_max))
    width = max(max(exponent) for exponent, _ in kernel_terms(d, mode))
    _check_memory(d, n_max, (width + 1) * comb(n_max + d - 1, d - 1), 'Level window')
    series = [0] * (n_max + 1)
    for k, level in _levels(d, n_max, mode):
        series[k] = level[(k,) * d]
        log.debug('C_%d(%d) has %d digits', d, k, len(str(series[k])))
    check_monotone(series, d)
    return series


def check_monotone(series, d=None):
    """Log a warning when C_d(n) fails to grow; returns False in that case."""
    for n in range(2, len(series)):
        if series[n] <= series[n - 1]:
            log.warning('Series for d=%s is not increasing at n=%d', d, n)
            return False
    return True


def _truncated_multiply(left, right, caps):
    product = {}
    for exp_left, coef_left in left.items():
        for exp_right, coef_right in right.items():
            exponent = tuple(a + b for a, b in zip(exp_left, exp_right))
            if any(e > cap for e, cap in zip(exponent, caps)):
                continue
            product[exponent] = product.get(exponent, 0) + coef_left * coef_right
    return product


def _product_factor(i, index, caps):
    """sum_k t_i^(m_i - 1 - k) (sum_{j != i} t_j)^k, dropping monomials past caps."""
    d = len(index)
    factor = {}
    for k in range(index[i]):
        for others, coefficient in multinomial_coefficients(d - 1, k).items():
            exponent = list(others[:i]) + [index[i] - 1 - k] + list(others[i:])
            if any(e > cap for e, cap in zip(exponent, caps)):
                continue
            exponent = tuple(exponent)
            factor[exponent] = factor.get(exponent, 0) + coefficient
    return factor


def tuple_count_product(index):
    """a_d(m) from the product formula.

    a_d(m) is the coefficient of prod t_i^(m_i - 1) in
    prod_i (tt_i^m_i - t_i^m_i) / (tt_i - t_i) with tt_i = sum_{j != i} t_j.
    Each quotient is expanded as a finite geometric sum and the product is
    truncated at the target exponents.
    """
    index = tuple(index)
    check_index(index)
    if 0 in index:
        return 0
    d = len(index)
    if d == 1:
        return 1
    caps = tuple(entry - 1 for entry in index)
    product = {(0,) * d: 1}
    for i in range(d):
        product = _truncated_multiply(product, _product_factor(i, index, caps), caps)
    return product.get(caps, 0)
