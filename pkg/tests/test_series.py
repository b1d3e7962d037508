#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import itertools
import unittest
from fractions import Fraction
from math import factorial
from unittest import mock

import sympy

from diagasym.lib.diagonal import series
from diagasym.lib.diagonal.errors import DomainError, ResourceError
from diagasym.lib.diagonal.polynomial import SparsePolynomial, elementary_symmetric, sorted_key, variables
from diagasym.lib.diagonal.series import (CoefficientTable, build_denominator, cubical_series, gf_coefficients,
                                          kernel_terms, tuple_count_product)


class TestPolynomials(unittest.TestCase):

    def test_denominator_d2(self):
        x1, x2 = variables(2)
        expected = SparsePolynomial.from_expr((1 - x1) * (1 - x2) * (1 - x1 * x2), (x1, x2))
        self.assertEqual(build_denominator(2), expected)

    def test_denominator_d3(self):
        x1, x2, x3 = variables(3)
        expected = SparsePolynomial.from_expr(
            (1 - x1) * (1 - x2) * (1 - x3) * (1 - x1 * x2 - x1 * x3 - x2 * x3 - 2 * x1 * x2 * x3), (x1, x2, x3))
        self.assertEqual(build_denominator(3), expected)

    def test_denominator_at_origin(self):
        for d in range(2, 7):
            self.assertEqual(build_denominator(d).evaluate([0] * d), 1)

    def test_denominator_shape(self):
        for d in range(2, 6):
            H = build_denominator(d)
            self.assertTrue(H.is_symmetric())
            self.assertTrue(all(coefficient != 0 for coefficient in H.terms.values()))
            self.assertTrue(all(H.degree(i) <= 2 for i in range(d)))

    def test_denominator_needs_d2(self):
        with self.assertRaises(DomainError):
            build_denominator(1)

    def test_elementary_symmetric(self):
        values = [Fraction(1, 2), Fraction(1, 3), Fraction(2)]
        gens = sympy.symbols('y1:4')
        for i, value in enumerate(elementary_symmetric(values)):
            expr = sympy.Add(*[sympy.Mul(*subset) for subset in itertools.combinations(gens, i)]) if i else sympy.Integer(1)
            exact = expr.subs(dict(zip(gens, [sympy.Rational(v.numerator, v.denominator) for v in values])))
            self.assertEqual(value, Fraction(int(exact.p), int(exact.q)))

    def test_sorted_key(self):
        self.assertEqual(sorted_key((1, 3, 2)), (3, 2, 1))

    def test_kernel_sizes(self):
        for d in range(2, 6):
            self.assertEqual(len(kernel_terms(d, 'reduced')), 2 ** d - d - 1)
            self.assertLessEqual(len(kernel_terms(d, 'direct')), 3 ** d - 1)
        with self.assertRaises(DomainError):
            kernel_terms(3, 'sideways')


class TestProductFormula(unittest.TestCase):

    def test_small_indices(self):
        self.assertEqual(tuple_count_product((1, 1, 1)), 1)
        self.assertEqual(tuple_count_product((2, 2, 2)), 6)
        self.assertEqual(tuple_count_product((2, 2, 2, 2)), 24)
        self.assertEqual(tuple_count_product((5,)), 1)

    def test_zero_entry(self):
        self.assertEqual(tuple_count_product((0, 3, 2)), 0)

    def test_symmetric(self):
        self.assertEqual(tuple_count_product((3, 2, 1)), tuple_count_product((1, 3, 2)))

    def test_bad_index(self):
        with self.assertRaises(DomainError):
            tuple_count_product(())
        with self.assertRaises(DomainError):
            tuple_count_product((2, -1))


class TestKernelRecurrence(unittest.TestCase):

    def test_oracle_box(self):
        for d in (2, 3, 4):
            table = gf_coefficients(d, 6)
            for index in itertools.product(range(7), repeat=d):
                if index != sorted_key(index) and d == 4:
                    continue
                with self.subTest(d=d, index=index):
                    self.assertEqual(table[index], tuple_count_product(index))

    def test_modes_agree(self):
        for d in (2, 3, 4):
            reduced = gf_coefficients(d, 7, mode='reduced')
            direct = gf_coefficients(d, 7, mode='direct')
            for key in reduced.values:
                self.assertEqual(reduced[key], direct[key])
            self.assertEqual(cubical_series(d, 12, mode='reduced'), cubical_series(d, 12, mode='direct'))

    def test_table_lookup(self):
        table = gf_coefficients(3, 4)
        self.assertIsInstance(table, CoefficientTable)
        self.assertEqual(table[(1, 1, 1)], 1)
        self.assertEqual(table[(0, 4, 2)], 0)
        self.assertEqual(table[(3, 1, 2)], table[(1, 2, 3)])
        self.assertTrue(all(value >= 0 for value in table.values.values()))
        with self.assertRaises(DomainError):
            table[(5, 1, 1)]
        with self.assertRaises(DomainError):
            table[(1, 1)]

    def test_d2_diagonal(self):
        table = gf_coefficients(2, 5)
        self.assertEqual([table[(n, n)] for n in range(1, 6)], [1, 2, 3, 4, 5])
        self.assertEqual(cubical_series(2, 30), list(range(31)))

    def test_closed_values(self):
        for d in range(2, 7):
            terms = cubical_series(d, 2)
            self.assertEqual(terms[0], 0)
            self.assertEqual(terms[1], 1)
            self.assertEqual(terms[2], factorial(d))

    def test_series_matches_table(self):
        self.assertEqual(cubical_series(3, 10), gf_coefficients(3, 10).diagonal())

    def test_series_growth(self):
        terms = cubical_series(3, 40)
        self.assertTrue(series.check_monotone(terms, 3))
        self.assertTrue(all(terms[n] * 7 < terms[n + 1] for n in range(20, 40)))

    def test_domain(self):
        with self.assertRaises(DomainError):
            cubical_series(1, 10)
        with self.assertRaises(DomainError):
            gf_coefficients(3, -1)

    def test_memory_budget(self):
        memory = mock.Mock(available=1 << 20)
        with mock.patch('diagasym.lib.diagonal.series.psutil.virtual_memory', return_value=memory):
            with self.assertRaises(ResourceError) as context:
                gf_coefficients(6, 60)
        self.assertIn('d=6', str(context.exception))
        self.assertIn('n_max=60', str(context.exception))


if __name__ == '__main__':
    unittest.main()
