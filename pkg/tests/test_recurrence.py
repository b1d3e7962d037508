#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import os
import unittest
from fractions import Fraction

import mpmath
import sympy

from diagasym.lib.diagonal.errors import ConsistencyError, DomainError, SingularLeadingCoefficientError
from diagasym.lib.diagonal.linalg import nullspace, primitive_integer_vector
from diagasym.lib.diagonal.recurrence import (PRecurrence, ansatz_solutions, extend_series, growth_candidates,
                                              guess_p_recurrence, recurrence_from_json, recurrence_to_json, verify_recurrence)
from diagasym.lib.diagonal.roots import polynomial_roots
from diagasym.lib.diagonal.series import cubical_series

SlowTests = bool(os.getenv('DIAGASYM_SLOW_TESTS'))

geometric = PRecurrence.from_coefficients([[1], [-2]])


def values(candidates):
    return sorted((complex(candidate.value) for candidate in candidates), key=lambda value: (value.real, value.imag))


class TestLinearAlgebra(unittest.TestCase):

    def test_nullspace(self):
        basis = nullspace([[1, 2, 3], [2, 4, 6]])
        self.assertEqual(len(basis), 2)
        for vector in basis:
            self.assertEqual(sum(a * b for a, b in zip([1, 2, 3], vector)), 0)

    def test_full_rank(self):
        self.assertEqual(nullspace([[1, 0], [0, Fraction(1, 3)]]), [])

    def test_primitive(self):
        self.assertEqual(primitive_integer_vector([Fraction(1, 2), Fraction(-3, 4), 0]), [2, -3, 0])
        with self.assertRaises(DomainError):
            primitive_integer_vector([0, 0])


class TestRoots(unittest.TestCase):

    def test_exact_linear(self):
        roots = polynomial_roots([1, -2])
        self.assertEqual(len(roots), 1)
        self.assertEqual(roots[0].value, 0.5)

    def test_double_root(self):
        # (1 - 3x)^2 (1 + x)
        roots = polynomial_roots([1, -5, 3, 9])
        multiplicities = {round(float(mpmath.re(root.value)), 12): root.multiplicity for root in roots}
        self.assertEqual(multiplicities, {round(1 / 3, 12): 2, -1.0: 1})

    def test_irrational(self):
        roots = polynomial_roots([-2, 0, 1], precision_bits=200)
        self.assertEqual(len(roots), 2)
        with mpmath.workprec(200):
            for root in roots:
                self.assertLess(abs(abs(root.value) - mpmath.sqrt(2)), mpmath.mpf(10) ** -50)

    def test_complex_pair(self):
        roots = polynomial_roots([1, 0, 1])
        self.assertEqual(sorted(round(complex(root.value).imag, 12) for root in roots), [-1.0, 1.0])

    def test_zero_polynomial(self):
        with self.assertRaises(DomainError):
            polynomial_roots([0, 0])


class TestRecurrences(unittest.TestCase):

    def test_guess_geometric(self):
        terms = [2 ** n for n in range(31)]
        recurrence = guess_p_recurrence(terms, 1, 2)
        self.assertEqual(recurrence.order, 1)
        self.assertEqual(recurrence.degree, 0)
        self.assertEqual(recurrence.coeffs, ((Fraction(1),), (Fraction(-2),)))
        self.assertTrue(verify_recurrence(recurrence, terms))

    def test_guess_linear_sequence(self):
        terms = list(range(31))
        recurrence = guess_p_recurrence(terms, 2, 2)
        self.assertEqual(recurrence.order, 1)
        self.assertTrue(verify_recurrence(recurrence, terms))
        self.assertEqual(extend_series(recurrence, terms[:6], 10), list(range(11)))

    def test_guess_nothing(self):
        terms = [sympy.prime(n + 1) for n in range(40)]
        self.assertIsNone(guess_p_recurrence([int(t) for t in terms], 2, 2))

    def test_insufficient_terms(self):
        with self.assertRaises(DomainError) as context:
            guess_p_recurrence(list(range(20)), 3, 3)
        self.assertIn('29', str(context.exception))

    def test_verify(self):
        self.assertFalse(verify_recurrence(geometric, [1, 2, 4, 9]))
        with self.assertRaises(DomainError):
            verify_recurrence(geometric, [1])

    def test_extend_geometric(self):
        self.assertEqual(extend_series(geometric, [1, 2], 6), [1, 2, 4, 8, 16, 32, 64])

    def test_singular_leading_coefficient(self):
        singular = PRecurrence.from_coefficients([[-50, 1], [50, -1]])
        with self.assertRaises(SingularLeadingCoefficientError) as context:
            extend_series(singular, [1, 1], 60)
        self.assertEqual(context.exception.n, 50)

    def test_non_integer_term(self):
        halving = PRecurrence.from_coefficients([[2], [-1]])
        with self.assertRaises(ConsistencyError):
            extend_series(halving, [2, 1], 3)

    def test_growth(self):
        self.assertEqual(values(growth_candidates(geometric)), [2])
        two_three = PRecurrence.from_coefficients([[1], [-5], [6]])
        self.assertEqual(values(growth_candidates(two_three)), [2, 3])

    def test_json(self):
        recurrence = PRecurrence.from_coefficients([[-50, 1], [Fraction(1, 3), 2]])
        data = recurrence_to_json(recurrence)
        self.assertEqual(data['coefficients'][0], ['-50/1', '1/1'])
        self.assertEqual(recurrence_from_json(data), recurrence)


class TestCubicalRecurrence(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        cls.c3 = cubical_series(3, 120)
        cls.recurrence = guess_p_recurrence(cls.c3[:101], 6, 8)

    def test_order_and_degree(self):
        # 101 terms already pin down an order 5, degree 7 recurrence
        self.assertIsNotNone(self.recurrence)
        self.assertLessEqual(self.recurrence.order, 6)
        self.assertLessEqual(self.recurrence.degree, 7)

    def test_order_six_ansatz(self):
        solutions = ansatz_solutions(self.c3[:101], 6, 7)
        self.assertTrue(solutions)
        for recurrence in solutions:
            self.assertTrue(verify_recurrence(recurrence, self.c3))

    def test_ansatz_needs_terms(self):
        with self.assertRaises(DomainError):
            ansatz_solutions(self.c3[:50], 6, 7)

    def test_predicts_held_out_terms(self):
        self.assertEqual(extend_series(self.recurrence, self.c3[:101], 120), self.c3)
        self.assertTrue(verify_recurrence(self.recurrence, self.c3))

    def test_connective_constants(self):
        candidates = values(growth_candidates(self.recurrence))
        for expected in (8, 9):
            self.assertTrue(any(abs(value - expected) < 1e-10 for value in candidates), candidates)

    @unittest.skipUnless(SlowTests, 'set DIAGASYM_SLOW_TESTS to run')
    def test_round_trip(self):
        recurrence = guess_p_recurrence(self.c3[:61], 6, 5)
        if recurrence is None:
            self.skipTest('60 terms do not pin down the recurrence at degree 5')
        self.assertEqual(extend_series(recurrence, self.c3[:61], 120), self.c3)

    @unittest.skipUnless(SlowTests, 'set DIAGASYM_SLOW_TESTS to run')
    def test_d4_connective_constants(self):
        c4 = cubical_series(4, 130)
        recurrence = guess_p_recurrence(c4, 8, 10)
        if recurrence is None:
            self.skipTest('no recurrence of order <= 8 and degree <= 10 in 131 terms of C_4')
        self.assertTrue(verify_recurrence(recurrence, c4))
        candidates = values(growth_candidates(recurrence))
        for expected in (81, 125):
            self.assertTrue(any(abs(value - expected) < 1e-10 for value in candidates), candidates)


if __name__ == '__main__':
    unittest.main()
