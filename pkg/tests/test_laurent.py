import unittest
from math import gcd
from random import Random

import sympy as sp

from lensknots.errors import InvalidInput
from lensknots.laurent import (
    ONE,
    ZERO,
    CyclicPoly,
    LaurentPoly,
    correction_lift,
    cyclic_reduce,
    genus_from_alexander,
    lspace_form_check,
    poly_add,
    poly_mul,
    poly_neg,
    tilde_constraints_check,
    tilde_correction,
    torus_alexander,
)

K1 = "t^3 - t^2 + 1 - t^-2 + t^-3"
TREFOIL = "t - 1 + t^-1"


def random_symmetric(rng: Random, max_exponent: int) -> LaurentPoly:
    coefficients = {0: rng.randint(-3, 3)}
    for e in range(1, max_exponent + 1):
        c = rng.randint(-3, 3)
        coefficients[e] = coefficients[-e] = c
    return LaurentPoly.from_dict(coefficients)


class TestLaurentPoly(unittest.TestCase):
    def test_parse_and_print(self):
        poly = LaurentPoly.parse(K1)
        self.assertEqual(
            poly.to_json(), [[3, 1], [2, -1], [0, 1], [-2, -1], [-3, 1]]
        )
        self.assertEqual(str(poly), K1)
        self.assertEqual(
            LaurentPoly.parse("t**-2 + 2*t"), LaurentPoly.parse("2t + t^-2")
        )
        self.assertEqual(str(LaurentPoly.parse("-3*t^2 + 2")), "-3*t^2 + 2")
        self.assertEqual(str(ZERO), "0")
        self.assertEqual(LaurentPoly.parse("0"), ZERO)

    def test_parse_rejects(self):
        with self.assertRaises(InvalidInput):
            LaurentPoly.parse("t/2")
        with self.assertRaises(InvalidInput):
            LaurentPoly.parse("x + 1")
        with self.assertRaises(InvalidInput):
            LaurentPoly.parse("t^(1/2)")
        for text in ("__import__('os')", "t.real", "t; 1", "lambda: t"):
            with self.assertRaises(InvalidInput):
                LaurentPoly.parse(text)

    def test_json(self):
        poly = LaurentPoly.from_json([[1, 1], [0, -1], [-1, 1]])
        self.assertEqual(str(poly), TREFOIL)
        self.assertEqual(LaurentPoly.from_json(poly.to_json()), poly)
        with self.assertRaises(InvalidInput):
            LaurentPoly.from_json([[1]])

    def test_ring_operations(self):
        t = LaurentPoly.monomial(1)
        self.assertEqual(
            poly_mul(poly_add(t, ONE), poly_add(t, poly_neg(ONE))),
            LaurentPoly.parse("t^2 - 1"),
        )
        trefoil = LaurentPoly.parse(TREFOIL)
        self.assertEqual(poly_add(trefoil, ZERO), trefoil)
        self.assertEqual(
            trefoil * trefoil,
            LaurentPoly.parse("t^2 - 2t + 3 - 2t^-1 + t^-2"),
        )
        self.assertEqual(trefoil - trefoil, ZERO)

    def test_ring_against_sympy(self):
        rng = Random(11)
        for _ in range(50):
            a = random_symmetric(rng, rng.randint(0, 5))
            a = a.shift(rng.randint(-3, 3))
            b = random_symmetric(rng, rng.randint(0, 5))
            expected = sp.expand(a.to_sympy() * b.to_sympy())
            self.assertEqual(sp.expand((a * b).to_sympy() - expected), 0)
            total = sp.expand(a.to_sympy() + b.to_sympy())
            self.assertEqual(sp.expand((a + b).to_sympy() - total), 0)

    def test_structure(self):
        poly = LaurentPoly.parse(K1)
        self.assertEqual(poly.max_exponent, 3)
        self.assertEqual(poly.min_exponent, -3)
        self.assertEqual(poly.degree_span, 6)
        self.assertTrue(poly.is_symmetric)
        self.assertEqual(poly.coefficient(2), -1)
        self.assertEqual(poly.coefficient(1), 0)
        self.assertEqual(poly.mirror(), poly)
        self.assertFalse(LaurentPoly.parse("t^2 - 1").is_symmetric)
        self.assertEqual(
            LaurentPoly.parse("t^4 - t^3 + t^2").symmetrize(),
            LaurentPoly.parse(TREFOIL),
        )
        with self.assertRaises(RuntimeError):
            LaurentPoly.parse("t + 1").symmetrize()
        with self.assertRaises(InvalidInput):
            ZERO.max_exponent

    def test_evaluate(self):
        poly = LaurentPoly.parse(K1)
        self.assertEqual(poly.evaluate(1), 1)
        self.assertEqual(poly.evaluate(-1), -3)
        with self.assertRaises(InvalidInput):
            poly.evaluate(0)


class TestTorusAlexander(unittest.TestCase):
    def test_examples(self):
        self.assertEqual(str(torus_alexander(2, 3)), TREFOIL)
        self.assertEqual(torus_alexander(5, 1), ONE)
        self.assertEqual(torus_alexander(4, 1), ONE)
        self.assertEqual(
            str(torus_alexander(2, 5)), "t^2 - t + 1 - t^-1 + t^-2"
        )
        self.assertEqual(
            torus_alexander(3, 4),
            LaurentPoly.parse("t^3 - t^2 + 1 - t^-2 + t^-3"),
        )

    def test_rejects(self):
        with self.assertRaises(InvalidInput):
            torus_alexander(2, 4)
        with self.assertRaises(InvalidInput):
            torus_alexander(0, 1)

    def test_properties(self):
        for a in range(1, 31):
            for b in range(1, 31):
                if gcd(a, b) != 1:
                    continue
                poly = torus_alexander(a, b)
                self.assertTrue(poly.is_symmetric)
                self.assertEqual(poly.max_exponent, (a - 1) * (b - 1) // 2)
                self.assertEqual(poly.evaluate(1), 1)
                self.assertEqual(poly, torus_alexander(b, a))
                self.assertTrue(lspace_form_check(poly))

    def test_against_sympy_division(self):
        t = sp.Symbol("t")
        for a, b in [(2, 3), (3, 5), (4, 7), (5, 6)]:
            quotient, remainder = sp.div(
                sp.expand((t ** (a * b) - 1) * (t - 1)),
                sp.expand((t**a - 1) * (t**b - 1)),
                t,
            )
            self.assertEqual(remainder, 0)
            shift = (a - 1) * (b - 1) // 2
            expected = sp.expand(quotient * t ** (-shift))
            self.assertEqual(
                sp.expand(torus_alexander(a, b).to_sympy() - expected), 0
            )


class TestGenusAndForm(unittest.TestCase):
    def test_genus(self):
        self.assertEqual(genus_from_alexander(LaurentPoly.parse(TREFOIL)), 1)
        self.assertEqual(genus_from_alexander(ONE), 0)
        self.assertEqual(genus_from_alexander(LaurentPoly.parse(K1)), 3)
        with self.assertRaises(InvalidInput):
            genus_from_alexander(LaurentPoly.parse("t^2 - 1"))
        with self.assertRaises(InvalidInput):
            genus_from_alexander(ZERO)

    def test_lspace_form(self):
        form = lspace_form_check(LaurentPoly.parse(TREFOIL))
        self.assertTrue(form.ok)
        self.assertEqual(form.exponents, (1,))
        form = lspace_form_check(LaurentPoly.parse(K1))
        self.assertEqual(form.exponents, (2, 3))
        self.assertTrue(lspace_form_check(ONE))

    def test_lspace_form_failures(self):
        figure_eight = LaurentPoly.parse("-t + 3 - t^-1")
        self.assertFalse(lspace_form_check(figure_eight))
        self.assertIn("not ±1", lspace_form_check(figure_eight).reason)
        for text in ("-t + 1 - t^-1", "t^2 + t + t^-1 + t^-2"):
            self.assertFalse(lspace_form_check(LaurentPoly.parse(text)))
        self.assertFalse(lspace_form_check(LaurentPoly.parse("t - 1")))
        self.assertFalse(lspace_form_check(ZERO))


class TestCyclic(unittest.TestCase):
    def test_reduce(self):
        reduced = cyclic_reduce(LaurentPoly.parse(K1), 5)
        self.assertEqual(reduced.coefficients, (1, 0, 0, 0, 0))
        self.assertEqual(reduced, cyclic_reduce(torus_alexander(4, 1), 5))
        self.assertEqual(cyclic_reduce(ONE, 7).coefficients, (1,) + (0,) * 6)
        self.assertEqual(
            cyclic_reduce(LaurentPoly.monomial(9), 9), cyclic_reduce(ONE, 9)
        )
        with self.assertRaises(InvalidInput):
            cyclic_reduce(ONE, 0)

    def test_display(self):
        reduced = cyclic_reduce(LaurentPoly.parse("t^4 + 2"), 5)
        self.assertEqual(reduced.representatives(), [-2, -1, 0, 1, 2])
        self.assertEqual(reduced.as_laurent(), LaurentPoly.parse("2 + t^-1"))
        self.assertEqual(str(reduced), "2 + t^-1 (mod t^5 - 1)")
        self.assertEqual(
            reduced.to_json(), {"p": 5, "coefficients": [2, 0, 0, 0, 1]}
        )

    def test_constraints(self):
        self.assertTrue(
            tilde_constraints_check(cyclic_reduce(LaurentPoly.parse(K1), 5))
        )
        self.assertFalse(tilde_constraints_check(CyclicPoly(3, (0, 3, 0))))
        self.assertFalse(tilde_constraints_check(CyclicPoly(3, (0, 2, 0))))
        self.assertTrue(tilde_constraints_check(CyclicPoly(4, (0, -1, 2, 1))))
        self.assertFalse(tilde_constraints_check(CyclicPoly(4, (2, 0, 0, 0))))
        with self.assertRaises(InvalidInput):
            CyclicPoly(3, (1, 2))


class TestCorrection(unittest.TestCase):
    def test_examples(self):
        self.assertEqual(str(correction_lift(ONE, 5)), K1)
        self.assertEqual(
            correction_lift(LaurentPoly.parse(TREFOIL), 5),
            LaurentPoly.parse("t^3 - t^2 + t - 1 + t^-1 - t^-2 + t^-3"),
        )

    def test_rejects(self):
        with self.assertRaises(InvalidInput):
            correction_lift(ONE, 4)
        with self.assertRaises(InvalidInput):
            correction_lift(ONE, 1)
        with self.assertRaises(InvalidInput):
            correction_lift(torus_alexander(2, 5), 3)

    def test_cancellation(self):
        rng = Random(3)
        for p in range(3, 102, 2):
            for _ in range(5):
                base = random_symmetric(rng, rng.randint(0, (p - 1) // 2))
                if base.is_zero:
                    continue
                lifted = correction_lift(base, p)
                self.assertEqual(
                    cyclic_reduce(lifted, p), cyclic_reduce(base, p)
                )
                self.assertEqual(lifted.evaluate(1), base.evaluate(1))
                self.assertEqual(lifted.max_exponent, (p + 1) // 2)

    def test_tilde_correction(self):
        delta_k = correction_lift(torus_alexander(7, 2), 15)
        reduced = cyclic_reduce(delta_k, 15)
        self.assertEqual(tilde_correction(reduced), delta_k)
        with self.assertRaises(InvalidInput):
            tilde_correction(CyclicPoly(4, (1, 0, 0, 0)))
