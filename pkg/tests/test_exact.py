import unittest
from fractions import Fraction
from math import gcd
from random import Random

from lensknots.errors import (
    DegenerateEvaluation,
    InfiniteArithmetic,
    InvalidInput,
)
from lensknots.exact import (
    INFINITY,
    ContinuedFraction,
    Rational,
    cf_eval,
    cf_expand,
    coprime,
    mod_inverse,
    quadratic_solutions,
)


class TestRational(unittest.TestCase):
    def test_reduced(self):
        r = Rational(2, -4)
        self.assertEqual((r.numerator, r.denominator), (-1, 2))
        self.assertEqual(str(r), "-1/2")
        self.assertEqual(Rational(6, 3), Rational(2))

    def test_infinity(self):
        self.assertEqual(Rational(-3, 0), INFINITY)
        self.assertTrue(INFINITY.is_infinite)
        self.assertEqual(str(INFINITY), "1/0")
        with self.assertRaises(InfiniteArithmetic):
            INFINITY + 1
        with self.assertRaises(InfiniteArithmetic):
            Rational(1, 2) * INFINITY

    def test_zero_over_zero(self):
        with self.assertRaises(InvalidInput):
            Rational(0, 0)

    def test_arithmetic(self):
        half, third = Rational(1, 2), Rational(1, 3)
        self.assertEqual(half + third, Rational(5, 6))
        self.assertEqual(half - third, Rational(1, 6))
        self.assertEqual(half * third, Rational(1, 6))
        self.assertEqual(half / third, Rational(3, 2))
        self.assertEqual(1 - half, half)
        self.assertEqual(-half, Rational(-1, 2))
        self.assertTrue(third < half)
        with self.assertRaises(InvalidInput):
            half / 0
        with self.assertRaises(InvalidInput):
            Rational(0).reciprocal()

    def test_parse(self):
        self.assertEqual(Rational.parse("15/4"), Rational(15, 4))
        self.assertEqual(Rational.parse(" -3 "), Rational(-3))
        self.assertEqual(Rational.parse("1/-2"), Rational(-1, 2))
        self.assertEqual(Rational.parse("inf"), INFINITY)
        with self.assertRaises(InvalidInput):
            Rational.parse("1.5")


class TestContinuedFractions(unittest.TestCase):
    def test_eval_examples(self):
        self.assertEqual(cf_eval([1, -1, -1, 3]), Rational(5, 1))
        self.assertEqual(cf_eval([7]), Rational(7, 1))
        self.assertEqual(cf_eval([2, -1, -2, 3]), Rational(15, 4))

    def test_empty_is_infinity(self):
        self.assertEqual(cf_eval([]), INFINITY)
        self.assertEqual(ContinuedFraction().evaluate(), INFINITY)

    def test_degenerate(self):
        with self.assertRaises(DegenerateEvaluation):
            cf_eval([1, 0])
        with self.assertRaises(DegenerateEvaluation):
            cf_eval([3, 0, 0])

    def test_expand_convention(self):
        self.assertEqual(cf_expand(15, 4).terms, (3, -2, -2, -2))
        self.assertEqual(cf_expand(5, 1).terms, (5,))
        self.assertEqual(cf_expand(7, 3).terms, (2, -3))
        self.assertEqual(cf_expand(1, 0).terms, ())
        self.assertEqual(cf_expand(-7, -3).terms, (2, -3))
        self.assertEqual(str(cf_expand(15, 4)), "[3, -2, -2, -2]")

    def test_expand_rejects(self):
        with self.assertRaises(InvalidInput):
            cf_expand(2, 4)
        with self.assertRaises(InvalidInput):
            cf_expand(2, 0)

    def test_round_trip(self):
        rng = Random(1729)
        checked = 0
        while checked < 10_000:
            q = rng.randint(-500, 500)
            p = rng.randint(-500, 500)
            if gcd(p, q) != 1 or q == 0:
                continue
            checked += 1
            expansion = cf_expand(p, q)
            self.assertEqual(cf_eval(expansion), Rational(p, q))
            self.assertTrue(all(t <= -2 for t in expansion.terms[1:]))
            self.assertEqual(expansion.terms[0], p // q if q > 0 else -p // -q)

    def test_family_identity(self):
        for n in range(-50, 51):
            value = cf_eval([n, -1, -n, 3])
            expected = Fraction(-(3 * n * n + n + 1), -3 * n + 2)
            self.assertEqual(value.as_fraction(), expected)

    def test_parse(self):
        cf = ContinuedFraction.parse("[2, -1, -2, 3]")
        self.assertEqual(cf.terms, (2, -1, -2, 3))
        self.assertEqual(
            ContinuedFraction.parse("1 -1 -1 3").evaluate(), Rational(5)
        )
        with self.assertRaises(InvalidInput):
            ContinuedFraction.parse("[1, x]")


class TestModular(unittest.TestCase):
    def test_quadratic(self):
        self.assertEqual(quadratic_solutions(1, 1, 1, 5), frozenset())
        self.assertEqual(quadratic_solutions(1, 1, 1, 7), frozenset({2, 4}))
        self.assertEqual(quadratic_solutions(1, 0, -1, 8), {1, 3, 5, 7})
        with self.assertRaises(InvalidInput):
            quadratic_solutions(1, 0, 0, 0)

    def test_quadratic_against_brute_force(self):
        rng = Random(7)
        for _ in range(300):
            p = rng.randint(1, 60)
            a, b, c = (rng.randint(-20, 20) for _ in range(3))
            expected = {
                k for k in range(p) if (a * k * k + b * k + c) % p == 0
            }
            self.assertEqual(quadratic_solutions(a, b, c, p), expected)

    def test_quadratic_every_modulus(self):
        for a, b, c in ((1, 1, 1), (1, -1, -1), (1, 0, 1), (2, 3, -5)):
            for p in range(1, 1001):
                expected = {
                    k for k in range(p) if (a * k * k + b * k + c) % p == 0
                }
                self.assertEqual(
                    quadratic_solutions(a, b, c, p), expected, (a, b, c, p)
                )

    def test_inverse(self):
        self.assertEqual(mod_inverse(2, 5), 3)
        self.assertEqual(mod_inverse(-1, 7), 6)
        self.assertIsNone(mod_inverse(2, 4))

    def test_coprime(self):
        self.assertTrue(coprime(4, 1))
        self.assertTrue(coprime(6, 10, 15))
        self.assertFalse(coprime(6, 9))
