import unittest
from math import gcd
from random import Random

from lensknots.errors import InvalidInput
from lensknots.exact import INFINITY, Rational
from lensknots.lens import (
    LensSpace,
    LensSum,
    equivalent_unoriented,
    sum_equivalent,
)
from lensknots.surgery import (
    Slope,
    SurgeryKind,
    dual_self_linking,
    involution_image,
    slope_distance,
    torus_knot_integral_surgery,
    unknot_surgery,
)


class TestSlopes(unittest.TestCase):
    def test_normal_form(self):
        self.assertEqual(Slope(-1, -2), Slope(1, 2))
        self.assertEqual(Slope(2, -3).to_json(), [-2, 3])
        self.assertEqual(Slope(-1, 0), Slope(1, 0))
        with self.assertRaises(InvalidInput):
            Slope(4, 6)

    def test_parse(self):
        self.assertEqual(Slope.parse("5/3"), Slope(5, 3))
        self.assertEqual(Slope.parse("-7"), Slope(-7, 1))
        self.assertEqual(Slope.parse("inf"), Slope(1, 0))
        self.assertEqual(Slope.parse("1/0").as_rational(), INFINITY)
        self.assertEqual(Slope.from_json([3, -2]), Slope(-3, 2))
        self.assertEqual(str(Slope(-3, 2)), "-3/2")
        with self.assertRaises(InvalidInput):
            Slope.from_json([1, 2, 3])

    def test_distance(self):
        self.assertEqual(slope_distance(Slope(1, 0), Slope(0, 1)), 1)
        self.assertEqual(slope_distance(Slope(5, 1), Slope(6, 1)), 1)
        self.assertEqual(slope_distance(Slope(3, 2), Slope(3, 2)), 0)
        self.assertEqual(involution_image(Slope(3, 2)), Slope(-3, 2))

    def test_distance_to_involution_image(self):
        rng = Random(2718)
        checked = 0
        while checked < 10_000:
            p, q = rng.randint(-10**6, 10**6), rng.randint(1, 10**6)
            if gcd(p, q) != 1:
                continue
            s = Slope(p, q)
            self.assertEqual(
                slope_distance(s, involution_image(s)), 2 * abs(p * q)
            )
            checked += 1

    def test_dual_self_linking(self):
        self.assertEqual(dual_self_linking(5), Rational(4, 5))
        self.assertEqual(str(dual_self_linking(2)), "1/2")
        with self.assertRaises(InvalidInput):
            dual_self_linking(0)


class TestSurgery(unittest.TestCase):
    def test_unknot(self):
        self.assertEqual(unknot_surgery(5), LensSpace(5, -1))
        self.assertEqual(unknot_surgery(5).canonical(), LensSpace(5, 4))
        self.assertEqual(unknot_surgery(1).canonical(), LensSpace(1, 0))
        self.assertEqual(unknot_surgery(-1).canonical(), LensSpace(1, 0))
        self.assertEqual(unknot_surgery(0).canonical(), LensSpace(0, 1))

    def test_trivial_torus_knot_is_the_unknot(self):
        for a in range(1, 12):
            for m in range(-30, 31):
                result = torus_knot_integral_surgery(a, 1, m)
                self.assertEqual(result.kind, SurgeryKind.LENS)
                self.assertEqual(result.raw, unknot_surgery(m), (a, m))
                swapped = torus_knot_integral_surgery(1, a, m)
                self.assertEqual(swapped.raw, unknot_surgery(m), (a, m))

    def test_trefoil(self):
        reducible = torus_knot_integral_surgery(2, 3, 6)
        self.assertEqual(reducible.kind, SurgeryKind.SUM)
        self.assertEqual(
            reducible.summands, LensSum.of(LensSpace(2, 1), LensSpace(3, 2))
        )
        lens = torus_knot_integral_surgery(2, 3, 7)
        self.assertEqual(lens.raw, LensSpace(7, -4))
        self.assertEqual(lens.lens, LensSpace(7, 3))
        self.assertEqual(str(lens), "L(7,-4) = L(7,3)")
        self.assertEqual(torus_knot_integral_surgery(3, 2, 5).raw.p, 5)

    def test_not_lens(self):
        result = torus_knot_integral_surgery(2, 3, 1)
        self.assertEqual(result.kind, SurgeryKind.NOT_LENS_INTEGRAL)
        self.assertEqual(result.orders, (2, 3, 5))
        self.assertEqual(str(result), "NotLensIntegral S^2(2,3,5)")
        self.assertIsNone(result.as_sum())
        self.assertEqual(result.to_json()["orders"], [2, 3, 5])

    def test_rejects(self):
        with self.assertRaises(InvalidInput):
            torus_knot_integral_surgery(2, 4, 7)
        with self.assertRaises(InvalidInput):
            torus_knot_integral_surgery(0, 3, 7)

    def test_family_torus_knots(self):
        for n in range(1, 41):
            p, q = 3 * n * n + n + 1, -3 * n + 2
            result = torus_knot_integral_surgery(3 * n + 1, n, p)
            self.assertEqual(result.kind, SurgeryKind.LENS)
            self.assertEqual((n * n * q + 1) % p, 0)
            self.assertTrue(
                equivalent_unoriented(result.lens, LensSpace(p, q))
            )

            a = 3 * n + 1
            reducible = torus_knot_integral_surgery(a, n, n * a)
            expected = LensSum.of(LensSpace(n, -1), LensSpace(a, 3))
            self.assertTrue(
                sum_equivalent(reducible.as_sum(), expected, oriented=False)
            )
