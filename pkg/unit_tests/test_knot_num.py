import unittest
from fractions import Fraction

import numpy as np

import legstr.geometry.knot_num as knot_num
from legstr.contrib.errors import ClearanceError, DomainError, ResolutionError
from legstr.geometry.moduli import enumerate_closed_strings
from legstr.geometry.period_map import invert_theta
from legstr.geometry.string_builder import (
    build_string,
    constant_curvature_curve,
)

T = np.linspace(0, 2 * np.pi, 201)
CIRCLE = np.stack([np.cos(T), np.sin(T), np.zeros_like(T)], axis=-1)


def _string(modulus, samples_per_period):
    return build_string(invert_theta(modulus), samples_per_period,
                        modulus=modulus)


def _invariants(curve):
    poly = knot_num.Polyline3.from_curve(curve)
    return (knot_num.linking_with_Oz(poly),
            knot_num.linking_with_O2(curve),
            knot_num.maslov_index(poly),
            knot_num.thurston_bennequin(poly))


class TestPolyline(unittest.TestCase):
    maxDiff = None

    def test_closed(self):
        poly = knot_num.Polyline3(CIRCLE)
        self.assertEqual(200, len(poly))
        self.assertAlmostEqual(2.0, poly.diameter, places=10)
        self.assertEqual((200, 3), poly.vertices.shape)

    def test_rejects_bad_input(self):
        with self.assertRaises(DomainError):
            knot_num.Polyline3(CIRCLE[:100])
        with self.assertRaises(DomainError):
            knot_num.Polyline3(CIRCLE[:, :2])
        with self.assertRaises(DomainError):
            knot_num.Polyline3(CIRCLE[[0, 1, 0]])


class TestPlanarInvariants(unittest.TestCase):
    maxDiff = None

    def test_circle_about_the_axis(self):
        poly = knot_num.Polyline3(CIRCLE)
        self.assertEqual(1, knot_num.linking_with_Oz(poly))
        self.assertEqual(1, knot_num.linking_with_Oz_gauss(poly))
        self.assertEqual(1, knot_num.maslov_index(poly))
        self.assertEqual(0, knot_num.thurston_bennequin(poly))

    def test_reversed_circle(self):
        poly = knot_num.Polyline3(CIRCLE[::-1])
        self.assertEqual(-1, knot_num.linking_with_Oz(poly))
        self.assertEqual(-1, knot_num.maslov_index(poly))

    def test_translated_circle(self):
        poly = knot_num.Polyline3(CIRCLE + [3.0, 0.0, 0.0])
        self.assertEqual(0, knot_num.linking_with_Oz(poly))
        self.assertEqual(0, knot_num.linking_with_Oz_gauss(poly))
        self.assertEqual(1, knot_num.maslov_index(poly))

    def test_curve_through_the_axis(self):
        poly = knot_num.Polyline3(CIRCLE + [1.0, 0.0, 0.0])
        with self.assertRaises(ClearanceError):
            knot_num.linking_with_Oz(poly)

    def test_coarse_sampling(self):
        square = [[1, 0, 0], [0, 1, 0], [-1, 0, 0], [0, -1, 0], [1, 0, 0]]
        poly = knot_num.Polyline3(square)
        with self.assertRaises(ResolutionError):
            knot_num.linking_with_Oz(poly)

    def test_hopf_link(self):
        other = np.stack([1 + np.cos(T), np.zeros_like(T), np.sin(T)],
                         axis=-1)
        value = knot_num.gauss_linking_number(CIRCLE, other)
        self.assertAlmostEqual(1.0, abs(value), places=6)
        far = other + [10.0, 0.0, 0.0]
        self.assertAlmostEqual(0.0, knot_num.gauss_linking_number(CIRCLE, far),
                               places=6)


class TestStringInvariants(unittest.TestCase):
    maxDiff = None

    def test_first_string(self):
        curve = _string((Fraction(1, 3), Fraction(4, 21)), 192)
        self.assertEqual((1, -5, -4, -5), _invariants(curve))
        poly = knot_num.Polyline3.from_curve(curve)
        self.assertEqual(1, knot_num.linking_with_Oz_gauss(poly))

    def test_single_turn_strings_are_regular(self):
        # l1 = 1: tb = l2 and Maslov = tb + 1
        for c in enumerate_closed_strings(9):
            if c.l1 != 1:
                continue
            curve = _string(c.modulus, 256)
            self.assertEqual((1, c.l2, c.l2 + 1, c.l2), _invariants(curve),
                             c.label)
            self.assertEqual(c.maslov, c.l2 + 1, c.label)

    def test_string_with_two_turns(self):
        curve = _string((Fraction(10, 27), Fraction(4, 27)), 160)
        self.assertEqual((2, -6, -4, -3), _invariants(curve))

    def test_rotation_about_the_axis(self):
        curve = _string((Fraction(1, 3), Fraction(4, 21)), 128)
        poly = knot_num.Polyline3.from_curve(curve)
        c, s = np.cos(0.8), np.sin(0.8)
        rotation = np.array([[c, -s, 0], [s, c, 0], [0, 0, 1]])
        turned = knot_num.Polyline3(poly.points @ rotation.T)
        self.assertEqual(knot_num.linking_with_Oz(poly),
                         knot_num.linking_with_Oz(turned))
        self.assertEqual(knot_num.maslov_index(poly),
                         knot_num.maslov_index(turned))
        self.assertEqual(knot_num.thurston_bennequin(poly),
                         knot_num.thurston_bennequin(turned))

    def test_refinement_is_stable(self):
        modulus = (Fraction(1, 3), Fraction(4, 21))
        coarse = knot_num.Polyline3.from_curve(_string(modulus, 96))
        fine = knot_num.Polyline3.from_curve(_string(modulus, 384))
        self.assertEqual(knot_num.linking_with_Oz(coarse),
                         knot_num.linking_with_Oz(fine))
        self.assertEqual(knot_num.maslov_index(coarse),
                         knot_num.maslov_index(fine))

    def test_oversized_pushoff(self):
        poly = knot_num.Polyline3.from_curve(
            _string((Fraction(1, 3), Fraction(4, 21)), 64))
        with self.assertRaises(ClearanceError):
            knot_num.thurston_bennequin(poly, pushoff_eps=poly.diameter)

    def test_constant_curvature_curve(self):
        curve = constant_curvature_curve(Fraction(5, 3), 256)
        lk1, lk2, maslov, tb = _invariants(curve)
        self.assertEqual(5, lk1)
        self.assertEqual({3, 5}, {abs(lk1), abs(lk2)})
        self.assertEqual(2, maslov)
        self.assertEqual(-15, tb)
