import unittest
from fractions import Fraction

import numpy as np
from numpy.testing import assert_allclose

import legstr.geometry.string_builder as sb
from legstr.contrib.errors import DomainError, SingularityError
from legstr.geometry.dynamics import Characters, curvature_profile
from legstr.geometry.hyperquadric import L, projective_distance
from legstr.geometry.moduli import enumerate_closed_strings
from legstr.geometry.period_map import invert_theta, theta

FIRST_STRING = Characters(0.894052, 2.78109)
FIRST_MODULUS = (Fraction(1, 3), Fraction(4, 21))


class TestStringBuilder(unittest.TestCase):
    maxDiff = None

    @classmethod
    def setUpClass(cls):
        cls.ch = invert_theta(FIRST_MODULUS)
        cls.curve = sb.build_string(cls.ch, 64, modulus=FIRST_MODULUS)

    def setUp(self):
        super(TestStringBuilder, self).setUp()
        self.rng = np.random.RandomState(5)

    def test_angular_functions(self):
        value = theta(FIRST_STRING)
        omega = curvature_profile(FIRST_STRING).omega
        for j, t in zip((1, 2, 3), value):
            self.assertEqual(0.0, sb.angular_phi(FIRST_STRING, j, 0.0))
            self.assertAlmostEqual(-2 * np.pi * t,
                                   sb.angular_phi(FIRST_STRING, j, omega),
                                   delta=1e-9)
        with self.assertRaises(DomainError):
            sb.angular_phi(FIRST_STRING, 4, 0.0)

    def test_angular_functions_against_quadrature(self):
        omega = curvature_profile(FIRST_STRING).omega
        s = self.rng.uniform(0, 3 * omega, 10)
        for j in (1, 2, 3):
            # raises PrecisionLossError on disagreement
            sb.angular_phi(FIRST_STRING, j, s, check=True)
        phi = sb.angular_phi(FIRST_STRING, 2, -s)
        assert_allclose(-sb.angular_phi(FIRST_STRING, 2, s), phi,
                        atol=1e-12)

    def test_closed_string(self):
        curve = self.curve
        self.assertEqual(7, curve.metadata["periods"])
        self.assertEqual(7 * 64 + 1, len(curve))
        self.assertEqual("|7,1,-5>", curve.metadata["characteristic"].label)
        self.assertLess(sb.closure_residual(curve), 1e-8)
        residuals = sb.curve_residuals(curve)
        self.assertLess(residuals["null_cone"], 1e-10)
        self.assertLess(residuals["legendrian"], 1e-8)
        self.assertAlmostEqual(self.ch.ell, curve.scale, places=12)

    def test_open_arc(self):
        curve = sb.build_string(FIRST_STRING, 32, periods=2)
        self.assertIsNone(curve.metadata["characteristic"])
        self.assertEqual(65, len(curve))
        with self.assertRaises(DomainError):
            sb.build_string(FIRST_STRING, 2)

    def test_jet_matches_samples(self):
        lift = sb.string_lift_jet(self.ch)
        jet = self.curve.jet
        for i in (0, 17, 200):
            s = self.curve.s[i]
            assert_allclose(self.curve.lifts[i], lift(s, 0)[0], atol=1e-12)
            self.assertLess(projective_distance(self.curve.lifts[i],
                                                jet(s, 0)[0]), 1e-10)
        with self.assertRaises(DomainError):
            jet(0.1, 11)
        with self.assertRaises(DomainError):
            lift(0.1, sb.LIFT_ORDER + 1)

    def test_monodromy(self):
        omega = self.curve.metadata["omega"]
        R = sb.monodromy(self.ch)
        s = self.rng.uniform(0, omega, 20)
        after = sb.string_lift(self.ch, s + omega)
        moved = sb.string_lift(self.ch, s) @ R.T
        self.assertLess(np.max(projective_distance(after, moved)), 1e-8)
        exact = sb.monodromy(self.ch, FIRST_MODULUS)
        self.assertEqual(7, sb.projective_order(exact))
        R1, R2 = sb.monodromy_factors(FIRST_MODULUS)
        assert_allclose(exact, R1 @ R2, atol=1e-12)

    def test_axes_are_avoided(self):
        own, dual = sb.axis_distances(self.curve)
        self.assertGreater(own, 1e-6)
        self.assertGreater(dual, 1e-6)

    def test_dual_configuration(self):
        dual = sb.dual_configuration(self.curve)
        self.assertEqual("dual", dual.kind)
        self.assertEqual("string", dual.metadata["dual_of"])
        assert_allclose(self.curve.lifts @ L.T, dual.lifts, atol=1e-15)
        residuals = sb.curve_residuals(dual)
        self.assertLess(residuals["null_cone"], 1e-10)
        self.assertLess(residuals["legendrian"], 1e-8)
        back = dual
        for _ in range(3):
            back = sb.dual_configuration(back)
        self.assertLess(np.max(projective_distance(back.lifts,
                                                   self.curve.lifts)), 1e-7)
        assert_allclose(self.curve.heisenberg, back.heisenberg, atol=1e-10)

    def test_heisenberg_examples(self):
        assert_allclose([0, 0, 0],
                        sb.heisenberg_projection(np.array([1, 0, 0])))
        assert_allclose([2, 0, 0],
                        sb.heisenberg_projection(np.array([1, 2, 2j])))
        with self.assertRaises(SingularityError):
            sb.heisenberg_projection(np.array([1e-14, 0, 1]))

    def test_constant_curvature_curve(self):
        q = Fraction(5, 3)
        curve = sb.constant_curvature_curve(q, 128)
        self.assertEqual(3 * 128 + 1, len(curve))
        self.assertLess(sb.closure_residual(curve), 1e-10)
        residuals = sb.curve_residuals(curve)
        self.assertLess(residuals["null_cone"], 1e-10)
        self.assertLess(residuals["legendrian"], 1e-8)
        r = curve.metadata["r"]
        self.assertTrue(0 < r < 2 - np.sqrt(2))
        t = curve.s
        profile = sb.cyclide_profile(r, t)
        angle = float(q) * t
        c, s = np.cos(angle), np.sin(angle)
        expected = np.stack([c * profile[:, 0] - s * profile[:, 1],
                             s * profile[:, 0] + c * profile[:, 1],
                             profile[:, 2]], axis=-1)
        assert_allclose(expected, curve.heisenberg, atol=1e-10)
        with self.assertRaises(DomainError):
            sb.constant_curvature_curve(1)

    def test_constant_curvature_densities(self):
        q = Fraction(5, 3)
        a, b = sb.constant_curvature_densities(sb.r_of_q(q))
        self.assertAlmostEqual(sb.c_of_q(q), b / np.cbrt(a * a), places=10)
        self.assertAlmostEqual(1.69321, b / np.cbrt(a * a), delta=1e-4)

    def test_jet_for(self):
        self.assertIsNone(sb.jet_for("custom", {}))
        jet = sb.jet_for("dual", {"dual_of": "constant_curvature",
                                  "q": Fraction(5, 3)})
        expected = sb.constant_curvature_jet(Fraction(5, 3))(0.3, 2) @ L.T
        assert_allclose(expected, jet(0.3, 2), atol=1e-14)


class TestEnumeratedStrings(unittest.TestCase):
    maxDiff = None

    def setUp(self):
        super(TestEnumeratedStrings, self).setUp()
        self.classes = enumerate_closed_strings(10)

    def test_every_string_closes(self):
        self.assertEqual([7, 8, 9, 9], [c.n for c in self.classes
                                        if c.n <= 9])
        rng = np.random.RandomState(11)
        for c in self.classes:
            label = c.label
            ch = invert_theta(c.modulus)
            curve = sb.build_string(ch, 16, modulus=c.modulus)
            self.assertEqual(c.n * 16 + 1, len(curve), label)
            self.assertLess(sb.closure_residual(curve), 1e-8, label)
            residuals = sb.curve_residuals(curve)
            self.assertLess(residuals["null_cone"], 1e-10, label)
            self.assertLess(residuals["legendrian"], 1e-8, label)
            self.assertGreater(min(sb.axis_distances(curve)), 0, label)
            omega = curve.metadata["omega"]
            s = rng.uniform(0, omega, 5)
            moved = sb.string_lift(ch, s) @ sb.monodromy(ch).T
            self.assertLess(np.max(projective_distance(
                sb.string_lift(ch, s + omega), moved)), 1e-8, label)
            exact = sb.monodromy(ch, c.modulus)
            self.assertEqual(c.n, sb.projective_order(exact), label)
