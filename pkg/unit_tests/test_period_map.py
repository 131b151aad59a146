import unittest
from fractions import Fraction

import numpy as np
from mock import patch
from numpy.testing import assert_allclose
from scipy.integrate import quad

import legstr.geometry.period_map as period_map
from legstr.contrib.config import Tolerances
from legstr.contrib.errors import (
    ConvergenceError,
    DomainError,
    MonodromicDomainError,
)
from legstr.geometry.dynamics import (
    Characters,
    curvature_profile,
    discriminant_and_spectrum,
    frak_l,
    kappa,
)
from legstr.geometry.moduli import (
    KNOWN_STRINGS,
    enumerate_closed_strings,
    modulus_from_linking,
)

FIRST_STRING = Characters(0.894052, 2.78109)

# modulus -> characters of two closed strings
INVERSE_ROWS = [
    ((Fraction(1, 3), Fraction(4, 21)), (0.894052, 2.78109)),
    ((Fraction(10, 27), Fraction(4, 27)), (0.906698, 3.05894)),
]


def _random_characters(rng, count):
    out = []
    for _ in range(count):
        m = rng.uniform(0.1, 0.9)
        out.append(Characters(m, frak_l(m) * rng.uniform(1.1, 3.0)))
    return out


class TestPeriodMap(unittest.TestCase):
    maxDiff = None

    def setUp(self):
        super(TestPeriodMap, self).setUp()
        self.rng = np.random.RandomState(11)

    def test_theta_rows(self):
        value = period_map.theta(Characters(0.906698, 3.05894))
        self.assertAlmostEqual(10 / 27., value.theta2, delta=1e-4)
        self.assertAlmostEqual(4 / 27., value.theta3, delta=1e-4)

    def test_theta_against_quadrature(self):
        for ch in _random_characters(self.rng, 5):
            profile = curvature_profile(ch)
            lambdas = discriminant_and_spectrum(ch).lambdas
            value = period_map.theta(ch)
            for j, lam in enumerate(lambdas):
                ref = 3 / np.pi * quad(
                    lambda s: 1 / (4 * kappa(profile, s) + 3 * lam),
                    0, profile.omega, epsabs=1e-13, epsrel=1e-13,
                    limit=200)[0]
                self.assertAlmostEqual(ref, value[j], delta=1e-9)

    def test_sum_rule_and_image(self):
        for m in np.linspace(0.05, 0.95, 12):
            for f in 10.0 ** np.linspace(-3, 1.5, 12):
                value = period_map.theta(Characters(m, frak_l(m) * (1 + f)))
                total = sum(value)
                self.assertLess(abs(total - round(total)), 1e-9)
                self.assertTrue(period_map.in_monodromic_domain(
                    (value.theta2, value.theta3)))
                self.assertTrue(0.25 < value.theta2 < 0.5)
                self.assertTrue(0 < value.theta3 < 0.5 / np.sqrt(3))

    def test_theta_domain(self):
        with self.assertRaises(DomainError):
            period_map.theta(Characters(0.5, 1.6))
        with self.assertRaises(DomainError):
            period_map.theta(Characters(1.2, 3.0))

    def test_monotonicity(self):
        m = 0.6
        ells = frak_l(m) * np.array([1.05, 1.5, 2.5, 4.0])
        values = [period_map.theta(Characters(m, ell)) for ell in ells]
        self.assertTrue(all(a.theta2 < b.theta2 and a.theta3 > b.theta3
                            for a, b in zip(values, values[1:])))
        ell = 3.0
        ms = [0.2, 0.4, 0.6, 0.8]
        values = [period_map.theta(Characters(v, ell)) for v in ms]
        self.assertTrue(all(a.theta2 > b.theta2 and a.theta3 < b.theta3
                            for a, b in zip(values, values[1:])))

    def test_far_limit(self):
        m = 0.5
        value = period_map.theta(Characters(m, 1e3 * frak_l(m)))
        self.assertAlmostEqual(0.5, value.theta2, delta=1e-3)
        self.assertAlmostEqual(0.0, value.theta3, delta=1e-3)

    def test_jacobian(self):
        J = period_map.theta_jacobian(FIRST_STRING)
        self.assertLess(J.dm_theta2, 0)
        self.assertGreater(J.dl_theta2, 0)
        self.assertGreater(J.dm_theta3, 0)
        self.assertLess(J.dl_theta3, 0)
        self.assertGreater(period_map.theta_jacobian(
            Characters(0.5, 2.0)).det, 0)

    def test_jacobian_against_finite_differences(self):
        h = 1e-5
        for ch in _random_characters(self.rng, 20):
            J = period_map.theta_jacobian(ch).as_matrix()
            tp = period_map.theta(Characters(ch.m + h, ch.ell))
            tm = period_map.theta(Characters(ch.m - h, ch.ell))
            lp = period_map.theta(Characters(ch.m, ch.ell + h))
            lm = period_map.theta(Characters(ch.m, ch.ell - h))
            fd = np.array([
                [(tp.theta2 - tm.theta2) / (2 * h),
                 (lp.theta2 - lm.theta2) / (2 * h)],
                [(tp.theta3 - tm.theta3) / (2 * h),
                 (lp.theta3 - lm.theta3) / (2 * h)]])
            assert_allclose(J, fd, rtol=1e-6, atol=1e-6 * np.abs(fd).max())
            self.assertAlmostEqual(
                1.0, period_map.jacobian_determinant(ch) /
                period_map.theta_jacobian(ch).det, places=9)

    def test_spectrum_gradient(self):
        h = 1e-6
        for ch in _random_characters(self.rng, 5):
            for j in (1, 2, 3):
                d_m, d_l = period_map.spectrum_gradient(ch, j)
                up = discriminant_and_spectrum(
                    Characters(ch.m + h, ch.ell)).lambdas[j - 1]
                down = discriminant_and_spectrum(
                    Characters(ch.m - h, ch.ell)).lambdas[j - 1]
                self.assertAlmostEqual(d_m, (up - down) / (2 * h),
                                       delta=1e-6 * ch.ell ** 2)
                up = discriminant_and_spectrum(
                    Characters(ch.m, ch.ell + h)).lambdas[j - 1]
                down = discriminant_and_spectrum(
                    Characters(ch.m, ch.ell - h)).lambdas[j - 1]
                self.assertAlmostEqual(d_l, (up - down) / (2 * h),
                                       delta=1e-6 * ch.ell ** 2)

    def test_vartheta(self):
        self.assertAlmostEqual(0.5 / np.sqrt(3), period_map.vartheta(1e-6),
                               delta=1e-4)
        values = [period_map.vartheta(m) for m in (0.2, 0.5, 0.8)]
        self.assertGreater(values[0], values[1])
        self.assertGreater(values[1], values[2])
        for m in (0.2, 0.5, 0.8):
            self.assertAlmostEqual(period_map.vartheta(m),
                                   period_map.vartheta_direct(m), places=9)
        with self.assertRaises(DomainError):
            period_map.vartheta(0.0)

    def test_monodromic_domain(self):
        self.assertTrue(period_map.in_monodromic_domain(
            (Fraction(1, 3), Fraction(4, 21))))
        self.assertFalse(period_map.in_monodromic_domain(
            (Fraction(1, 4), Fraction(1, 4))))
        self.assertFalse(period_map.in_monodromic_domain((0.4, 0.4)))
        self.assertGreater(period_map.distance_to_monodromic_boundary(
            (1 / 3., 4 / 21.)), 0)

    def test_boundary_arc(self):
        x, y = period_map.boundary_arc_sigma23(0)
        self.assertAlmostEqual(0.5 / np.sqrt(3), x, places=14)
        self.assertAlmostEqual(0.5 / np.sqrt(3), y, places=14)
        x, y = period_map.boundary_arc_sigma23(1 - 1e-9)
        self.assertAlmostEqual(0.5, x, delta=1e-3)
        self.assertAlmostEqual(0.0, y, delta=1e-3)
        x, y = period_map.boundary_arc_sigma23(0.5)
        self.assertAlmostEqual(0.40825, x, delta=1e-5)
        self.assertAlmostEqual(0.14943, y, delta=1e-5)
        for t in np.linspace(0, 0.99, 12):
            x, y = period_map.boundary_arc_sigma23(t)
            self.assertAlmostEqual(0.25, x * x + x * y + y * y, places=12)
        with self.assertRaises(DomainError):
            period_map.boundary_arc_sigma23(1.5)

    def test_modified_theta_limits(self):
        near = period_map.modified_theta(0.5, 1e-10)
        target = period_map.vartheta(0.5)
        self.assertAlmostEqual(target, near.theta2, delta=1e-4)
        self.assertAlmostEqual(target, near.theta3, delta=1e-4)
        far = period_map.modified_theta(0.5, 1 - 1e-8)
        self.assertAlmostEqual(0.5, far.theta2, delta=1e-3)
        self.assertAlmostEqual(0.0, far.theta3, delta=1e-3)
        edge = period_map.modified_theta(1e-6, 0.3)
        x, y = period_map.boundary_arc_sigma23(0.3)
        self.assertAlmostEqual(x, edge.theta2, delta=1e-3)
        self.assertAlmostEqual(y, edge.theta3, delta=1e-3)

    def test_invert_rows(self):
        for target, expected in INVERSE_ROWS:
            ch = period_map.invert_theta(target)
            assert_allclose(expected, ch, atol=1e-4)

    def test_invert_known_strings(self):
        for row in KNOWN_STRINGS:
            label = "|{},{},{}>".format(row.n, row.l1, row.l2)
            ch = period_map.invert_theta(
                modulus_from_linking(row.n, row.l1, row.l2))
            self.assertAlmostEqual(row.m, ch.m, delta=1e-4, msg=label)
            self.assertAlmostEqual(row.ell, ch.ell, delta=1e-4, msg=label)
            self.assertAlmostEqual(row.omega, curvature_profile(ch).omega,
                                   delta=1e-4, msg=label)

    def test_invert_round_trip(self):
        for c in enumerate_closed_strings(15)[::4]:
            q = c.modulus
            value = period_map.theta(period_map.invert_theta(q))
            self.assertAlmostEqual(float(q.q2), value.theta2, delta=1e-10)
            self.assertAlmostEqual(float(q.q3), value.theta3, delta=1e-10)

    def test_invert_falls_back_to_bisection(self):
        newton = period_map._newton
        calls = []

        def flaky(*args):
            calls.append(args)
            if len(calls) == 1:
                raise ConvergenceError("Newton iteration", 0, 1.0)
            return newton(*args)

        target, expected = INVERSE_ROWS[0]
        with patch.object(period_map, "_newton", side_effect=flaky):
            with self.assertLogs("legstr.geometry.period_map",
                                 level="WARNING"):
                ch = period_map.invert_theta(target, Tolerances())
        self.assertEqual(2, len(calls))
        assert_allclose(expected, ch, atol=1e-4)

    def test_invert_rejects_outside(self):
        with self.assertRaises(MonodromicDomainError):
            period_map.invert_theta((Fraction(1, 4), Fraction(1, 4)))
        near = (Fraction(3, 8), Fraction(1, 8) + Fraction(1, 10 ** 12))
        self.assertTrue(period_map.in_monodromic_domain(near))
        with self.assertRaises(MonodromicDomainError):
            period_map.invert_theta(near)
