#  Licensed under the Apache License, Version 2.0 (the "License"); you may
#  not use this file except in compliance with the License. You may obtain
#  a copy of the License at
#
#       http://www.apache.org/licenses/LICENSE-2.0
#
#  Unless required by applicable law or agreed to in writing, software
#  distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
#  WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
#  License for the specific language governing permissions and limitations
#  under the License.

import unittest

import numpy as np
from numpy.testing import assert_allclose
from scipy.integrate import quad

from legstr.contrib.errors import DomainError
import legstr.special.elliptic as elliptic


def _quad(f, a, b):
    return quad(f, a, b, epsabs=1e-14, epsrel=1e-13, limit=200)[0]


def _derivative(f, x, h=1e-4):
    # five-point stencil, truncation h^4 f^(5) / 30
    return (f(x - 2 * h) - 8 * f(x - h) + 8 * f(x + h)
            - f(x + 2 * h)) / (12 * h)


def _K(m):
    return _quad(lambda t: 1 / np.sqrt(1 - m * np.sin(t) ** 2), 0, np.pi / 2)


def _Pi(n, phi, m):
    return _quad(lambda t: 1 / ((1 - n * np.sin(t) ** 2) *
                                np.sqrt(1 - m * np.sin(t) ** 2)), 0, phi)


class TestElliptic(unittest.TestCase):
    maxDiff = None

    def setUp(self):
        super(TestElliptic, self).setUp()
        self.rng = np.random.RandomState(20)

    def test_carlson_values(self):
        self.assertAlmostEqual(1.0, elliptic.carlson_RF(1, 1, 1), places=14)
        self.assertAlmostEqual(np.pi / 2, elliptic.carlson_RF(0, 1, 1),
                               places=14)
        self.assertAlmostEqual(1.7972103521034, elliptic.carlson_RD(0, 2, 1),
                               places=12)
        self.assertAlmostEqual(elliptic.carlson_RD(0.5, 2, 1.5),
                               elliptic.carlson_RJ(0.5, 2, 1.5, 1.5),
                               places=13)

    def test_carlson_rc_values(self):
        self.assertAlmostEqual(np.pi / 2, elliptic.carlson_RC(0, 1),
                               places=13)
        self.assertAlmostEqual(np.pi / 4, elliptic.carlson_RC(1, 2),
                               places=13)
        self.assertAlmostEqual(np.arccosh(np.sqrt(2)),
                               elliptic.carlson_RC(2, 1), places=13)
        x = np.array([0.25, 1.0, 9.0])
        assert_allclose(1 / np.sqrt(x), elliptic.carlson_RC(x, x),
                        rtol=1e-14)
        assert_allclose(elliptic.carlson_RF(0.3, 1.7, 1.7),
                        elliptic.carlson_RC(0.3, 1.7), rtol=1e-13)
        with self.assertRaises(DomainError):
            elliptic.carlson_RC(1, 0)

    def test_carlson_rd_against_quadrature(self):
        x, y, z = 0.3, 2.0, 1.2
        ref = 1.5 * _quad(lambda t: 1 / ((t + z) * np.sqrt(
            (t + x) * (t + y) * (t + z))), 0, np.inf)
        assert_allclose(elliptic.carlson_RD(x, y, z), ref, rtol=1e-10)

    def test_carlson_domain(self):
        with self.assertRaises(DomainError):
            elliptic.carlson_RF(0, 0, 1)
        with self.assertRaises(DomainError):
            elliptic.carlson_RF(-1, 1, 1)
        with self.assertRaises(DomainError):
            elliptic.carlson_RJ(1, 1, 1, 0)

    def test_complete_first_and_second_kind(self):
        self.assertAlmostEqual(np.pi / 2, elliptic.ellip_K(0), places=14)
        self.assertAlmostEqual(np.pi / 2, elliptic.ellip_E(0), places=14)
        self.assertAlmostEqual(1.0, elliptic.ellip_E(1), places=14)
        assert_allclose(elliptic.ellip_K(0.5), _K(0.5), rtol=1e-11)
        # omega = 2K/ell for the first closed string
        self.assertAlmostEqual(2.5510, elliptic.ellip_K(0.894052), delta=5e-4)
        with self.assertRaises(DomainError):
            elliptic.ellip_K(1.0)
        with self.assertRaises(DomainError):
            elliptic.ellip_E(1.5)

    def test_legendre_relation(self):
        m = np.linspace(0.01, 0.99, 50)
        K, E = elliptic.ellip_K(m), elliptic.ellip_E(m)
        Kc, Ec = elliptic.ellip_K(1 - m), elliptic.ellip_E(1 - m)
        assert_allclose(E * Kc + Ec * K - K * Kc, np.pi / 2, atol=1e-12)

    def test_third_kind(self):
        self.assertAlmostEqual(elliptic.ellip_K(0.3),
                               elliptic.ellip_Pi_complete(0, 0.3), places=13)
        self.assertAlmostEqual(np.pi / (2 * np.sqrt(0.5)),
                               elliptic.ellip_Pi_complete(0.5, 0), places=13)
        assert_allclose(elliptic.ellip_Pi_complete(0.4, 0.6),
                        _Pi(0.4, np.pi / 2, 0.6), rtol=1e-11)
        assert_allclose(elliptic.ellip_Pi_complete(-3.0, 0.6),
                        _Pi(-3.0, np.pi / 2, 0.6), rtol=1e-11)
        with self.assertRaises(DomainError):
            elliptic.ellip_Pi_complete(1.0, 0.5)

    def test_incomplete_third_kind(self):
        self.assertAlmostEqual(elliptic.ellip_Pi_complete(0.3, 0.5),
                               elliptic.ellip_Pi_incomplete(0.3, np.pi / 2,
                                                            0.5), places=13)
        self.assertEqual(0.0, elliptic.ellip_Pi_incomplete(0.3, 0.0, 0.5))
        assert_allclose(elliptic.ellip_Pi_incomplete(0.2, 0.7, 0.4),
                        _Pi(0.2, 0.7, 0.4), rtol=1e-11)
        self.assertAlmostEqual(-elliptic.ellip_Pi_incomplete(0.2, 0.7, 0.4),
                               elliptic.ellip_Pi_incomplete(0.2, -0.7, 0.4),
                               places=14)
        with self.assertRaises(DomainError):
            elliptic.ellip_Pi_incomplete(0.2, 2.0, 0.4)

    def test_random_points_against_quadrature(self):
        for _ in range(10):
            m = self.rng.uniform(0.05, 0.95)
            n = self.rng.uniform(-2, 0.9)
            phi = self.rng.uniform(-1.5, 1.5)
            assert_allclose(elliptic.ellip_K(m), _K(m), rtol=1e-10)
            assert_allclose(elliptic.ellip_Pi_incomplete(n, phi, m),
                            _Pi(n, phi, m), rtol=1e-10, atol=1e-13)

    def test_amplitude(self):
        self.assertEqual(0.0, elliptic.jacobi_am(0.0, 0.4))
        K = elliptic.ellip_K(0.6)
        self.assertAlmostEqual(np.pi / 2, elliptic.jacobi_am(K, 0.6),
                               places=12)
        self.assertAlmostEqual(1.234, elliptic.jacobi_am(1.234, 0.0),
                               places=13)
        u = self.rng.uniform(-20, 20, 50)
        for m in (0.2, 0.6, 0.9):
            K = elliptic.ellip_K(m)
            assert_allclose(elliptic.jacobi_am(u + 2 * K, m) -
                            elliptic.jacobi_am(u, m), np.pi, atol=1e-12)
            self.assertTrue(np.all(np.diff(elliptic.jacobi_am(
                np.sort(u), m)) > 0))

    def test_sn_cn_dn(self):
        sn, _, _ = elliptic.jacobi_sn_cn_dn(0.9, 0.0)
        self.assertAlmostEqual(np.sin(0.9), sn, places=14)
        sn, cn, dn = elliptic.jacobi_sn_cn_dn(elliptic.ellip_K(0.4), 0.4)
        self.assertAlmostEqual(1.0, sn, places=13)
        u = self.rng.uniform(-10, 10, 1000)
        m = self.rng.uniform(0, 1, 1000)
        sn, cn, dn = elliptic.jacobi_sn_cn_dn(u, m)
        assert_allclose(sn * sn + cn * cn, 1, atol=1e-13)
        assert_allclose(dn * dn + m * sn * sn, 1, atol=1e-13)
        sn, cn, dn = elliptic.jacobi_sn_cn_dn(0.7, 1.0)
        self.assertAlmostEqual(np.tanh(0.7), sn, places=14)
        self.assertAlmostEqual(1 / np.cosh(0.7), dn, places=14)

    def test_derivative_identities(self):
        for m in np.linspace(0.05, 0.95, 20):
            dK = _derivative(elliptic.ellip_K, m)
            dE = _derivative(elliptic.ellip_E, m)
            assert_allclose(elliptic.ellip_K_derivative(m), dK, atol=1e-8,
                            rtol=1e-8)
            assert_allclose(elliptic.ellip_E_derivative(m), dE, atol=1e-8,
                            rtol=1e-8)

    def test_pi_derivative_identities(self):
        for _ in range(20):
            m = self.rng.uniform(0.1, 0.9)
            n = self.rng.uniform(-1.5, 0.8)
            if min(abs(n), abs(n - m)) < 0.05:
                continue
            dn, dm = elliptic.ellip_Pi_derivatives(n, m)
            fn = _derivative(lambda v: elliptic.ellip_Pi_complete(v, m), n)
            fm = _derivative(lambda v: elliptic.ellip_Pi_complete(n, v), m)
            assert_allclose(dn, fn, rtol=1e-7, atol=1e-8)
            assert_allclose(dm, fm, rtol=1e-7, atol=1e-8)
