"""

Curvature profile of a string and its momentum.

A string with characters (m, ell) has cr-curvature

    kappa(s) = 3/2 ell^2 ((m + 1)/3 - m sn^2(ell s, m))

which solves kappa'' = 3/8 m2 - 4 kappa^2 and
kappa'^2 = -8/3 kappa^3 + 3/4 m2 kappa - 9 (1 + m3/8). The spectrum
lambda_1 < lambda_2 < lambda_3 of the momentum is the set of roots of
lambda^3 - m2/2 lambda - m3, real and simple exactly on the domain

    D = {(m, ell) : 0 < m < 1, ell > frak_l(m)}.

"""

import collections
import logging
from fractions import Fraction
from math import factorial

import numpy as np
from scipy.integrate import solve_ivp

from legstr.contrib.config import get_tolerances
from legstr.contrib.errors import ConvergenceError, DomainError
from legstr.special.elliptic import ellip_K, jacobi_sn_cn_dn

__all__ = [
    "Characters",
    "Spectrum",
    "CurvatureProfile",
    "WilczynskiSolution",
    "frak_l",
    "discriminant",
    "discriminant_and_spectrum",
    "validate_characters",
    "curvature_profile",
    "kappa",
    "kappa_taylor",
    "kappa_jet",
    "first_integral_residuals",
    "bracket_matrix",
    "lambda_matrix",
    "integrate_wilczynski",
    "momentum",
    "c_frak",
    "c_frak_closed_form",
]

logger = logging.getLogger(__name__)

Characters = collections.namedtuple("Characters", ["m", "ell"])

Spectrum = collections.namedtuple("Spectrum", ["p", "ptilde", "lambdas"])

WilczynskiSolution = collections.namedtuple(
    "WilczynskiSolution", ["s", "frames"])


class CurvatureProfile(object):

    def __init__(self, characters, omega, m2, m3, K):
        self.characters = characters
        self.omega = omega
        self.m2 = m2
        self.m3 = m3
        self.K = K

    @property
    def m(self):
        return self.characters.m

    @property
    def ell(self):
        return self.characters.ell

    def __repr__(self):
        return "CurvatureProfile(m={!r}, ell={!r}, omega={!r})".format(
            self.m, self.ell, self.omega)


def _cubic_coefficient(m):
    # (m - 2)(1 + m)(2m - 1) = 2m^3 - 3m^2 - 3m + 2
    return (m - 2) * (1 + m) * (2 * m - 1)


def frak_l(m):
    m = np.asarray(m, dtype=float)
    if not np.all((m > 0) & (m < 1)):
        raise DomainError("m", m.tolist(), "0 < m < 1")
    S3 = (1 - m + m * m) ** 1.5
    value = (27 / (_cubic_coefficient(m) + 2 * S3)) ** (1.0 / 6)
    return float(value) if value.ndim == 0 else value


def discriminant(m, ell):
    m = np.asarray(m, dtype=float)
    ell = np.asarray(ell, dtype=float)
    l6 = ell ** 6
    value = 64 * (m * m * (m - 1) ** 2 * l6 * l6
                  + 2 * _cubic_coefficient(m) * l6 - 27)
    return float(value) if np.ndim(value) == 0 else value


def discriminant_and_spectrum(ch):
    """Discriminant, normalized discriminant and sorted spectrum."""
    m = np.asarray(ch.m, dtype=float)
    ell = np.asarray(ch.ell, dtype=float)
    p = np.asarray(discriminant(m, ell))
    S = np.sqrt(1 - m + m * m)
    l2 = ell * ell
    l6 = l2 ** 3
    ptilde = (_cubic_coefficient(m) * l6 - 27) / (2 * S ** 3 * l6)
    if np.all(p > 0):
        alpha = np.arcsin(np.clip(ptilde, -1.0, 1.0)) / 3
        lam2 = -4.0 / 3 * S * l2 * np.sin(alpha)
        lam3 = 2.0 / 3 * S * l2 * np.sin(alpha) + \
            2 / np.sqrt(3) * S * l2 * np.cos(alpha)
        lam1 = -lam2 - lam3
        lambdas = (lam1, lam2, lam3)
    else:
        lambdas = _spectrum_by_roots(m, ell)
    if p.ndim == 0:
        lambdas = tuple(complex(v) if np.iscomplexobj(v) else float(v)
                        for v in lambdas)
        return Spectrum(float(p), float(ptilde), lambdas)
    return Spectrum(p, ptilde, lambdas)


def _spectrum_by_roots(m, ell):
    m, ell = np.broadcast_arrays(m, ell)
    m2, m3 = _first_integral_constants(m, ell)
    out = np.zeros(m.shape + (3,), dtype=complex)
    for idx in np.ndindex(m.shape):
        roots = np.roots([1.0, 0.0, -m2[idx] / 2, -m3[idx]])
        out[idx] = sorted(roots, key=lambda r: (round(r.real, 12), r.imag))
    return out[..., 0], out[..., 1], out[..., 2]


def _first_integral_constants(m, ell):
    m = np.asarray(m, dtype=float)
    ell = np.asarray(ell, dtype=float)
    m2 = 8.0 / 3 * (1 - m + m * m) * ell ** 4
    m3 = 8.0 / 27 * (ell ** 6 * _cubic_coefficient(m) - 27)
    return m2, m3


def validate_characters(ch):
    m, ell = float(ch.m), float(ch.ell)
    if not 0 < m < 1:
        raise DomainError("m", m, "0 < m < 1")
    if not ell > 0:
        raise DomainError("ell", ell, "ell > 0")
    p = discriminant(m, ell)
    if not p > 0:
        raise DomainError(
            "(m, ell)", (m, ell),
            "ell > frak_l(m) = {:.12g} (discriminant {:.3e})".format(
                frak_l(m), p))
    return Characters(m, ell)


def curvature_profile(ch):
    ch = validate_characters(ch)
    K = ellip_K(ch.m)
    m2, m3 = _first_integral_constants(ch.m, ch.ell)
    return CurvatureProfile(ch, 2 * K / ch.ell, float(m2), float(m3), K)


def kappa(profile, s):
    m, ell = profile.m, profile.ell
    sn, _, _ = jacobi_sn_cn_dn(ell * np.asarray(s, dtype=float), m)
    return 1.5 * ell * ell * ((m + 1) / 3 - m * np.asarray(sn) ** 2)


def kappa_taylor(profile, s, order):
    """Taylor coefficients kappa^(k)(s)/k!, k = 0..order, along axis 0."""
    m, ell = profile.m, profile.ell
    s = np.asarray(s, dtype=float)
    sn, cn, dn = (np.asarray(v) for v in
                  jacobi_sn_cn_dn(ell * s, m))
    c = np.zeros((order + 1,) + s.shape)
    c[0] = 1.5 * ell * ell * ((m + 1) / 3 - m * sn * sn)
    if order >= 1:
        c[1] = -3 * m * ell ** 3 * sn * cn * dn
    for k in range(order - 1):
        acc = sum(c[i] * c[k - i] for i in range(k + 1))
        rhs = -4 * acc
        if k == 0:
            rhs = rhs + 3.0 / 8 * profile.m2
        c[k + 2] = rhs / ((k + 1) * (k + 2))
    return c


def kappa_jet(profile, s, order):
    """kappa and its derivatives up to ``order`` at s."""
    c = kappa_taylor(profile, s, order)
    f = np.array([factorial(k) for k in range(order + 1)], dtype=float)
    return c * f.reshape((-1,) + (1,) * (c.ndim - 1))


def first_integral_residuals(profile, s):
    k0, k1, k2 = kappa_jet(profile, s, 2)
    m2, m3 = profile.m2, profile.m3
    r1 = k2 + 4 * k0 * k0 - 3.0 / 8 * m2
    r2 = k1 * k1 + 8.0 / 3 * k0 ** 3 - 3.0 / 4 * m2 * k0 + \
        9 * (1 + m3 / 8)
    return r1, r2


def bracket_matrix(a, b):
    """Wilczynski coefficient matrix B(a, b) for B' = B . B(a, b)."""
    return np.array([[0, -b, a],
                     [1, 0, 1j * b],
                     [0, 1j, 0]], dtype=complex)


def lambda_matrix(jet):
    """Momentum generator from (kappa, kappa', kappa'')."""
    k0, k1, k2 = (float(v) for v in jet[:3])
    return np.array([
        [2 * k0 / 3, 2j + 2 * k1 / 3, -2j * k0 * k0 - 2j * k2 / 3],
        [0, -4 * k0 / 3, 2 + 2j * k1 / 3],
        [2j, 0, 2 * k0 / 3]], dtype=complex)


def integrate_wilczynski(profile, s_span, t_eval=None, tol=None):
    """Frame B(s) solving B' = B B(1, kappa(s)) with B(s_span[0]) = I."""
    tol = tol or get_tolerances()

    def rhs(s, y):
        B = y.reshape(3, 3)
        k = float(kappa(profile, s))
        return (B @ bracket_matrix(1.0, k)).ravel()

    y0 = np.eye(3, dtype=complex).ravel()
    sol = solve_ivp(rhs, s_span, y0, method="DOP853", t_eval=t_eval,
                    rtol=tol.ivp_rtol, atol=tol.ivp_atol)
    if not sol.success:
        raise ConvergenceError(
            "Wilczynski frame integration ({})".format(sol.message),
            sol.nfev, float("nan"))
    logger.debug("Frame integration over {} took {} evaluations".format(
        s_span, sol.nfev))
    frames = sol.y.T.reshape(-1, 3, 3)
    return WilczynskiSolution(sol.t, frames)


def momentum(frame, jet):
    """B Lambda B^-1 for a frame and a kappa jet of order 2."""
    return frame @ lambda_matrix(jet) @ np.linalg.inv(frame)


def _rgamma(k):
    # 1/Gamma(k) for integer k, zero at the poles
    if k <= 0:
        return Fraction(0)
    return Fraction(1, factorial(k - 1))


def c_frak(n):
    """Seven-term Gamma combination, exact."""
    if n < 1:
        raise DomainError("n", n, "n >= 1")
    g = factorial(5 * n)
    r = _rgamma
    c1 = g * r(n + 1) ** 5
    c2 = g * r(n) * r(n + 1) ** 3 * r(n + 2)
    c3 = g * r(n) ** 2 * r(n + 1) * r(n + 2) ** 2
    c4 = g * r(n - 1) * r(n + 1) ** 2 * r(n + 2) ** 2
    c5 = g * r(n - 1) * r(n) * r(n + 2) ** 3
    c6 = g * r(n - 2) * r(n + 1) * r(n + 2) ** 3
    c7 = g * r(n - 3) * r(n + 2) ** 4
    return (6160 * c1 - 13200 * c2 + 5400 * c3 + 3600 * c4
            - 1350 * c5 - 675 * c6 + 81 * c7)


def c_frak_closed_form(n):
    if n < 1:
        raise DomainError("n", n, "n >= 1")
    poly = 4 * n ** 4 + 76 * n ** 3 + 519 * n ** 2 + 1501 * n + 1540
    return Fraction(4 * factorial(5 * n) * poly,
                    factorial(n) * factorial(n + 1) ** 4)
