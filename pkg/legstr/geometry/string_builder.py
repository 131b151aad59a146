"""

Explicit construction of strings, constant-curvature curves and their duals.

A string with characters (m, ell) is built from the angular functions

    Phi_j(s) = int_0^s -6 du / (4 kappa(u) + 3 lambda_j)

as s -> [U . (z1, z2, z3)] with

    z1 = r1 sqrt(f3) e^{-i Phi_3}
    z2 = r2 sqrt(f2) e^{-i Phi_2}
    z3 = r3 sqrt(f1) e^{-i Phi_1},       f_j = 4 kappa + 3 lambda_j,

r1^2 = 6/((l3 - l1)(l3 - l2)), r2^2 = 6/((l3 - l2)(l2 - l1)) and
r3^2 = 6/((l3 - l1)(l2 - l1)). f1 < 0 < f2 < f3 along the whole curve, so
the square roots are constant branches: imaginary for f1, real otherwise.

Moving s by one period omega multiplies the lift by the monodromy
U diag(e^{2 pi i q3}, e^{2 pi i q2}, e^{-2 pi i (q2 + q3)}) U^-1, with
(q2, q3) the value of the period map.

"""

import collections
import logging
from fractions import Fraction

import numpy as np
from scipy.integrate import quad

from legstr.contrib.config import get_tolerances
from legstr.contrib.errors import DomainError, PrecisionLossError
from legstr.geometry.diffinv import (
    CurveJet,
    fubini_densities,
    normalize_lift,
)
from legstr.geometry.dynamics import (
    Characters,
    curvature_profile,
    kappa,
    kappa_taylor,
)
from legstr.geometry.hyperquadric import (
    L,
    U,
    U_INV,
    heisenberg_lift,
    heisenberg_projection,
    herm,
    projective_distance,
    torus_element,
)
from legstr.geometry.moduli import c_of_q, characteristic_numbers, r_of_q
from legstr.geometry.period_map import (
    MonodromicPoint,
    angular_coefficients,
    theta,
)
from legstr.special import series
from legstr.special.elliptic import (
    _pi_complete,
    _pi_incomplete,
    jacobi_am,
    jacobi_sn_cn_dn,
)

__all__ = [
    "LegendrianCurveSample",
    "angular_phi",
    "string_lift",
    "string_jet",
    "string_lift_jet",
    "build_string",
    "monodromy",
    "monodromy_factors",
    "projective_order",
    "dual_configuration",
    "dual_jet",
    "cyclide_profile",
    "constant_curvature_densities",
    "constant_curvature_jet",
    "constant_curvature_curve",
    "jet_for",
    "closure_residual",
    "curve_residuals",
    "axis_distances",
    "heisenberg_projection",
    "heisenberg_lift",
    "r_of_q",
    "c_of_q",
]

logger = logging.getLogger(__name__)

KINDS = ("string", "constant_curvature", "dual", "custom")
LIFT_ORDER = 5

_StringData = collections.namedtuple(
    "_StringData", ["profile", "coefficients", "complete", "amplitudes"])


class LegendrianCurveSample(object):
    """Sampled curve: parameters, lifts, Heisenberg points and provenance.

    ``metadata`` is a dict that may carry "characters", "q", "modulus",
    "characteristic", "periods", "omega" and "scale". ``jet`` is the
    analytic CurveJet of the lift when one is known.
    """

    def __init__(self, s, lifts, heisenberg, kind, metadata=None, jet=None):
        if kind not in KINDS:
            raise DomainError("kind", kind, "one of {}".format(KINDS))
        self.s = np.asarray(s, dtype=float)
        self.lifts = np.asarray(lifts, dtype=complex)
        self.heisenberg = np.asarray(heisenberg, dtype=float)
        self.kind = kind
        self.metadata = dict(metadata or {})
        self.jet = jet

    def __len__(self):
        return len(self.s)

    @property
    def scale(self):
        return float(self.metadata.get("scale", 1.0))

    def __repr__(self):
        return "LegendrianCurveSample(kind={!r}, samples={})".format(
            self.kind, len(self))


def _string_data(ch):
    profile = curvature_profile(ch)
    co = angular_coefficients(profile.characters)
    l1, l2, l3 = (float(v) for v in co.lambdas)
    amplitudes = np.sqrt([6 / ((l3 - l1) * (l3 - l2)),
                          6 / ((l3 - l2) * (l2 - l1)),
                          6 / ((l3 - l1) * (l2 - l1))])
    complete = np.array([float(_pi_complete(co.n[j], profile.m, co.nc[j]))
                         for j in range(3)])
    return _StringData(profile, co, complete, amplitudes)


def _phi(data, j, s):
    """Unwound Phi_j, j = 1..3, vectorized in s."""
    p, co = data.profile, data.coefficients
    u = p.ell * np.asarray(s, dtype=float)
    k = np.round(u / (2 * p.K))
    v = u - 2 * k * p.K
    amp = np.asarray(jacobi_am(v, p.m))
    i = j - 1
    partial = _pi_incomplete(co.n[i], amp, p.m, co.nc[i])
    return -6 * (2 * k * data.complete[i] + partial) / (p.ell * co.A[i])


def _f(data, j, s):
    """4 kappa + 3 lambda_j written as A_j (1 - n_j + n_j cn^2)."""
    p, co = data.profile, data.coefficients
    _, cn, _ = jacobi_sn_cn_dn(p.ell * np.asarray(s, dtype=float), p.m)
    i = j - 1
    return co.A[i] * (co.nc[i] + co.n[i] * np.asarray(cn) ** 2)


def angular_phi(ch, j, s, check=False, tol=None):
    """Angular function Phi_j(s) for any real s.

    With ``check`` the value is compared against adaptive quadrature of
    the integrand.
    """
    if j not in (1, 2, 3):
        raise DomainError("j", j, "j in {1, 2, 3}")
    tol = tol or get_tolerances()
    data = _string_data(ch)
    value = _phi(data, j, s)
    if check:
        lam = float(data.coefficients.lambdas[j - 1])

        def integrand(u):
            return -6 / (4 * float(kappa(data.profile, u)) + 3 * lam)

        for si, vi in np.broadcast(np.asarray(s, dtype=float), value):
            ref = quad(integrand, 0.0, float(si), epsabs=tol.quad_epsabs,
                       epsrel=tol.quad_epsrel, limit=tol.quad_limit)[0]
            if abs(ref - vi) > tol.angular_check_tol * max(1.0, abs(ref)):
                raise PrecisionLossError(
                    "Phi_{}({!r})".format(j, float(si)), abs(ref - vi),
                    tol.angular_check_tol)
    return float(value) if np.ndim(value) == 0 else value


def _z(data, s):
    s = np.asarray(s, dtype=float)
    r = data.amplitudes
    comps = []
    for amp, j in zip(r, (3, 2, 1)):
        g = np.sqrt(_f(data, j, s) + 0j) * np.exp(-1j * _phi(data, j, s))
        comps.append(amp * g)
    return np.stack(comps, axis=-1)


def string_lift(ch, s):
    """Homogeneous lift U . (z1, z2, z3) at s, shape s.shape + (3,)."""
    return _z(_string_data(ch), s) @ U.T


def _string_derivatives(data, s, order):
    z0 = _z(data, s)
    if order == 0:
        return (z0 @ U.T)[None, :]
    c = kappa_taylor(data.profile, s, order)
    dk = series.derivative(c)
    out = np.zeros((order + 1, 3), dtype=complex)
    for col, j in enumerate((3, 2, 1)):
        f = 4 * c.astype(complex)
        f[0] = _f(data, j, s)
        num = 2 * dk.astype(complex)
        num[0] += 6j
        psi = series.div(num, f[:order], order)
        # (k + 1) g_{k+1} = sum_i psi_i g_{k-i}
        g = np.zeros(order + 1, dtype=complex)
        g[0] = z0[col]
        for k in range(order):
            g[k + 1] = sum(psi[i] * g[k - i] for i in range(k + 1)) / (k + 1)
        out[:, col] = g
    return series.taylor_to_derivatives(out) @ U.T


def _lift_jet(data):
    return CurveJet(lambda s, k: _string_derivatives(data, s, k), LIFT_ORDER)


def string_lift_jet(ch):
    """Closed-form CurveJet of the string lift, up to order 5.

    1/f_j has poles a short distance off the real axis where f_j is small,
    so the recursion above loses digits quickly past that order.
    """
    return _lift_jet(_string_data(ch))


def _frame_derivatives(data, lift, sign, s, order):
    """Normalized lift: its closed-form 2-jet continued by
    G''' = i a G - 2 kappa G' - kappa' G."""
    T = np.zeros((max(order, 2) + 1, 3), dtype=complex)
    T[:3] = series.derivatives_to_taylor(normalize_lift(lift, s, 2))
    if order > 2:
        c = kappa_taylor(data.profile, s, order)
        dc = series.derivative(c)
        for k in range(order - 2):
            rhs = 1j * sign * T[k] - sum(
                2 * c[i] * (k - i + 1) * T[k - i + 1] + dc[i] * T[k - i]
                for i in range(k + 1))
            T[k + 3] = rhs / ((k + 1) * (k + 2) * (k + 3))
    return series.taylor_to_derivatives(T[:order + 1])


def _frame_jet(data):
    lift = _lift_jet(data)
    half = 0.5 * data.profile.omega
    a = fubini_densities(normalize_lift(lift, half, 3)).a
    sign = 1.0 if a > 0 else -1.0
    return CurveJet(lambda s, k: _frame_derivatives(data, lift, sign, s, k),
                    10)


def string_jet(ch):
    """CurveJet of the normalized string lift along the natural parameter.

    Orders up to 2 come from the closed form; higher ones from the
    Wilczynski equation with a = +-1 and b = kappa.
    """
    return _frame_jet(_string_data(ch))


def dual_jet(ch):
    return string_jet(ch).transformed(L)


def build_string(ch, samples_per_period=None, periods=1, modulus=None,
                 tol=None):
    """Sample a string over ``periods`` periods, endpoint included.

    With a rational ``modulus`` the characteristic numbers are attached
    and the curve is sampled over its n periods.
    """
    tol = tol or get_tolerances()
    spp = int(samples_per_period or tol.samples_per_period)
    if spp < 4:
        raise DomainError("samples_per_period", spp, ">= 4")
    data = _string_data(ch)
    characteristic = None
    if modulus is not None:
        modulus = MonodromicPoint(Fraction(modulus[0]), Fraction(modulus[1]))
        characteristic = characteristic_numbers(modulus)
        periods = characteristic.n
    if periods < 1:
        raise DomainError("periods", periods, ">= 1")
    p = data.profile
    s = np.linspace(0.0, periods * p.omega, periods * spp + 1)
    lifts = _z(data, s) @ U.T
    heis = heisenberg_projection(lifts, tol.singularity_tol)
    metadata = {
        "characters": p.characters,
        "modulus": modulus,
        "characteristic": characteristic,
        "periods": periods,
        "omega": p.omega,
        "scale": p.ell,
    }
    logger.info("Built string m={!r} ell={!r} over {} period(s), "
                "{} samples".format(p.m, p.ell, periods, len(s)))
    jet = _frame_jet(data)
    return LegendrianCurveSample(s, lifts, heis, "string", metadata, jet)


def monodromy(ch, modulus=None):
    """Monodromy matrix of the string; theta(ch) when modulus is None."""
    if modulus is None:
        values = theta(Characters(float(ch.m), float(ch.ell)))
        q2, q3 = values.theta2, values.theta3
    else:
        q2, q3 = (float(v) for v in modulus)
    return torus_element(2 * np.pi * q3, 2 * np.pi * q2)


def monodromy_factors(modulus):
    """(R1, R2) with monodromy = R1 . R2; R1 rotates the (1, 3)-plane."""
    ch = characteristic_numbers(modulus)
    X = ch.h1 / float(ch.k1)
    Y = ch.h2 / float(ch.k2)
    c, s = np.cos(np.pi * X), np.sin(np.pi * X)
    R1 = np.exp(-1j * np.pi * X / 3) * np.array(
        [[c, 0, s], [0, np.exp(1j * np.pi * X), 0], [-s, 0, c]])
    R2 = np.diag([np.exp(-2j * np.pi * Y / 3), np.exp(4j * np.pi * Y / 3),
                  np.exp(-2j * np.pi * Y / 3)])
    return R1, R2


def projective_order(R, max_order=1000, tol=1e-8):
    """Least k >= 1 with R^k a multiple of the identity, or None."""
    M = np.eye(3, dtype=complex)
    for k in range(1, max_order + 1):
        M = M @ R
        if np.max(np.abs(M - M[0, 0] * np.eye(3))) < tol:
            return k
    return None


def dual_configuration(curve, tol=None):
    """The curve multiplied by L."""
    tol = tol or get_tolerances()
    lifts = curve.lifts @ L.T
    metadata = dict(curve.metadata)
    metadata["dual_of"] = curve.kind
    jet = curve.jet.transformed(L) if curve.jet is not None else None
    return LegendrianCurveSample(
        curve.s, lifts, heisenberg_projection(lifts, tol.singularity_tol),
        "dual", metadata, jet)


def cyclide_profile(r, theta_values):
    """Closed profile eta_r, theta in [0, 2 pi], in Heisenberg space."""
    t = np.asarray(theta_values, dtype=float)
    r2, r4 = r * r, r ** 4
    c, s = np.cos(t), np.sin(t)
    den = 4 + r4 + (4 - r4) * c
    x = 2 * r * (2 + r2 + (2 - r2) * c) / den
    y = -2 * r * (r2 - 2) * s / den
    z = (r4 - 4) * s / den
    return np.stack([x, y, z], axis=-1)


def constant_curvature_densities(r):
    """Closed-form (a, b) of the torus orbit through (1, r, i r^2/2)."""
    r4 = r ** 4
    a = -(r4 ** 3 - 132 * r4 * r4 - 528 * r4 + 64) / (6912 * r ** 6)
    b = (r4 * r4 + 56 * r4 + 16) / (384 * r4)
    return a, b


def _as_ratio(q):
    q = Fraction(q)
    if not q > 1:
        raise DomainError("q", str(q), "q > 1")
    return q


def _orbit(q, t, order):
    r = r_of_q(q)
    w = U_INV @ np.array([1, r, 0.5j * r * r])
    rates = np.array([0, 1j * float(q), -1j])
    t = np.asarray(t, dtype=float)
    phases = np.exp(np.multiply.outer(t, rates)) * w
    out = [phases]
    for _ in range(order):
        out.append(out[-1] * rates)
    return np.stack(out) @ U.T


def constant_curvature_jet(q):
    q = _as_ratio(q)
    return CurveJet(lambda t, k: _orbit(q, t, k), 10)


def constant_curvature_curve(q, samples_per_period=None, tol=None):
    """Closed curve of constant cr-curvature c(q), t in [0, 2 pi n]."""
    tol = tol or get_tolerances()
    q = _as_ratio(q)
    spp = int(samples_per_period or tol.samples_per_period)
    n = q.denominator
    t = np.linspace(0.0, 2 * np.pi * n, n * spp + 1)
    lifts = _orbit(q, t, 0)[0]
    heis = heisenberg_projection(lifts, tol.singularity_tol)
    r = r_of_q(q)
    metadata = {"q": q, "r": r, "c": c_of_q(q), "periods": n,
                "omega": 2 * np.pi, "scale": 1.0}
    logger.info("Built constant-curvature curve q={} (r={!r})".format(q, r))
    return LegendrianCurveSample(t, lifts, heis, "constant_curvature",
                                 metadata, constant_curvature_jet(q))


def jet_for(kind, metadata):
    """Rebuild the analytic jet of a curve from its metadata, or None."""
    if kind == "string":
        return string_jet(metadata["characters"])
    if kind == "constant_curvature":
        return constant_curvature_jet(metadata["q"])
    if kind == "dual":
        base = jet_for(metadata.get("dual_of", "string"), metadata)
        return base.transformed(L) if base is not None else None
    return None


def closure_residual(curve):
    """Projective distance between the first and the last sample."""
    return float(projective_distance(curve.lifts[0], curve.lifts[-1]))


def curve_residuals(curve):
    """Largest null-cone and Legendrian residuals over the samples."""
    G = curve.lifts
    norms = np.linalg.norm(G, axis=-1)
    null = float(np.max(np.abs(herm(G, G)) / norms ** 2))
    legendrian = None
    if curve.jet is not None:
        values = []
        for t in curve.s:
            d = curve.jet(t, 1)
            values.append(abs(herm(d[0], d[1])) /
                          (np.linalg.norm(d[0]) * np.linalg.norm(d[1])))
        legendrian = float(max(values))
    return collections.OrderedDict([("null_cone", null),
                                    ("legendrian", legendrian)])


def axis_distances(curve):
    """Least |z2| / |z| of the curve and of its dual, in the U frame."""
    z = curve.lifts @ U_INV.T
    zd = (curve.lifts @ L.T) @ U_INV.T
    norm = np.linalg.norm(z, axis=-1)
    return (float(np.min(np.abs(z[:, 1]) / norm)),
            float(np.min(np.abs(zd[:, 1]) / np.linalg.norm(zd, axis=-1))))
