"""

Differential invariants of parametrized Legendrian curves.

Everything here works on curve jets: a CurveJet returns the derivatives
Gamma, Gamma', ..., Gamma^(k) of a lift at a parameter value. A lift is
normalized by a scalar factor mu with mu^3 det(Gamma, Gamma', Gamma'') = i,
computed as a truncated power series so that derivatives of the densities

    a = Im <Gamma''', Gamma''>,    b = 1/2 <Gamma'', Gamma''>

come out of exact series arithmetic rather than finite differences. The
stress density needs a up to its fifth derivative, so curve jets of order
ten are requested for it.

"""

import collections
import logging
from math import factorial

import numpy as np
from numpy.polynomial import polynomial as P
from numpy.polynomial.legendre import leggauss

from legstr.contrib.config import get_tolerances
from legstr.contrib.errors import (
    ConvergenceError,
    DegeneracyError,
    DomainError,
)
from legstr.geometry.dynamics import lambda_matrix
from legstr.geometry.hyperquadric import herm
from legstr.special import series

__all__ = [
    "CurveJet",
    "FubiniData",
    "Check",
    "ReparamReport",
    "MomentumReport",
    "normalize_lift",
    "normalized_identities",
    "fubini_densities",
    "density_jets",
    "stress_density",
    "curve_stress",
    "total_strain",
    "fubini_reparam_check",
    "schwarzian",
    "fd_jet",
    "momentum_drift",
    "perturbed_cycle_jet",
    "cycle_jet",
]

logger = logging.getLogger(__name__)

_GL_NODES, _GL_WEIGHTS = leggauss(10)

FubiniData = collections.namedtuple("FubiniData", ["a", "b", "strain"])

Check = collections.namedtuple(
    "Check", ["name", "residual", "tolerance", "passed"])

ReparamReport = collections.namedtuple(
    "ReparamReport", ["a_residual", "b_residual", "passed"])

MomentumReport = collections.namedtuple(
    "MomentumReport", ["momentum", "drift", "eigenvalues"])


class CurveJet(object):
    """Derivatives of a lift, ``jet(t, k)`` -> array of shape (k + 1, 3).

    ``accuracy`` is "analytic" for closed-form recursions and "fd" for
    finite-difference stencils.
    """

    def __init__(self, derivatives, max_order, accuracy="analytic"):
        self._derivatives = derivatives
        self.max_order = max_order
        self.accuracy = accuracy

    def __call__(self, t, order):
        if order > self.max_order:
            raise DomainError("order", order,
                              "order <= {}".format(self.max_order))
        d = np.asarray(self._derivatives(float(t), order), dtype=complex)
        return d[:order + 1]

    def transformed(self, matrix):
        """Jet of matrix . Gamma for a constant 3x3 matrix."""
        matrix = np.asarray(matrix)
        return CurveJet(lambda t, k: self._derivatives(t, k) @ matrix.T,
                        self.max_order, self.accuracy)

    def reversed(self):
        """Jet of t -> Gamma(-t)."""
        def derivatives(t, k):
            d = np.asarray(self._derivatives(-t, k))
            signs = (-1.0) ** np.arange(len(d))
            return d * signs[:, None]
        return CurveJet(derivatives, self.max_order, self.accuracy)


def _herm_series(z, w):
    """Taylor series of <z(t), w(t)> from the series of z and w."""
    zc = np.conj(z)
    n = min(len(z), len(w))
    return (1j * (series.mul(zc[:, 0], w[:, 2], n)
                  - series.mul(zc[:, 2], w[:, 0], n))
            + series.mul(zc[:, 1], w[:, 1], n))


def _normalized_series(jet, t, order, tol):
    """Taylor series at t of the normalized lift, up to ``order``."""
    T = series.derivatives_to_taylor(jet(t, order + 2))
    d1 = series.derivative(T)
    d2 = series.derivative(d1)
    det = series.dot(T, series.cross(d1, d2, order + 1), order + 1)
    scale = np.linalg.norm(T[0]) * np.linalg.norm(d1[0]) * \
        np.linalg.norm(d2[0])
    if abs(det[0]) < tol.degeneracy_tol * scale:
        raise DegeneracyError(
            "det(Gamma, Gamma', Gamma'') at t={!r}".format(t),
            abs(det[0]))
    w = 1j / det[0]
    # cube root with argument in (-pi/3, pi/3]
    mu0 = abs(w) ** (1.0 / 3) * np.exp(1j * np.angle(w) / 3)
    mu = series.power(det, -1.0 / 3, order + 1, leading=mu0)
    return series.mul(mu, T, order + 1)


def normalize_lift(jet, t, order=3, tol=None):
    """Derivatives up to ``order`` of the normalized lift at t."""
    tol = tol or get_tolerances()
    return series.taylor_to_derivatives(
        _normalized_series(jet, t, order, tol))


def normalized_identities(d):
    """Residuals of the identities satisfied by a normalized jet d."""
    g0, g1, g2 = d[0], d[1], d[2]
    return collections.OrderedDict([
        ("<G,G>", abs(herm(g0, g0))),
        ("<G,G'>", abs(herm(g0, g1))),
        ("<G',G''>", abs(herm(g1, g2))),
        ("<G',G'>-1", abs(herm(g1, g1) - 1)),
        ("<G,G''>+1", abs(herm(g0, g2) + 1)),
        ("det-i", abs(np.linalg.det(np.stack([g0, g1, g2], axis=1)) - 1j)),
    ])


def fubini_densities(d):
    """Fubini densities from a normalized jet of order >= 3."""
    a = float(np.imag(herm(d[3], d[2])))
    b = float(np.real(herm(d[2], d[2]))) / 2
    return FubiniData(a, b, float(np.cbrt(abs(a))))


def density_jets(jet, t, order_a=5, order_b=3, tol=None):
    """Derivatives (a, a', ...) and (b, b', ...) along the parameter."""
    tol = tol or get_tolerances()
    N = max(order_a + 3, order_b + 2)
    G = _normalized_series(jet, t, N, tol)
    G2 = series.derivative(series.derivative(G))
    G3 = series.derivative(G2)
    a = np.imag(_herm_series(G3, G2))[:order_a + 1]
    b = np.real(_herm_series(G2, G2))[:order_b + 1] / 2
    return (series.taylor_to_derivatives(a),
            series.taylor_to_derivatives(b))


def stress_density(a, b):
    """Stress density from (a, ..., a^(5)) and (b, ..., b''')."""
    a0, a1, a2, a3, a4, a5 = (float(v) for v in a[:6])
    b0, b1, b2, b3 = (float(v) for v in b[:4])
    return (4400.0 / 81 * a0 * a1 ** 3 * a2
            + a0 ** 2 * (-400.0 / 27 * b0 * a1 ** 3
                         - 200.0 / 9 * a1 * a2 ** 2
                         - 400.0 / 27 * a1 ** 2 * a3)
            + a0 ** 3 * (25.0 / 3 * a1 ** 2 * b1
                         + 50.0 / 3 * b0 * a1 * a2
                         + 50.0 / 9 * a2 * a3
                         + 25.0 / 9 * a1 * a4)
            + a0 ** 4 * (-16.0 / 3 * b0 ** 2 * a1
                         - 5 * b1 * a2
                         - 3 * a1 * b2
                         - 10.0 / 3 * b0 * a3
                         - 1.0 / 3 * a5)
            + a0 ** 5 * (8 * b0 * b1 + b3)
            - 6160.0 / 243 * a1 ** 5)


def curve_stress(jet, t, tol=None):
    a, b = density_jets(jet, t, 5, 3, tol)
    return stress_density(a, b)


def _gauss_sum(density, lo, hi, panels):
    edges = np.linspace(lo, hi, panels + 1)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[1:] + edges[:-1])
    total = 0.0
    for h, m in zip(half, mid):
        total += h * sum(w * density(m + h * x)
                         for x, w in zip(_GL_NODES, _GL_WEIGHTS))
    return total


def total_strain(curve, tol=None):
    """Integral of the strain density over the parameter range.

    Composite Gauss-Legendre, one panel per period to start; panel
    widths are halved until two successive sums agree.
    """
    tol = tol or get_tolerances()
    if curve.jet is None:
        raise DomainError("curve", curve.kind, "a curve with a jet")

    def density(t):
        return fubini_densities(normalize_lift(curve.jet, t, 3, tol)).strain

    lo, hi = float(curve.s[0]), float(curve.s[-1])
    panels = int(curve.metadata.get("periods") or 1)
    value = _gauss_sum(density, lo, hi, panels)
    err = float("inf")
    while True:
        panels *= 2
        if panels > tol.quad_limit:
            raise ConvergenceError("Total strain quadrature",
                                   panels * len(_GL_NODES), err)
        previous, value = value, _gauss_sum(density, lo, hi, panels)
        err = abs(value - previous)
        if err <= max(tol.quad_epsabs, tol.quad_epsrel * abs(value)) * 1e3:
            break
    logger.info("Total strain over [{:.6f}, {:.6f}] = {!r} ({} panels)"
                .format(lo, hi, value, panels))
    return value


def schwarzian(h):
    """S(h) = h'''/h' - 3/2 (h''/h')^2 from (h, h', h'', h''')."""
    return h[3] / h[1] - 1.5 * (h[2] / h[1]) ** 2


def _compose(jet, h, t, order):
    """Taylor series at t of Gamma(h(t)), h given by its derivatives."""
    hd = np.asarray(h(t, order), dtype=float)
    G = series.derivatives_to_taylor(jet(hd[0], order))
    inner = series.derivatives_to_taylor(hd)
    inner[0] = 0.0
    return hd, series.compose(G, inner, order + 1)


def fubini_reparam_check(jet, h, t_values, tol=None):
    """Checks a~ = h'^3 a(h) and b~ = h'^2 b(h) + S(h) along t_values.

    ``h(t, k)`` returns h, h', ..., h^(k) at t with h' > 0.
    """
    tol = tol or get_tolerances()
    order = 5
    da, db = 0.0, 0.0
    for t in t_values:
        hd, G = _compose(jet, h, t, order)
        if hd[1] <= 0:
            raise DomainError("h'", hd[1], "h' > 0")
        composed = CurveJet(
            lambda u, k, G=G: series.taylor_to_derivatives(G)[:k + 1],
            order)
        new = fubini_densities(normalize_lift(composed, t, 3, tol))
        old = fubini_densities(normalize_lift(jet, hd[0], 3, tol))
        da = max(da, abs(new.a - hd[1] ** 3 * old.a))
        db = max(db, abs(new.b - hd[1] ** 2 * old.b - schwarzian(hd)))
    return ReparamReport(da, db, da <= tol.fubini_tol and
                         db <= tol.fubini_tol)


def _stencil(k, half_width):
    offsets = np.arange(-half_width, half_width + 1, dtype=float)
    V = np.vander(offsets, increasing=True).T
    rhs = np.zeros(len(offsets))
    rhs[k] = factorial(k)
    return np.linalg.solve(V, rhs)


def fd_jet(func, step, max_order=3, half_width=3):
    """Central-difference jet of a lift t -> func(t)."""
    weights = [_stencil(k, half_width) for k in range(max_order + 1)]

    def derivatives(t, order):
        pts = np.array([func(t + j * step) for j in
                        range(-half_width, half_width + 1)], dtype=complex)
        out = [pts[half_width]]
        for k in range(1, order + 1):
            out.append(weights[k] @ pts / step ** k)
        return np.stack(out)

    return CurveJet(derivatives, max_order, accuracy="fd")


def momentum_drift(jet, s_values, tol=None):
    """Momentum B Lambda B^-1 along a naturally parametrized curve.

    The Wilczynski frame is (G, G', -i(G'' + b G)) on the normalized
    lift. A negative cubic density means the parameter runs against the
    natural orientation; the jet is reversed first.
    """
    tol = tol or get_tolerances()
    s_values = np.asarray(s_values, dtype=float)
    first = fubini_densities(normalize_lift(jet, s_values[0], 3, tol))
    if first.a < 0:
        jet, s_values = jet.reversed(), -s_values
    moments = []
    for s in s_values:
        G = _normalized_series(jet, s, 4, tol)
        G2 = series.derivative(series.derivative(G))
        b = series.taylor_to_derivatives(
            np.real(_herm_series(G2, G2))[:3] / 2)
        d = series.taylor_to_derivatives(G)
        B = np.stack([d[0], d[1], -1j * (d[2] + b[0] * d[0])], axis=1)
        moments.append(B @ lambda_matrix(b) @ np.linalg.inv(B))
    m0 = moments[0]
    scale = max(1.0, float(np.max(np.abs(m0))))
    drift = max(float(np.max(np.abs(m - m0))) for m in moments) / scale
    eig = np.sort(np.linalg.eigvals(m0).real)
    return MomentumReport(m0, drift, eig)


def _polynomial_jet(coefficients):
    coefficients = [np.asarray(c, dtype=complex) for c in coefficients]

    def derivatives(t, order):
        return np.array([[P.polyval(t, P.polyder(c, k)) if len(c) > k
                          else 0.0 for c in coefficients]
                         for k in range(order + 1)], dtype=complex)

    return CurveJet(derivatives, 10)


def cycle_jet():
    """The Legendrian cycle t -> [1, t, i t^2/2]."""
    return _polynomial_jet([[1], [0, 1], [0, 0, 0.5j]])


def perturbed_cycle_jet(epsilon=0.5):
    """Lift of the Legendrian arc (t, eps t^3, -eps t^4/2).

    It is tangent to the contact distribution for every eps, and fails
    to be critical: its stress density is nonzero at t = 0.
    """
    e = float(epsilon)
    # heisenberg_lift(t, e t^3, -e t^4/2) written out as polynomials
    x_iy = [0, 1, 0, 1j * e]
    w = [0, 0, 0.5j, 0, -e / 2, 0, 0.5j * e * e]
    return _polynomial_jet([[1], x_iy, w])
