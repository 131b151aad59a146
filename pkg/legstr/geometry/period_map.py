"""

The period map Theta = (Theta_2, Theta_3) of strings and its inverse.

For characters (m, ell) put A_j = 2(1 + m) ell^2 + 3 lambda_j and
n_j = 6 m ell^2 / A_j, so that 4 kappa + 3 lambda_j = A_j (1 - n_j sn^2).
Then

    Theta_j = 6 Pi(n_j, m) / (pi ell A_j)
            = 3/pi int_0^omega ds / (4 kappa + 3 lambda_j).

Theta maps the domain D diffeomorphically onto the monodromic domain

    M = {(x, y) : x^2 + xy + y^2 < 1/4, x - y > 0, x + y > 1/2}.

A closed string corresponds to a rational point of M. invert_theta()
recovers the characters of a target point: damped Newton iterations with
the analytic Jacobian, seeded from a coarse grid of the modified map
(m, h) -> Theta(m, (1 - h)^(-1/6) frak_l(m)), and a bisection fallback
along the level curves of Theta_2 that uses the sign pattern

    dTheta_2/dm < 0, dTheta_2/dell > 0, dTheta_3/dm > 0, dTheta_3/dell < 0.

"""

import collections
import functools
import logging
from fractions import Fraction

import numpy as np

from legstr.contrib.config import get_tolerances
from legstr.contrib.errors import (
    ConvergenceError,
    DomainError,
    MonodromicDomainError,
)
from legstr.geometry.dynamics import (
    Characters,
    discriminant,
    discriminant_and_spectrum,
    frak_l,
)
from legstr.special.elliptic import (
    _pi_complete,
    ellip_E,
    ellip_K,
)

__all__ = [
    "PeriodValue",
    "Jacobian2x2",
    "MonodromicPoint",
    "angular_coefficients",
    "theta",
    "theta_jacobian",
    "jacobian_determinant",
    "spectrum_gradient",
    "vartheta",
    "vartheta_direct",
    "in_monodromic_domain",
    "distance_to_monodromic_boundary",
    "boundary_arc_sigma23",
    "modified_theta",
    "invert_theta",
]

logger = logging.getLogger(__name__)

PeriodValue = collections.namedtuple(
    "PeriodValue", ["theta1", "theta2", "theta3"])

MonodromicPoint = collections.namedtuple("MonodromicPoint", ["q2", "q3"])

AngularCoefficients = collections.namedtuple(
    "AngularCoefficients", ["lambdas", "A", "n", "nc"])


class Jacobian2x2(collections.namedtuple(
        "Jacobian2x2", ["dm_theta2", "dl_theta2", "dm_theta3", "dl_theta3"])):
    __slots__ = ()

    @property
    def det(self):
        return self.dm_theta2 * self.dl_theta3 - \
            self.dl_theta2 * self.dm_theta3

    def as_matrix(self):
        return np.array([[self.dm_theta2, self.dl_theta2],
                         [self.dm_theta3, self.dl_theta3]])


def _require_domain(m, ell):
    m = np.asarray(m, dtype=float)
    ell = np.asarray(ell, dtype=float)
    ok = (m > 0) & (m < 1) & (ell > 0)
    ok = ok & (np.asarray(discriminant(np.where(ok, m, 0.5),
                                       np.where(ok, ell, 2.0))) > 0)
    if not np.all(ok):
        bad_m = np.broadcast_to(m, ok.shape)[~ok].ravel()[0]
        bad_l = np.broadcast_to(ell, ok.shape)[~ok].ravel()[0]
        raise DomainError("(m, ell)", (float(bad_m), float(bad_l)),
                          "ell > frak_l(m) with 0 < m < 1")
    return m, ell


def angular_coefficients(ch):
    """lambda_j, A_j, n_j and 1 - n_j for j = 1, 2, 3 (stacked on axis 0).

    A_1 and 1 - n_2 suffer cancellation for large ell; both are recovered
    from the identity A (A - 6 ell^2)(6 m ell^2 - A) = 216.
    """
    m, ell = _require_domain(ch.m, ch.ell)
    lambdas = np.stack([np.asarray(v, dtype=float) for v in
                        discriminant_and_spectrum(Characters(m, ell)).lambdas])
    l2 = ell * ell
    A = 2 * (1 + m) * l2 + 3 * lambdas
    A1 = A[0]
    A1 = np.where(np.abs(A1) < l2,
                  216 / ((A1 - 6 * l2) * (6 * m * l2 - A1)), A1)
    A = np.stack([A1, A[1], A[2]])
    n = 6 * m * l2 / A
    d2 = 216 / (A[1] * (A[1] - 6 * l2))
    nc = 1 - n
    nc = np.stack([nc[0], -d2 / A[1], nc[2]])
    lambdas = (A - 2 * (1 + m) * l2) / 3
    return AngularCoefficients(lambdas, A, n, nc)


def _scalar(v):
    v = np.asarray(v)
    return float(v) if v.ndim == 0 else v


def theta(ch):
    m, ell = _require_domain(ch.m, ch.ell)
    co = angular_coefficients(Characters(m, ell))
    values = [6 * _pi_complete(co.n[j], m, co.nc[j]) /
              (np.pi * ell * co.A[j]) for j in range(3)]
    return PeriodValue(*(_scalar(v) for v in values))


def spectrum_gradient(ch, j):
    """(d lambda_j/dm, d lambda_j/d ell) for j in {1, 2, 3}."""
    m, ell = _require_domain(ch.m, ch.ell)
    lam = angular_coefficients(Characters(m, ell)).lambdas[j - 1]
    S2 = 1 + (m - 1) * m
    l2 = ell * ell
    den = 4 * S2 * l2 * l2 - 9 * lam * lam
    d_m = 4.0 / 3 * (2 * (1 - 2 * (m - 1) * m) * l2 ** 3
                     + 3 * (1 - 2 * m) * l2 * l2 * lam) / den
    d_l = -16.0 / 3 * ((m - 2) * (1 + m) * (2 * m - 1) * ell ** 5
                       + 3 * S2 * ell ** 3 * lam) / den
    return _scalar(d_m), _scalar(d_l)


def theta_jacobian(ch):
    """Analytic partial derivatives of Theta_2 and Theta_3."""
    m, ell = _require_domain(ch.m, ch.ell)
    lambdas = angular_coefficients(Characters(m, ell)).lambdas
    K = np.asarray(ellip_K(m))
    E = np.asarray(ellip_E(m))
    l2 = ell * ell
    out = []
    for lam in (lambdas[1], lambdas[2]):
        D = 4 * (1 - m + m * m) * l2 * l2 - 9 * lam * lam
        f11 = (9 * lam + 6 * (m - 1) * l2) / (np.pi * m * ell * D)
        f12 = (9 * lam + 6 * (2 * m - 1) * l2) / \
            (np.pi * (m - 1) * m * ell * D)
        f21 = (18 * lam + 12 * (m - 2) * l2) / (np.pi * l2 * D)
        f22 = 36 / (np.pi * D)
        out.append(f11 * K + f12 * E)
        out.append(f21 * K + f22 * E)
    return Jacobian2x2(*(_scalar(v) for v in out))


def jacobian_determinant(ch):
    """Closed form of det J; negative factors cancel on D."""
    m, ell = _require_domain(ch.m, ch.ell)
    lambdas = angular_coefficients(Characters(m, ell)).lambdas
    K = np.asarray(ellip_K(m))
    E = np.asarray(ellip_E(m))
    l4 = ell ** 4
    D2 = 4 * (1 - m + m * m) * l4 - 9 * lambdas[1] ** 2
    D3 = 4 * (1 - m + m * m) * l4 - 9 * lambdas[2] ** 2
    rho = np.pi ** 2 * ell * m * (m - 1) / (lambdas[1] - lambdas[2]) * \
        D2 * D3
    return _scalar(108 / rho * (3 * E * E + (1 - m) * K * K
                                + 2 * (m - 2) * E * K))


def vartheta(m):
    """Common limit of Theta_2 and Theta_3 at the boundary ell = frak_l(m)."""
    m = np.asarray(m, dtype=float)
    if not np.all((m > 0) & (m < 1)):
        raise DomainError("m", m.tolist(), "0 < m < 1")
    S = np.sqrt(1 - m + m * m)
    phi = np.sqrt(m * (m * (2 * S + 3 - 2 * m) - 2 * S + 3) + 2 * (S - 1))
    n = m + 1 - S
    value = 3 * (1 - m) * m * _pi_complete(n, m) / \
        (np.pi * (m + 1 + S) * phi)
    return _scalar(value)


def vartheta_direct(m):
    """vartheta(m) as 3 Pi(n, m) / (pi frak_l(m)^3 (1 + m + S)), the
    third-kind formula evaluated at the double eigenvalue."""
    m = np.asarray(m, dtype=float)
    if not np.all((m > 0) & (m < 1)):
        raise DomainError("m", m.tolist(), "0 < m < 1")
    S = np.sqrt(1 - m + m * m)
    ell = np.asarray(frak_l(m))
    n = 3 * m / (1 + m + S)
    return _scalar(3 * _pi_complete(n, m) /
                   (np.pi * ell ** 3 * (1 + m + S)))


def _as_exact(v):
    if isinstance(v, (Fraction, int)):
        return Fraction(v)
    return None


def in_monodromic_domain(p):
    """Strict membership of p = (q2, q3); exact for rational entries."""
    q2, q3 = p
    x, y = _as_exact(q2), _as_exact(q3)
    if x is None or y is None:
        x, y = float(q2), float(q3)
        return bool(x * x + x * y + y * y < 0.25 and x - y > 0 and
                    x + y > 0.5)
    return x * x + x * y + y * y < Fraction(1, 4) and x > y and \
        x + y > Fraction(1, 2)


def distance_to_monodromic_boundary(p):
    """Distance from an interior point to the boundary of M.

    M is convex, so this is the least distance to the three boundary
    curves; the one to the ellipse is taken to first order.
    """
    x, y = float(p[0]), float(p[1])
    d_diag = (x - y) / np.sqrt(2)
    d_line = (x + y - 0.5) / np.sqrt(2)
    g = 0.25 - (x * x + x * y + y * y)
    d_ellipse = g / np.hypot(2 * x + y, x + 2 * y)
    return float(min(d_diag, d_line, d_ellipse))


def boundary_arc_sigma23(t):
    """Point of the elliptic arc of the boundary of M joining
    (1/(2 sqrt 3), 1/(2 sqrt 3)) at t = 0 to (1/2, 0) at t = 1."""
    t = float(t)
    if not 0 <= t <= 1:
        raise DomainError("t", t, "0 <= t <= 1")
    if t == 1:
        return 0.5, 0.0
    a = np.arcsin(1 - 2 * t) / 3
    r = np.sqrt(1 - t)
    x = r / (np.sqrt(3) * (1 + 2 * np.sin(a)))
    y = r / (3 * np.cos(a) + np.sqrt(3) * (1 - np.sin(a)))
    return float(x), float(y)


def modified_theta(m, h):
    m = np.asarray(m, dtype=float)
    h = np.asarray(h, dtype=float)
    if not np.all((h > 0) & (h < 1)):
        raise DomainError("h", h.tolist(), "0 < h < 1")
    ell = (1 - h) ** (-1.0 / 6) * np.asarray(frak_l(m))
    return theta(Characters(m, ell))


@functools.lru_cache(maxsize=4)
def _seed_grid(size):
    nodes = (np.arange(size) + 0.5) / size
    # h = 1 - 10^(-6u) puts ell between frak_l(m) and 10 frak_l(m)
    mm, uu = np.meshgrid(nodes, nodes, indexing="ij")
    hh = 1 - 10.0 ** (-6 * uu)
    value = modified_theta(mm, hh)
    return mm, hh, np.asarray(value.theta2), np.asarray(value.theta3)


def _seed(x2, x3, size):
    mm, hh, t2, t3 = _seed_grid(size)
    err = np.maximum(np.abs(t2 - x2), np.abs(t3 - x3))
    i = np.unravel_index(np.argmin(err), err.shape)
    m = float(mm[i])
    ell = (1 - float(hh[i])) ** (-1.0 / 6) * frak_l(m)
    logger.debug("Seed (m={:.6f}, ell={:.6f}) residual {:.3e}".format(
        m, ell, float(err[i])))
    return m, ell


def _inside(m, ell):
    return 0 < m < 1 and ell > 0 and discriminant(m, ell) > 0


def _residual(m, ell, x2, x3):
    value = theta(Characters(m, ell))
    return np.array([value.theta2 - x2, value.theta3 - x3])


def _newton(x2, x3, m, ell, tol):
    r = _residual(m, ell, x2, x3)
    for it in range(tol.newton_max_iter):
        err = float(np.max(np.abs(r)))
        if err <= tol.theta_tol:
            logger.debug("Newton converged in {} steps".format(it))
            return m, ell
        J = theta_jacobian(Characters(m, ell))
        step = np.linalg.solve(J.as_matrix(), -r)
        lam = 1.0
        while lam > 1e-12:
            cm, cl = m + lam * step[0], ell + lam * step[1]
            if _inside(cm, cl):
                cr = _residual(cm, cl, x2, x3)
                cerr = np.max(np.abs(cr))
                if cerr < err or cerr <= tol.theta_tol:
                    break
            lam /= 2
        else:
            raise ConvergenceError("Newton line search", it, err)
        m, ell, r = cm, cl, cr
        logger.debug("Newton step {}: (m={!r}, ell={!r}) residual "
                     "{:.3e}".format(it, m, ell, float(np.max(np.abs(r)))))
    raise ConvergenceError("Newton iteration", tol.newton_max_iter,
                           float(np.max(np.abs(r))))


def _level_ell(m, x2, tol):
    """ell with Theta_2(m, ell) = x2, or None when x2 <= vartheta(m)."""
    lo = frak_l(m) * (1 + 1e-9)
    if theta(Characters(m, lo)).theta2 >= x2:
        return None
    hi = 2 * lo
    while theta(Characters(m, hi)).theta2 < x2:
        hi *= 2
        if hi > 1e4 * lo:
            raise ConvergenceError("Theta_2 level bracket", 0, x2)
    for _ in range(tol.bisection_max_iter):
        mid = (lo + hi) / 2
        if theta(Characters(m, mid)).theta2 < x2:
            lo = mid
        else:
            hi = mid
        if hi - lo <= 4e-16 * hi:
            break
    return (lo + hi) / 2


def _bisection(x2, x3, tol):
    """Theta_3 decreases in m along the level curve Theta_2 = x2."""
    lo, hi = 0.0, 1.0
    for it in range(tol.bisection_max_iter):
        mid = (lo + hi) / 2
        try:
            ell = _level_ell(mid, x2, tol)
        except ConvergenceError:
            # Theta_2 cannot reach x2 in range: m lies right of the target
            hi = mid
            continue
        if ell is None or theta(Characters(mid, ell)).theta3 > x3:
            lo = mid
        else:
            hi = mid
        logger.debug("Bisection bracket m in [{!r}, {!r}]".format(lo, hi))
        if hi - lo <= 4e-16:
            break
    m = (lo + hi) / 2
    ell = _level_ell(m, x2, tol)
    if ell is None:
        raise ConvergenceError("Theta bisection", it, float("nan"))
    return m, ell


def invert_theta(target, tol=None):
    """Characters (m, ell) with Theta(m, ell) = target = (q2, q3)."""
    tol = tol or get_tolerances()
    q2, q3 = target
    if not in_monodromic_domain(target):
        raise MonodromicDomainError(q2, q3)
    x2, x3 = float(q2), float(q3)
    gap = distance_to_monodromic_boundary(target)
    if gap < tol.boundary_margin:
        raise MonodromicDomainError(
            q2, q3, "within {:.1e} of the boundary".format(gap))
    m, ell = _seed(x2, x3, tol.seed_grid)
    try:
        m, ell = _newton(x2, x3, m, ell, tol)
    except ConvergenceError as e:
        logger.warning("{}; falling back to bisection".format(e))
        m, ell = _bisection(x2, x3, tol)
        m, ell = _polish(x2, x3, m, ell, tol)
    logger.info("Theta^-1({}, {}) = (m={!r}, ell={!r})".format(
        q2, q3, m, ell))
    return Characters(m, ell)


def _polish(x2, x3, m, ell, tol):
    try:
        return _newton(x2, x3, m, ell, tol)
    except ConvergenceError:
        err = float(np.max(np.abs(_residual(m, ell, x2, x3))))
        if err > tol.theta_tol:
            raise ConvergenceError("Theta inversion", tol.bisection_max_iter,
                                   err)
        return m, ell
