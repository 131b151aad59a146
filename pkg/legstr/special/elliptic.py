"""

Elliptic integrals and Jacobi elliptic functions.

All Legendre-form integrals are reduced to Carlson's symmetric integrals
R_F, R_D and R_J, which are evaluated with the duplication theorem. The
Jacobi amplitude comes from the descending Landen (AGM) sequence.

The parameter convention is the squared modulus m everywhere:

    K(m) = int_0^{pi/2} dt / sqrt(1 - m sin^2 t)

Every function accepts scalars or numpy arrays and broadcasts its
arguments. Scalar input returns a python float.

Reference: B. C. Carlson, "Numerical computation of real or complex
elliptic integrals", Numer. Algorithms 10 (1995).

"""

import logging

import numpy as np

from legstr.contrib.errors import DomainError

__all__ = [
    "carlson_RF",
    "carlson_RD",
    "carlson_RJ",
    "carlson_RC",
    "ellip_K",
    "ellip_E",
    "ellip_Pi_complete",
    "ellip_Pi_incomplete",
    "jacobi_am",
    "jacobi_sn_cn_dn",
    "ellip_K_derivative",
    "ellip_E_derivative",
    "ellip_Pi_derivatives",
]

logger = logging.getLogger(__name__)

_EPS = np.finfo(float).eps
_RF_Q = (3 * _EPS) ** (-1.0 / 8)
_RJ_Q = (_EPS / 4) ** (-1.0 / 8)
_AGM_MAX_STEPS = 40


def _result(value):
    value = np.asarray(value, dtype=float)
    if value.ndim == 0:
        return float(value)
    return value


def _check(name, value, ok, constraint):
    ok = np.asarray(ok, dtype=bool)
    if not np.all(ok):
        value = np.broadcast_to(np.asarray(value), ok.shape)
        bad = value[~ok].ravel()[:3].tolist()
        raise DomainError(name, bad[0] if len(bad) == 1 else bad,
                          constraint)


def _check_rf_arguments(x, y, z):
    _check("(x, y, z)", x, (x >= 0) & (y >= 0) & (z >= 0),
           "nonnegative arguments")
    zeros = (x == 0).astype(int) + (y == 0) + (z == 0)
    _check("(x, y, z)", x, zeros <= 1, "at most one zero argument")


def carlson_RF(x, y, z):
    """R_F(x,y,z) = 1/2 int_0^inf dt/sqrt((t+x)(t+y)(t+z))."""
    x, y, z = np.broadcast_arrays(*(np.asarray(v, dtype=float)
                                    for v in (x, y, z)))
    _check_rf_arguments(x, y, z)
    A0 = (x + y + z) / 3
    Q = _RF_Q * np.maximum(np.maximum(np.abs(A0 - x), np.abs(A0 - y)),
                           np.abs(A0 - z))
    xm, ym, zm, A = x, y, z, A0
    pow4 = 1.0
    while np.any(pow4 * Q >= np.abs(A)):
        sx, sy, sz = np.sqrt(xm), np.sqrt(ym), np.sqrt(zm)
        lam = sx * sy + sx * sz + sy * sz
        xm, ym, zm = (xm + lam) / 4, (ym + lam) / 4, (zm + lam) / 4
        A = (A + lam) / 4
        pow4 /= 4
    X = (A0 - x) * pow4 / A
    Y = (A0 - y) * pow4 / A
    Z = -(X + Y)
    E2 = X * Y - Z * Z
    E3 = X * Y * Z
    return _result(
        (1.0
         + E3 * (1.0 / 14 + 3 * E3 / 104)
         + E2 * (-1.0 / 10 + E2 / 24 - 3 * E3 / 44 - 5 * E2 * E2 / 208
                 + E2 * E3 / 16)) / np.sqrt(A))


def _rc_one(e):
    # R_C(1, 1+e) for e > -1
    e = np.asarray(e, dtype=float)
    out = np.ones_like(e)
    small = np.abs(e) < 1e-4
    out = np.where(small, 1 - e / 3 + e * e / 5 - e ** 3 / 7, out)
    pos = (e > 0) & ~small
    neg = (e < 0) & ~small
    with np.errstate(invalid="ignore", divide="ignore"):
        se = np.sqrt(np.abs(e))
        out = np.where(pos, np.arctan(se) / se, out)
        out = np.where(neg, np.arctanh(se) / se, out)
    return out


def carlson_RC(x, y):
    """R_C(x,y) = R_F(x,y,y), with y > 0."""
    x, y = np.broadcast_arrays(np.asarray(x, dtype=float),
                               np.asarray(y, dtype=float))
    _check("(x, y)", x, (x >= 0) & (y > 0), "x >= 0 and y > 0")
    xs = np.where(x > 0, x, 1.0)
    scaled = _rc_one(y / xs - 1) / np.sqrt(xs)
    return _result(np.where(x > 0, scaled, np.pi / (2 * np.sqrt(y))))


def _carlson_rj(x, y, z, p):
    A0 = (x + y + z + 2 * p) / 5
    delta = (p - x) * (p - y) * (p - z)
    Q = _RJ_Q * np.max(np.abs(np.stack([A0 - x, A0 - y, A0 - z, A0 - p])),
                       axis=0)
    xm, ym, zm, pm, A = x, y, z, p, A0
    pow4 = 1.0
    S = np.zeros_like(A0)
    while np.any(pow4 * Q >= np.abs(A)):
        sx, sy, sz, sp = np.sqrt(xm), np.sqrt(ym), np.sqrt(zm), np.sqrt(pm)
        lam = sx * sy + sx * sz + sy * sz
        d = (sp + sx) * (sp + sy) * (sp + sz)
        e = delta * pow4 ** 3 / (d * d)
        S = S + pow4 * _rc_one(e) / d
        xm, ym, zm, pm = ((xm + lam) / 4, (ym + lam) / 4,
                          (zm + lam) / 4, (pm + lam) / 4)
        A = (A + lam) / 4
        pow4 /= 4
    t = pow4 / A
    X, Y, Z = (A0 - x) * t, (A0 - y) * t, (A0 - z) * t
    P = -(X + Y + Z) / 2
    E2 = X * Y + X * Z + Y * Z - 3 * P * P
    E3 = X * Y * Z + 2 * E2 * P + 4 * P ** 3
    E4 = (2 * X * Y * Z + E2 * P + 3 * P ** 3) * P
    E5 = X * Y * Z * P * P
    poly = (24024 - 5148 * E2 + 2457 * E2 * E2 + 4004 * E3
            - 4158 * E2 * E3 - 3276 * E4 + 2772 * E5) / 24024
    return pow4 * A ** -1.5 * poly + 6 * S


def carlson_RJ(x, y, z, p):
    """R_J(x,y,z,p) = 3/2 int_0^inf dt/((t+p) sqrt((t+x)(t+y)(t+z)))."""
    x, y, z, p = np.broadcast_arrays(*(np.asarray(v, dtype=float)
                                       for v in (x, y, z, p)))
    _check_rf_arguments(x, y, z)
    _check("p", p, p > 0, "p > 0")
    return _result(_carlson_rj(x, y, z, p))


def carlson_RD(x, y, z):
    """R_D(x,y,z) = R_J(x,y,z,z), with z > 0."""
    x, y, z = np.broadcast_arrays(*(np.asarray(v, dtype=float)
                                    for v in (x, y, z)))
    _check("(x, y)", x, (x >= 0) & (y >= 0) & ((x > 0) | (y > 0)),
           "nonnegative x, y, not both zero")
    _check("z", z, z > 0, "z > 0")
    A0 = (x + y + 3 * z) / 5
    Q = _RJ_Q * np.max(np.abs(np.stack([A0 - x, A0 - y, A0 - z])), axis=0)
    xm, ym, zm, A = x, y, z, A0
    pow4 = 1.0
    S = np.zeros_like(A0)
    while np.any(pow4 * Q >= np.abs(A)):
        sx, sy, sz = np.sqrt(xm), np.sqrt(ym), np.sqrt(zm)
        lam = sx * sy + sx * sz + sy * sz
        S = S + pow4 / (sz * (zm + lam))
        xm, ym, zm = (xm + lam) / 4, (ym + lam) / 4, (zm + lam) / 4
        A = (A + lam) / 4
        pow4 /= 4
    X = (A0 - x) * pow4 / A
    Y = (A0 - y) * pow4 / A
    Z = -(X + Y) / 3
    E2 = X * Y - 6 * Z * Z
    E3 = (3 * X * Y - 8 * Z * Z) * Z
    E4 = 3 * (X * Y - Z * Z) * Z * Z
    E5 = X * Y * Z ** 3
    poly = (1 - 3 * E2 / 14 + E3 / 6 + 9 * E2 * E2 / 88 - 3 * E4 / 22
            - 9 * E2 * E3 / 52 + 3 * E5 / 26)
    return _result(pow4 * A ** -1.5 * poly + 3 * S)


def _as_m(m, allow_one=False):
    m = np.asarray(m, dtype=float)
    if allow_one:
        _check("m", m, (m >= 0) & (m <= 1), "0 <= m <= 1")
    else:
        _check("m", m, (m >= 0) & (m < 1), "0 <= m < 1")
    return m


def ellip_K(m):
    m = _as_m(m)
    return carlson_RF(0.0, 1 - m, 1.0)


def ellip_E(m):
    m = _as_m(m, allow_one=True)
    one = m == 1
    ms = np.where(one, 0.0, m)
    y = 1 - ms
    value = np.asarray(carlson_RF(0.0, y, 1.0)) - \
        ms / 3 * np.asarray(carlson_RD(0.0, y, 1.0))
    return _result(np.where(one, 1.0, value))


def _pi_complete(n, m, nc=None):
    """Complete Pi(n, m); ``nc`` is 1 - n when known more accurately."""
    nc = 1 - n if nc is None else nc
    y = 1 - m
    return np.asarray(carlson_RF(0.0, y, 1.0)) + \
        n / 3 * np.asarray(carlson_RJ(0.0, y, 1.0, nc))


def ellip_Pi_complete(n, m):
    m = _as_m(m)
    n = np.asarray(n, dtype=float)
    _check("n", n, n < 1, "n < 1")
    return _result(_pi_complete(n, m))


def ellip_Pi_incomplete(n, phi, m):
    """Pi(n, phi, m) for |phi| <= pi/2; odd in phi."""
    m = _as_m(m)
    n = np.asarray(n, dtype=float)
    phi = np.asarray(phi, dtype=float)
    _check("n", n, n < 1, "n < 1")
    _check("phi", phi, np.abs(phi) <= np.pi / 2 + 1e-12,
           "|phi| <= pi/2")
    return _result(_pi_incomplete(n, phi, m))


def _pi_incomplete(n, phi, m, nc=None):
    """Unchecked Pi(n, phi, m); ``nc`` is 1 - n when known more accurately."""
    nc = 1 - n if nc is None else nc
    s = np.sin(phi)
    c2 = np.cos(phi) ** 2
    s2 = s * s
    # |phi| = pi/2 in floating point leaves a tiny positive c2
    c2 = np.where(np.abs(phi) >= np.pi / 2, 0.0, c2)
    y = 1 - m * s2
    rf = np.asarray(carlson_RF(c2, y, 1.0))
    # 1 - n sin^2 = (1 - n) + n cos^2, free of cancellation near n = 1
    rj = np.asarray(carlson_RJ(c2, y, 1.0, nc + n * c2))
    return s * rf + n / 3 * s * s2 * rj


def _agm_amplitude(u, m):
    a = np.ones_like(m)
    b = np.sqrt(1 - m)
    c = np.sqrt(m)
    a_seq, c_seq = [a], [c]
    steps = 0
    while np.any(np.abs(c) > _EPS) and steps < _AGM_MAX_STEPS:
        a, b, c = (a + b) / 2, np.sqrt(a * b), (a - b) / 2
        a_seq.append(a)
        c_seq.append(c)
        steps += 1
    phi = 2.0 ** steps * a_seq[-1] * u
    for i in range(steps, 0, -1):
        ratio = np.clip(c_seq[i] * np.sin(phi) / a_seq[i], -1.0, 1.0)
        phi = (np.arcsin(ratio) + phi) / 2
    return phi


def jacobi_am(u, m):
    """Jacobi amplitude, continuous and increasing in u."""
    m = _as_m(m, allow_one=True)
    u, m = np.broadcast_arrays(np.asarray(u, dtype=float), m)
    one = m == 1
    ms = np.where(one, 0.0, m)
    # Reduce by whole periods: am(u + 2kK) = am(u) + k pi
    K = np.asarray(carlson_RF(0.0, 1 - ms, 1.0))
    k = np.round(u / (2 * K))
    phi = _agm_amplitude(u - 2 * k * K, ms) + k * np.pi
    gd = 2 * np.arctan(np.tanh(u / 2))
    return _result(np.where(one, gd, phi))


def jacobi_sn_cn_dn(u, m):
    m = _as_m(m, allow_one=True)
    u, m = np.broadcast_arrays(np.asarray(u, dtype=float), m)
    phi = np.asarray(jacobi_am(u, m))
    sn = np.sin(phi)
    cn = np.cos(phi)
    dn = np.sqrt(1 - m * sn * sn)
    one = m == 1
    if np.any(one):
        sech = 1 / np.cosh(u)
        sn = np.where(one, np.tanh(u), sn)
        cn = np.where(one, sech, cn)
        dn = np.where(one, sech, dn)
    return _result(sn), _result(cn), _result(dn)


def ellip_K_derivative(m):
    """dK/dm = (E - (1-m) K) / (2 m (1-m)), for 0 < m < 1."""
    m = np.asarray(m, dtype=float)
    _check("m", m, (m > 0) & (m < 1), "0 < m < 1")
    K, E = np.asarray(ellip_K(m)), np.asarray(ellip_E(m))
    return _result((E - (1 - m) * K) / (2 * m * (1 - m)))


def ellip_E_derivative(m):
    """dE/dm = (E - K) / (2m), for 0 < m < 1."""
    m = np.asarray(m, dtype=float)
    _check("m", m, (m > 0) & (m < 1), "0 < m < 1")
    return _result((np.asarray(ellip_E(m)) - np.asarray(ellip_K(m)))
                   / (2 * m))


def ellip_Pi_derivatives(n, m):
    """Partial derivatives (dPi/dn, dPi/dm) of the complete Pi(n, m)."""
    n = np.asarray(n, dtype=float)
    m = np.asarray(m, dtype=float)
    _check("m", m, (m > 0) & (m < 1), "0 < m < 1")
    _check("n", n, (n < 1) & (n != 0) & (n != m), "n < 1, n != 0, n != m")
    K, E = np.asarray(ellip_K(m)), np.asarray(ellip_E(m))
    P = np.asarray(ellip_Pi_complete(n, m))
    d_n = (n * E + (m - n) * K + (n * n - m) * P) / \
        (2 * (m - n) * (n - 1) * n)
    d_m = E / (2 * (m - 1) * (n - m)) + P / (2 * (n - m))
    return _result(d_n), _result(d_m)
