"""

Topological invariants of sampled closed curves in Heisenberg space.

Curves are closed polylines oriented by increasing parameter. The Oz axis
is oriented upward; the second symmetry axis is reached through the dual
configuration, which exchanges the two axes.

  * linking with Oz: winding of the Lagrangian projection (x, y) about 0
  * Maslov index: turning number of the Lagrangian projection
  * Thurston-Bennequin invariant: linking number of the curve with its
    vertical pushoff, as an exact double sum of polygon solid angles

"""

import logging

import numpy as np

from legstr.contrib.config import get_tolerances
from legstr.contrib.errors import (
    ClearanceError,
    DegeneracyError,
    DomainError,
    ResolutionError,
)

__all__ = [
    "Polyline3",
    "lagrangian_angle",
    "linking_with_Oz",
    "linking_with_O2",
    "linking_with_Oz_gauss",
    "maslov_index",
    "gauss_linking_number",
    "lagrangian_writhe",
    "thurston_bennequin",
]

logger = logging.getLogger(__name__)

_CHUNK = 64


class Polyline3(object):
    """Closed polyline; the last point repeats the first."""

    def __init__(self, points, s=None, closure_tol=None):
        points = np.asarray(points, dtype=float)
        if points.ndim != 2 or points.shape[1] != 3 or len(points) < 4:
            raise DomainError("points", points.shape,
                              "an (N, 3) array with N >= 4")
        tol = get_tolerances().closure_tol if closure_tol is None \
            else closure_tol
        gap = float(np.linalg.norm(points[0] - points[-1]))
        if gap > tol * max(1.0, self._diameter(points)):
            raise DomainError("polyline", gap, "first and last points equal")
        self.points = points
        self.s = None if s is None else np.asarray(s, dtype=float)

    @staticmethod
    def _diameter(points):
        return float(np.max(np.ptp(points, axis=0)))

    @classmethod
    def from_curve(cls, curve, closure_tol=None):
        return cls(curve.heisenberg, curve.s, closure_tol)

    @property
    def diameter(self):
        return self._diameter(self.points)

    @property
    def vertices(self):
        return self.points[:-1]

    def __len__(self):
        return len(self.points) - 1


def _wrap(angle):
    return (angle + np.pi) % (2 * np.pi) - np.pi


def _round(value, bound, what):
    k = int(np.round(value))
    if abs(value - k) >= bound:
        raise ResolutionError(what, value, bound)
    return k


def lagrangian_angle(poly, tol=None):
    """Unwound polar angle of (x, y) along the polyline."""
    tol = tol or get_tolerances()
    xy = poly.points[:, :2]
    radius = np.hypot(xy[:, 0], xy[:, 1])
    if np.min(radius) < tol.axis_clearance * max(1.0, poly.diameter):
        raise ClearanceError("Oz axis", float(np.min(radius)))
    steps = _wrap(np.diff(np.arctan2(xy[:, 1], xy[:, 0])))
    worst = float(np.max(np.abs(steps)))
    if worst >= tol.max_step_angle:
        raise ResolutionError("angle step about Oz", worst,
                              tol.max_step_angle)
    return np.arctan2(xy[0, 1], xy[0, 0]) + np.concatenate(
        [[0.0], np.cumsum(steps)])


def linking_with_Oz(poly, tol=None):
    tol = tol or get_tolerances()
    theta = lagrangian_angle(poly, tol)
    winding = (theta[-1] - theta[0]) / (2 * np.pi)
    return _round(winding, tol.rounding_tol, "winding about Oz")


def linking_with_O2(curve, tol=None):
    """Linking number with the second axis, through the dual curve."""
    from legstr.geometry.string_builder import dual_configuration
    dual = dual_configuration(curve, tol)
    return linking_with_Oz(Polyline3.from_curve(dual), tol)


def maslov_index(poly, tol=None):
    """Turning number of the Lagrangian projection."""
    tol = tol or get_tolerances()
    d = np.diff(poly.points[:, :2], axis=0)
    length = np.hypot(d[:, 0], d[:, 1])
    if np.min(length) <= tol.degeneracy_tol * max(1.0, poly.diameter):
        raise DegeneracyError("tangent of the Lagrangian projection",
                              float(np.min(length)))
    heading = np.arctan2(d[:, 1], d[:, 0])
    turns = _wrap(np.diff(np.append(heading, heading[0])))
    worst = float(np.max(np.abs(turns)))
    if worst >= tol.max_step_angle:
        raise ResolutionError("tangent turning step", worst,
                              tol.max_step_angle)
    return _round(np.sum(turns) / (2 * np.pi), tol.rounding_tol,
                  "turning number")


def _unit(v):
    norm = np.linalg.norm(v, axis=-1, keepdims=True)
    return np.divide(v, norm, out=np.zeros_like(v), where=norm > 0)


def _solid_angles(a0, a1, b0, b1):
    """Signed solid angles of segment pairs a0a1, b0b1 (broadcasting)."""
    r13, r14 = b0 - a0, b1 - a0
    r23, r24 = b0 - a1, b1 - a1
    n1 = _unit(np.cross(r13, r14))
    n2 = _unit(np.cross(r14, r24))
    n3 = _unit(np.cross(r24, r23))
    n4 = _unit(np.cross(r23, r13))
    total = sum(np.arcsin(np.clip(np.sum(u * v, axis=-1), -1.0, 1.0))
                for u, v in ((n1, n2), (n2, n3), (n3, n4), (n4, n1)))
    sign = np.sign(np.sum(np.cross(b1 - b0, a1 - a0) * r13, axis=-1))
    return total * sign


def gauss_linking_number(P, Q):
    """Gauss linking number of two closed polylines (endpoint repeated)."""
    P = np.asarray(P, dtype=float)
    Q = np.asarray(Q, dtype=float)
    b0, b1 = Q[None, :-1], Q[None, 1:]
    total = 0.0
    for i in range(0, len(P) - 1, _CHUNK):
        a0 = P[i:i + _CHUNK][:, None]
        a1 = P[i + 1:i + 1 + _CHUNK][:, None]
        a0 = a0[:len(a1)]
        total += float(np.sum(_solid_angles(a0, a1, b0, b1)))
    return total / (4 * np.pi)


def linking_with_Oz_gauss(poly, tol=None):
    """Linking with Oz from the Gauss sum; the axis is closed far away."""
    tol = tol or get_tolerances()
    pts = poly.points
    span = poly.diameter + float(np.max(np.abs(pts)))
    Z, R = 1e3 * span, 1e3 * span
    axis = np.array([[0, 0, -Z], [0, 0, Z], [R, 0, Z], [R, 0, -Z],
                     [0, 0, -Z]], dtype=float)
    return _round(gauss_linking_number(pts, axis), tol.rounding_tol,
                  "Gauss linking with Oz")


def lagrangian_writhe(poly):
    """(writhe, least vertical gap) over crossings of the (x, y) shadow."""
    p = poly.points
    a, d = p[:-1], np.diff(p, axis=0)
    N = len(a)
    writhe, gap = 0, np.inf
    idx = np.arange(N)
    for i in range(0, N, _CHUNK):
        I = idx[i:i + _CHUNK][:, None]
        ai, di = a[I[:, 0]][:, None], d[I[:, 0]][:, None]
        w = a[None] - ai
        den = di[..., 0] * d[None, :, 1] - di[..., 1] * d[None, :, 0]
        safe = np.where(den == 0, 1.0, den)
        t = (w[..., 0] * d[None, :, 1] - w[..., 1] * d[None, :, 0]) / safe
        u = (w[..., 0] * di[..., 1] - w[..., 1] * di[..., 0]) / safe
        J = idx[None]
        valid = (J > I + 1) & ~((I == 0) & (J == N - 1)) & (den != 0)
        hit = valid & (t > 0) & (t < 1) & (u > 0) & (u < 1)
        if not np.any(hit):
            continue
        zi = ai[..., 2] + t * di[..., 2]
        zj = a[None, :, 2] + u * d[None, :, 2]
        dz = (zi - zj)[hit]
        writhe += int(np.sum(np.sign(dz * den[hit])))
        gap = min(gap, float(np.min(np.abs(dz))))
    return writhe, gap


def thurston_bennequin(poly, pushoff_eps=None, tol=None):
    """Linking number of the curve with its pushoff along +z.

    An explicit ``pushoff_eps`` must clear every crossing of the shadow;
    the default, a fraction of the diameter, is halved until it does.
    """
    tol = tol or get_tolerances()
    writhe, gap = lagrangian_writhe(poly)
    if pushoff_eps is not None:
        eps = float(pushoff_eps)
        if 2 * eps >= gap:
            raise ClearanceError("vertical pushoff", gap)
    else:
        eps = tol.pushoff_fraction * poly.diameter
        while 2 * eps >= gap:
            eps /= 2
            logger.warning("Pushoff shrunk to {:.3e} (strand gap "
                           "{:.3e})".format(eps, gap))
            if eps < 1e-12 * poly.diameter:
                raise ClearanceError("vertical pushoff", gap)
    shifted = poly.points + np.array([0.0, 0.0, eps])
    lk = gauss_linking_number(poly.points, shifted)
    tb = _round(lk, tol.tb_rounding_tol, "pushoff linking number")
    logger.info("tb = {} (writhe {}, eps {:.3e})".format(tb, writhe, eps))
    return tb
