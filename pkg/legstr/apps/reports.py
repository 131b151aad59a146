"""

Residual and invariant reports for sampled curves.

verify_report() re-derives the differential invariants of a curve from
its analytic jet; invariants_report() measures the topological ones from
the samples and compares them with the predictions carried in metadata.

"""

import logging

import numpy as np

from legstr.apps.documents import ReportDocument
from legstr.contrib.config import get_tolerances
from legstr.geometry.diffinv import (
    Check,
    curve_stress,
    density_jets,
    fubini_densities,
    momentum_drift,
    normalize_lift,
    normalized_identities,
)
from legstr.geometry.dynamics import (
    curvature_profile,
    first_integral_residuals,
    kappa,
)
from legstr.geometry.hyperquadric import L, herm
from legstr.geometry.knot_num import (
    Polyline3,
    lagrangian_writhe,
    linking_with_O2,
    linking_with_Oz,
    maslov_index,
    thurston_bennequin,
)
from legstr.geometry.string_builder import (
    closure_residual,
    constant_curvature_densities,
    string_lift_jet,
)

__all__ = [
    "verification_points",
    "verify_report",
    "invariants_report",
]

logger = logging.getLogger(__name__)


def _check(name, residual, tolerance):
    return Check(name, float(residual), float(tolerance),
                 bool(residual <= tolerance))


def verification_points(curve, count):
    lo, hi = float(curve.s[0]), float(curve.s[-1])
    return np.linspace(lo, hi, int(count), endpoint=False)


def _is_closed(curve):
    meta = curve.metadata
    return meta.get("characteristic") is not None or \
        meta.get("q") is not None


def _legendrian(jet, points):
    worst = 0.0
    for t in points:
        d = jet(t, 1)
        worst = max(worst, abs(herm(d[0], d[1])) /
                    (np.linalg.norm(d[0]) * np.linalg.norm(d[1])))
    return worst


def _fubini_residuals(curve, points, tol):
    kind = curve.metadata.get("dual_of", curve.kind)
    da, db = 0.0, 0.0
    if kind == "string":
        profile = curvature_profile(curve.metadata["characters"])
        scale = profile.ell ** 2
        # measured on the closed form, not on the frame-extended jet
        lift = string_lift_jet(curve.metadata["characters"])
        if curve.kind == "dual":
            lift = lift.transformed(L)
        for s in points:
            f = fubini_densities(normalize_lift(lift, s, 3, tol))
            da = max(da, abs(abs(f.a) - 1))
            db = max(db, abs(f.b - float(kappa(profile, s))) / scale)
    elif kind == "constant_curvature":
        a, b = constant_curvature_densities(curve.metadata["r"])
        for t in points:
            f = fubini_densities(normalize_lift(curve.jet, t, 3, tol))
            da = max(da, abs(f.a - a))
            db = max(db, abs(f.b - b))
    else:
        return None
    return da, db


def verify_report(curve, tol=None):
    """Null cone, Legendrian, closure, lift identities, Fubini densities,
    stress and momentum residuals of a curve."""
    tol = tol or get_tolerances()
    report = ReportDocument("verify {}".format(curve.kind))
    G = curve.lifts
    null = np.max(np.abs(herm(G, G)) / np.linalg.norm(G, axis=-1) ** 2)
    report.checks.append(_check("null_cone", null,
                                tol.null_cone_tol))
    if _is_closed(curve):
        report.checks.append(_check("closure", closure_residual(curve),
                                    tol.closure_tol))
    if curve.jet is None:
        logger.warning("No analytic jet: differential checks skipped")
        return report
    points = verification_points(curve, tol.verify_points)
    report.checks.append(_check("legendrian", _legendrian(curve.jet, points),
                                tol.legendrian_tol))
    identities = max(max(normalized_identities(
        normalize_lift(curve.jet, t, 2, tol)).values()) for t in points)
    report.checks.append(_check("normalized_lift", identities,
                                tol.identity_tol))
    fubini = _fubini_residuals(curve, points, tol)
    if fubini is not None:
        report.checks.append(_check("fubini_a", fubini[0], tol.fubini_tol))
        report.checks.append(_check("fubini_b", fubini[1], tol.fubini_tol))
    scale = max(1.0, curve.scale) ** 9
    stress = max(abs(curve_stress(curve.jet, t, tol)) for t in points)
    report.checks.append(_check("stress", stress / scale, tol.stress_tol))
    if curve.metadata.get("dual_of", curve.kind) == "string":
        profile = curvature_profile(curve.metadata["characters"])
        first = max(max(abs(r) for r in first_integral_residuals(profile, s))
                    for s in points)
        report.checks.append(_check(
            "first_integrals", first / max(1.0, profile.ell) ** 6,
            tol.identity_tol))
        drift = momentum_drift(curve.jet, points, tol)
        report.checks.append(_check("momentum", drift.drift,
                                    tol.momentum_tol))
        report.values["momentum_spectrum"] = [float(v)
                                              for v in drift.eigenvalues]
    a, b = density_jets(curve.jet, points[0], 0, 0, tol)
    report.values["a"] = float(a[0])
    report.values["b"] = float(b[0])
    logger.info("Verification of {}: {}".format(
        curve.kind, "pass" if report.verdict else "FAIL"))
    return report


def _equal(name, measured, expected):
    return Check(name, abs(measured - expected), 0, measured == expected)


def invariants_report(curve, tol=None):
    """Linking numbers with both axes, Maslov index and tb."""
    tol = tol or get_tolerances()
    poly = Polyline3.from_curve(curve)
    lk1 = linking_with_Oz(poly, tol)
    lk2 = linking_with_O2(curve, tol)
    maslov = maslov_index(poly, tol)
    tb = thurston_bennequin(poly, tol=tol)
    writhe, _ = lagrangian_writhe(poly)
    report = ReportDocument("invariants {}".format(curve.kind), values=[
        ("lk1", lk1), ("lk2", lk2), ("maslov", maslov), ("tb", tb),
        ("writhe", writhe)])
    report.checks.append(_equal("tb_equals_writhe", tb, writhe))
    cn = curve.metadata.get("characteristic")
    q = curve.metadata.get("q")
    if curve.kind == "string" and cn is not None:
        report.checks.append(_equal("lk1", lk1, cn.l1))
        report.checks.append(_equal("lk2", lk2, cn.l2))
        report.checks.append(_equal("maslov", maslov, cn.maslov))
        if cn.l1 == 1:
            report.values["regularity_l1"] = bool(
                tb == cn.l2 and maslov == tb + 1)
    elif curve.kind == "constant_curvature" and q is not None:
        m, n = q.numerator, q.denominator
        report.checks.append(_equal("maslov", maslov, m - n))
        report.checks.append(_equal("tb", tb, -m * n))
    logger.info("Invariants of {}: lk1={} lk2={} maslov={} tb={}".format(
        curve.kind, lk1, lk2, maslov, tb))
    return report
