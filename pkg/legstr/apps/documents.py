"""

Persistent formats: curve documents, report documents and CSV listings.

Every document is written with sorted keys and shortest round-trip float
representation, so the same inputs always produce the same bytes and a
document read back and written again is unchanged. Fractions travel as
"a/b" strings.

"""

import collections
import csv
import io
import json
import logging
from fractions import Fraction

import numpy as np

from legstr import __version__
from legstr.contrib.errors import DocumentError, LegstrError
from legstr.geometry.dynamics import Characters
from legstr.geometry.moduli import CharacteristicNumbers
from legstr.geometry.period_map import MonodromicPoint
from legstr.geometry.string_builder import (
    KINDS,
    LegendrianCurveSample,
    jet_for,
)

__all__ = [
    "FORMAT_VERSION",
    "CSV_HEADER",
    "ReportDocument",
    "curve_to_document",
    "document_to_curve",
    "dumps",
    "write_document",
    "read_document",
    "write_curve",
    "read_curve",
    "classes_to_csv",
    "classes_to_json",
    "classes_to_table",
]

logger = logging.getLogger(__name__)

FORMAT_VERSION = "1"

CSV_HEADER = ["n", "l1", "l2", "h1", "k1", "h2", "k2", "q2", "q3"]

_METADATA_KEYS = ("periods", "omega", "scale", "r", "c", "dual_of")


class ReportDocument(object):
    """Named checks (residual against tolerance) plus measured values."""

    def __init__(self, subject, checks=None, values=None):
        self.subject = subject
        self.checks = list(checks or [])
        self.values = collections.OrderedDict(values or {})

    @property
    def verdict(self):
        return all(c.passed for c in self.checks)

    def as_dict(self):
        return {
            "format_version": FORMAT_VERSION,
            "subject": self.subject,
            "checks": [{"name": c.name,
                        "residual": _plain(c.residual),
                        "tolerance": _plain(c.tolerance),
                        "passed": bool(c.passed)} for c in self.checks],
            "values": {k: _plain(v) for k, v in self.values.items()},
            "verdict": self.verdict,
        }


def _plain(value):
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        return float(value)
    return value


def _fraction(text, key):
    try:
        return Fraction(str(text))
    except (TypeError, ValueError, ZeroDivisionError):
        raise DocumentError(key, "not an exact fraction: {!r}".format(text))


def curve_to_document(curve, tol=None):
    meta = curve.metadata
    ch = meta.get("characters")
    modulus = meta.get("modulus")
    cn = meta.get("characteristic")
    q = meta.get("q")
    G = curve.lifts
    samples = [{"s": float(s),
                "hom": [[float(z.real), float(z.imag)] for z in g],
                "heis": [float(v) for v in h]}
               for s, g, h in zip(curve.s, G, curve.heisenberg)]
    return {
        "format_version": FORMAT_VERSION,
        "kind": curve.kind,
        "characters": None if ch is None else
        {"m": float(ch.m), "ell": float(ch.ell)},
        "q": None if q is None else str(Fraction(q)),
        "modulus": None if modulus is None else
        {"q2": str(Fraction(modulus[0])), "q3": str(Fraction(modulus[1]))},
        "characteristic": None if cn is None else
        {k: int(v) for k, v in cn._asdict().items()},
        "metadata": {k: _plain(meta[k]) for k in _METADATA_KEYS
                     if meta.get(k) is not None},
        "samples": samples,
        "provenance": {
            "tool": "legstr",
            "version": __version__,
            "tolerances": None if tol is None else tol.as_dict(),
        },
    }


def document_to_curve(doc, path="<document>"):
    """Rebuild a LegendrianCurveSample; the analytic jet is re-derived."""
    try:
        if doc.get("format_version") != FORMAT_VERSION:
            raise DocumentError(path, "unsupported format_version {!r}"
                                .format(doc.get("format_version")))
        kind = doc["kind"]
        if kind not in KINDS:
            raise DocumentError(path, "unknown kind {!r}".format(kind))
        samples = doc["samples"]
        s = np.array([r["s"] for r in samples], dtype=float)
        hom = np.array([r["hom"] for r in samples], dtype=float)
        heis = np.array([r["heis"] for r in samples], dtype=float)
    except (KeyError, TypeError, ValueError, AttributeError) as e:
        raise DocumentError(path, "malformed curve document ({})".format(e))
    if hom.ndim != 3 or hom.shape[1:] != (3, 2) or heis.ndim != 2 or \
            heis.shape[1] != 3:
        raise DocumentError(path, "sample arrays are not rectangular")
    if len(s) < 2 or not np.all(np.diff(s) > 0):
        raise DocumentError(path, "samples are not increasing in s")
    meta = dict(doc.get("metadata") or {})
    if doc.get("characters"):
        meta["characters"] = Characters(float(doc["characters"]["m"]),
                                        float(doc["characters"]["ell"]))
    if doc.get("q"):
        meta["q"] = _fraction(doc["q"], "q")
    if doc.get("modulus"):
        meta["modulus"] = MonodromicPoint(
            _fraction(doc["modulus"]["q2"], "q2"),
            _fraction(doc["modulus"]["q3"], "q3"))
    if doc.get("characteristic"):
        try:
            meta["characteristic"] = CharacteristicNumbers(
                **{k: int(v) for k, v in doc["characteristic"].items()})
        except TypeError as e:
            raise DocumentError(path, "bad characteristic ({})".format(e))
    try:
        jet = jet_for(kind, meta)
    except (KeyError, LegstrError) as e:
        logger.warning("No analytic jet for {}: {}".format(path, e))
        jet = None
    lifts = hom[..., 0] + 1j * hom[..., 1]
    return LegendrianCurveSample(s, lifts, heis, kind, meta, jet)


def dumps(doc):
    return json.dumps(doc, sort_keys=True, indent=1) + "\n"


def write_document(doc, path):
    try:
        with open(path, "w") as f:
            f.write(dumps(doc))
    except OSError as e:
        raise DocumentError(path, str(e))
    logger.info("Wrote {}".format(path))


def read_document(path):
    try:
        with open(path) as f:
            return json.load(f)
    except OSError as e:
        raise DocumentError(path, str(e))
    except ValueError as e:
        raise DocumentError(path, "invalid JSON ({})".format(e))


def write_curve(curve, path, tol=None):
    write_document(curve_to_document(curve, tol), path)


def read_curve(path):
    return document_to_curve(read_document(path), path)


def _row(c):
    q = c.modulus
    return [c.n, c.l1, c.l2, c.h1, c.k1, c.h2, c.k2, str(q.q2), str(q.q3)]


def classes_to_csv(classes):
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for c in classes:
        writer.writerow(_row(c))
    return out.getvalue()


def classes_to_json(classes, density=None):
    doc = {
        "format_version": FORMAT_VERSION,
        "strings": [dict(zip(CSV_HEADER, _row(c)), maslov=c.maslov,
                         label=c.label) for c in classes],
    }
    if density is not None:
        doc["density"] = [{"n": n, "rho": rho, "rho_over_n2": ratio}
                          for n, rho, ratio in density]
    return dumps(doc)


def classes_to_table(classes, density=None):
    lines = ["{:>12} {:>4} {:>4} {:>5} {:>7} {:>7} {:>9} {:>9} {:>7}".format(
        "string", "n", "l1", "l2", "h1/k1", "h2/k2", "q2", "q3", "maslov")]
    for c in classes:
        q = c.modulus
        lines.append(
            "{:>12} {:>4} {:>4} {:>5} {:>7} {:>7} {:>9} {:>9} {:>7}".format(
                c.label, c.n, c.l1, c.l2, "{}/{}".format(c.h1, c.k1),
                "{}/{}".format(c.h2, c.k2), str(q.q2), str(q.q3), c.maslov))
    if density is not None:
        lines.append("")
        lines.append("{:>4} {:>6} {:>12}".format("n", "rho", "rho/n^2"))
        for n, rho, ratio in density:
            lines.append("{:>4} {:>6} {:>12.6f}".format(n, rho, ratio))
    return "\n".join(lines) + "\n"
