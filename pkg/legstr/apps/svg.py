"""

Deterministic SVG portraits of sampled curves.

The canvas is fixed at 1000x1000 with a 5% margin and the curve is drawn
as a single polyline; coordinates are printed with a fixed number of
decimals and nothing time dependent goes into the output.

"""

import logging

import jinja2
import numpy as np

from legstr.contrib.errors import DomainError, DocumentError

__all__ = [
    "VIEWS",
    "CANVAS",
    "MARGIN",
    "project",
    "render_svg",
    "write_svg",
]

logger = logging.getLogger(__name__)

CANVAS = 1000
MARGIN = 0.05

# (x, y) columns of the Heisenberg point for each view
VIEWS = {
    "lagrangian": (0, 1),
    "xy": (0, 1),
    "xz": (0, 2),
    "yz": (1, 2),
}

SVG_TEMPLATE = """<?xml version="1.0" encoding="UTF-8"?>
<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{{ size }}" height="{{ size }}" viewBox="0 0 {{ size }} {{ size }}">
<title>{{ title }}</title>
<rect x="0" y="0" width="{{ size }}" height="{{ size }}" fill="white"/>
{% if axes %}
<line x1="{{ axes.x }}" y1="0" x2="{{ axes.x }}" y2="{{ size }}" stroke="#bbbbbb" stroke-width="1"/>
<line x1="0" y1="{{ axes.y }}" x2="{{ size }}" y2="{{ axes.y }}" stroke="#bbbbbb" stroke-width="1"/>
{% endif %}
<polyline fill="none" stroke="black" stroke-width="1.5" points="{{ points }}"/>
</svg>
""" # noqa


def project(heisenberg, view):
    """Map points onto canvas coordinates; y grows downward."""
    if view not in VIEWS:
        raise DomainError("view", view, "one of {}".format(sorted(VIEWS)))
    i, j = VIEWS[view]
    P = np.asarray(heisenberg, dtype=float)[:, [i, j]]
    lo, hi = P.min(axis=0), P.max(axis=0)
    span = float(np.max(hi - lo)) or 1.0
    inner = CANVAS * (1 - 2 * MARGIN)
    center = (lo + hi) / 2
    scaled = (P - center) * (inner / span) + CANVAS / 2.0
    scaled[:, 1] = CANVAS - scaled[:, 1]
    origin = (-center) * (inner / span) + CANVAS / 2.0
    origin[1] = CANVAS - origin[1]
    return scaled, origin


def render_svg(curve, view="lagrangian", title=None):
    pts, origin = project(curve.heisenberg, view)
    axes = None
    if np.all((origin >= 0) & (origin <= CANVAS)):
        axes = {"x": "{:.3f}".format(origin[0]),
                "y": "{:.3f}".format(origin[1])}
    template = jinja2.Template(SVG_TEMPLATE, trim_blocks=True,
                               lstrip_blocks=True, autoescape=True)
    return template.render(
        size=CANVAS,
        title=title or "{} ({} view)".format(curve.kind, view),
        axes=axes,
        points=" ".join("{:.3f},{:.3f}".format(x, y) for x, y in pts))


def write_svg(curve, path, view="lagrangian", title=None):
    text = render_svg(curve, view, title)
    try:
        with open(path, "w") as f:
            f.write(text)
    except OSError as e:
        raise DocumentError(path, str(e))
    logger.info("Wrote {} view to {}".format(view, path))
