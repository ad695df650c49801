"""SVG rendering of planar polytopes, regions and point clouds.

Drawing is presentational only; exact coordinates are converted to floats
here and nowhere else. Higher-dimensional input is projected orthographically
onto the first two coordinates.
"""

import io
import logging
import math
import os
from collections.abc import Sequence

import matplotlib

matplotlib.use("Agg")

from matplotlib import pyplot as plt  # noqa: E402
from matplotlib.patches import Polygon as PolygonPatch  # noqa: E402

from .polytope import Polytope, convex_hull  # noqa: E402
from .rational import Point  # noqa: E402
from .region import Region  # noqa: E402

# Configure logger
logger = logging.getLogger(__name__)
logger.setLevel(os.environ.get("LOG_LEVEL", "INFO"))

# Fixed id salt and no timestamp so identical input gives identical SVG
plt.rcParams["svg.hashsalt"] = "vergen"
SVG_METADATA = {"Date": None, "Creator": "vergen"}

FIGURE_SIZE = (6, 6)
MARGIN = 0.05


def _outline(P: Polytope) -> list[tuple[float, float]]:
    """Boundary of the planar shadow of P in angular order."""
    shadow = convex_hull((v[0], v[1]) for v in P.vertices) if P.dim > 2 else P
    points = [(float(v[0]), float(v[1]) if len(v) > 1 else 0.0) for v in shadow.vertices]
    cx = sum(x for x, _ in points) / len(points)
    cy = sum(y for _, y in points) / len(points)
    return sorted(points, key=lambda p: math.atan2(p[1] - cy, p[0] - cx))


def render_svg(
    P: Polytope,
    pieces: Sequence[Polytope] = (),
    region: Region | None = None,
    witness: Point | None = None,
    points: Sequence[Point] = (),
) -> str:
    """Draw P with optional stroked pieces, filled region cells, a witness and points.

    Returns:
        The SVG document as text
    """
    fig, ax = plt.subplots(figsize=FIGURE_SIZE)
    try:
        outline = _outline(P)
        ax.add_patch(PolygonPatch(outline, closed=True, fill=False, edgecolor="black", linewidth=1.5))
        for piece in pieces:
            ax.add_patch(PolygonPatch(_outline(piece), closed=True, fill=False, edgecolor="tab:blue", linewidth=0.6))
        for cell in region.cells if region is not None else ():
            ax.add_patch(PolygonPatch(_outline(cell), closed=True, facecolor="tab:red", alpha=0.5, linewidth=0))
        if points:
            ax.scatter([float(p[0]) for p in points], [float(p[1]) for p in points], s=2, color="tab:green")
        if witness is not None:
            ax.plot([float(witness[0])], [float(witness[1])], marker="x", color="black", markersize=8)

        xs = [x for x, _ in outline]
        ys = [y for _, y in outline]
        pad = MARGIN * max(max(xs) - min(xs), max(ys) - min(ys), 1.0)
        ax.set_xlim(min(xs) - pad, max(xs) + pad)
        ax.set_ylim(min(ys) - pad, max(ys) + pad)
        ax.set_aspect("equal")
        ax.set_axis_off()

        buffer = io.StringIO()
        fig.savefig(buffer, format="svg", metadata=SVG_METADATA)
    finally:
        plt.close(fig)
    logger.debug(f"Rendered SVG with {len(pieces)} pieces")
    return buffer.getvalue()
