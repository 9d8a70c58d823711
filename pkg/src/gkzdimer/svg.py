"""Plain SVG drawings of rhombus tilings, secondary fans and lattice polygons."""
from __future__ import annotations

from math import atan2, cos, sin, hypot
from typing import Iterable, Sequence

from .geometry import convex_hull, cross, lattice_points
from .lattice import LatticeEmbedding
from .secondary import secondary_fan
from .surface import DiscreteSurface

PALETTE = ["#d62728", "#1f77b4", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf", "#bcbd22"]


class _Canvas:
    def __init__(self, points: Iterable[Sequence[float]], scale: float = 40.0, margin: float = 30.0):
        pts = list(points)
        xs = [p[0] for p in pts] or [0]
        ys = [p[1] for p in pts] or [0]
        self.scale = scale
        self.margin = margin
        self.x0 = min(xs)
        self.y1 = max(ys)
        self.width = (max(xs) - self.x0) * scale + 2 * margin
        self.height = (self.y1 - min(ys)) * scale + 2 * margin
        self.items: list[str] = []

    def xy(self, p) -> str:
        x = (p[0] - self.x0) * self.scale + self.margin
        y = (self.y1 - p[1]) * self.scale + self.margin
        return f"{x:.2f},{y:.2f}"

    def polygon(self, pts, **attrs):
        self.items.append(f'<polygon points="{" ".join(self.xy(p) for p in pts)}"{_attrs(attrs)}/>')

    def line(self, a, b, **attrs):
        (x1, y1), (x2, y2) = self.xy(a).split(","), self.xy(b).split(",")
        self.items.append(f'<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}"{_attrs(attrs)}/>')

    def dot(self, p, r=4.0, **attrs):
        x, y = self.xy(p).split(",")
        self.items.append(f'<circle cx="{x}" cy="{y}" r="{r}"{_attrs(attrs)}/>')

    def text(self, p, s: str, **attrs):
        x, y = self.xy(p).split(",")
        self.items.append(f'<text x="{x}" y="{y}"{_attrs(attrs)}>{s}</text>')

    def render(self) -> str:
        head = (
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{self.width:.0f}" height="{self.height:.0f}" '
            f'viewBox="0 0 {self.width:.2f} {self.height:.2f}">'
        )
        return "\n".join([head, '<rect width="100%" height="100%" fill="white"/>', *self.items, "</svg>"]) + "\n"


def _attrs(attrs: dict) -> str:
    return "".join(f' {k.replace("_", "-")}="{v}"' for k, v in attrs.items())


def _project(cols, p):
    return (sum(x * b[0] for x, b in zip(p, cols)), sum(x * b[1] for x, b in zip(p, cols)))


def surface_svg(surface: DiscreteSurface, zigzag: bool = False) -> str:
    """Rhombus tiling of one period with vertex dots and the period parallelogram dashed.

    On a perfect surface the top, middle and bottom levels are drawn black, grey
    and white.  With ``zigzag`` every zigzag path is overlaid in its own colour.
    """
    lat = surface.lattice
    cols = lat.columns
    lifted = surface.lift()
    squares = surface.projected_squares()
    period = [_project(cols, row) for row in lat.B]
    corners = [p for _, quad in squares for p in quad]
    # centre the period parallelogram on the patch
    cx = sum(p[0] for p in corners) / len(corners)
    cy = sum(p[1] for p in corners) / len(corners)
    anchor = (cx - (period[0][0] + period[1][0]) / 2, cy - (period[0][1] + period[1][1]) / 2)
    frame = [
        anchor,
        (anchor[0] + period[0][0], anchor[1] + period[0][1]),
        (anchor[0] + period[0][0] + period[1][0], anchor[1] + period[0][1] + period[1][1]),
        (anchor[0] + period[1][0], anchor[1] + period[1][1]),
    ]
    canvas = _Canvas(corners + frame)
    for _, quad in squares:
        canvas.polygon(quad, fill="#f4f1e8", stroke="#555", stroke_width="1")
    canvas.polygon(frame, fill="none", stroke="#333", stroke_width="1.5", stroke_dasharray="6,4")

    if zigzag:
        for sq, base in sorted(lifted.items()):
            _, i, j = sq
            for k, other in ((i, j), (j, i)):
                # midpoints of the two sides parallel to e_k
                lo = list(base)
                lo[k] += 0.5
                hi = list(lo)
                hi[other] += 1
                colour = PALETTE[k % len(PALETTE)]
                canvas.line(_project(cols, lo), _project(cols, hi), stroke=colour, stroke_width="2.5")

    levels = sorted(set(surface.levels().values()))
    perfect = surface.is_perfect()
    fills = {}
    if perfect:
        fills = {levels[0]: "white", levels[1]: "#999", levels[2]: "black"}
    drawn = set()
    for sq, base in sorted(lifted.items()):
        c, i, j = sq
        cs = surface.cosets
        for cls, off in ((c, ()), (cs.step(c, i), (i,)), (cs.step(c, j), (j,)), (cs.step(cs.step(c, i), j), (i, j))):
            p = list(base)
            for k in off:
                p[k] += 1
            pt = _project(cols, p)
            if pt in drawn:
                continue
            drawn.add(pt)
            lvl = cs.level(cls)
            canvas.dot(pt, fill=fills.get(lvl, "#666"), stroke="black", stroke_width="1")
    return canvas.render()


def fan_svg(lattice: LatticeEmbedding) -> str:
    """Rays through the b_i (labelled by index) and each cone's pair list."""
    cols = lattice.columns
    reach = max(hypot(*b) for b in cols)
    canvas = _Canvas([(-reach * 1.3, -reach * 1.3), (reach * 1.3, reach * 1.3)], scale=60.0)
    for k, b in enumerate(cols):
        canvas.line((0, 0), b, stroke="#333", stroke_width="2")
        canvas.dot(b, r=3.0, fill="#333")
        canvas.text((b[0] * 1.1, b[1] * 1.1), f"b{k + 1}", font_size="13", fill="#333")
    for cone in secondary_fan(lattice):
        a = cols[cone.right[0]]
        b = cols[cone.left[0]]
        ta, tb = atan2(a[1], a[0]), atan2(b[1], b[0])
        if tb <= ta:
            tb += 2 * 3.141592653589793
        mid = (ta + tb) / 2
        r = reach * 0.6
        canvas.text((r * cos(mid), r * sin(mid)), cone.label(), font_size="12", fill="#1f77b4", text_anchor="middle")
    return canvas.render()


def polygon_svg(vertices: Sequence[Sequence[int]]) -> str:
    """A lattice polygon with all its lattice points; interior points are filled red."""
    hull = convex_hull(vertices)
    pts = lattice_points(hull)
    canvas = _Canvas([(p[0], p[1]) for p in pts], scale=50.0)
    canvas.polygon(hull, fill="#eef", stroke="#224", stroke_width="2")
    m = len(hull)
    for p in pts:
        on_edge = any(cross(hull[k], hull[(k + 1) % m], p) == 0 for k in range(m))
        canvas.dot(p, r=4.0, fill="#224" if on_edge else "#d62728")
    return canvas.render()
