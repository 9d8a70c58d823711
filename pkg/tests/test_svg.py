import xml.etree.ElementTree as ET

import pytest

from conftest import enumeration
from gkzdimer import fixtures
from gkzdimer.secondary import delta_polygon
from gkzdimer.svg import fan_svg, polygon_svg, surface_svg

NS = "{http://www.w3.org/2000/svg}"


def parse(text):
    root = ET.fromstring(text)
    assert root.tag == NS + "svg"
    return root


def test_polygon_marks_interior_points_red():
    root = parse(polygon_svg(delta_polygon(fixtures.lattice("B10")).vertices))
    fills = [c.get("fill") for c in root.iter(NS + "circle")]
    # the triangle (0,0), (3,0), (0,2) has 7 lattice points, one of them interior
    assert len(fills) == 7
    assert fills.count("#d62728") == 1


def test_fan_has_one_ray_per_vector():
    lat = fixtures.lattice("B7")
    root = parse(fan_svg(lat))
    assert len(list(root.iter(NS + "line"))) == lat.n
    labels = [t.text for t in root.iter(NS + "text")]
    assert [f"b{k}" for k in range(1, lat.n + 1)] == labels[: lat.n]
    assert len(labels) == lat.n + 6


@pytest.mark.parametrize("name", ["B1", "B2", "B8"])
def test_surface_drawing(name):
    s = enumeration(name).perfect()[0]
    root = parse(surface_svg(s, zigzag=True))
    polys = list(root.iter(NS + "polygon"))
    assert len(polys) == len(s.squares) + 1
    assert polys[-1].get("stroke-dasharray") == "6,4"
    # two zigzag segments per square
    assert len(list(root.iter(NS + "line"))) == 2 * len(s.squares)
    fills = {c.get("fill") for c in root.iter(NS + "circle")}
    assert fills == {"white", "#999", "black"}


def test_non_perfect_surface_uses_neutral_dots():
    s = next(t for t in enumeration("B2").surfaces if not t.is_perfect())
    root = parse(surface_svg(s))
    assert {c.get("fill") for c in root.iter(NS + "circle")} == {"#666"}
