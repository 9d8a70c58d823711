from itertools import permutations

import pytest

from gkzdimer import fixtures
from gkzdimer.geometry import convex_hull, twice_area
from gkzdimer.gkz import (
    a_sequence,
    check_relation,
    generic_polynomial,
    is_unimodular,
    lattice_from_exponents,
    minimal_relations,
    relation_lattice_of,
)
from gkzdimer.lattice import LatticeEmbedding, ValidationError, plucker_form
from gkzdimer.polyring import parse_poly
from gkzdimer.secondary import lattice_from_polygon, volume

NAMES = list(fixtures.LATTICES)
TORSION_FREE = [n for n in NAMES if not fixtures.lattice(n).torsion]


def test_b2_points():
    assert list(a_sequence(fixtures.lattice("B2")).free) == fixtures.B2_A_VECTORS


def test_b2_generic_polynomial():
    f = generic_polynomial(fixtures.lattice("B2"))
    # homogenized: u1 x1 + u2 x1 x2^3 + u3 x1 x2 + u4 x1 x2^2
    assert f == parse_poly(
        "1*u^[1,0,0,0,1,0] + 1*u^[0,1,0,0,1,3] + 1*u^[0,0,1,0,1,1] + 1*u^[0,0,0,1,1,2]", 6
    )


def test_torsion_blocks_generic_polynomial():
    with pytest.raises(ValidationError):
        generic_polynomial(fixtures.lattice("B1"))
    assert len(generic_polynomial(fixtures.lattice("B1"), free_part_only=True)) == 3


def test_b1_torsion_labels():
    seq = a_sequence(fixtures.lattice("B1"))
    assert seq.torsion_orders == (3,)
    labels = [t[0] for t in seq.torsion]
    # proportional to (1, -1, 0) modulo 3
    assert any([(k * x) % 3 for x in (1, -1, 0)] == labels for k in (1, 2))


@pytest.mark.parametrize("name", NAMES)
def test_plucker_rows_are_relations(name):
    lat = fixtures.lattice(name)
    seq = a_sequence(lat)
    assert all(a[0] == 1 for a in seq.free)
    for row in minimal_relations(lat):
        assert check_relation(seq, row)
    assert not check_relation(seq, [1] + [0] * (lat.n - 1))


@pytest.mark.parametrize("name", TORSION_FREE)
def test_relation_lattice_is_the_lattice(name):
    lat = fixtures.lattice(name)
    rel = relation_lattice_of(a_sequence(lat).free)
    assert LatticeEmbedding(rel).same_span(lat)


@pytest.mark.parametrize("name", [n for n in TORSION_FREE if fixtures.lattice(n).n <= 5])
def test_normalized_volume_of_points(name):
    lat = fixtures.lattice(name)
    pts = a_sequence(lat).exponents()
    if len(pts[0]) == 1:
        vol = max(p[0] for p in pts) - min(p[0] for p in pts)
    else:
        vol = twice_area(convex_hull(pts))
    assert vol == volume(lat)


def test_b8_published_points_span_the_lattice():
    pts = [(1,) + e for e in fixtures.B8_F_A_EXPONENTS]
    assert LatticeEmbedding(relation_lattice_of(pts)).same_span(fixtures.lattice("B8"))


def test_appell_f1_matches_b7_up_to_relabelling():
    f1 = plucker_form(LatticeEmbedding(fixtures.APPELL_F1))
    b7 = plucker_form(fixtures.lattice("B7"))
    hits = [
        p
        for p in permutations(range(6))
        if any(all(f1[p[i]][p[j]] == s * b7[i][j] for i in range(6) for j in range(6)) for s in (1, -1))
    ]
    assert hits


def test_appell_f4_has_parallel_vectors():
    lat = LatticeEmbedding(fixtures.APPELL_F4)
    assert lat.columns[0] == lat.columns[1]
    assert volume(lat) == 4


@pytest.mark.parametrize(
    "lat, expected",
    [
        (fixtures.lattice("B2"), True),
        (fixtures.lattice("B1"), False),
        (fixtures.lattice("B4"), False),
        (lattice_from_polygon([[0, 0], [1, 0], [1, 1], [0, 1]]), True),
    ],
)
def test_unimodular(lat, expected):
    assert is_unimodular(lat) is expected


def test_lattice_from_exponents():
    lat = lattice_from_exponents((1, 3, 0, 2))
    assert a_sequence(lat).n == 4
    assert volume(lat) == 3
    with pytest.raises(ValidationError):
        lattice_from_exponents((0, 1, 1, 2))
