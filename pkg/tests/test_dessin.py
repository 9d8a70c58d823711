from collections import Counter

import pytest

from conftest import NAMES, dessins, enumeration
from gkzdimer import fixtures
from gkzdimer.dessin import (
    Constellation,
    DessinData,
    DessinError,
    canonical_form,
    constellation_from_list,
    cycles,
    dessin_from_edges,
    dessin_from_matrix,
    euler_characteristic,
    find_node_relabelling,
    from_cycles,
    genus,
    invert,
    isomorphic,
    list_from_constellation,
    node_map,
    quadruple_list,
    quiver_and_critical_weight,
    superpotential,
    superpotential_terms,
)
from gkzdimer.lattice import plucker_form
from gkzdimer.secondary import area_and_interior, lattice_from_polygon, volume
from gkzdimer.surface import enumerate_surfaces, initial_surface


def test_b10_table_matches_pipeline_up_to_node_names():
    ours = dessins("B10")
    published = fixtures.b10_dessin()
    assert len(ours) == 1
    perm = find_node_relabelling(ours[0], published)
    assert perm is not None
    assert isomorphic(ours[0], published.relabel_nodes(perm))


def test_b10_constellation_and_superpotential():
    con = constellation_from_list(fixtures.b10_dessin())
    assert con.sigma0 == from_cycles(fixtures.B10_SIGMA0, 18)
    assert con.sigma1 == from_cycles(fixtures.B10_SIGMA1, 18)
    assert superpotential_terms(con) == (sorted(fixtures.B10_SIGMA0), sorted(fixtures.B10_SIGMA1))
    assert genus(fixtures.b10_dessin()) == 1


def test_p2_matrix():
    published = dessin_from_matrix(fixtures.lattice("B1"), fixtures.P2_MATRIX)
    assert isomorphic(dessins("B1")[0], published)
    pos, neg = superpotential_terms(constellation_from_list(published))
    assert pos == fixtures.P2_SUPERPOTENTIAL_POSITIVE
    assert neg == [(1, 7, 4), (2, 8, 5), (3, 9, 6)]
    text = superpotential(constellation_from_list(published))
    assert text == "X1*X2*X3 + X4*X5*X6 + X7*X8*X9 - X1*X7*X4 - X2*X8*X5 - X3*X9*X6"


def test_b2_matrix():
    published = dessin_from_matrix(fixtures.lattice("B2"), fixtures.B2_CRIT_MATRIX)
    assert isomorphic(dessins("B2")[0], published)


@pytest.mark.parametrize("matrix, terms", [(fixtures.B8_K1, fixtures.B8_W1), (fixtures.B8_K2, fixtures.B8_W2)])
def test_b8_published_dessins(matrix, terms):
    published = dessin_from_matrix(fixtures.lattice("B8"), matrix)
    hits = [k for k, d in enumerate(dessins("B8")) if isomorphic(d, published)]
    assert len(hits) == 1
    con = constellation_from_list(published)
    assert superpotential_terms(con) == (sorted(terms[0]), sorted(terms[1]))


def test_b8_published_dessins_are_distinct():
    a = dessin_from_matrix(fixtures.lattice("B8"), fixtures.B8_K1)
    b = dessin_from_matrix(fixtures.lattice("B8"), fixtures.B8_K2)
    assert not isomorphic(a, b)
    assert len({canonical_form(d) for d in dessins("B8")}) == 6


@pytest.mark.parametrize("name", NAMES)
def test_list_constellation_round_trip(name):
    for d in dessins(name):
        con = constellation_from_list(d)
        rebuilt = list_from_constellation(con)
        phi = node_map(d, rebuilt)
        assert phi is not None
        perm = [phi[k] for k in range(1, rebuilt.n_nodes + 1)]
        renamed = DessinData(d.n_nodes, rebuilt.black, rebuilt.white, *(
            tuple(perm[r - 1] for r in col) for col in (rebuilt.red, rebuilt.red2)
        ))
        assert canonical_form(renamed) == canonical_form(d)
        assert constellation_from_list(renamed) == con


@pytest.mark.parametrize("name", NAMES)
def test_structure(name):
    lat = fixtures.lattice(name)
    for d in dessins(name):
        assert d.n_black == d.n_white == volume(lat)
        q = quiver_and_critical_weight(d)
        assert q.quiver.antisymmetric_form() == plucker_form(lat)
        # every arrow of the Plücker quiver is an edge, so the weights sum to sum det^2
        assert sum(q.critical) == sum(lat.det(i, j) ** 2 for i in range(lat.n) for j in range(i + 1, lat.n))
        assert genus(d) == area_and_interior(lat)[1]


@pytest.mark.parametrize("name", NAMES)
def test_twisted_constellation_is_a_torus(name):
    for d in dessins(name):
        con = constellation_from_list(d)
        twisted = Constellation(con.sigma0, invert(con.sigma1))
        faces = len(cycles(twisted.face_permutation()))
        assert faces + len(con.cycles0()) + len(con.cycles1()) - con.n_edges == 0


def test_mirror_inverts_both_permutations():
    d = dessins("B2")[0]
    con = constellation_from_list(d)
    mir = constellation_from_list(d, mirror=True)
    assert mir == Constellation(invert(con.sigma0), invert(con.sigma1))


def test_square_polygon_gives_a_sphere():
    lat = lattice_from_polygon([[0, 0], [1, 0], [1, 1], [0, 1]])
    enum = enumerate_surfaces(initial_surface(lat))
    assert len(enum.perfect()) == 1
    d = quadruple_list(enum.perfect()[0])
    assert genus(d) == 0


def test_five_nodes_counts_faces_not_nodes():
    # b5 = (0, -2) is not primitive: its zigzag path has two components
    d = dessins("five_nodes")[0]
    assert euler_characteristic(d) == 0
    assert euler_characteristic(d, pinched=True) == -1
    with pytest.raises(DessinError):
        genus(d, pinched=True)


def test_non_perfect_surface_rejected():
    s = next(s for s in enumeration("B2").surfaces if not s.is_perfect())
    with pytest.raises(DessinError):
        quadruple_list(s)


def test_constellation_errors():
    with pytest.raises(DessinError):
        list_from_constellation(Constellation((0, 1), (0, 1)))
    with pytest.raises(DessinError):
        from_cycles([(1, 2), (2, 3)], 3)


def test_edge_list_validation():
    lat = fixtures.lattice("B2")
    with pytest.raises(DessinError):
        DessinData(4, (1,), (1,), (2,), (2,))
    with pytest.raises(DessinError):
        DessinData(4, (1, 2), (1,), (1, 2), (2, 3))
    with pytest.raises(DessinError):
        dessin_from_edges(lat, [(2, 1, 1, 1, 2)])
    # edges are oriented so that det(b_r, b_r') > 0
    d = dessin_from_edges(lat, [(1, 1, 1, 2, 1)])
    assert (d.red[0], d.red2[0]) == (1, 2)


def test_relabelling_is_found_for_permuted_nodes():
    d = dessins("B5")[0]
    perm = (2, 3, 1, 5, 4)
    moved = d.relabel_nodes(perm)
    found = find_node_relabelling(d, moved)
    assert found is not None
    assert canonical_form(moved.relabel_nodes(found)) == canonical_form(d)


def test_table_text():
    text = fixtures.b10_dessin().table()
    lines = text.splitlines()
    assert [l.split()[0] for l in lines] == ["e", "b", "w", "r", "r'"]
    assert Counter(lines[1].split()[1:]) == Counter(str(x) for x in fixtures.B10_TABLE["b"])
