import random
from itertools import combinations
from math import gcd

import pytest
from hypothesis import assume, given, strategies as st

from gkzdimer import fixtures
from gkzdimer.lattice import (
    LatticeEmbedding,
    ValidationError,
    candidate_factors,
    coset_canonical,
    factor_antisymmetric,
    matmul,
    plucker_form,
    quiver_from_plucker,
    smith_normal_form,
    unimodular_inverse,
    validate_antisymmetric,
    validate_lattice,
)


def _det(m):
    # cofactor expansion, fine for the small matrices used here
    if len(m) == 1:
        return m[0][0]
    return sum((-1) ** c * m[0][c] * _det([row[:c] + row[c + 1:] for row in m[1:]]) for c in range(len(m)))


def determinantal_divisors(a):
    """gcd of all k x k minors for k = 1, 2: an SNF oracle that never row-reduces."""
    rows, cols = len(a), len(a[0])
    out = []
    for k in (1, 2):
        g = 0
        for rs in combinations(range(rows), k):
            for cs in combinations(range(cols), k):
                g = gcd(g, _det([[a[r][c] for c in cs] for r in rs]))
        out.append(g)
    return out


@pytest.mark.parametrize(
    "rows",
    [
        [[1, -1, 0]],
        [[1, -1, 0], [0, 1]],
        [[1, -1], [1, -1]],
        [[1, 0, 0], [0, 1, -1]],
        [[1, -1, 0], [2, -2, 0]],
    ],
)
def test_validation_errors(rows):
    with pytest.raises(ValidationError):
        validate_lattice(rows)


def test_zero_column_rejected():
    with pytest.raises(ValidationError, match="column 4"):
        LatticeEmbedding([[1, -1, 0, 0], [0, 1, -1, 0]])


def test_b2_plucker_form():
    c = plucker_form(fixtures.lattice("B2"))
    assert c == [[0, 1, 1, -2], [-1, 0, 2, -1], [-1, -2, 0, 3], [2, 1, -3, 0]]


def test_b1_plucker_and_quiver():
    lat = fixtures.lattice("B1")
    c = plucker_form(lat)
    assert c == [[0, 3, -3], [-3, 0, 3], [3, -3, 0]]
    q = quiver_from_plucker(c)
    assert q.arrows == {(1, 2): 3, (2, 3): 3, (3, 1): 3}
    assert len(q.arrow_list()) == 9
    assert lat.torsion == [3]


def test_b2_quiver_arrows():
    q = quiver_from_plucker(plucker_form(fixtures.lattice("B2")))
    assert q.antisymmetric_form() == plucker_form(fixtures.lattice("B2"))
    assert sum(q.arrows.values()) == sum(
        abs(x) for row in plucker_form(fixtures.lattice("B2")) for x in row
    ) // 2


def test_antisymmetric_validation():
    with pytest.raises(ValidationError):
        validate_antisymmetric([[0, 1], [1, 0]])
    with pytest.raises(ValidationError):
        validate_antisymmetric([[0, 1, 0], [-1, 0]])
    with pytest.raises(ValidationError):
        factor_antisymmetric([[0, 1, 1, 1], [-1, 0, 1, 1], [-1, -1, 0, 1], [-1, -1, -1, 0]])


@pytest.mark.parametrize("name", list(fixtures.LATTICES))
def test_smith_form_matches_determinantal_divisors(name):
    b = [list(r) for r in fixtures.LATTICES[name]]
    u, d, v = smith_normal_form(b)
    assert matmul(matmul(u, b), v) == d
    d1, d2 = determinantal_divisors(b)
    assert (d[0][0], d[0][0] * d[1][1]) == (d1, d2)
    # both transforms are unimodular
    assert abs(_det(u)) == 1
    assert matmul(v, unimodular_inverse(v)) == [[int(i == j) for j in range(len(v))] for i in range(len(v))]


@pytest.mark.parametrize("name", list(fixtures.LATTICES))
def test_plucker_round_trip(name):
    lat = fixtures.lattice(name)
    c = plucker_form(lat)
    rebuilt = factor_antisymmetric(c)
    assert plucker_form(rebuilt) == c
    if not lat.torsion:
        assert rebuilt.same_span(lat)
    else:
        # some Hermite factor reproduces the original lattice exactly
        assert any(cand.same_span(lat) for _, cand in candidate_factors(c))


@pytest.mark.parametrize("name, d", [("B1", 3), ("B3", 2), ("B4", 2)])
def test_published_factor_choice(name, d):
    lat = fixtures.lattice(name)
    c = plucker_form(lat)
    assert factor_antisymmetric(c, fixtures.published_g(d)).same_span(lat)


def test_factor_rejects_wrong_determinant():
    with pytest.raises(ValidationError):
        factor_antisymmetric(plucker_form(fixtures.lattice("B1")), [[1, 0], [0, 2]])


@st.composite
def lattices(draw):
    n = draw(st.integers(3, 6))
    row = st.lists(st.integers(-3, 3), min_size=n - 1, max_size=n - 1)
    r1, r2 = draw(row), draw(row)
    b = [r1 + [-sum(r1)], r2 + [-sum(r2)]]
    try:
        return LatticeEmbedding(b)
    except ValidationError:
        assume(False)


@given(lattices())
def test_random_plucker_round_trip(lat):
    c = plucker_form(lat)
    rebuilt = factor_antisymmetric(c)
    assert plucker_form(rebuilt) == c
    if not lat.torsion:
        assert rebuilt.same_span(lat)


@given(lattices(), st.integers(0, 10_000))
def test_coset_canonical_agrees_with_membership(lat, seed):
    rng = random.Random(seed)
    n = lat.n
    p = [rng.randint(-4, 4) for _ in range(n)]
    q = [rng.randint(-4, 4) for _ in range(n)]
    same = coset_canonical(p, lat) == coset_canonical(q, lat)
    assert same == lat.contains([a - b for a, b in zip(p, q)])
    # moving by a lattice vector never changes the class
    shifted = [a + 2 * x - 3 * y for a, x, y in zip(p, lat.B[0], lat.B[1])]
    assert coset_canonical(shifted, lat) == coset_canonical(p, lat)


@given(lattices())
def test_coset_levels_are_coordinate_sums(lat):
    cs = lat.cosets()
    rng = random.Random(0)
    for _ in range(5):
        p = [rng.randint(-5, 5) for _ in range(lat.n)]
        c = cs.of(p)
        assert cs.level(c) == sum(p)
        assert cs.of(cs.representative(c)) == c


def test_coset_canonical_length_check():
    with pytest.raises(ValidationError):
        coset_canonical([1, 2], fixtures.lattice("B2"))


def test_b1_torsion_classes():
    lat = fixtures.lattice("B1")
    cs = lat.cosets()
    # e_1 - e_2 generates the order three torsion, sums are zero
    diff = cs.of([1, -1, 0])
    assert diff != cs.of([0, 0, 0])
    assert cs.add(cs.add(diff, diff), diff) == cs.of([0, 0, 0])


def test_coordinates_and_embed():
    lat = fixtures.lattice("B2")
    v = lat.embed((2, -1))
    assert lat.coordinates(v) == (2, -1)
    with pytest.raises(ValueError):
        lat.coordinates([1, 0, 0, -1])
