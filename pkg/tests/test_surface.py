import random
from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given, strategies as st

from conftest import NAMES, enumeration
from gkzdimer import fixtures
from gkzdimer.lattice import ValidationError
from gkzdimer.surface import (
    CapExceeded,
    ResonanceError,
    enumerate_surfaces,
    initial_surface,
    is_nonresonant,
    random_offset,
)

# frozen from a full run: (surfaces in the flip class, perfect ones)
COUNTS = {
    "B1": (3, 1),
    "B2": (7, 1),
    "B3": (11, 1),
    "B4": (1, 1),
    "B5": (40, 2),
    "B6": (18, 2),
    "B7": (38, 2),
    "B8": (152, 6),
    "B9": (21, 1),
    "B10": (138, 1),
    "five_nodes": (21, 1),
}


def total_det(lat):
    return sum(abs(lat.det(i, j)) for i in range(lat.n) for j in range(i + 1, lat.n))


def test_nonresonance_check():
    lat = fixtures.lattice("B2")
    assert not is_nonresonant(lat, [0, 0, 0, 0])
    assert is_nonresonant(lat, random_offset(4, 3))
    # force lines 1, 2 and 3 through one point: b1 = (0,-1), b2 = (1,0), b3 = (1,2)
    x, y = Fraction(1, 3), Fraction(1, 5)
    lam = [-(x * 0 + y * -1), -x, 1 - (x + 2 * y), Fraction(1, 7)]
    assert not is_nonresonant(lat, lam)
    with pytest.raises(ResonanceError):
        initial_surface(lat, lam)
    with pytest.raises(ValidationError):
        is_nonresonant(lat, [0, 0])


@pytest.mark.parametrize("name, squares, sites", [("B1", 9, 6), ("B2", 10, 4), ("B4", 8, 0)])
def test_initial_surfaces(name, squares, sites):
    s = initial_surface(fixtures.lattice(name))
    assert len(s.squares) == squares == total_det(s.lattice)
    assert len(s.vertices()) == squares
    assert len(s.flip_sites()) == sites
    s.check_counts()


@pytest.mark.parametrize("name", list(COUNTS))
def test_enumeration_counts(name):
    enum = enumeration(name)
    assert enum.complete
    assert (len(enum), len(enum.perfect())) == COUNTS[name]
    for s in enum.surfaces:
        s.check_counts()


@pytest.mark.parametrize("name", ["B1", "B2", "B4", "B6", "B7"])
def test_independent_of_offset(name):
    lat = fixtures.lattice(name)
    forms = []
    for seed in (1, 2):
        start = initial_surface(lat, seed=seed)
        forms.append(set(enumerate_surfaces(start).forms))
    assert forms[0] == forms[1] == set(enumeration(name).forms)


@pytest.mark.parametrize("name, swap", [("B9", (2, 3)), ("B10", (2, 3))])
def test_parallel_lines_fix_an_order(name, swap):
    # equal columns give parallel grid lines whose order depends on the offset;
    # the two resulting classes differ exactly by swapping those coordinates
    lat = fixtures.lattice(name)
    perm = list(range(lat.n))
    perm[swap[0]], perm[swap[1]] = swap[1], swap[0]
    first = enumeration(name)
    other = enumerate_surfaces(initial_surface(lat, seed=1))
    assert set(first.forms) != set(other.forms)
    assert {s.permute(perm).canonical_form() for s in first.surfaces} == set(other.forms)


def test_permute_rejects_non_symmetries():
    s = enumeration("B2").surfaces[0]
    with pytest.raises(ValueError):
        s.permute([1, 0, 2, 3])


@pytest.mark.parametrize("name", NAMES)
def test_projected_area(name):
    lat = fixtures.lattice(name)
    b = lat.B
    gram = [[sum(x * y for x, y in zip(r, s)) for s in b] for r in b]
    det_bbt = gram[0][0] * gram[1][1] - gram[0][1] * gram[1][0]
    for s in enumeration(name).surfaces[:5]:
        assert s.projected_area() == det_bbt


@given(st.sampled_from(["B2", "B5", "B6", "B8"]), st.integers(0, 10_000))
def test_flips_preserve_counts_and_invert(name, seed):
    rng = random.Random(seed)
    surfaces = enumeration(name).surfaces
    s = surfaces[rng.randrange(len(surfaces))]
    sites = s.flip_sites()
    if not sites:
        return
    t = s.flip(rng.choice(sites))
    t.check_counts()
    assert t.canonical_form() != s.canonical_form()
    assert any(t.flip(w).canonical_form() == s.canonical_form() for w in t.flip_sites())


def test_flip_rejects_non_sites():
    s = initial_surface(fixtures.lattice("B4"))
    with pytest.raises(ValueError):
        s.flip(sorted(s.vertices())[0])


@given(st.sampled_from(["B2", "B7", "B8"]), st.lists(st.integers(-3, 3), min_size=6, max_size=6))
def test_canonical_form_ignores_translation(name, shift):
    s = enumeration(name).surfaces[-1]
    t = s.translate(s.cosets.of(shift[: s.lattice.n]))
    assert t.canonical_form() == s.canonical_form()


def test_cap_and_first_step():
    start = initial_surface(fixtures.lattice("B8"))
    with pytest.raises(CapExceeded) as info:
        enumerate_surfaces(start, cap=10)
    assert info.value.cap == 10
    first = enumerate_surfaces(start, first_step_only=True)
    assert not first.complete
    assert len(first) == 1 + len({start.flip(v).canonical_form() for v in start.flip_sites()} - {start.canonical_form()})


@pytest.mark.parametrize("name", NAMES + ["five_nodes"])
def test_zigzag_loops(name):
    lat = fixtures.lattice(name)
    s = enumeration(name).perfect()[0]
    for i in range(lat.n):
        loops = s.zigzag_loops(i)
        assert len(loops) == gcd(*lat.column(i))
        assert sum(map(len, loops)) == sum(abs(lat.det(i, j)) for j in range(lat.n))


def test_b10_long_zigzag():
    s = enumeration("B10").perfect()[0]
    assert [len(loop) for loop in s.zigzag_loops(5)] == [len(fixtures.B10_ZIGZAG_1)]


def test_perfect_levels():
    for name in NAMES:
        for s in enumeration(name).perfect():
            lo = min(s.level_values())
            assert s.level_values() == [lo, lo + 1, lo + 2]
