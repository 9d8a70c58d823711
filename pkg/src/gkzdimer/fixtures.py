"""Published reference data used by the tests, the acceptance suite and the CLI.

Lattices are 2 x N matrices with rows spanning L.  Matrices of dessins list,
for each (black, white) entry, the terms as (edge, node, node).
"""
from __future__ import annotations

from .lattice import LatticeEmbedding
from .polyring import LaurentPoly, parse_poly

LATTICES: dict[str, list[list[int]]] = {
    "B1": [[2, -1, -1], [1, 1, -2]],
    "B2": [[0, 1, 1, -2], [-1, 0, 2, -1]],
    "B3": [[1, 1, -1, -1], [0, 0, 2, -2]],
    "B4": [[1, 1, -1, -1], [-1, 1, 1, -1]],
    "B5": [[0, 1, 1, -1, -1], [-1, 0, 0, 2, -1]],
    "B6": [[-1, 0, 1, 1, -1], [-1, -1, 0, 1, 1]],
    "B7": [[0, 1, 1, 0, -1, -1], [-1, 0, 1, 1, 0, -1]],
    "B8": [[-1, -1, 0, 1, 1, 0], [1, -1, -1, 0, 0, 1]],
    "B9": [[0, 2, 0, 0, -1, -1], [-1, -1, 1, 1, 0, 0]],
    "B10": [[0, 0, 1, 1, 1, -3], [-1, -1, 0, 0, 0, 2]],
}

APPELL_F1 = [[1, -1, 0, -1, 1, 0], [1, 0, -1, -1, 0, 1]]
APPELL_F4 = [[-1, -1, 1, 1, 0, 0], [-1, -1, 0, 0, 1, 1]]

# further lattices for which the determinant comparison is reported to work
EXTRA_LATTICES = {
    "seven_nodes": [[-3, 1, 1, 1, 0, 0, 0], [-3, 0, 0, 0, 1, 1, 1]],
    "five_nodes": [[1, 1, 0, -2, 0], [0, 0, 1, 1, -2]],
}

# Hermite factor G = [[1, 1], [0, d]] reproduces B1, B3 and B4 from their Plücker forms
def published_g(d: int) -> list[list[int]]:
    return [[1, 1], [0, d]]


def lattice(name: str) -> LatticeEmbedding:
    if name in LATTICES:
        return LatticeEmbedding(LATTICES[name])
    if name in EXTRA_LATTICES:
        return LatticeEmbedding(EXTRA_LATTICES[name])
    raise KeyError(name)


# ---------------------------------------------------------------- B2

B2_CONE_PAIRS = [
    {(1, 2), (1, 3), (2, 4)},
    {(1, 3), (2, 3)},
    {(3, 4)},
    {(1, 4), (2, 4)},
]
B2_SECONDARY_VERTICES = {(1, 2, 3, 0), (2, 2, 1, 1), (2, 1, 0, 3), (0, 0, 3, 3)}
B2_A_VECTORS = [(1, 0), (1, 3), (1, 1), (1, 2)]

B2_CRIT_MATRIX = [
    [[(1, 1, 4)], [(2, 3, 4)], [(3, 1, 3)]],
    [[(4, 2, 3)], [(5, 2, 4)], [(6, 3, 4)]],
    [[(7, 1, 2), (8, 3, 4)], [(9, 2, 3)], [(10, 1, 4)]],
]
B2_CRIT_ENTRIES = [
    ["2*u^[1,0,0,1]", "3*u^[0,0,1,1]", "1*u^[1,0,1,0]"],
    ["2*u^[0,1,1,0]", "1*u^[0,1,0,1]", "3*u^[0,0,1,1]"],
    ["1*u^[1,1,0,0] + 3*u^[0,0,1,1]", "2*u^[0,1,1,0]", "2*u^[1,0,0,1]"],
]
B2_DET_CRIT = (
    "27*u^[0,0,3,3] + 4*u^[1,2,3,0] + 4*u^[2,1,0,3] - 18*u^[1,1,2,2] - 1*u^[2,2,1,1]"
)
B2_E_A = "27*u^[3,3,0,0] + 4*u^[2,1,0,3] + 4*u^[1,2,3,0] - 1*u^[1,1,2,2] - 18*u^[2,2,1,1]"
CUBIC_DISCRIMINANT = (
    "27*u^[2,2,0,0] + 4*u^[1,0,0,3] + 4*u^[0,1,3,0] - 1*u^[0,0,2,2] - 18*u^[1,1,1,1]"
)

# ---------------------------------------------------------------- P^2

P2_MATRIX = [
    [[(1, 1, 3)], [(2, 1, 2)], [(3, 2, 3)]],
    [[(4, 2, 3)], [(5, 1, 3)], [(6, 1, 2)]],
    [[(7, 1, 2)], [(8, 2, 3)], [(9, 1, 3)]],
]
P2_SUPERPOTENTIAL_POSITIVE = [(1, 2, 3), (4, 5, 6), (7, 8, 9)]

# ---------------------------------------------------------------- B8

B8_K1 = [
    [[(2, 1, 2)], [(8, 2, 4)], [], [(4, 1, 4)]],
    [[(14, 5, 6)], [(10, 2, 6)], [(9, 2, 5)], []],
    [[(6, 1, 6), (7, 2, 3)], [(13, 4, 6)], [(1, 1, 2)], [(11, 3, 4)]],
    [[(12, 3, 5)], [], [(5, 1, 5)], [(3, 1, 3)]],
]
B8_K2 = [
    [[(2, 1, 2)], [(9, 2, 5)], [], [(5, 1, 5)]],
    [[(4, 1, 4)], [(1, 1, 2)], [(8, 2, 4)], []],
    [[(7, 2, 3)], [(14, 5, 6)], [(10, 2, 6)], [(12, 3, 5)]],
    [[(11, 3, 4)], [(6, 1, 6)], [(13, 4, 6)], [(3, 1, 3)]],
]
B8_W1 = (
    [(2, 8, 4), (9, 14, 10), (1, 7, 11, 13, 6), (3, 12, 5)],
    [(2, 7, 12, 14, 6), (8, 13, 10), (1, 9, 5), (3, 11, 4)],
)
B8_W2 = (
    [(2, 9, 5), (1, 8, 4), (7, 12, 14, 10), (3, 11, 13, 6)],
    [(2, 7, 11, 4), (1, 9, 14, 6), (8, 13, 10), (3, 12, 5)],
)
B8_DET_SUPPORT = {
    (3, 3, 1, 0, 0, 1),
    (2, 2, 1, 1, 1, 1),
    (1, 1, 1, 2, 2, 1),
    (2, 0, 0, 2, 2, 2),
    (3, 1, 0, 1, 1, 2),
    (0, 2, 2, 2, 2, 0),
    (1, 3, 2, 1, 1, 0),
}
B8_DET_CRIT = (
    "4*u^[3,3,1,0,0,1] + 2*u^[1,1,1,2,2,1] + 1*u^[1,3,2,1,1,0] + 1*u^[3,1,0,1,1,2]"
    " - 1*u^[2,0,0,2,2,2] - 1*u^[0,2,2,2,2,0] - 6*u^[2,2,1,1,1,1]"
)
B8_LHS = (
    "4*u^[1,1,3,4,4,3] + 2*u^[3,3,3,2,2,3] + 1*u^[3,1,2,3,3,4] + 1*u^[1,3,4,3,3,2]"
    " - 1*u^[2,4,4,2,2,2] - 1*u^[4,2,2,2,2,4] - 6*u^[2,2,3,3,3,3]"
)
B8_E_A_FACTORS = [
    ("1*u^[1,1,2,2,2,2]", 1),
    ("1*u^[0,0,0,1,1,0] - 1*u^[1,1,0,0,0,0]", 1),
    ("4*u^[0,0,1,1,1,1] + 1*u^[0,2,2,0,0,0] - 2*u^[1,1,1,0,0,1] + 1*u^[2,0,0,0,0,2]", 1),
]
# exponents of f_A in x1..x4: u1 x1 + u2 x1 x2 + u3 x1 x3 + u4 x1 x4 + u5 x1 x2 / x4 + u6 x1 x2 x3
B8_F_A_EXPONENTS = [
    (1, 0, 0, 0),
    (1, 1, 0, 0),
    (1, 0, 1, 0),
    (1, 0, 0, 1),
    (1, 1, 0, -1),
    (1, 1, 1, 0),
]

# ---------------------------------------------------------------- B10

B10_TABLE = {
    "b": [6, 5, 1, 2, 4, 3, 1, 5, 3, 6, 4, 2, 5, 6, 1, 2, 3, 4],
    "w": [5, 6, 2, 1, 3, 4, 3, 1, 5, 2, 6, 4, 5, 6, 1, 2, 3, 4],
    "r": [2, 2, 3, 3, 4, 4, 1, 1, 1, 1, 1, 1, 5, 6, 5, 6, 5, 6],
    "rp": [1, 1, 1, 1, 1, 1, 5, 5, 5, 6, 6, 6, 2, 2, 3, 3, 4, 4],
}
B10_SIGMA0 = [(3, 7, 15), (4, 12, 16), (6, 9, 17), (5, 11, 18), (2, 8, 13), (1, 10, 14)]
B10_SIGMA1 = [(4, 8, 15), (3, 10, 16), (5, 7, 17), (6, 12, 18), (1, 9, 13), (2, 11, 14)]
B10_ZIGZAG_1 = (1, 10, 3, 7, 5, 11, 2, 8, 4, 12, 6, 9)
B10_MATRIX = [
    [[(15, 3, 5)], [(3, 1, 3)], [(7, 1, 5)], [], [], []],
    [[(4, 1, 3)], [(16, 3, 6)], [], [(12, 1, 6)], [], []],
    [[], [], [(17, 4, 5)], [(6, 1, 4)], [(9, 1, 5)], []],
    [[], [], [(5, 1, 4)], [(18, 4, 6)], [], [(11, 1, 6)]],
    [[(8, 1, 5)], [], [], [], [(13, 2, 5)], [(2, 1, 2)]],
    [[], [(10, 1, 6)], [], [], [(1, 1, 2)], [(14, 2, 6)]],
]


def poly(text: str, nvars: int) -> LaurentPoly:
    return parse_poly(text, nvars)


def b8_e_a() -> LaurentPoly:
    total = LaurentPoly.one(6)
    for text, power in B8_E_A_FACTORS:
        total = total * parse_poly(text, 6) ** power
    return total


def b10_dessin():
    from .dessin import DessinData

    t = B10_TABLE
    return DessinData(6, tuple(t["b"]), tuple(t["w"]), tuple(t["r"]), tuple(t["rp"]))
