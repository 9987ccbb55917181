"""Built-in instance library: the ideals of the worked examples and their expected data."""

from itertools import combinations

from .field import GF32003, Field
from .ideal import Ideal
from .ring import PolyRing

MATRIX_VARS = [f"x{i}{j}" for i in range(1, 4) for j in range(1, 6)]


def _field(field):
    if field is None:
        return GF32003
    return field if isinstance(field, Field) else Field.parse(str(field))


def minors3x5(field=None):
    """Maximal minors of the generic 3x5 matrix (x_ij)."""
    R = PolyRing(MATRIX_VARS, _field(field))
    X = [[R.var(f"x{i}{j}") for j in range(1, 6)] for i in range(1, 4)]
    gens = []
    for a, b, c in combinations(range(5), 3):
        m = [[X[r][k] for k in (a, b, c)] for r in range(3)]
        det = (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
               - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
               + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))
        gens.append(det)
    return Ideal(R, gens)


def diag3x5(field=None):
    """Initial ideal of the minors under a diagonal order: x_{1a} x_{2b} x_{3c}, a < b < c."""
    R = PolyRing(MATRIX_VARS, _field(field))
    return Ideal(R, [R.parse(f"x1{a}*x2{b}*x3{c}") for a, b, c in combinations(range(1, 6), 3)])


def _six(field):
    return PolyRing([f"x{i}" for i in range(1, 7)], _field(field))


def J1(field=None):
    R = _six(field)
    return Ideal(R, "x1*x2*x3, x1*x4*x6, x3*x4*x5, x4*x5*x6, x1*x2*x6, x1*x3*x4, x2*x3*x5")


def J2(field=None):
    R = _six(field)
    return Ideal(R, "x2*x3*x6, x1*x2*x6, x1*x3*x5, x1*x4*x5, x3*x5*x6, x1*x2*x5, x3*x4*x6")


def _squares(names, field):
    R = PolyRing(names, _field(field))
    return Ideal(R, [g * g for g in R.gens()])


def pow3(field=None):
    """(a^2, b^2, c^2)."""
    return _squares("a b c".split(), field)


def pow5(field=None):
    """(a^2, b^2, c^2, d^2, e^2)."""
    return _squares("a b c d e".split(), field)


LIBRARY = {
    "minors3x5": minors3x5,
    "diag3x5": diag3x5,
    "J1": J1,
    "J2": J2,
    "pow3": pow3,
    "pow5": pow5,
}


def get(name, field=None):
    try:
        return LIBRARY[name](field)
    except KeyError:
        raise KeyError(f"unknown instance {name!r}; known: {', '.join(sorted(LIBRARY))}") from None


# expected Betti rows of Z_2 for the counterexamples to the naive bound
EXPECTED_Z2 = {
    "e1": ("minors3x5", {8: [105, 90, 21], 9: [50, 225, 420, 420, 240, 75, 10]}),
    "e2": ("diag3x5", {7: [3], 8: [102, 101, 42, 12, 2], 9: [6, 21, 27, 15, 3]}),
    "e3a": ("J1", {8: [36, 27, 6], 9: [1, 3, 3, 1]}),
    "e3b": ("J2", {7: [2], 8: [30, 21, 4], 9: [1, 3, 3, 1]}),
}

# expected (reg Z_2, reg Z_1(I, Z_1), reg Z_1 (x) Z_1, reg Z_1 + reg Z_1) for s = t = 1
EXPECTED_CHAIN = {
    "remark-3vars": ("pow3", (6, 9, 10, 10)),
    "remark-5vars": ("pow5", (8, 11, 13, 14)),
}

EXAMPLE_IDS = list(EXPECTED_Z2) + list(EXPECTED_CHAIN)
