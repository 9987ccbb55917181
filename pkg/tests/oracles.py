"""Independent brute-force oracles used to derive frozen test values.

Nothing here touches Gröbner bases or resolutions: only exponent tuples and
plain Gaussian elimination over Fractions or residues.
"""

from fractions import Fraction
from itertools import product


def degrevlex_greater(a, b):
    """Textbook degrevlex: higher degree wins; else the last nonzero entry of a - b is negative."""
    if sum(a) != sum(b):
        return sum(a) > sum(b)
    diff = [x - y for x, y in zip(a, b)]
    for x in reversed(diff):
        if x:
            return x < 0
    return False


def lex_greater(a, b):
    for x, y in zip(a, b):
        if x != y:
            return x > y
    return False


def monomials(n, d):
    return [e for e in product(range(d + 1), repeat=n) if sum(e) == d]


def _poly_terms(f):
    cod = f.ring.codec
    return {cod.exps(k): c for k, c in f.data.items()}


def rank(rows, p):
    """Rank of a list of dict rows by straightforward elimination."""
    rows = [dict(r) for r in rows]
    piv = []
    r = 0
    cols = sorted({c for row in rows for c in row})
    for c in cols:
        pr = next((i for i in range(r, len(rows)) if rows[i].get(c)), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        a = rows[r][c]
        inv = pow(a, -1, p) if p else 1 / Fraction(a)
        for i in range(len(rows)):
            if i != r and rows[i].get(c):
                f = rows[i][c] * inv
                for k, x in rows[r].items():
                    v = rows[i].get(k, 0) - f * x
                    if p:
                        v %= p
                    if v:
                        rows[i][k] = v
                    else:
                        rows[i].pop(k, None)
        r += 1
    return r


def ideal_piece(gens, d, n):
    """Rows spanning I_d for an ideal given by polynomial generators."""
    rows = []
    for g in gens:
        t = _poly_terms(g)
        dg = sum(next(iter(t)))
        if dg > d:
            continue
        for m in monomials(n, d - dg):
            rows.append({tuple(a + b for a, b in zip(e, m)): c for e, c in t.items()})
    return rows


def dim_ideal_piece(gens, d, n, p):
    return rank(ideal_piece(gens, d, n), p)


def in_ideal_degreewise(f, gens, n, p):
    """f in (gens), decided in the single degree of f by a rank comparison."""
    d = f.degree()
    rows = ideal_piece(gens, d, n)
    return rank(rows + [dict(_poly_terms(f))], p) == rank(rows, p)


def minimal_generator_count(gens, n, p, maxdeg):
    """sum_d dim I_d - dim (m I)_d."""
    total = 0
    for d in range(maxdeg + 1):
        full = dim_ideal_piece(gens, d, n, p)
        lower = []
        for g in gens:
            if g.degree() < d:
                lower.extend(ideal_piece([g], d, n))
        total += full - rank(lower, p)
    return total


def colon_piece_dim(gens, a, d, n, p):
    """dim (I : m^a)_d by brute force over all monomial combinations."""
    # h in (I:m^a)_d iff h*u in I for all monomials u of degree a
    mons = monomials(n, d)
    Id = ideal_piece(gens, d + a, n)
    r0 = rank(Id, p)
    # linear map h -> (h*u mod I_{d+a})_u: compute kernel dimension via ranks
    # quotient coordinates: project onto complement by row-reducing with I_{d+a}
    rows = []
    for e in mons:
        row = {}
        for ui, u in enumerate(monomials(n, a)):
            row[(ui, tuple(x + y for x, y in zip(e, u)))] = 1
        rows.append(row)
    # kernel of M: x -> sum x_e row_e modulo span(Id (x) each u)
    mods = []
    for ui in range(len(monomials(n, a))):
        for r in Id:
            mods.append({(ui, k): v for k, v in r.items()})
    rk_mods = rank(mods, p)
    rk_all = rank(mods + rows, p)
    return len(mons) - (rk_all - rk_mods)
