"""Free resolutions, Betti tables and regularity.

A Schreyer frame is built from a Gröbner basis: the syzygies of level i+1
are the reduced S-pairs of level i, keyed in the induced Schreyer order.
Sorting each level by the exponent of the next variable keeps the frame
length at most n.  The frame is usually not minimal; graded Betti numbers
are read off from the ranks of its scalar parts,

    beta_{i,j} = #F_{i,j} - rank C_i(j) - rank C_{i+1}(j),

and ``minimal_resolution`` prunes unit entries by Gaussian elimination.
"""

import itertools
import sys
from fractions import Fraction
from math import comb

from .groebner import Basis, Context, SchreyerOrder, reduce_with_quotients
from .linalg import echelon, rank
from .modules import FreeModule, GradedMap, Subquotient, Submodule

MINUS_INFINITY = None


class BettiTable:
    """Graded Betti numbers ``beta[(i, j)]`` (only nonzero entries stored)."""

    def __init__(self, entries=None):
        self.entries = {k: v for k, v in (entries or {}).items() if v}
        for v in self.entries.values():
            if v < 0:
                raise ValueError("negative Betti number")

    def __getitem__(self, ij):
        return self.entries.get(tuple(ij), 0)

    def __eq__(self, other):
        return isinstance(other, BettiTable) and self.entries == other.entries

    def __hash__(self):
        return hash(frozenset(self.entries.items()))

    def is_zero(self):
        return not self.entries

    @property
    def pd(self):
        return max((i for i, _ in self.entries), default=None)

    @property
    def reg(self):
        """Regularity, or None for the zero module (minus infinity)."""
        return max((j - i for i, j in self.entries), default=None)

    def column(self, i):
        return {j: b for (ii, j), b in self.entries.items() if ii == i}

    def generators(self):
        return self.column(0)

    def total(self, i):
        return sum(self.column(i).values())

    def shift(self, d):
        return BettiTable({(i, j + d): b for (i, j), b in self.entries.items()})

    def __add__(self, other):
        out = dict(self.entries)
        for k, v in other.entries.items():
            out[k] = out.get(k, 0) + v
        return BettiTable(out)

    def truncated(self, bound):
        return BettiTable({(i, j): b for (i, j), b in self.entries.items() if j <= bound})

    def rows(self):
        """``{row: [beta_{0,row}, beta_{1,row+1}, ...]}`` with trailing zeros dropped."""
        if not self.entries:
            return {}
        lo = min(j - i for i, j in self.entries)
        hi = max(j - i for i, j in self.entries)
        pd = self.pd
        out = {}
        for r in range(lo, hi + 1):
            row = [self[(i, i + r)] for i in range(pd + 1)]
            while row and row[-1] == 0:
                row.pop()
            out[r] = row
        return out

    def to_json(self):
        reg = self.reg
        d = {"rows": {str(r): v for r, v in self.rows().items()}, "reg": reg, "pd": self.pd}
        if reg is None:
            d["reg_is_minus_infinity"] = True
        return d

    @classmethod
    def from_json(cls, obj):
        e = {}
        for r, vals in obj["rows"].items():
            for i, b in enumerate(vals):
                if b:
                    e[(i, int(r) + i)] = b
        return cls(e)

    @classmethod
    def from_rows(cls, rows):
        return cls.from_json({"rows": {str(k): v for k, v in rows.items()}})

    def render(self):
        """Plain-text table: column index i, row index j - i, '-' for zero."""
        if not self.entries:
            return "(zero module)\n"
        pd = self.pd
        rows = self.rows()
        labels = [f"{r}:" for r in rows]
        lw = max(len(s) for s in labels)
        cells = [[str(self[(i, i + r)]) if self[(i, i + r)] else "-" for i in range(pd + 1)] for r in rows]
        widths = [max([len(str(i))] + [len(c[i]) for c in cells]) for i in range(pd + 1)]
        head = " " * lw + "".join("  " + str(i).rjust(w) for i, w in enumerate(widths))
        lines = [head.rstrip(), "-" * len(head)]
        for lab, c in zip(labels, cells):
            lines.append(lab.rjust(lw) + "".join("  " + x.rjust(w) for x, w in zip(c, widths)))
        return "\n".join(lines) + "\n"

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"BettiTable({self.to_json()['rows']})"


def format_reg(r):
    return "-inf" if r is None else str(r)


def reg_le(a, b):
    """``a <= b`` with None meaning minus infinity."""
    if a is None:
        return True
    if b is None:
        return False
    return a <= b


def reg_max(*vals):
    vals = [v for v in vals if v is not None]
    return max(vals) if vals else None


# --- Schreyer frame ----------------------------------------------------------

class Frame:
    """Free modules P_0..P_L with orders and differentials (vectors in P_{i-1})."""

    def __init__(self, codec, p):
        self.codec = codec
        self.p = p
        self.shifts = []
        self.orders = []
        self.maps = [None]

    @property
    def length(self):
        return len(self.shifts) - 1


def _sorted_level(ctx, elems, var):
    codec, order = ctx.codec, ctx.order
    n = codec.n
    off = codec.offsets[var] if var < n else None

    def keyf(g):
        k = max(g)
        pos, R = order.decode(k)
        e = (codec.packed(R) >> off) & 0xFF if off is not None else 0
        return (pos, -e, -k)

    return sorted(elems, key=keyf)


def _level_syzygies(ctx, elems, new_order, progress=None):
    codec, order, p = ctx.codec, ctx.order, ctx.p
    guard = codec.guard
    B = Basis(ctx)
    for g in elems:
        B.add(g)
    one = 1 if p else Fraction(1)
    minus = (p - 1) if p else Fraction(-1)
    scale = order.scale
    out = []
    for pos, lst in B.by_pos.items():
        idx = [i for _, i in lst]
        for a, i in enumerate(idx):
            Pi = B.lP[i]
            cands = []
            for j in idx[a + 1:]:
                L = codec.pmax(Pi, B.lP[j])
                cands.append((L - Pi, L % 255, j, L))
            cands.sort(key=lambda c: (c[1], c[2]))
            keep = []
            for m, dm, j, L in cands:
                for m2, _, _, _ in keep:
                    d = m - m2
                    if d >= 0 and not d & guard:
                        break
                else:
                    keep.append((m, dm, j, L))
            gi = B.elems[i]
            for m, _, j, L in keep:
                Ri = codec.from_packed(m)
                Rj = codec.from_packed(L - B.lP[j])
                si, sj = scale * Ri, scale * Rj
                s = {k + si: c for k, c in gi.items()}
                for k, c in B.elems[j].items():
                    t = k + sj
                    v = s.get(t, 0) - c
                    if p:
                        v %= p
                    if v:
                        s[t] = v
                    else:
                        s.pop(t, None)
                quots, rem = reduce_with_quotients(ctx, s, B)
                if rem:
                    raise ArithmeticError("frame level is not a Gröbner basis")
                vec = {new_order.encode(i, Ri): one}
                vec[new_order.encode(j, Rj)] = minus
                for gk, sh, c in quots:
                    key = new_order.encode(gk, sh // scale)
                    v = vec.get(key, 0) - c
                    if p:
                        v %= p
                    if v:
                        vec[key] = v
                    else:
                        vec.pop(key, None)
                out.append(vec)
    return out


def schreyer_frame(codec, p, base_order, base_shifts, gb, include_base=True, progress=None):
    """Frame from a reduced GB ``gb`` of a submodule N of the base free module.

    With ``include_base`` the base module is P_0 and ``gb`` is d_1 (a
    resolution of base/N); otherwise P_0 is the free module on ``gb`` (a
    resolution of N).
    """
    fr = Frame(codec, p)
    order, shifts, cur = base_order, list(base_shifts), list(gb)
    if include_base:
        fr.shifts.append(shifts)
        fr.orders.append(order)
    var = 0
    while cur:
        ctx = Context(codec, p, order, shifts)
        cur = _sorted_level(ctx, cur, var)
        if fr.shifts:
            fr.maps.append(cur)
        new_order = SchreyerOrder(order, [max(g) for g in cur])
        new_shifts = [ctx.degree(g) for g in cur]
        fr.shifts.append(new_shifts)
        fr.orders.append(new_order)
        if progress:
            progress(f"frame P_{fr.length}: rank {len(cur)}")
        if fr.length > codec.n:
            raise ArithmeticError("frame longer than the number of variables")
        cur = _level_syzygies(ctx, cur, new_order)
        order, shifts = new_order, new_shifts
        var += 1
    return fr


def _frame_for(M, progress=None):
    """Frame resolving the subquotient ``M``."""
    F = M.free
    ring = F.ring
    codec, p = ring.codec, F.p
    if not M.rels:
        G = M.gb if M.gb is not None else Submodule(F, M.gens).gb()
        M.gb = G
        return schreyer_frame(codec, p, F.order, F.shifts, G, include_base=False, progress=progress)
    shifts, K = M.presentation()
    P0 = FreeModule(ring, shifts)
    return schreyer_frame(codec, p, P0.order, shifts, K, include_base=True, progress=progress)


def _scalar_blocks(fr, i):
    """Scalar part of d_i grouped by degree: ``{deg: [row dicts]}`` (rows = P_i basis)."""
    out = {}
    if i <= 0 or i >= len(fr.maps) or fr.maps[i] is None:
        return out
    prev = fr.orders[i - 1]
    sh = fr.shifts[i]
    for c, v in enumerate(fr.maps[i]):
        row = {}
        for k, x in v.items():
            pos, R = prev.decode(k)
            if R == 0:
                row[pos] = x
        if row:
            out.setdefault(sh[c], []).append(row)
    return out


def frame_betti(fr):
    L = fr.length
    counts = []
    for i in range(L + 1):
        c = {}
        for s in fr.shifts[i]:
            c[s] = c.get(s, 0) + 1
        counts.append(c)
    ranks = [dict() for _ in range(L + 2)]
    for i in range(1, L + 1):
        for d, rows in _scalar_blocks(fr, i).items():
            ranks[i][d] = rank(rows, fr.p)
    e = {}
    for i in range(L + 1):
        for d, cnt in counts[i].items():
            b = cnt - ranks[i].get(d, 0) - ranks[i + 1].get(d, 0)
            if b:
                e[(i, d)] = b
    return BettiTable(e)


def as_subquotient(M):
    if isinstance(M, Subquotient):
        return M
    if isinstance(M, Submodule):
        return Subquotient.from_submodule(M)
    if isinstance(M, FreeModule):
        return Subquotient.free_module(M)
    if hasattr(M, "as_subquotient"):
        return M.as_subquotient()
    raise TypeError(f"cannot resolve {type(M).__name__}")


def betti_table(M, progress=None):
    M = as_subquotient(M)
    if not M.gens:
        return BettiTable()
    cached = M.meta.get("betti")
    if cached is not None:
        return cached
    bt = frame_betti(_frame_for(M, progress))
    M.meta["betti"] = bt
    return bt


def regularity(M):
    return betti_table(M).reg


# --- minimal resolution by pruning ------------------------------------------

class Resolution:
    """Minimal free resolution: free modules and degree-0 differentials."""

    def __init__(self, modules, maps):
        self.modules = modules
        self.maps = maps  # maps[i]: modules[i] -> modules[i-1], maps[0] is None

    @property
    def length(self):
        return len(self.modules) - 1

    def betti(self):
        e = {}
        for i, F in enumerate(self.modules):
            for s in F.shifts:
                e[(i, s)] = e.get((i, s), 0) + 1
        return BettiTable(e)

    def is_minimal(self):
        for f in self.maps[1:]:
            for col in f.columns:
                for k in col:
                    if f.target.split(k)[1] == 0:
                        return False
        return True

    def is_complex(self):
        for i in range(2, len(self.maps)):
            if not self.maps[i - 1].compose(self.maps[i]).is_zero():
                return False
        return True


def _poly_mul(a, b, p):
    out = {}
    for k1, c1 in a.items():
        for k2, c2 in b.items():
            k = k1 + k2
            v = out.get(k, 0) + c1 * c2
            if p:
                v %= p
            if v:
                out[k] = v
            else:
                out.pop(k, None)
    return out


def _poly_axpy(a, b, c, p):
    """a + c*b"""
    out = dict(a)
    for k, x in b.items():
        v = out.get(k, 0) + c * x
        if p:
            v %= p
        if v:
            out[k] = v
        else:
            out.pop(k, None)
    return out


def minimal_resolution(M, progress=None):
    """Prune a Schreyer frame to a minimal free resolution."""
    M = as_subquotient(M)
    ring = M.free.ring
    p = M.free.p
    if not M.gens:
        return Resolution([], [None])
    fr = _frame_for(M, progress)
    L = fr.length
    # columns: mats[i][c] = {row: poly}
    mats = [None]
    for i in range(1, L + 1):
        prev = fr.orders[i - 1]
        cols = {}
        for c, v in enumerate(fr.maps[i]):
            col = {}
            for k, x in v.items():
                pos, R = prev.decode(k)
                col.setdefault(pos, {})[R] = x
            cols[c] = col
        mats.append(cols)
    alive = [set(range(len(fr.shifts[i]))) for i in range(L + 1)]
    for i in range(1, L + 1):
        cols = mats[i]
        while True:
            found = None
            for c in sorted(cols):
                for r, poly in cols[c].items():
                    if len(poly) == 1 and 0 in poly:
                        found = (c, r, poly[0])
                        break
                if found:
                    break
            if not found:
                break
            c, r, u = found
            inv = pow(u, -1, p) if p else 1 / Fraction(u)
            colc = cols.pop(c)
            for c2, col2 in cols.items():
                a = col2.get(r)
                if not a:
                    continue
                f = {k: (x * inv) for k, x in a.items()}
                for rr, poly in colc.items():
                    if rr == r:
                        continue
                    prod = _poly_mul(f, poly, p)
                    new = _poly_axpy(col2.get(rr, {}), prod, -1, p)
                    if new:
                        col2[rr] = new
                    else:
                        col2.pop(rr, None)
                col2.pop(r, None)
            alive[i].discard(c)
            alive[i - 1].discard(r)
            if i + 1 <= L:
                for col in mats[i + 1].values():
                    col.pop(c, None)
            if i - 1 >= 1:
                mats[i - 1].pop(r, None)
    modules = []
    index = []
    for i in range(L + 1):
        keep = sorted(alive[i])
        if not keep:
            break
        idx = {c: n for n, c in enumerate(keep)}
        index.append(idx)
        modules.append(FreeModule(ring, [fr.shifts[i][c] for c in keep]))
    maps = [None]
    for i in range(1, len(modules)):
        src, tgt = modules[i], modules[i - 1]
        cols = []
        for c in sorted(alive[i]):
            v = {}
            for r, poly in mats[i][c].items():
                for R, x in poly.items():
                    v[tgt.key(index[i - 1][r], R)] = x
            cols.append(v)
        maps.append(GradedMap(src, tgt, cols))
    return Resolution(modules, maps)


# --- independent oracle ----------------------------------------------------

def _dim_space(rows, p):
    return len(echelon(rows, p))


def hilbert_dim(M, d):
    """dim_K M_d via explicit linear algebra (no Gröbner bases)."""
    M = as_subquotient(M)
    A, B = _graded_piece(M, d)
    return len(A) - len(B)


def _graded_piece(M, d):
    """Echelon bases (as column-dict rows) of (U+V)_d and V_d in F_d."""
    F = M.free
    ring = F.ring
    p = F.p
    scale = F.order.scale

    def span(vecs):
        rows = []
        for v in vecs:
            dv = F.vector_degree(v)
            if dv is None or dv > d:
                continue
            for e in ring.monomials_of_degree(d - dv):
                sh = scale * ring.codec.encode(e)
                rows.append({k + sh: c for k, c in v.items()})
        return echelon(rows, p)

    V = span(M.rels)
    A = span(M.gens + M.rels)
    return list(A.values()), list(V.values())


def _oracle_degree(M, j, cache):
    """beta_{i,j} for all i via Koszul homology of the variables, dense path."""
    F = M.free
    ring = F.ring
    n = ring.ngens
    p = F.p
    scale = F.order.scale
    xs = [scale * ring.codec.var(k) for k in range(n)]

    def piece(d):
        if d not in cache:
            cache[d] = _graded_piece(M, d) if d >= 0 else ([], [])
        return cache[d]

    subsets = [list(itertools.combinations(range(n), i)) for i in range(n + 1)]

    def rank_dbar(i):
        # d_i : wedge^i (x) M_{j-i} -> wedge^{i-1} (x) M_{j-i+1}
        if i < 1 or i > n:
            return 0
        A, _ = piece(j - i)
        _, Bt = piece(j - i + 1)
        if not A:
            return 0
        tgt_idx = {I: t for t, I in enumerate(subsets[i - 1])}
        W = 1 << 2048  # wide spacing for (subset, key) columns
        rows = []
        for I in subsets[i]:
            for a in A:
                row = {}
                for pos_in_I, k in enumerate(I):
                    sign = 1 if pos_in_I % 2 == 0 else -1
                    t = tgt_idx[I[:pos_in_I] + I[pos_in_I + 1:]]
                    for key, c in a.items():
                        col = t * W + key + xs[k]
                        v = row.get(col, 0) + sign * c
                        if p:
                            v %= p
                        if v:
                            row[col] = v
                        else:
                            row.pop(col, None)
                if row:
                    rows.append(row)
        brows = []
        for t in range(len(subsets[i - 1])):
            for b in Bt:
                brows.append({t * W + k: c for k, c in b.items()})
        if not rows:
            return 0
        return _dim_space(rows + brows, p) - len(brows)

    out = {}
    ranks = {i: rank_dbar(i) for i in range(0, n + 2)}
    for i in range(0, n + 1):
        A, B = piece(j - i)
        dimC = comb(n, i) * (len(A) - len(B))
        b = dimC - ranks[i] - ranks[i + 1]
        if b:
            out[(i, j)] = b
    return out


def _join(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def _le(a, b):
    return all(x <= y for x, y in zip(a, b))


def _oracle_multigraded(M, bound):
    F = M.free
    ring = F.ring
    n = ring.ngens
    p = F.p
    vecs = [(v, F.mdegree_of_key(next(iter(v)))) for v in M.gens + M.rels]
    rels_md = [(v, F.mdegree_of_key(next(iter(v)))) for v in M.rels]
    D = sorted({md for _, md in vecs})
    top = D[0]
    for d in D[1:]:
        top = _join(top, d)
    cache = {}
    dec = F.order.decode

    def as_pos(v):
        out = {}
        for k, c in v.items():
            out[dec(k)[0]] = c
        return out

    gens_pos = [(as_pos(v), md) for v, md in vecs]
    rels_pos = [(as_pos(v), md) for v, md in rels_md]

    def piece(beta):
        if beta not in cache:
            if min(beta) < 0:
                cache[beta] = ([], [])
            else:
                A = echelon([g for g, md in gens_pos if _le(md, beta)], p)
                Bv = echelon([g for g, md in rels_pos if _le(md, beta)], p)
                cache[beta] = (list(A.values()), list(Bv.values()))
        return cache[beta]

    out = {}
    ranges = [range(t + 1) for t in top]
    for alpha in itertools.product(*ranges):
        deg = sum(alpha)
        if bound is not None and deg > bound:
            continue
        below = [d for d in D if _le(d, alpha)]
        if not below:
            continue
        j = below[0]
        for d in below[1:]:
            j = _join(j, d)
        if j != alpha:
            continue
        supp = [k for k in range(n) if alpha[k] > 0]

        def sub(I):
            return tuple(a - (1 if k in I else 0) for k, a in enumerate(alpha))

        def rank_dbar(i):
            if i < 1 or i > len(supp):
                return 0
            rows = []
            brows = []
            tsubs = list(itertools.combinations(supp, i - 1))
            tidx = {I: t for t, I in enumerate(tsubs)}
            W = F.rank
            for I in itertools.combinations(supp, i):
                A, _ = piece(sub(I))
                for a in A:
                    row = {}
                    for q, k in enumerate(I):
                        sign = 1 if q % 2 == 0 else -1
                        t = tidx[I[:q] + I[q + 1:]]
                        for pos, c in a.items():
                            col = t * W + pos
                            v = row.get(col, 0) + sign * c
                            if p:
                                v %= p
                            if v:
                                row[col] = v
                            else:
                                row.pop(col, None)
                    if row:
                        rows.append(row)
            for I2 in tsubs:
                _, Bv = piece(sub(I2))
                t = tidx[I2]
                for b in Bv:
                    brows.append({t * W + pos: c for pos, c in b.items()})
            if not rows:
                return 0
            return _dim_space(rows + brows, p) - len(brows)

        ranks = {i: rank_dbar(i) for i in range(0, len(supp) + 2)}
        for i in range(0, len(supp) + 1):
            dimC = 0
            for I in itertools.combinations(supp, i):
                A, Bv = piece(sub(I))
                dimC += len(A) - len(Bv)
            b = dimC - ranks[i] - ranks[i + 1]
            if b:
                out[(i, deg)] = out.get((i, deg), 0) + b
    return BettiTable(out)


class InconclusiveError(RuntimeError):
    pass


def betti_oracle(M, degree_bound=None):
    """Betti numbers as dim_K Tor_i(M, K)_j = dim H_i(x; M)_j (linear algebra only).

    Multigraded modules are handled one multidegree at a time, restricted to
    joins of generator multidegrees; otherwise ``degree_bound`` is required.
    """
    M = as_subquotient(M)
    if not M.gens:
        return BettiTable()
    if M.is_multigraded():
        return _oracle_multigraded(M, degree_bound)
    if degree_bound is None:
        raise ValueError("degree_bound is required for modules without a fine grading")
    F = M.free
    lo = min(F.vector_degree(v) for v in M.gens)
    cache = {}
    out = {}
    for j in range(lo, degree_bound + 1):
        out.update(_oracle_degree(M, j, cache))
    return BettiTable(out)


def cross_check(M, degree_bound=None):
    """Compare the resolution table with the oracle; raise if inconclusive."""
    bt = betti_table(M)
    if degree_bound is None and not as_subquotient(M).is_multigraded():
        # two degrees of slack past the last resolution entry
        degree_bound = max((j for _, j in bt.entries), default=0) + 2
    orc = betti_oracle(M, degree_bound)
    if degree_bound is not None:
        if any(j > degree_bound for _, j in bt.entries):
            raise InconclusiveError("inconclusive beyond bound")
        return bt.truncated(degree_bound) == orc, bt, orc
    return bt == orc, bt, orc


def log(msg):
    print(msg, file=sys.stderr, flush=True)
