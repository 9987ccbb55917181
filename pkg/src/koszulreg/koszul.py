"""Koszul complexes K(f, M) with coefficients in a subquotient M.

Strand t is ``wedge^t F (x) E`` where E is the ambient free module of M; the
basis element ``e_u (x) eps_p`` sits at position ``idx(u) * rank(E) + p``
with subsets u in lexicographic order.  The differential is

    phi(e_{u_1} ^ ... ^ e_{u_t}) = sum_k (-1)^(k+1) f_{u_k} e_{u minus u_k}.
"""

from fractions import Fraction
from itertools import combinations
from math import comb

from .modules import (FreeModule, GradedMap, Subquotient, Submodule, apply_columns,
                      kernel_subquotient, submodule_equal, vadd)
from .ring import Polynomial


def wedge_sign(u, v):
    """Sign of the permutation sorting the concatenation ``u + v`` (disjoint)."""
    inv = 0
    for a in u:
        for b in v:
            if a > b:
                inv += 1
    return -1 if inv % 2 else 1


class KoszulComplex:
    """K(f, M) for a homogeneous sequence f (not necessarily minimal)."""

    def __init__(self, seq, M=None):
        seq = list(seq)
        if not seq and M is None:
            raise ValueError("need a ring: pass M or a nonempty sequence")
        self.ring = seq[0].ring if seq else M.ring
        for f in seq:
            if not f.is_homogeneous() or f.is_zero():
                raise ValueError(f"sequence entries must be nonzero homogeneous polynomials: {f}")
        self.seq = seq
        self.m = len(seq)
        self.degrees = [f.degree() for f in seq]
        if M is None:
            n = self.ring.ngens
            E = FreeModule(self.ring, [0], [(0,) * n])
            M = Subquotient(E, [{E.key(0, 0): self.ring.field.one()}])
        self.M = M
        self.E = M.free
        self._subsets = {}
        self._amb = {}
        self._diff = {}
        self._cycles = {}
        self._strand = {}
        self.monomial = all(f.is_monomial() for f in seq)

    # indexing
    def subsets(self, t):
        if t not in self._subsets:
            lst = list(combinations(range(self.m), t))
            self._subsets[t] = (lst, {u: i for i, u in enumerate(lst)})
        return self._subsets[t][0]

    def index(self, u):
        return self._subsets_for(len(u))[1][tuple(u)]

    def _subsets_for(self, t):
        self.subsets(t)
        return self._subsets[t]

    def strand_rank(self, t):
        return comb(self.m, t) * self.E.rank

    def position(self, u, p=0):
        return self.index(u) * self.E.rank + p

    def ambient(self, t):
        if t not in self._amb:
            E = self.E
            subs = self.subsets(t)
            shifts = []
            mds = None
            fmd = None
            if self.monomial and E.mdegrees is not None:
                cod = self.ring.codec
                fmd = [cod.exps(max(f.data)) for f in self.seq]
                mds = []
            for u in subs:
                d = sum(self.degrees[i] for i in u)
                for p in range(E.rank):
                    shifts.append(d + E.shifts[p])
                    if mds is not None:
                        md = list(E.mdegrees[p])
                        for i in u:
                            md = [a + b for a, b in zip(md, fmd[i])]
                        mds.append(tuple(md))
            self._amb[t] = FreeModule(self.ring, shifts, mds)
        return self._amb[t]

    def lift(self, t, u, v):
        """``e_u (x) v`` for a vector ``v`` of E (canonical keys)."""
        A = self.ambient(t)
        E = self.E
        base = self.index(u) * E.rank
        out = {}
        for k, c in v.items():
            p, R = E.split(k)
            out[A.key(base + p, R)] = c
        return out

    def split_key(self, t, key):
        """(u, p, monomial key) of an ambient key in strand t."""
        A = self.ambient(t)
        pos, R = A.split(key)
        ui, p = divmod(pos, self.E.rank)
        return self.subsets(t)[ui], p, R

    def differential(self, t):
        """phi_t : ambient(t) -> ambient(t-1) as a GradedMap (t >= 1)."""
        if t not in self._diff:
            if t < 1 or t > self.m:
                raise ValueError(f"no differential out of strand {t}")
            src, tgt = self.ambient(t), self.ambient(t - 1)
            p = src.p
            rE = self.E.rank
            cols = []
            for u in self.subsets(t):
                for q in range(rE):
                    col = {}
                    for k, i in enumerate(u):
                        rest = u[:k] + u[k + 1:]
                        pos = self.index(rest) * rE + q
                        sign = 1 if k % 2 == 0 else -1
                        for mk, c in self.seq[i].data.items():
                            key = tgt.key(pos, mk)
                            v = col.get(key, 0) + sign * c
                            if p:
                                v %= p
                            if v:
                                col[key] = v
                            else:
                                col.pop(key, None)
                    cols.append(col)
            self._diff[t] = GradedMap(src, tgt, cols)
        return self._diff[t]

    def phi(self, t, v):
        if t == 0:
            return {}
        return self.differential(t)(v)

    def strand(self, t):
        """K_t(I, M) as a subquotient of ambient(t)."""
        if t not in self._strand:
            A = self.ambient(t)
            gens, rels = [], []
            for u in self.subsets(t):
                gens.extend(self.lift(t, u, g) for g in self.M.gens)
                rels.extend(self.lift(t, u, r) for r in self.M.rels)
            self._strand[t] = Subquotient(A, gens, rels)
        return self._strand[t]

    def _coeff_is_free(self):
        E = self.E
        M = self.M
        if M.rels or len(M.gens) != E.rank:
            return False
        keys = sorted(k for g in M.gens for k in g)
        return all(len(g) == 1 for g in M.gens) and keys == sorted(E.key(i, 0) for i in range(E.rank)) \
            and all(c == 1 for g in M.gens for c in g.values())

    def cycles(self, t):
        """Z_t(f, M) as a subquotient of ambient(t)."""
        if t not in self._cycles:
            if t < 0 or t > self.m:
                Z = Subquotient(self.ambient(0) if t < 0 else FreeModule(self.ring, []), [])
            elif t == 0:
                Z = self.strand(0)
            elif self._coeff_is_free():
                sub = self.differential(t).kernel()
                Z = Subquotient.from_submodule(sub)
            else:
                Z = kernel_subquotient(self.strand(t), self.strand(t - 1), self.differential(t).columns, check=False)
            Z.meta["koszul"] = {"m": self.m, "t": t, "shifts": list(self.ambient(t).shifts) if 0 <= t <= self.m else []}
            self._cycles[t] = Z
        return self._cycles[t]

    def boundary_gens(self, t):
        if t >= self.m:
            return []
        d = self.differential(t + 1)
        out = []
        for g in self.strand(t + 1).gens:
            v = d(g)
            if v:
                out.append(v)
        return out

    def boundaries(self, t):
        """B_t(f, M) = (image of phi_{t+1} + denominators) / denominators."""
        S = self.strand(t)
        return Subquotient(self.ambient(t), self.boundary_gens(t), S.rels)

    def homology(self, t):
        Z = self.cycles(t)
        S = self.strand(t) if 0 <= t <= self.m else None
        rels = self.boundary_gens(t) + (S.rels if S else [])
        H = Subquotient(Z.free, Z.gens, rels)
        H.meta["koszul"] = dict(Z.meta.get("koszul", {}))
        return H

    # elementwise operations
    def decompose(self, g, u, total=None):
        """Split ``g`` in strand ``total`` as ``a_u + e_u . b_u``; returns (a_u, b_u)."""
        u = tuple(u)
        s = len(u)
        if total is None:
            total = self._guess_strand(g)
        if len(set(u)) != s or any(i < 0 or i >= self.m for i in u) or list(u) != sorted(u):
            raise ValueError(f"{u} is not a sorted subset of [0, {self.m})")
        if s > total:
            raise ValueError("index set larger than the strand")
        A = self.ambient(total)
        T = self.ambient(total - s)
        rE = self.E.rank
        su = set(u)
        a, b = {}, {}
        p = A.p
        for k, c in g.items():
            pos, R = A.split(k)
            wi, q = divmod(pos, rE)
            w = self.subsets(total)[wi]
            if su.issubset(w):
                rest = tuple(i for i in w if i not in su)
                sign = wedge_sign(u, rest)
                key = T.key(self.index(rest) * rE + q, R)
                b[key] = (sign * c) % p if p else sign * c
            else:
                a[k] = c
        return a, b

    def _guess_strand(self, g):
        raise ValueError("pass the strand index explicitly")

    def wedge(self, s, a, t, b):
        """Product ``a . b`` with a in K_s(f, S) (E = S) and b in K_t(f, M)."""
        Kt = self.ambient(t)
        Ks = FreeModule(self.ring, [0] * comb(self.m, s)) if self.E.rank != 1 else None
        rE = self.E.rank
        out_amb = self.ambient(s + t)
        p = out_amb.p
        subs_s = self.subsets(s)
        subs_t = self.subsets(t)
        nS = len(subs_s)
        # a is keyed in a rank-C(m,s) free module over S with canonical order
        As = FreeModule(self.ring, [0] * max(nS, 1))
        scale = out_amb.order.scale
        out = {}
        for ka, ca in a.items():
            ua, Ra = As.split(ka)
            u = subs_s[ua]
            for kb, cb in b.items():
                pos, Rb = Kt.split(kb)
                wi, q = divmod(pos, rE)
                w = subs_t[wi]
                if set(u) & set(w):
                    continue
                sign = wedge_sign(u, w)
                uw = tuple(sorted(u + w))
                key = out_amb.key(self.index(uw) * rE + q, Ra + Rb)
                v = out.get(key, 0) + sign * ca * cb
                if p:
                    v %= p
                if v:
                    out[key] = v
                else:
                    out.pop(key, None)
        return out


def ambient_coords(K, s, v):
    """Re-key an element of K_s(f, S) (E = S) in a plain rank-C(m,s) module."""
    A = K.ambient(s)
    B = FreeModule(K.ring, [0] * len(K.subsets(s)))
    out = {}
    for k, c in v.items():
        pos, R = A.split(k)
        out[B.key(pos, R)] = c
    return out


class DoubleKoszul:
    """Z_s(f, Z_t(f, M)) inside wedge^s F (x) wedge^t F (x) E, and the maps alpha/beta."""

    def __init__(self, K, s, t):
        self.K = K
        self.s, self.t = s, t
        self.Zt = K.cycles(t)
        self.outer = KoszulComplex(K.seq, self.Zt)

    def cycles(self):
        return self.outer.cycles(self.s)

    def beta(self, g):
        """beta(g) = sum_u e_u (x) b_u(g) for g in Z_{s+t}(f, M)."""
        K, s, t = self.K, self.s, self.t
        outer = self.outer
        p = K.ambient(0).p
        out = {}
        for u in K.subsets(s):
            _, b = K.decompose(g, u, s + t)
            if b:
                out = vadd(out, outer.lift(s, u, b), p)
        return out

    def alpha(self, w):
        """alpha(sum e_u (x) z_u) = sum e_u . z_u."""
        K, s, t = self.K, self.s, self.t
        outer = self.outer
        A = outer.ambient(s)
        T = K.ambient(t)
        rT = T.rank
        rE = K.E.rank
        tgt = K.ambient(s + t)
        p = tgt.p
        out = {}
        for k, c in w.items():
            pos, R = A.split(k)
            ui, q = divmod(pos, rT)
            u = K.subsets(s)[ui]
            wi, e = divmod(q, rE)
            ww = K.subsets(t)[wi]
            if set(u) & set(ww):
                continue
            sign = wedge_sign(u, ww)
            key = tgt.key(K.index(tuple(sorted(u + ww))) * rE + e, R)
            v = out.get(key, 0) + sign * c
            if p:
                v %= p
            if v:
                out[key] = v
            else:
                out.pop(key, None)
        return out


def swap_positions(K, s, t, v):
    """Map a vector of wedge^t F (x) wedge^s F (x) E to wedge^s F (x) wedge^t F (x) E (no sign)."""
    rE = K.E.rank
    ns, nt = comb(K.m, s), comb(K.m, t)
    src = KoszulComplex(K.seq, K.cycles(s)).ambient(t)
    dst = KoszulComplex(K.seq, K.cycles(t)).ambient(s)
    out = {}
    for k, c in v.items():
        pos, R = src.split(k)
        wi, rest = divmod(pos, ns * rE)
        ui, e = divmod(rest, rE)
        out[dst.key((ui * nt + wi) * rE + e, R)] = c
    return out


def zz_symmetry_check(seq, s, t, M=None):
    """Compare Z_s(I, Z_t(I, M)) with Z_t(I, Z_s(I, M)) inside wedge^s F (x) wedge^t F (x) E."""
    K = KoszulComplex(seq, M)
    A = DoubleKoszul(K, s, t).cycles()
    B = DoubleKoszul(K, t, s).cycles()
    Bs = [swap_positions(K, s, t, v) for v in B.gens]
    if A.rels or B.rels:
        raise ValueError("symmetry check expects coefficients in a submodule of a free module")
    return submodule_equal(Submodule(A.free, A.gens), Submodule(A.free, Bs))
