"""Gröbner bases for graded submodules of free modules.

Elements are plain dicts ``{key: coeff}`` where ``key`` packs a basis
position and a monomial under a module term order (see ``BlockOrder`` and
``SchreyerOrder``).  Every order here satisfies
``key(pos, m * n) == key(pos, m) + order.scale * n``, so multiplying an
element by a monomial is a constant shift of all its keys and the leading
term is ``max(element)``.

The Buchberger loop is homogeneous: S-pairs are processed degree by degree
(normal strategy) with the Gebauer-Möller criteria, and inputs enter at
their degree, which also identifies a minimal generating subset.
"""

from fractions import Fraction

from .ring import WIDTH


class BlockOrder:
    """Module order ``key = block*HUGE + R(m)*NP + rank``.

    ``blocks`` orders groups of positions first (elimination); inside a block
    the monomial is compared first and the position rank breaks ties (TOP).
    With one position per block this is a position-over-term order.
    """

    def __init__(self, nvars, ranks, blocks=None):
        self.np = len(ranks)
        self.ranks = list(ranks)
        if sorted(self.ranks) != list(range(self.np)):
            raise ValueError("ranks must be a permutation of 0..rank-1")
        self.pos_of_rank = [0] * self.np
        for pos, r in enumerate(self.ranks):
            self.pos_of_rank[r] = pos
        self.blocks = list(blocks) if blocks is not None else [0] * self.np
        self.multiblock = any(self.blocks)
        self.huge = max(self.np, 1) << (WIDTH * nvars + 9)
        self.scale = self.np

    @classmethod
    def top(cls, nvars, rank):
        """Position 0 is the most important position."""
        return cls(nvars, [rank - 1 - i for i in range(rank)])

    def encode(self, pos, R):
        return self.blocks[pos] * self.huge + R * self.np + self.ranks[pos]

    def decode(self, key):
        if self.multiblock:
            key %= self.huge
        R, r = divmod(key, self.np)
        return self.pos_of_rank[r], R

    def block_of_key(self, key):
        return key // self.huge


class SchreyerOrder:
    """Order on the free module with basis ``e_k <-> g_k`` induced by ``prev``.

    ``m e_k > m' e_l`` iff ``m*lt(g_k) > m'*lt(g_l)`` in ``prev``; ties go to
    the smaller index.
    """

    def __init__(self, prev, lead_keys):
        self.prev = prev
        self.lead = list(lead_keys)
        self.np = len(self.lead)
        self.scale = prev.scale * self.np

    def encode(self, k, R):
        return (self.lead[k] + self.prev.scale * R) * self.np + (self.np - 1 - k)

    def decode(self, key):
        q, r = divmod(key, self.np)
        k = self.np - 1 - r
        return k, (q - self.lead[k]) // self.prev.scale


class Context:
    """Everything the kernels need: codec, field characteristic, order, shifts."""

    def __init__(self, codec, p, order, shifts):
        self.codec = codec
        self.p = p
        self.order = order
        self.shifts = list(shifts)
        self.rank1 = len(self.shifts) == 1

    def degree(self, f):
        pos, R = self.order.decode(max(f))
        return self.codec.degree(R) + self.shifts[pos]

    def inv(self, c):
        return pow(c, -1, self.p) if self.p else 1 / Fraction(c)

    def monic(self, f):
        lc = f[max(f)]
        if lc == 1:
            return f
        i = self.inv(lc)
        p = self.p
        if p:
            return {k: (c * i) % p for k, c in f.items()}
        return {k: c * i for k, c in f.items()}


class Basis:
    """A growing list of monic elements indexed by leading position."""

    def __init__(self, ctx):
        self.ctx = ctx
        self.elems = []
        self.lead = []
        self.lpos = []
        self.lP = []
        self.deg = []
        self.by_pos = {}

    def __len__(self):
        return len(self.elems)

    def add(self, f):
        ctx = self.ctx
        k = max(f)
        pos, R = ctx.order.decode(k)
        P = ctx.codec.packed(R)
        i = len(self.elems)
        self.elems.append(f)
        self.lead.append(k)
        self.lpos.append(pos)
        self.lP.append(P)
        self.deg.append(ctx.codec.degree(R) + ctx.shifts[pos])
        self.by_pos.setdefault(pos, []).append((P, i))
        return i

    def find_divisor(self, pos, P):
        guard = self.ctx.codec.guard
        for Pg, i in self.by_pos.get(pos, ()):
            d = P - Pg
            if d >= 0 and not d & guard:
                return i
        return -1


def normal_form(ctx, f, basis, full=True):
    """Reduce ``f`` modulo ``basis``; ``full=False`` stops at the first irreducible lead."""
    if not f:
        return {}
    order, codec, p = ctx.order, ctx.codec, ctx.p
    guard = codec.guard
    by_pos, elems, leads = basis.by_pos, basis.elems, basis.lead
    f = dict(f)
    rem = {}
    while f:
        k = max(f)
        c = f.pop(k)
        pos, R = order.decode(k)
        P = codec.packed(R)
        gi = -1
        for Pg, i in by_pos.get(pos, ()):
            d = P - Pg
            if d >= 0 and not d & guard:
                gi = i
                break
        if gi < 0:
            rem[k] = c
            if not full:
                rem.update(f)
                return rem
            continue
        g = elems[gi]
        kg = leads[gi]
        sh = k - kg
        get = f.get
        if p:
            for kk, cc in g.items():
                if kk == kg:
                    continue
                t = kk + sh
                v = (get(t, 0) - c * cc) % p
                if v:
                    f[t] = v
                else:
                    f.pop(t, None)
        else:
            for kk, cc in g.items():
                if kk == kg:
                    continue
                t = kk + sh
                v = get(t, 0) - c * cc
                if v:
                    f[t] = v
                else:
                    f.pop(t, None)
    return rem


def reduce_with_quotients(ctx, f, basis):
    """Divide ``f`` by ``basis``; return (quotients, remainder).

    Quotients are triples ``(index, key_shift, coeff)`` meaning
    ``coeff * m * basis[index]`` with ``key_shift == order.scale * R(m)``.
    """
    order, codec, p = ctx.order, ctx.codec, ctx.p
    guard = codec.guard
    by_pos, elems, leads = basis.by_pos, basis.elems, basis.lead
    f = dict(f)
    rem = {}
    quots = []
    while f:
        k = max(f)
        c = f.pop(k)
        pos, R = order.decode(k)
        P = codec.packed(R)
        gi = -1
        for Pg, i in by_pos.get(pos, ()):
            d = P - Pg
            if d >= 0 and not d & guard:
                gi = i
                break
        if gi < 0:
            rem[k] = c
            continue
        g = elems[gi]
        kg = leads[gi]
        sh = k - kg
        quots.append((gi, sh, c))
        get = f.get
        for kk, cc in g.items():
            if kk == kg:
                continue
            t = kk + sh
            v = get(t, 0) - c * cc
            if p:
                v %= p
            if v:
                f[t] = v
            else:
                f.pop(t, None)
    return quots, rem


class _Pair:
    __slots__ = ("L", "key", "a", "b", "pos", "alive")

    def __init__(self, L, key, a, b, pos):
        self.L = L
        self.key = key
        self.a = a
        self.b = b
        self.pos = pos
        self.alive = True


def _spoly(ctx, basis, pr):
    codec, order, p = ctx.codec, ctx.order, ctx.p
    a, b = pr.a, pr.b
    sa = order.scale * codec.from_packed(pr.L - basis.lP[a])
    sb = order.scale * codec.from_packed(pr.L - basis.lP[b])
    s = {k + sa: c for k, c in basis.elems[a].items()}
    for k, c in basis.elems[b].items():
        t = k + sb
        v = s.get(t, 0) - c
        if p:
            v %= p
        if v:
            s[t] = v
        else:
            s.pop(t, None)
    return s


class Buchberger:
    """Homogeneous Buchberger run with Gebauer-Möller pair management."""

    def __init__(self, ctx):
        self.ctx = ctx
        self.basis = Basis(ctx)
        self.pairs = {}
        self.pairs_by_pos = {}
        self.npairs_reduced = 0

    def _lcm_degree(self, L, pos):
        return (L % 255) + self.ctx.shifts[pos]

    def _add(self, h):
        ctx = self.ctx
        codec = ctx.codec
        guard = codec.guard
        B = self.basis
        h = ctx.monic(h)
        i = B.add(h)
        pos, Ph = B.lpos[i], B.lP[i]
        others = [j for _, j in B.by_pos[pos] if j != i]
        # Gebauer-Möller: kill old pairs (a, b) with lt(h) | L_ab strictly inside
        for pr in self.pairs_by_pos.get(pos, ()):
            if not pr.alive:
                continue
            d = pr.L - Ph
            if d >= 0 and not d & guard:
                if codec.pmax(B.lP[pr.a], Ph) != pr.L and codec.pmax(B.lP[pr.b], Ph) != pr.L:
                    pr.alive = False
        if not others:
            return
        cand = []
        for j in others:
            L = codec.pmax(B.lP[j], Ph)
            coprime = ctx.rank1 and L == B.lP[j] + Ph
            cand.append((L % 255, L, j, coprime))
        cand.sort()
        # criterion M: drop pairs whose lcm is strictly divisible by another lcm
        kept = []
        for dl, L, j, coprime in cand:
            for L2, _, _ in kept:
                d = L - L2
                if d > 0 and not d & guard:
                    break
            else:
                kept.append((L, j, coprime))
        # criterion F plus the product criterion: one pair per lcm, none if coprime
        bad = {L for L, _, coprime in kept if coprime}
        seen = set()
        for L, j, coprime in kept:
            if L in bad or L in seen:
                continue
            seen.add(L)
            key = ctx.order.encode(pos, codec.from_packed(L))
            pr = _Pair(L, key, j, i, pos)
            deg = self._lcm_degree(L, pos)
            self.pairs.setdefault(deg, []).append(pr)
            self.pairs_by_pos.setdefault(pos, []).append(pr)

    def run(self, gens=(), rels=()):
        """Process inputs; return indices of ``gens`` that are minimal modulo ``rels``."""
        ctx = self.ctx
        pending = {}
        for r in rels:
            if r:
                pending.setdefault(ctx.degree(r), ([], []))[0].append(r)
        for i, g in enumerate(gens):
            if g:
                pending.setdefault(ctx.degree(g), ([], []))[1].append((i, g))
        minimal = []
        B = self.basis
        while pending or self.pairs:
            d = min(list(pending) + list(self.pairs))
            while self.pairs.get(d):
                plist = self.pairs.pop(d)
                plist.sort(key=lambda q: (q.key, q.a, q.b))
                for pr in plist:
                    if not pr.alive:
                        continue
                    pr.alive = False
                    self.npairs_reduced += 1
                    h = normal_form(ctx, _spoly(ctx, B, pr), B)
                    if h:
                        self._add(h)
            self.pairs.pop(d, None)
            rs, gs = pending.pop(d, ([], []))
            for r in rs:
                h = normal_form(ctx, r, B)
                if h:
                    self._add(h)
            for i, g in gs:
                h = normal_form(ctx, g, B)
                if h:
                    minimal.append(i)
                    self._add(h)
            for lst in self.pairs_by_pos.values():
                if len(lst) > 64 and sum(1 for q in lst if q.alive) < len(lst) // 2:
                    lst[:] = [q for q in lst if q.alive]
        return minimal

    def reduced_basis(self, select=None):
        """Tail-reduce the elements (those whose lead passes ``select``).

        Returns a list sorted by (degree, lead).
        """
        ctx = self.ctx
        B = self.basis
        out = []
        for i, f in enumerate(B.elems):
            k = B.lead[i]
            if select is not None and not select(k):
                continue
            tail = {kk: c for kk, c in f.items() if kk != k}
            r = normal_form(ctx, tail, B) if tail else {}
            r[k] = f[k]
            out.append(r)
        out.sort(key=lambda f: (ctx.degree(f), max(f)))
        return out


def groebner(ctx, gens, rels=()):
    """Reduced Gröbner basis of the span of ``gens`` and ``rels``."""
    bb = Buchberger(ctx)
    bb.run(gens, rels)
    return bb.reduced_basis()


def minimal_subset(ctx, gens, rels=()):
    """Indices of a minimal generating subset of ``gens`` modulo ``rels``, plus the GB."""
    bb = Buchberger(ctx)
    mins = bb.run(gens, rels)
    return mins, bb
