"""Borel-fixed ideals, the strand order and initial-module decompositions.

The strand order on ``wedge^t F`` ranks basis elements first (``e_u`` above
``e_u'`` when the product of the generators indexed by u is *smaller* in
degrevlex, ties going to the larger index monomial) and then compares the
monomial coefficient in degrevlex.  It is encoded as a position-over-term
``BlockOrder`` with one block per basis element.
"""

import functools
import random
from fractions import Fraction
from itertools import permutations

from .groebner import BlockOrder
from .ideal import Ideal, truncation, ideal_regularity
from .koszul import KoszulComplex
from .modules import Subquotient, module_gb
from .resolution import betti_table, reg_max
from .ring import Monomial, Polynomial, monomial_compare


def _monomial_exps(g):
    if not g.is_monomial():
        raise ValueError(f"not a monomial: {g}")
    return g.ring.codec.exps(max(g.data))


def _mono(ring, e):
    return Polynomial(ring, {ring.codec.encode(tuple(e)): ring.field.one()})


def is_borel_fixed(I):
    """Exchange condition on G(I): f*x_j in I implies f*x_i in I for i < j."""
    gens = I.mingens()
    for g in gens:
        if not g.is_monomial():
            raise ValueError("is_borel_fixed expects a monomial ideal")
    for g in gens:
        e = list(_monomial_exps(g))
        for j, ej in enumerate(e):
            if not ej:
                continue
            for i in range(j):
                f = list(e)
                f[j] -= 1
                f[i] += 1
                if not I.contains(_mono(I.ring, f)):
                    return False
    return True


def borel_closure(ring, mons):
    """Smallest Borel-fixed ideal containing the given monomials."""
    seen = set()
    stack = []
    for m in mons:
        if isinstance(m, Polynomial):
            e = _monomial_exps(m)
        elif isinstance(m, Monomial):
            e = m.exponents
        elif isinstance(m, str):
            e = _monomial_exps(ring.parse(m))
        else:
            e = tuple(m)
        if e not in seen:
            seen.add(e)
            stack.append(e)
    while stack:
        e = stack.pop()
        for j, ej in enumerate(e):
            if not ej:
                continue
            for i in range(j):
                f = list(e)
                f[j] -= 1
                f[i] += 1
                f = tuple(f)
                if f not in seen:
                    seen.add(f)
                    stack.append(f)
    I = Ideal(ring, [_mono(ring, e) for e in seen])
    return Ideal(ring, I.mingens())


def random_borel(ring, d, k, seed):
    """Borel closure of ``k`` uniformly drawn degree-``d`` monomials."""
    if d < 1 or k < 1:
        raise ValueError("need d >= 1 and k >= 1")
    rng = random.Random(seed)
    pool = ring.monomials_of_degree(d)
    picks = [rng.choice(pool) for _ in range(k)]
    return borel_closure(ring, picks)


def ek_regularity(I):
    """Regularity of a Borel-fixed ideal: the largest degree of a minimal generator."""
    if not is_borel_fixed(I):
        raise ValueError("ek_regularity needs a Borel-fixed ideal")
    return I.max_degree()


def ordered_generators(I):
    """G(I) in descending degrevlex order (f_1 largest)."""
    return sorted(I.mingens(), key=lambda g: max(g.data), reverse=True)


class StrandOrder:
    """The order on ``wedge^t F`` for monomial generators ``f``."""

    def __init__(self, K, t):
        self.K = K
        self.t = t
        ring = K.ring
        subs = K.subsets(t)
        cod = ring.codec
        m = K.m
        prods = []
        for u in subs:
            e = [0] * ring.ngens
            for i in u:
                for v, x in enumerate(_monomial_exps(K.seq[i])):
                    e[v] += x
            idx = [0] * m
            for i in u:
                idx[i] += 1
            prods.append((tuple(e), tuple(idx)))
        self.data = prods

        # priority: larger = more important
        def better(a, b):
            pa, ia = prods[a]
            pb, ib = prods[b]
            c = monomial_compare(pa, pb)
            if c != 0:
                return c < 0
            return monomial_compare(ia, ib) > 0

        order = list(range(len(subs)))

        def cmp(a, b):
            if a == b:
                return 0
            return 1 if better(a, b) else -1

        order.sort(key=functools.cmp_to_key(cmp))
        self.priority = [0] * len(subs)
        for rnk, pos in enumerate(order):
            self.priority[pos] = rnk
        self.ranking = order[::-1]  # most important first
        N = max(len(subs), 1)
        self.order = BlockOrder(ring.ngens, list(range(N)), self.priority or [0])

    def succ(self, u, v):
        """True iff e_u is strictly above e_v."""
        K = self.K
        return self.priority[K.index(u)] > self.priority[K.index(v)]

    def compare_terms(self, u, a, v, b):
        """Compare e_u*x^a with e_v*x^b: -1, 0, 1."""
        K = self.K
        pu, pv = self.priority[K.index(u)], self.priority[K.index(v)]
        if pu != pv:
            return 1 if pu > pv else -1
        return monomial_compare(a, b)


class InitialDecomposition:
    """ini(Z_t(I, S/J)) = sum_u e_u (x) L_u/J."""

    def __init__(self, t, seq, components, J, truncated=False, I_used=None):
        self.t = t
        self.seq = seq
        self.components = components  # {u: Ideal}
        self.J = J
        self.truncated = truncated
        self.I_used = I_used

    def shift(self, u):
        return sum(self.seq[i].degree() for i in u)

    def to_json(self):
        return {"t": self.t, "truncated": self.truncated,
                "components": [{"u": [i + 1 for i in u], "L_gens": [str(g) for g in L.mingens()]}
                               for u, L in sorted(self.components.items())]}

    def extra_generators(self, u):
        """Minimal generators of L_u that are not in J."""
        L = self.components[u]
        return [g for g in L.mingens() if not self.J.contains(g)]

    def max_generator_degree(self):
        """Largest module degree of a generator of some e_u (x) L_u/J."""
        best = None
        for u in self.components:
            for g in self.extra_generators(u):
                d = self.shift(u) + g.degree()
                best = d if best is None else max(best, d)
        return best

    def max_local_degree(self):
        """Largest degree of a generator of L_u not in J (no strand shift)."""
        best = None
        for u in self.components:
            for g in self.extra_generators(u):
                best = g.degree() if best is None else max(best, g.degree())
        return best

    def all_borel(self):
        return all(is_borel_fixed(L) for L in self.components.values())

    def component_regularity(self, u):
        """reg(e_u (x) L_u/J) = shift + reg(L_u/J)."""
        L = self.components[u]
        ring = L.ring
        sq = Subquotient.ring_quotient(ring, [])
        F = sq.free
        gens = [{F.key(0, k): c for k, c in g.data.items()} for g in L.mingens()]
        rels = [{F.key(0, k): c for k, c in g.data.items()} for g in self.J.mingens()]
        M = Subquotient(F, gens, rels)
        r = betti_table(M).reg
        return None if r is None else r + self.shift(u)

    def regularity(self):
        return reg_max(*(self.component_regularity(u) for u in self.components))


def single_degree(I):
    """(ideal generated in one degree, truncated?) following the reduction to I_{reg I}."""
    degs = {g.degree() for g in I.mingens()}
    if len(degs) <= 1:
        return I, False
    r = ideal_regularity(I)
    return truncation(I, r), True


def strand_initial_module(I, J, t, check_borel=True):
    """Initial module of Z_t(I, S/J) under the strand order, decomposed per e_u."""
    ring = I.ring
    if check_borel and not (is_borel_fixed(I) and (J.is_zero() or is_borel_fixed(J))):
        raise ValueError("strand_initial_module needs Borel-fixed I and J")
    I1, truncated = single_degree(I)
    seq = ordered_generators(I1)
    M = Subquotient.ring_quotient(ring, J.mingens())
    K = KoszulComplex(seq, M)
    Z = K.cycles(t)
    so = StrandOrder(K, t)
    A = K.ambient(t)
    W = Z.gens + Z.rels
    gb = module_gb(A, W, order=so.order)
    comps = {u: [] for u in K.subsets(t)}
    subs = K.subsets(t)
    one = ring.field.one()
    for g in gb:
        pos, R = so.order.decode(max(g))
        comps[subs[pos]].append(Polynomial(ring, {R: one}))
    out = {}
    for u, gens in comps.items():
        L = Ideal(ring, gens)
        out[u] = Ideal(ring, L.mingens())
        for j in J.mingens():
            if not out[u].contains(j):
                raise ArithmeticError(f"L_{u} does not contain J")
    dec = InitialDecomposition(t, seq, out, J, truncated, I1)
    dec.K = K
    dec.strand_order = so
    dec.cycles = Z
    return dec


# --- the upper-triangular action -------------------------------------------

def random_upper_triangular(ring, seed, lo=1, hi=1000):
    rng = random.Random(seed)
    n = ring.ngens
    F = ring.field
    A = [[F.zero() for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            A[i][j] = F(rng.randint(lo, hi))
    return A


def _det(M, F):
    n = len(M)
    if n == 0:
        return F.one()
    total = F.zero()
    for perm in permutations(range(n)):
        inv = sum(1 for a in range(n) for b in range(a + 1, n) if perm[a] > perm[b])
        term = F.one()
        for r in range(n):
            term = F.mul(term, M[r][perm[r]])
            if not term:
                break
        if term:
            total = F.sub(total, term) if inv % 2 else F.add(total, term)
    return total


class Action:
    """phi-tilde on K_t(I, S/J) for an upper-triangular phi and single-degree Borel I."""

    def __init__(self, K, A, J):
        ring = K.ring
        F = ring.field
        n = ring.ngens
        if len(A) != n or any(len(r) != n for r in A):
            raise ValueError("matrix must be n x n")
        for i in range(n):
            if not A[i][i]:
                raise ValueError("matrix is not invertible (zero diagonal entry)")
            for j in range(i):
                if A[i][j]:
                    raise ValueError("matrix is not upper triangular")
        degs = {f.degree() for f in K.seq}
        if len(degs) > 1:
            raise ValueError("the action needs generators of a single degree")
        self.K = K
        self.A = A
        self.J = J
        self.images = [Polynomial(ring, {}) for _ in range(n)]
        for j in range(n):
            img = ring.zero()
            for k in range(n):
                if A[k][j]:
                    img = img + ring.gen(k) * A[k][j]
            self.images[j] = img
        m = K.m
        index = {max(f.data): i for i, f in enumerate(K.seq)}
        C = [[F.zero() for _ in range(m)] for _ in range(m)]
        for i, f in enumerate(K.seq):
            pf = self.phi_poly(f)
            for key, c in pf.data.items():
                if key not in index:
                    raise ValueError("phi(f_i) is not in the span of G(I): I is not Borel-fixed")
                C[i][index[key]] = c
        self.C = C
        self._dets = {}

    def phi_poly(self, h):
        return h.substitute(self.images)

    def reduce_J(self, h):
        """Drop monomials lying in the monomial ideal J."""
        if self.J.is_zero():
            return h
        return self.J.reduce(h)

    def det(self, u, w):
        key = (u, w)
        if key not in self._dets:
            F = self.K.ring.field
            self._dets[key] = _det([[self.C[a][b] for b in w] for a in u], F)
        return self._dets[key]

    def __call__(self, t, g):
        """Apply phi-tilde to a vector of ambient(t)."""
        K = self.K
        ring = K.ring
        A = K.ambient(t)
        p = A.p
        comps = {}
        for k, c in g.items():
            u, q, R = K.split_key(t, k)
            comps.setdefault(u, {})[R] = c
        out = {}
        for u, hd in comps.items():
            ph = self.reduce_J(self.phi_poly(Polynomial(ring, hd)))
            if ph.is_zero():
                continue
            for w in K.subsets(t):
                dt = self.det(u, w)
                if not dt:
                    continue
                pos = K.index(w)
                for R, c in ph.data.items():
                    key = A.key(pos, R)
                    v = out.get(key, 0) + dt * c
                    if p:
                        v %= p
                    if v:
                        out[key] = v
                    else:
                        out.pop(key, None)
        return out


def apply_action(K, A, J, t, g):
    return Action(K, A, J)(t, g)
