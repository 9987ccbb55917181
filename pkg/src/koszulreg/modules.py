"""Graded free modules, submodules, subquotients and kernels.

Vectors are dicts ``{key: coeff}`` in the canonical order of their free
module (term-over-position, position 0 strongest).  The public wrappers
(``ModuleElement``, ``Submodule``, ``Subquotient``, ``GradedMap``) keep a
handle on the free module and cache Gröbner data per value.
"""

from fractions import Fraction

from .groebner import BlockOrder, Buchberger, Context, groebner, normal_form
from .ring import Polynomial


class FreeModule:
    """``S(-shifts[0]) + ... + S(-shifts[r-1])``.

    ``mdegrees`` optionally assigns a multidegree (exponent tuple) to each
    basis element; when all generators of a module are multihomogeneous the
    Betti oracle uses it.
    """

    def __init__(self, ring, shifts, mdegrees=None, labels=None):
        self.ring = ring
        self.shifts = tuple(int(s) for s in shifts)
        self.rank = len(self.shifts)
        if mdegrees is not None:
            mdegrees = tuple(tuple(m) for m in mdegrees)
            if len(mdegrees) != self.rank:
                raise ValueError("one multidegree per basis element")
            for m, s in zip(mdegrees, self.shifts):
                if sum(m) != s:
                    raise ValueError("multidegree inconsistent with shift")
        self.mdegrees = mdegrees
        self.labels = labels
        self.order = BlockOrder.top(ring.ngens, max(self.rank, 1))
        self.p = ring.field.characteristic

    def __repr__(self):
        return f"FreeModule(rank={self.rank}, shifts={list(self.shifts)})"

    def __eq__(self, other):
        return (isinstance(other, FreeModule) and self.ring == other.ring
                and self.shifts == other.shifts)

    def __hash__(self):
        return hash((self.ring, self.shifts))

    def context(self, order=None):
        return Context(self.ring.codec, self.p, order or self.order, self.shifts)

    # keys
    def key(self, pos, mono):
        return mono * self.order.np + self.order.ranks[pos]

    def split(self, key):
        return self.order.decode(key)

    def degree_of_key(self, key):
        pos, R = self.order.decode(key)
        return self.ring.codec.degree(R) + self.shifts[pos]

    def vector_degree(self, v):
        if not v:
            return None
        return self.degree_of_key(max(v))

    def is_homogeneous(self, v):
        return len({self.degree_of_key(k) for k in v}) <= 1

    # construction
    def zero(self):
        return ModuleElement(self, {})

    def basis(self, pos):
        return ModuleElement(self, {self.key(pos, 0): self.ring.field.one()})

    def element(self, comps):
        """Build an element from a list of Polynomials (or strings)."""
        if len(comps) != self.rank:
            raise ValueError(f"expected {self.rank} components, got {len(comps)}")
        v = {}
        for pos, c in enumerate(comps):
            if isinstance(c, str):
                c = self.ring.parse(c)
            elif not isinstance(c, Polynomial):
                c = Polynomial(self.ring, {0: self.ring.field(c)} if c else {})
            for m, a in c.data.items():
                v[self.key(pos, m)] = a
        e = ModuleElement(self, v)
        if not self.is_homogeneous(v):
            raise ValueError(f"inhomogeneous module element {e}")
        return e

    def components(self, v):
        comps = [dict() for _ in range(self.rank)]
        for k, c in v.items():
            pos, R = self.order.decode(k)
            comps[pos][R] = c
        return [Polynomial(self.ring, d) for d in comps]

    def direct_sum(self, other):
        md = None
        if self.mdegrees is not None and other.mdegrees is not None:
            md = self.mdegrees + other.mdegrees
        return FreeModule(self.ring, self.shifts + other.shifts, md)

    def reencode(self, v, order):
        """Re-key ``v`` from the canonical order into ``order`` (same positions)."""
        dec = self.order.decode
        enc = order.encode
        out = {}
        for k, c in v.items():
            pos, R = dec(k)
            out[enc(pos, R)] = c
        return out

    def from_order(self, v, order, offset=0):
        """Inverse of ``reencode``; ``offset`` is subtracted from positions."""
        dec = order.decode
        out = {}
        for k, c in v.items():
            pos, R = dec(k)
            out[self.key(pos - offset, R)] = c
        return out

    def format_vector(self, v):
        return [str(c) for c in self.components(v)]

    def parse_vector(self, comps):
        return self.element(list(comps)).data

    def mdegree_of_key(self, key):
        pos, R = self.order.decode(key)
        e = self.ring.codec.exps(R)
        return tuple(a + b for a, b in zip(e, self.mdegrees[pos]))

    def is_multihomogeneous(self, v):
        if self.mdegrees is None:
            return False
        return len({self.mdegree_of_key(k) for k in v}) <= 1


# --- vector arithmetic on dicts -------------------------------------------

def vadd(a, b, p, c=1):
    """Return ``a + c*b``."""
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


def vscale(a, c, p):
    if not c:
        return {}
    if p:
        return {k: (x * c) % p for k, x in a.items()}
    return {k: x * c for k, x in a.items()}


def vmul_poly(v, poly, scale, p):
    """Multiply the vector ``v`` by a polynomial (dict of monomial keys)."""
    out = {}
    for m, a in poly.items():
        sh = scale * m
        for k, x in v.items():
            t = k + sh
            y = out.get(t, 0) + a * x
            if p:
                y %= p
            if y:
                out[t] = y
            else:
                out.pop(t, None)
    return out


def vlincomb(terms, p):
    """Sum of ``poly * vector`` over ``terms`` = [(poly_dict, vec, scale)]."""
    out = {}
    for poly, v, scale in terms:
        for m, a in poly.items():
            sh = scale * m
            for k, x in v.items():
                t = k + sh
                y = out.get(t, 0) + a * x
                if p:
                    y %= p
                if y:
                    out[t] = y
                else:
                    out.pop(t, None)
    return out


def apply_columns(source, target, columns, v):
    """Image of ``v`` (canonical in ``source``) under the map with given columns."""
    p = target.p
    dec = source.order.decode
    tscale = target.order.scale
    out = {}
    for k, c in v.items():
        pos, R = dec(k)
        col = columns[pos]
        if not col:
            continue
        sh = tscale * R
        for t, x in col.items():
            t += sh
            y = out.get(t, 0) + c * x
            if p:
                y %= p
            if y:
                out[t] = y
            else:
                out.pop(t, None)
    return out


class ModuleElement:
    """An element of a free module (immutable)."""

    __slots__ = ("free", "data")

    def __init__(self, free, data):
        self.free = free
        self.data = data

    def components(self):
        return self.free.components(self.data)

    def degree(self):
        return self.free.vector_degree(self.data)

    def is_zero(self):
        return not self.data

    def __bool__(self):
        return bool(self.data)

    def __add__(self, other):
        return ModuleElement(self.free, vadd(self.data, other.data, self.free.p))

    def __sub__(self, other):
        F = self.free.ring.field
        return ModuleElement(self.free, vadd(self.data, other.data, self.free.p, F.neg(F.one())))

    def __neg__(self):
        F = self.free.ring.field
        return ModuleElement(self.free, vscale(self.data, F.neg(F.one()), self.free.p))

    def __mul__(self, other):
        if isinstance(other, Polynomial):
            return ModuleElement(self.free, vmul_poly(self.data, other.data, self.free.order.scale, self.free.p))
        c = self.free.ring.field(other)
        return ModuleElement(self.free, vscale(self.data, c, self.free.p))

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, ModuleElement) and self.free == other.free and self.data == other.data

    def __hash__(self):
        return hash((self.free, frozenset(self.data.items())))

    def to_json(self):
        return self.free.format_vector(self.data)

    def __str__(self):
        return "[" + ", ".join(self.to_json()) + "]"

    __repr__ = __str__


# --- Gröbner helpers ---------------------------------------------------------

def _check_homogeneous(free, vecs):
    for v in vecs:
        if v and not free.is_homogeneous(v):
            raise ValueError("inhomogeneous generator: " + str(ModuleElement(free, v)))


def module_gb(free, gens, order=None, rels=()):
    """Reduced GB (canonical keys when ``order`` is None)."""
    _check_homogeneous(free, gens)
    if order is None:
        return groebner(free.context(), gens, rels)
    g = [free.reencode(v, order) for v in gens]
    r = [free.reencode(v, order) for v in rels]
    return groebner(free.context(order), g, r)


def kernel_core(target, columns, source_shifts, target_rels=(), want_mingens=False):
    """GB of ``{c : sum c_k columns[k] in span(target_rels)}`` in ``S^len(columns)``.

    Uses one Buchberger run in ``target + source`` under an elimination
    order with the target block first.  Returns vectors keyed in the
    canonical order of the source free module ``FreeModule(ring, source_shifts)``.
    """
    ring = target.ring
    n = ring.ngens
    r, c = target.rank, len(columns)
    if c == 0:
        return []
    ranks = [r + c - 1 - i for i in range(r)] + [c - 1 - j for j in range(c)]
    order = BlockOrder(n, ranks, [1] * r + [0] * c)
    shifts = list(target.shifts) + list(source_shifts)
    ctx = Context(ring.codec, target.p, order, shifts)
    one = ring.field.one()
    gens = []
    for j, col in enumerate(columns):
        if col and target.vector_degree(col) != source_shifts[j]:
            raise ValueError(f"map is not homogeneous of degree 0 at column {j}")
        v = target.reencode(col, order)
        v[order.encode(r + j, 0)] = one
        gens.append(v)
    rels = [target.reencode(v, order) for v in target_rels if v]
    bb = Buchberger(ctx)
    bb.run(gens, rels)
    huge = order.huge
    kern = bb.reduced_basis(select=lambda k: k < huge)
    src = FreeModule(ring, source_shifts)
    return [src.from_order(v, order, offset=r) for v in kern]


class Submodule:
    """Submodule of a free module given by homogeneous generators."""

    def __init__(self, free, gens, gb=None):
        self.free = free
        self.gens = [dict(g.data if isinstance(g, ModuleElement) else g) for g in gens]
        self.gens = [g for g in self.gens if g]
        _check_homogeneous(free, self.gens)
        self._gb = gb
        self._mingens = None

    def __repr__(self):
        return f"Submodule({len(self.gens)} generators in {self.free})"

    def gb(self):
        """Reduced GB in the canonical order of the free module."""
        if self._gb is None:
            self._gb = module_gb(self.free, self.gens)
        return self._gb

    def mingens(self):
        if self._mingens is None:
            ctx = self.free.context()
            bb = Buchberger(ctx)
            mins = bb.run(self.gens)
            self._mingens = [self.gens[i] for i in mins]
            if self._gb is None:
                self._gb = bb.reduced_basis()
        return self._mingens

    def contains(self, v):
        v = v.data if isinstance(v, ModuleElement) else v
        if not v:
            return True
        return not self.reduce(v)

    def reduce(self, v):
        from .groebner import Basis
        if getattr(self, "_nf", None) is None:
            ctx = self.free.context()
            B = Basis(ctx)
            for g in self.gb():
                B.add(g)
            self._nf = (ctx, B)
        ctx, B = self._nf
        return normal_form(ctx, v, B)

    def leading_terms(self):
        """(position, exponent tuple) of each GB lead."""
        cod = self.free.ring.codec
        out = []
        for g in self.gb():
            pos, R = self.free.split(max(g))
            out.append((pos, cod.exps(R)))
        return out

    def hilbert_function(self, d):
        """dim_K of the degree-d component, from the lead terms."""
        ring = self.free.ring
        leads = {}
        for pos, e in self.leading_terms():
            leads.setdefault(pos, []).append(e)
        total = 0
        for pos, s in enumerate(self.free.shifts):
            lst = leads.get(pos)
            if not lst:
                continue
            for m in ring.monomials_of_degree(d - s):
                if any(all(a <= b for a, b in zip(l, m)) for l in lst):
                    total += 1
        return total

    def elements(self):
        return [ModuleElement(self.free, g) for g in self.gens]

    def to_json(self):
        return {"gens": [self.free.format_vector(g) for g in self.gens],
                "rels": [], "shifts": list(self.free.shifts)}


def submodule_equal(A, B):
    """Mutual containment of two submodules of the same free module."""
    if A.free != B.free:
        raise ValueError("submodules live in different free modules")
    return A.gb() == B.gb() or (all(B.contains(g) for g in A.gens) and all(A.contains(g) for g in B.gens))


class Subquotient:
    """``(span(gens) + span(rels)) / span(rels)`` inside a free module."""

    def __init__(self, free, gens, rels=(), check=False):
        self.free = free
        self.gens = [dict(g.data if isinstance(g, ModuleElement) else g) for g in gens]
        self.gens = [g for g in self.gens if g]
        self.rels = [dict(g.data if isinstance(g, ModuleElement) else g) for g in rels]
        self.rels = [g for g in self.rels if g]
        _check_homogeneous(free, self.gens)
        _check_homogeneous(free, self.rels)
        self.gb = None          # optional cached GB of span(gens) when rels == []
        self._mingens = None
        self.meta = {}

    @classmethod
    def free_module(cls, free):
        one = free.ring.field.one()
        return cls(free, [{free.key(i, 0): one} for i in range(free.rank)])

    @classmethod
    def ring_quotient(cls, ring, ideal_gens=()):
        """``S/J`` as a subquotient of ``S``."""
        F = FreeModule(ring, [0], [(0,) * ring.ngens])
        one = ring.field.one()
        rels = []
        for f in ideal_gens:
            f = f.data if isinstance(f, Polynomial) else f
            rels.append({F.key(0, m): c for m, c in f.items()})
        return cls(F, [{F.key(0, 0): one}], rels)

    @classmethod
    def from_submodule(cls, sub):
        sq = cls(sub.free, sub.gens)
        sq.gb = sub._gb
        return sq

    def __repr__(self):
        return f"Subquotient({len(self.gens)} gens, {len(self.rels)} rels, {self.free})"

    @property
    def ring(self):
        return self.free.ring

    def is_zero(self):
        return not self.mingens()

    def mingens(self):
        """Minimal generators modulo ``rels`` (as ambient vectors)."""
        if self._mingens is None:
            bb = Buchberger(self.free.context())
            mins = bb.run(self.gens, self.rels)
            self._mingens = [self.gens[i] for i in mins]
        return self._mingens

    def rel_module(self):
        return Submodule(self.free, self.rels)

    def presentation(self):
        """(shifts of the minimal generators, GB of the relation module in S^a)."""
        mg = self.mingens()
        shifts = [self.free.vector_degree(g) for g in mg]
        K = kernel_core(self.free, mg, shifts, self.rels)
        return shifts, K

    def is_multigraded(self):
        F = self.free
        if F.mdegrees is None:
            return False
        return all(F.is_multihomogeneous(v) for v in self.gens + self.rels)

    def to_json(self):
        return {"gens": [self.free.format_vector(g) for g in self.gens],
                "rels": [self.free.format_vector(g) for g in self.rels],
                "shifts": list(self.free.shifts)}

    @classmethod
    def from_json(cls, ring, obj):
        mds = None
        F = FreeModule(ring, obj["shifts"], mds)
        gens = [F.parse_vector(v) for v in obj.get("gens", [])]
        rels = [F.parse_vector(v) for v in obj.get("rels", [])]
        return cls(F, gens, rels)


class GradedMap:
    """Degree-0 map between free modules given by the images of basis vectors."""

    def __init__(self, source, target, columns):
        self.source = source
        self.target = target
        self.columns = [dict(c.data if isinstance(c, ModuleElement) else c) for c in columns]
        if len(self.columns) != source.rank:
            raise ValueError("one column per source basis element")
        for j, col in enumerate(self.columns):
            if col and target.vector_degree(col) != source.shifts[j]:
                raise ValueError(f"entry degrees in column {j} do not match the source shift")
            if col and not target.is_homogeneous(col):
                raise ValueError(f"column {j} is not homogeneous")

    @classmethod
    def from_matrix(cls, source, target, matrix):
        """``matrix[i][j]`` is the Polynomial entry in row i (target), column j."""
        cols = []
        for j in range(source.rank):
            v = {}
            for i in range(target.rank):
                e = matrix[i][j]
                if isinstance(e, str):
                    e = target.ring.parse(e)
                for m, c in e.data.items():
                    v[target.key(i, m)] = c
            cols.append(v)
        return cls(source, target, cols)

    def __call__(self, v):
        data = v.data if isinstance(v, ModuleElement) else v
        out = apply_columns(self.source, self.target, self.columns, data)
        return ModuleElement(self.target, out) if isinstance(v, ModuleElement) else out

    def compose(self, other):
        """``self o other``."""
        cols = [apply_columns(self.source, self.target, self.columns, c) for c in other.columns]
        return GradedMap(other.source, self.target, cols)

    def is_zero(self):
        return not any(self.columns)

    def kernel(self):
        K = kernel_core(self.target, self.columns, self.source.shifts)
        return Submodule(self.source, K, gb=K)


def kernel(f):
    return f.kernel()


def image(f):
    return Submodule(f.target, [c for c in f.columns if c])


def kernel_subquotient(source, target, columns, check=True):
    """Kernel of the map of subquotients induced by ``columns`` on the ambients.

    Returns ``(W + V_src) / V_src`` with ``W = {x in span(U_src): f(x) in V_tgt}``.
    """
    A, B = source, target
    imgs = [apply_columns(A.free, B.free, columns, u) for u in A.gens]
    if check:
        ctx = B.free.context()
        bb = Buchberger(ctx)
        bb.run(B.gens, B.rels)
        Bas = bb.basis
        for im in imgs:
            if im and normal_form(ctx, im, Bas):
                raise ValueError("ill-defined map: image of a generator is not in the target")
        if A.rels:
            Vt = Submodule(B.free, B.rels)
            for v in A.rels:
                if not Vt.contains(apply_columns(A.free, B.free, columns, v)):
                    raise ValueError("ill-defined map: relations do not map into relations")
    shifts = [A.free.vector_degree(u) for u in A.gens]
    K = kernel_core(B.free, imgs, shifts, B.rels)
    p = A.free.p
    scale = A.free.order.scale
    Ssrc = FreeModule(A.ring, shifts)
    W = []
    for c in K:
        terms = {}
        for k, x in c.items():
            pos, R = Ssrc.order.decode(k)
            terms.setdefault(pos, {})[R] = x
        w = vlincomb([(poly, A.gens[pos], scale) for pos, poly in terms.items()], p)
        if w:
            W.append(w)
    out = Subquotient(A.free, W, A.rels)
    if not A.rels:
        out.kernel_coords = K
    return out


def syzygies(sub):
    """First syzygies of the given generators, in ``S^len(gens)``."""
    gens = sub.gens if isinstance(sub, (Submodule, Subquotient)) else sub
    free = sub.free
    shifts = [free.vector_degree(g) for g in gens]
    K = kernel_core(free, gens, shifts)
    return Submodule(FreeModule(free.ring, shifts), K, gb=K)


def tensor_presentation(A, B):
    """Subquotient ``S^(a*b) / (R_A (x) S^b + S^a (x) R_B)`` presenting ``A (x) B``."""
    if A.ring != B.ring:
        raise ValueError("modules over different rings")
    ring = A.ring
    sa, KA = A.presentation()
    sb, KB = B.presentation()
    a, b = len(sa), len(sb)
    shifts = [sa[i] + sb[j] for i in range(a) for j in range(b)]
    mds = None
    if A.is_multigraded() and B.is_multigraded():
        ma = [A.free.mdegree_of_key(next(iter(g))) for g in A.mingens()]
        mb = [B.free.mdegree_of_key(next(iter(g))) for g in B.mingens()]
        mds = [tuple(x + y for x, y in zip(ma[i], mb[j])) for i in range(a) for j in range(b)]
    T = FreeModule(ring, shifts, mds)
    Fa = FreeModule(ring, sa)
    Fb = FreeModule(ring, sb)
    one = ring.field.one()
    rels = []
    for r in KA:
        for j in range(b):
            v = {}
            for k, c in r.items():
                pos, R = Fa.order.decode(k)
                v[T.key(pos * b + j, R)] = c
            rels.append(v)
    for r in KB:
        for i in range(a):
            v = {}
            for k, c in r.items():
                pos, R = Fb.order.decode(k)
                v[T.key(i * b + pos, R)] = c
            rels.append(v)
    gens = [{T.key(i, 0): one} for i in range(a * b)]
    sq = Subquotient(T, gens, rels)
    sq.meta["tensor"] = (a, b)
    return sq
