"""Homogeneous ideals: Gröbner bases, minimal generators, truncation, colon, dimension."""

from itertools import combinations

from .groebner import Basis, BlockOrder, Buchberger, Context, normal_form
from .ring import Monomial, Polynomial, PolyRing


def _ctx(ring):
    return Context(ring.codec, ring.field.characteristic, BlockOrder(ring.ngens, [0]), [0])


def _check(gens):
    for g in gens:
        if not g.is_homogeneous():
            raise ValueError(f"inhomogeneous polynomial {g}")


def buchberger(gens, ring=None):
    """Reduced Gröbner basis (monic, sorted by degree then lead) of homogeneous ``gens``."""
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return []
    ring = ring or gens[0].ring
    _check(gens)
    bb = Buchberger(_ctx(ring))
    bb.run([dict(g.data) for g in gens])
    return [Polynomial(ring, f) for f in bb.reduced_basis()]


class Ideal:
    """A homogeneous ideal given by generators; GB and minimal generators are cached."""

    def __init__(self, ring, gens=()):
        if isinstance(gens, str):
            gens = ring.parse_list(gens)
        gens = [ring.parse(g) if isinstance(g, str) else g for g in gens]
        _check(gens)
        self.ring = ring
        self.gens = [g for g in gens if not g.is_zero()]
        self._gb = None
        self._mingens = None
        self._basis = None

    def __repr__(self):
        return "Ideal(" + ", ".join(str(g) for g in self.gens) + ")"

    def __str__(self):
        return "(" + ", ".join(str(g) for g in self.gens) + ")"

    def gb(self):
        if self._gb is None:
            self._compute()
        return self._gb

    def _compute(self):
        bb = Buchberger(_ctx(self.ring))
        mins = bb.run([dict(g.data) for g in self.gens])
        self._gb = [Polynomial(self.ring, f) for f in bb.reduced_basis()]
        mg = [self.gens[i] for i in mins]
        if all(g.is_monomial() for g in mg):
            mg = [g.monic() for g in mg]
        mg.sort(key=lambda g: (g.degree(), -g.lead_key()))
        self._mingens = mg

    def mingens(self):
        if self._mingens is None:
            self._compute()
        return self._mingens

    def _gb_basis(self):
        if self._basis is None:
            ctx = _ctx(self.ring)
            B = Basis(ctx)
            for g in self.gb():
                B.add(dict(g.data))
            self._basis = (ctx, B)
        return self._basis

    def reduce(self, f):
        ctx, B = self._gb_basis()
        return Polynomial(self.ring, normal_form(ctx, dict(f.data), B))

    def contains(self, f):
        if isinstance(f, str):
            f = self.ring.parse(f)
        return self.reduce(f).is_zero()

    def __eq__(self, other):
        return isinstance(other, Ideal) and self.ring == other.ring and \
            [g.data for g in self.gb()] == [g.data for g in other.gb()]

    def __hash__(self):
        return hash(tuple(frozenset(g.data.items()) for g in self.gb()))

    def is_zero(self):
        return not self.gens

    def is_unit(self):
        return any(g.is_constant() for g in self.gb())

    def is_monomial(self):
        return all(g.is_monomial() for g in self.gb())

    def is_principal(self):
        return len(self.mingens()) <= 1

    def max_degree(self):
        return max((g.degree() for g in self.mingens()), default=None)

    def lead_ideal(self):
        return Ideal(self.ring, [Polynomial(self.ring, {g.lead_key(): self.ring.field.one()}) for g in self.gb()])

    def component_basis(self, d):
        """Monomial-leading K-basis of I_d (reduced echelon form)."""
        ring = self.ring
        ctx, B = self._gb_basis()
        out = []
        for e in ring.monomials_of_degree(d):
            k = ring.codec.encode(e)
            Pk = ring.codec.packed(k)
            if B.find_divisor(0, Pk) < 0:
                continue
            tail = normal_form(ctx, {k: ring.field.one()}, B)
            f = {k: ring.field.one()}
            p = ring.field.characteristic
            for kk, c in tail.items():
                f[kk] = (-c) % p if p else -c
            out.append(Polynomial(ring, f))
        return out

    def hilbert_function_quotient(self, d):
        """dim_K (S/I)_d."""
        ctx, B = self._gb_basis()
        cod = self.ring.codec
        return sum(1 for e in self.ring.monomials_of_degree(d)
                   if B.find_divisor(0, cod.packed(cod.encode(e))) < 0)


def minimal_generators(I):
    return I.mingens()


def truncation(I, d):
    """The ideal generated by I_d."""
    return Ideal(I.ring, I.component_basis(d))


def _monomials(ring, d):
    return [Polynomial(ring, {ring.codec.encode(e): ring.field.one()}) for e in ring.monomials_of_degree(d)]


def colon_power(I, a):
    """I : m^a."""
    if a == 0:
        return Ideal(I.ring, I.mingens())
    ring = I.ring
    if I.is_zero():
        return Ideal(ring, [])
    # (I : m^a) agrees with S in degrees where S_d * m^a lands in I entirely;
    # compute degree by degree up to the saturation bound via linear algebra on normal forms.
    gens = list(I.mingens())
    # beyond reg I the colon agrees with I (it sits inside the saturation)
    bound = max(ideal_regularity(I), max(g.degree() for g in I.gb()))
    # h in (I : m^a)_d iff NF(h*u) = 0 for every monomial u of degree a
    from .linalg import echelon
    p = ring.field.characteristic
    mons_a = ring.monomials_of_degree(a)
    for d in range(0, bound + 1):
        basis = ring.monomials_of_degree(d)
        # linear map h -> (NF(h u))_u ; kernel = (I : m^a)_d
        cols = {}
        rows = []
        for e in basis:
            h = ring.monomial(e)
            row = {}
            for ui, u in enumerate(mons_a):
                r = I.reduce(h.mul_monomial(u))
                for k, c in r.data.items():
                    cols.setdefault((ui, k), len(cols))
                    row[cols[(ui, k)]] = c
            rows.append(row)
        ker = _kernel_vectors(rows, len(basis), p)
        for v in ker:
            f = ring.from_terms((c, basis[i]) for i, c in v.items())
            if not f.is_zero():
                gens.append(f)
    return Ideal(ring, Ideal(ring, gens).mingens())


def _kernel_vectors(rows, nrows, p):
    """Left kernel of the matrix with the given rows: vectors x with sum x_i row_i = 0."""
    from fractions import Fraction
    aug = []
    for i, r in enumerate(rows):
        v = {("c", k): x for k, x in r.items()}
        v[("z", i)] = 1 if p else Fraction(1)
        aug.append(v)
    # eliminate on the "c" columns first: order keys so that ("c", *) < ("z", *)
    piv = {}
    out = []
    for r in aug:
        r = dict(r)
        while True:
            cs = [k for k in r if k[0] == "c"]
            if not cs:
                out.append({k[1]: x for k, x in r.items()})
                break
            c = min(cs)
            if c in piv:
                a = r[c]
                for k, x in piv[c].items():
                    v = r.get(k, 0) - a * x
                    if p:
                        v %= p
                    if v:
                        r[k] = v
                    else:
                        r.pop(k, None)
            else:
                a = r[c]
                inv = pow(a, -1, p) if p else 1 / Fraction(a)
                piv[c] = {k: (x * inv) % p if p else x * inv for k, x in r.items()}
                break
    return out


def in_colon_power(I, g, a):
    """True iff g * m^a is contained in I."""
    ring = I.ring
    return all(I.contains(g.mul_monomial(u)) for u in ring.monomials_of_degree(a))


def ideal_as_module(I):
    """I as a submodule of S (one position, multidegree 0)."""
    from .modules import FreeModule, Subquotient
    ring = I.ring
    F = FreeModule(ring, [0], [(0,) * ring.ngens])
    return Subquotient(F, [{F.key(0, k): c for k, c in g.data.items()} for g in I.mingens()])


def quotient_module(I):
    """S/I as a subquotient."""
    from .modules import Subquotient
    return Subquotient.ring_quotient(I.ring, I.mingens())


def ideal_regularity(I):
    from .resolution import regularity
    if I.is_zero():
        return None
    return regularity(ideal_as_module(I))


def krull_dimension(I):
    """dim S/I via the lead-term ideal; -1 for the unit ideal."""
    ring = I.ring
    n = ring.ngens
    if I.is_unit():
        return -1
    supports = [set(i for i, e in enumerate(g.lm().exponents) if e) for g in I.gb()]
    for size in range(n, -1, -1):
        for Y in combinations(range(n), size):
            ys = set(Y)
            if all(not s <= ys for s in supports):
                return size
    return -1
