import pytest
from hypothesis import given, settings, strategies as st

from koszulreg import GF, QQ, Ideal, PolyRing, Submodule, betti_table, regularity
from koszulreg.borel import (Action, StrandOrder, apply_action, borel_closure, ek_regularity,
                             is_borel_fixed, ordered_generators, random_borel, random_upper_triangular,
                             strand_initial_module)
from koszulreg.ideal import ideal_as_module, ideal_regularity
from koszulreg.instances import J1
from koszulreg.koszul import KoszulComplex
from koszulreg.modules import Subquotient, vscale
from koszulreg.ring import monomial_compare

from helpers import random_combination, rng_for


def test_is_borel_fixed_examples():
    R = PolyRing(2)
    assert is_borel_fixed(Ideal(R, "x1^2, x1*x2, x2^2"))
    assert not is_borel_fixed(Ideal(R, "x2^2"))
    assert not is_borel_fixed(J1())
    # the exchange witness: x4*x5*x6 in J1 but x1*x5*x6 not
    J = J1()
    R6 = J.ring
    assert J.contains(R6.parse("x4*x5*x6")) and not J.contains(R6.parse("x1*x5*x6"))
    with pytest.raises(ValueError):
        is_borel_fixed(Ideal(R, "x1^2 + x2^2"))


def test_borel_closure_examples():
    R = PolyRing(2)
    assert borel_closure(R, ["x2^2"]) == Ideal(R, "x1^2, x1*x2, x2^2")
    I = Ideal(R, "x1^2, x1*x2, x2^3")
    assert borel_closure(R, I.mingens()) == I


@settings(max_examples=30)
@given(st.lists(st.tuples(*[st.integers(0, 3)] * 3).filter(any), min_size=1, max_size=4))
def test_borel_closure_properties(exps):
    R = PolyRing(3)
    B = borel_closure(R, exps)
    assert is_borel_fixed(B)
    assert all(B.contains(R.monomial(e)) for e in exps)
    assert borel_closure(R, B.mingens()) == B


def test_random_borel_deterministic():
    R = PolyRing(4)
    a, b = random_borel(R, 3, 2, 7), random_borel(R, 3, 2, 7)
    assert [str(g) for g in a.mingens()] == [str(g) for g in b.mingens()]
    assert is_borel_fixed(a)
    with pytest.raises(ValueError):
        random_borel(R, 0, 2, 1)


def test_ek_regularity_examples():
    R = PolyRing(2)
    assert ek_regularity(Ideal(R, "x1^2, x1*x2, x2^2")) == 2
    assert ek_regularity(Ideal(R, "x1")) == 1
    R3 = PolyRing(3)
    B = borel_closure(R3, ["x2*x3^2"])
    assert ek_regularity(B) == regularity(ideal_as_module(B)) == 3
    with pytest.raises(ValueError):
        ek_regularity(Ideal(R, "x2"))


@settings(max_examples=20)
@given(st.integers(2, 4), st.integers(1, 3), st.integers(1, 3), st.integers(0, 10 ** 6))
def test_ek_matches_resolution(n, d, k, seed):
    B = random_borel(PolyRing(n), d, k, seed)
    assert ek_regularity(B) == ideal_regularity(B)


def test_strand_order_examples():
    R = PolyRing(2)
    I = Ideal(R, "x1^2, x1*x2, x2^2")
    seq = ordered_generators(I)
    assert [str(f) for f in seq] == ["x1^2", "x1*x2", "x2^2"]
    K = KoszulComplex(seq)
    so = StrandOrder(K, 1)
    # smaller generator ranks higher
    assert so.succ((2,), (1,)) and so.succ((1,), (0,))
    assert so.compare_terms((0,), (5, 0), (2,), (0, 0)) == -1
    assert so.compare_terms((1,), (1, 0), (1,), (0, 1)) == 1
    so2 = StrandOrder(K, 2)
    # f1f3 = x1^2x2^2 = f2^2 is impossible for distinct subsets; compare (0,2) vs (1,2)
    assert so2.succ((1, 2), (0, 2)) and so2.succ((0, 2), (0, 1))


def test_strand_order_tie_break_on_index_monomial():
    R = PolyRing(3)
    # x1*x3 * x2^2 = x1*x2 * x2*x3: the products tie, index monomials decide
    I = Ideal(R, "x1^2, x1*x2, x2^2, x1*x3, x2*x3")
    K = KoszulComplex(ordered_generators(I))
    names = [str(f) for f in K.seq]
    a = tuple(sorted((names.index("x1*x3"), names.index("x2^2"))))
    b = tuple(sorted((names.index("x1*x2"), names.index("x2*x3"))))
    so = StrandOrder(K, 2)
    ia = [1 if i in a else 0 for i in range(K.m)]
    ib = [1 if i in b else 0 for i in range(K.m)]
    assert so.succ(a, b) == (monomial_compare(tuple(ia), tuple(ib)) > 0)


@settings(max_examples=20)
@given(st.integers(0, 10 ** 6))
def test_strand_order_total_and_multiplicative(seed):
    rng = rng_for(seed)
    B = random_borel(PolyRing(3), 2, 2, seed)
    K = KoszulComplex(ordered_generators(B))
    t = rng.randint(1, min(2, K.m))
    so = StrandOrder(K, t)
    subs = K.subsets(t)
    assert sorted(so.priority) == list(range(len(subs)))
    mons = [tuple(rng.randint(0, 2) for _ in range(3)) for _ in range(4)]
    c = tuple(rng.randint(0, 2) for _ in range(3))
    for u in subs[:3]:
        for v in subs[:3]:
            for a in mons:
                for b in mons:
                    x = so.compare_terms(u, a, v, b)
                    assert x == -so.compare_terms(v, b, u, a)
                    ac = tuple(p + q for p, q in zip(a, c))
                    bc = tuple(p + q for p, q in zip(b, c))
                    assert so.compare_terms(u, ac, v, bc) == x


def test_initial_module_square_of_maximal_ideal():
    R = PolyRing(2)
    I = Ideal(R, "x1^2, x1*x2, x2^2")
    dec = strand_initial_module(I, Ideal(R, []), 1)
    comps = {u: sorted(str(g) for g in L.mingens()) for u, L in dec.components.items()}
    assert comps == {(0,): [], (1,): ["x1"], (2,): ["x1"]}
    # degreewise dimensions agree with the cycle module
    Z = dec.cycles
    Zs = Submodule(Z.free, Z.gens)
    for d in range(3, 7):
        ini_dim = sum(len(L.component_basis(d - dec.shift(u))) if not L.is_zero() else 0
                      for u, L in dec.components.items())
        assert ini_dim == Zs.hilbert_function(d) == 2 * (d - 2)
    obj = dec.to_json()
    assert obj["t"] == 1 and obj["components"][1] == {"u": [2], "L_gens": ["x1"]}


@pytest.mark.parametrize("seed", range(6))
def test_initial_module_lemmas(seed):
    R = PolyRing(3, QQ)
    I = random_borel(R, 2, 2, seed)
    J = random_borel(R, 3, 2, seed + 100)
    for t in (1, 2):
        if t > len(I.mingens()):
            continue
        dec = strand_initial_module(I, J, t)
        assert dec.all_borel()
        for L in dec.components.values():
            assert all(L.contains(j) for j in J.mingens())
        rI, rJ = ideal_regularity(I), betti_table(Subquotient.ring_quotient(R, J.mingens())).reg
        md = dec.max_generator_degree()
        assert md is None or md <= t * (rI + 1) + rJ
        ml = dec.max_local_degree()
        assert ml is None or ml <= t + rJ
        z = betti_table(dec.cycles).reg
        r = dec.regularity()
        assert z is None or z <= r


def test_initial_module_rejects_non_borel():
    with pytest.raises(ValueError):
        strand_initial_module(J1(), Ideal(J1().ring, []), 1)


def test_initial_module_truncates_mixed_degrees():
    R = PolyRing(2)
    I = Ideal(R, "x1, x2^2")
    dec = strand_initial_module(I, Ideal(R, []), 1)
    assert dec.truncated and {f.degree() for f in dec.seq} == {2}


# --- the action -------------------------------------------------------------

def _setup(seed, field=QQ):
    R = PolyRing(3, field)
    I = random_borel(R, 2, 2, seed)
    while len(I.mingens()) < 3:
        seed += 1000
        I = random_borel(R, 2, 2, seed)
    J = random_borel(R, 3, 2, seed + 1)
    K = KoszulComplex(ordered_generators(I), Subquotient.ring_quotient(R, J.mingens()))
    return R, I, J, K


def _mod_J(K, t, v):
    return Submodule(K.ambient(t), K.strand(t).rels).reduce(v) if K.strand(t).rels else v


def test_identity_action():
    R, I, J, K = _setup(1)
    Id = [[R.field.one() if i == j else R.field.zero() for j in range(3)] for i in range(3)]
    g = _mod_J(K, 1, random_combination(K.ambient(1), K.cycles(1).gens, rng_for(0)))
    assert apply_action(K, Id, J, 1, g) == g


@pytest.mark.parametrize("t", [1, 2])
def test_diagonal_action_is_grading(t):
    R, I, J, K = _setup(2)
    lam = 3
    D = [[lam if i == j else 0 for j in range(3)] for i in range(3)]
    d = K.seq[0].degree()
    A = K.ambient(t)
    for k in range(4):
        mon = R.monomials_of_degree(k)[-1]
        g = {A.key(0, R.codec.encode(mon)): 1}
        g = _mod_J(K, t, g)
        if not g:
            continue
        assert apply_action(K, D, J, t, g) == vscale(g, lam ** (d * t + k), 0)


def test_action_rejects_bad_matrices():
    R, I, J, K = _setup(3)
    with pytest.raises(ValueError):
        Action(K, [[1, 0, 0], [1, 1, 0], [0, 0, 1]], J)
    with pytest.raises(ValueError):
        Action(K, [[1, 0, 0], [0, 0, 0], [0, 0, 1]], J)
    Kbad = KoszulComplex(J1(QQ).mingens())
    with pytest.raises(ValueError):
        Action(Kbad, random_upper_triangular(Kbad.ring, 0), Ideal(Kbad.ring, []))


@pytest.mark.parametrize("seed", range(5))
def test_action_maps_cycles_to_cycles(seed):
    R, I, J, K = _setup(seed)
    A = random_upper_triangular(R, seed)
    act = Action(K, A, J)
    for t in range(1, min(2, K.m) + 1):
        Z = K.cycles(t)
        g = _mod_J(K, t, random_combination(K.ambient(t), Z.gens, rng_for(seed)))
        h = act(t, g)
        assert not _mod_J(K, t - 1, K.phi(t, h))
        assert Submodule(K.ambient(t), Z.gens + Z.rels).contains(h)


@pytest.mark.parametrize("seed", range(4))
def test_action_commutes_with_differential(seed):
    R, I, J, K = _setup(seed)
    act = Action(K, random_upper_triangular(R, seed + 10), J)
    for t in range(1, min(3, K.m) + 1):
        A = K.ambient(t)
        for pos in range(A.rank):
            for mon in R.monomials_of_degree(1):
                g = _mod_J(K, t, {A.key(pos, R.codec.encode(mon)): 1})
                if not g:
                    continue
                lhs = _mod_J(K, t - 1, K.phi(t, act(t, g)))
                rhs = act(t - 1, K.phi(t, g))
                assert lhs == _mod_J(K, t - 1, rhs)
