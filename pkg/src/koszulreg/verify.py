"""Executable checks of the regularity bounds, and a seeded random-instance harness.

Regularity values use ``None`` for minus infinity (the zero module).
"""

import json
import os
import random
import time
from dataclasses import dataclass, field as dc_field
from math import comb

from . import instances
from .borel import (borel_closure, ek_regularity, is_borel_fixed, random_borel,
                    strand_initial_module)
from .field import Field, GF32003, QQ
from .ideal import Ideal, ideal_regularity, krull_dimension, truncation
from .koszul import DoubleKoszul, KoszulComplex
from .modules import Subquotient, tensor_presentation
from .resolution import betti_oracle, betti_table, format_reg, reg_le, reg_max
from .ring import PolyRing, Polynomial


class PreconditionError(ValueError):
    """The instance does not satisfy the hypotheses of the check."""


@dataclass
class BoundReport:
    check: str
    instance: dict
    lhs: object
    rhs: object
    passed: bool
    expected: str = "pass"        # "pass" for theorems, "fail" for counterexamples
    details: dict = dc_field(default_factory=dict)
    seconds: float = 0.0

    @property
    def ok(self):
        """True when the outcome is the one the theory predicts."""
        if self.expected == "pass":
            return self.passed
        return not self.passed and self.details.get("table_match", True)

    def to_json(self):
        return {"check": self.check, "instance": self.instance,
                "lhs": self.lhs, "rhs": self.rhs,
                "lhs_is_minus_infinity": self.lhs is None,
                "passed": self.passed, "expected": self.expected, "ok": self.ok,
                "details": self.details, "seconds": round(self.seconds, 4)}

    def line(self):
        status = "ok" if self.ok else "UNEXPECTED"
        verdict = "PASS" if self.passed else "FAIL"
        return f"{self.check}: {format_reg(self.lhs)} <= {format_reg(self.rhs)} {verdict} ({status})"


# --- helpers ---------------------------------------------------------------

def _add(*vals):
    """Sum where any None (minus infinity) makes the result None."""
    if any(v is None for v in vals):
        return None
    return sum(vals)


def _max(vals):
    return reg_max(*vals)


def quotient(J):
    """S/J for an ideal J (J zero gives S)."""
    return Subquotient.ring_quotient(J.ring, J.mingens())


def reg_quotient(J):
    if J.is_zero():
        return 0
    if J.is_unit():
        return None
    return betti_table(quotient(J)).reg


def reg_ideal(I):
    return ideal_regularity(I)


def describe(I, J=None, **params):
    ring = I.ring
    d = {"vars": list(ring.variables), "field": ring.field.name,
         "I": [str(g) for g in I.gens]}
    if J is not None:
        d["J"] = [str(g) for g in J.gens]
    d.update(params)
    return d


def load_instance(d):
    """Inverse of ``describe``: (ring, I, J or None)."""
    ring = PolyRing(d["vars"], Field.parse(d.get("field", "GF(32003)")))
    I = Ideal(ring, [ring.parse(g) for g in d["I"]])
    J = Ideal(ring, [ring.parse(g) for g in d["J"]]) if "J" in d else None
    return ring, I, J


def _zero_ideal(ring):
    return Ideal(ring, [])


class _Timer:
    def __enter__(self):
        self.t = time.perf_counter()
        return self

    def __exit__(self, *a):
        self.seconds = time.perf_counter() - self.t


def z_reg(K, t):
    if t < 0 or t > K.m:
        return None
    return betti_table(K.cycles(t)).reg


def h_reg(K, t):
    if t < 0 or t > K.m:
        return None
    return betti_table(K.homology(t)).reg


def b_reg(K, t):
    if t < 0 or t >= K.m:
        return None
    return betti_table(K.boundaries(t)).reg


# --- the checks ------------------------------------------------------------

def check_eq1(I, J, t):
    """reg Z_t(I, M) <= t(1 + reg I) + reg M for M = S/J (J may be zero, i.e. M = S)."""
    J = J if J is not None else _zero_ideal(I.ring)
    if not isinstance(J, Ideal):
        raise PreconditionError("only M = S or M = S/J are supported")
    with _Timer() as tm:
        if krull_dimension(Ideal(I.ring, I.gens + J.gens)) > 1:
            raise PreconditionError("dim M/IM > 1")
        K = KoszulComplex(I.mingens(), quotient(J))
        lhs = z_reg(K, t)
        rI, rM = reg_ideal(I), reg_quotient(J)
        rhs = _add(t * (1 + rI), rM) if t else rM
    return BoundReport("eq1", describe(I, J, t=t), lhs, rhs, reg_le(lhs, rhs),
                       details={"reg_I": rI, "reg_M": rM}, seconds=tm.seconds)


def check_eq2_counterexamples(ids=("e2", "e3a", "e3b"), field=None, progress=None):
    """Counterexamples to reg Z_2 <= 2(reg I + 1): expected to FAIL, tables must match."""
    out = []
    for eid in ids:
        name, rows = instances.EXPECTED_Z2[eid]
        I = instances.get(name, field)
        with _Timer() as tm:
            K = KoszulComplex(I.mingens())
            bt = betti_table(K.cycles(2), progress=progress)
            rI = reg_ideal(I)
        lhs, rhs = bt.reg, 2 * (rI + 1)
        match = bt.rows() == rows
        out.append(BoundReport("eq2", {"example": eid, "instance": name, "field": I.ring.field.name},
                               lhs, rhs, reg_le(lhs, rhs), expected="fail",
                               details={"table_match": match, "rows": bt.to_json()["rows"],
                                        "expected_rows": {str(k): v for k, v in rows.items()},
                                        "table": bt.render()},
                               seconds=tm.seconds))
    return out


def _char_ok(ring, bound):
    p = ring.field.characteristic
    return p == 0 or p > bound


def subadditivity_chain(I, s, t):
    """(reg Z_{s+t}, reg Z_s(I, Z_t), reg(Z_s (x) Z_t), reg Z_s + reg Z_t)."""
    K = KoszulComplex(I.mingens())
    z_st = z_reg(K, s + t)
    mixed = betti_table(DoubleKoszul(K, s, t).cycles()).reg
    Zs, Zt = K.cycles(s), K.cycles(t)
    if Zs.is_zero() or Zt.is_zero():
        tens = None
    else:
        tens = betti_table(tensor_presentation(Zs, Zt)).reg
    return z_st, mixed, tens, _add(z_reg(K, s), z_reg(K, t))


def check_subadditivity(I, s, t):
    if krull_dimension(I) != 0:
        raise PreconditionError("dim S/I must be 0")
    if not _char_ok(I.ring, s + t):
        raise PreconditionError("characteristic must be 0 or > s + t")
    with _Timer() as tm:
        chain = subadditivity_chain(I, s, t)
    links = [reg_le(chain[k], chain[k + 1]) for k in range(3)]
    return BoundReport("subadditivity", describe(I, s=s, t=t), chain[0], chain[3],
                       reg_le(chain[0], chain[3]) and all(links),
                       details={"chain": list(chain), "links": links}, seconds=tm.seconds)


def check_cor_subadkh(I, s, t):
    """h_{s+t} <= s+t+1+reg I + max{h_j - j : j < s} + max{h_j - j : j < t}."""
    if s < 1 or t < 1:
        raise PreconditionError("need s, t >= 1")
    if krull_dimension(I) != 0:
        raise PreconditionError("dim S/I must be 0")
    if not _char_ok(I.ring, s + t):
        raise PreconditionError("characteristic must be 0 or > s + t")
    with _Timer() as tm:
        K = KoszulComplex(I.mingens())
        rI = reg_ideal(I)
        h = [h_reg(K, i) for i in range(s + t + 1)]
        z = [z_reg(K, i) for i in range(s + t + 1)]

        def mx(bound):
            return _max([None if h[j] is None else h[j] - j for j in range(bound)])

        rhs = _add(s + t + 1 + rI, mx(s), mx(t))
        lhs = h[s + t]
        ingredient = [reg_le(h[i], _add(z[i], rI - 1)) for i in range(s + t + 1)]
    return BoundReport("cor_subadkh", describe(I, s=s, t=t), lhs, rhs,
                       reg_le(lhs, rhs) and all(ingredient),
                       details={"h": h, "z": z, "reg_I": rI, "ingredient_h_le_z_plus_regI_minus_1": ingredient},
                       seconds=tm.seconds)


def _require_borel(I, J):
    if not I.is_monomial() or not is_borel_fixed(I):
        raise PreconditionError("I is not Borel-fixed")
    if J is not None and not J.is_zero() and (not J.is_monomial() or not is_borel_fixed(J)):
        raise PreconditionError("J is not Borel-fixed")


def check_thm2(I, J, t):
    """reg Z_t(I, S/J) <= t(reg I + 1) + reg(S/J) for Borel-fixed I, J."""
    J = J if J is not None else _zero_ideal(I.ring)
    _require_borel(I, J)
    with _Timer() as tm:
        K = KoszulComplex(I.mingens(), quotient(J))
        lhs = z_reg(K, t)
        rI = reg_ideal(I)
        rJ = reg_quotient(J)
        rhs = _add(t * (rI + 1), rJ)
    return BoundReport("thm2", describe(I, J, t=t), lhs, rhs, reg_le(lhs, rhs),
                       details={"reg_I": rI, "ek_reg_I": ek_regularity(I), "reg_SJ": rJ,
                                "ek_agrees": rI == ek_regularity(I)},
                       seconds=tm.seconds)


def check_cor3(I, J, t):
    """reg H_t(I, S/J) <= (t+1)(reg I + 1) + reg(S/J) - 2, with the exact-sequence ingredients."""
    J = J if J is not None else _zero_ideal(I.ring)
    _require_borel(I, J)
    with _Timer() as tm:
        K = KoszulComplex(I.mingens(), quotient(J))
        rI, rJ = reg_ideal(I), reg_quotient(J)
        h = h_reg(K, t)
        z_t, z_next, b_t = z_reg(K, t), z_reg(K, t + 1), b_reg(K, t)
        rhs = _add((t + 1) * (rI + 1), rJ, -2)
        # K_{t+1}(I, S/J) has regularity (t+1) d + reg(S/J) when nonzero
        d = rI
        k_next = _add((t + 1) * d, rJ) if t + 1 <= K.m else None
        ing_h = reg_le(h, reg_max(_add(b_t, -1), z_t))
        ing_b = reg_le(b_t, reg_max(k_next, _add(z_next, -1)))
        b_eq = b_t == _add(z_next, -1)
    passed = reg_le(h, rhs) and ing_h and ing_b
    return BoundReport("cor3", describe(I, J, t=t), h, rhs, passed,
                       details={"reg_I": rI, "reg_SJ": rJ, "z_t": z_t, "z_t+1": z_next, "b_t": b_t,
                                "h_le_max_b_minus_1_z": ing_h, "b_le_max_regK_z_minus_1": ing_b,
                                "b_equals_z_next_minus_1": b_eq},
                       seconds=tm.seconds)


def check_borel_lemmas(I, J, t):
    """Every L_u is Borel-fixed, the degree bound on ini(Z_t) holds, and reg ini >= reg Z_t."""
    J = J if J is not None else _zero_ideal(I.ring)
    _require_borel(I, J)
    with _Timer() as tm:
        dec = strand_initial_module(I, J, t)
        rI, rJ = reg_ideal(I), reg_quotient(J)
        bound = _add(t * (rI + 1), rJ)
        lhs = dec.max_generator_degree()
        local = dec.max_local_degree()
        all_borel = dec.all_borel()
        z = betti_table(dec.cycles).reg
        r_ini = dec.regularity()
    details = {"all_L_borel": all_borel, "max_local_degree": local,
               "local_bound": _add(t, rJ), "reg_Z": z, "reg_ini": r_ini,
               "truncated": dec.truncated, "reg_I": rI, "reg_SJ": rJ,
               "decomposition": dec.to_json()}
    passed = (all_borel and reg_le(lhs, bound) and reg_le(local, _add(t, rJ))
              and reg_le(z, r_ini) and reg_le(r_ini, bound))
    return BoundReport("borel", describe(I, J, t=t), lhs, bound, passed,
                       details=details, seconds=tm.seconds)


def check_linres_reduction(I, J, i):
    """reg Z_i(I,M) <= reg Z_i(f,g,M) <= max_D ... <= max_j { j d + reg Z_{i-j}((I_d), M) }."""
    J = J if J is not None else _zero_ideal(I.ring)
    ring = I.ring
    M = quotient(J)
    with _Timer() as tm:
        d = reg_ideal(I)
        T = truncation(I, d)
        f = T.mingens()
        g = [x for x in I.mingens() if x.degree() < d]
        a = [d - x.degree() for x in g]
        for x, aj in zip(g, a):
            for u in ring.monomials_of_degree(aj):
                if not T.contains(x.mul_monomial(u)):
                    raise PreconditionError(f"{x} * m^{aj} is not inside (I_d)")
        z_I = z_reg(KoszulComplex(I.mingens(), M), i)
        Kfg = KoszulComplex(f + g, M)
        z_fg = z_reg(Kfg, i)
        Kf = KoszulComplex(f, M)
        zf = {k: z_reg(Kf, k) for k in range(0, i + 1)}
        # bound over subsets D: only #D matters since a_j + deg g_j = d
        lemma = _max([_add(zf[i - k], k * d) for k in range(0, min(i, len(g)) + 1)])
        final = _max([_add(zf[i - j], j * d) for j in range(0, i + 1)])
    links = [reg_le(z_I, z_fg), reg_le(z_fg, lemma), reg_le(lemma, final)]
    return BoundReport("linres", describe(I, J, i=i), z_I, final, all(links),
                       details={"d": d, "chain": [z_I, z_fg, lemma, final], "links": links,
                                "n_f": len(f), "n_g": len(g)},
                       seconds=tm.seconds)


def check_definitional(I):
    """reg Z_1 = 1 + reg I for non-principal I; Z_1 = 0 for principal I."""
    with _Timer() as tm:
        K = KoszulComplex(I.mingens())
        z1 = z_reg(K, 1)
        rI = reg_ideal(I)
        if I.is_principal():
            rhs = None
            passed = z1 is None
        else:
            rhs = _add(1, rI)
            passed = z1 == rhs
    return BoundReport("definitional", describe(I), z1, rhs, passed,
                       details={"principal": I.is_principal(), "reg_I": rI}, seconds=tm.seconds)


def splitting_tables(f, g, J, i):
    """(betti Z_i(f, g; M), betti Z_i(f; M) + betti Z_{i-1}(f; M)(-deg g))."""
    ring = g.ring
    M = quotient(J if J is not None else _zero_ideal(ring))
    Kfg = KoszulComplex(list(f) + [g], M)
    Kf = KoszulComplex(list(f), M)
    left = betti_table(Kfg.cycles(i))
    right = betti_table(Kf.cycles(i)) if i <= Kf.m else betti_table(Subquotient(Kf.ambient(0), []))
    if i >= 1:
        right = right + betti_table(Kf.cycles(i - 1)).shift(g.degree())
    return left, right


def check_splitting(f, g, J, i):
    with _Timer() as tm:
        left, right = splitting_tables(f, g, J, i)
    inst = describe(Ideal(g.ring, list(f)), J, g=str(g), i=i)
    return BoundReport("splitting", inst, left.reg, right.reg, left == right,
                       details={"left": left.to_json(), "right": right.to_json()}, seconds=tm.seconds)


def check_oracle(I, J, t):
    """Resolution Betti table of Z_t(I, S/J) equals the Koszul-homology oracle."""
    J = J if J is not None else _zero_ideal(I.ring)
    with _Timer() as tm:
        Z = KoszulComplex(I.mingens(), quotient(J)).cycles(t)
        a = betti_table(Z)
        b = betti_oracle(Z)
    return BoundReport("oracle", describe(I, J, t=t), a.reg, b.reg, a == b,
                       details={"resolution": a.to_json(), "oracle": b.to_json()}, seconds=tm.seconds)


# --- random instances -------------------------------------------------------

MASK64 = (1 << 64) - 1


def splitmix64(x):
    x = (x + 0x9E3779B97F4A7C15) & MASK64
    z = x
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def sub_seed(master, trial):
    return splitmix64((master & MASK64) ^ splitmix64(trial))


def _ring(n, field):
    return PolyRing([f"x{i + 1}" for i in range(n)], field)


def _random_monomial(rng, n, d):
    e = [0] * n
    for _ in range(d):
        e[rng.randrange(n)] += 1
    return tuple(e)


def random_artinian(rng, ring, degrees=(1, 2), max_extra=3):
    """Random monomials of degree d plus every x_i^(d+1)."""
    n = ring.ngens
    d = rng.choice(list(degrees))
    mons = [ring.monomial(_random_monomial(rng, n, d)) for _ in range(rng.randint(1, max_extra))]
    mons += [ring.gen(i) ** (d + 1) for i in range(n)]
    return Ideal(ring, Ideal(ring, mons).mingens())


def random_monomial_ideal(rng, ring, degrees=(1, 3), k=(1, 4)):
    n = ring.ngens
    mons = [ring.monomial(_random_monomial(rng, n, rng.randint(*degrees))) for _ in range(rng.randint(*k))]
    return Ideal(ring, Ideal(ring, mons).mingens())


def random_homogeneous(rng, ring, d, terms=3):
    F = ring.field
    f = ring.zero()
    while f.is_zero():
        for _ in range(terms):
            f = f + ring.monomial(_random_monomial(rng, ring.ngens, d), F(rng.randint(-5, 5)))
    return f


DEFAULTS = {"n": (2, 4), "degrees": (1, 3), "max_rank": 200}


def _gen_subadditivity(rng, cfg, field):
    lo, hi = cfg["n"]
    while True:
        ring = _ring(rng.randint(lo, min(hi, 4)), field)
        I = random_artinian(rng, ring, degrees=[d for d in (1, 2) if d + 1 <= cfg["degrees"][1]] or [1])
        s, t = rng.choice([(1, 1), (1, 2), (2, 1)])
        m = len(I.mingens())
        # m > s + t keeps Z_{s+t} nonzero
        if m > s + t and comb(m, s) * comb(m, t) <= cfg["max_rank"] and comb(m, s + t) <= cfg["max_rank"]:
            return (I, s, t)


def _gen_borel_pair(rng, cfg, field):
    lo, hi = cfg["n"]
    dmax = min(cfg["degrees"][1], 3)
    while True:
        ring = _ring(rng.randint(lo, min(hi, 4)), field)
        I = random_borel(ring, rng.randint(1, dmax), rng.randint(1, 3), rng.getrandbits(32))
        J = _zero_ideal(ring) if rng.random() < 0.25 else \
            random_borel(ring, rng.randint(1, dmax), rng.randint(1, 2), rng.getrandbits(32))
        t = rng.choice([0, 1, 1, 2, 2])
        I1 = truncation(I, I.max_degree())
        m = max(len(I.mingens()), len(I1.mingens()))
        if comb(m, t) <= cfg["max_rank"] and comb(m, t + 1) <= 4 * cfg["max_rank"]:
            return (I, J, t)


def _gen_eq1(rng, cfg, field):
    lo, hi = cfg["n"]
    while True:
        ring = _ring(rng.randint(lo, min(hi, 4)), field)
        n = ring.ngens
        I = random_monomial_ideal(rng, ring, (2, 3), (1, 4))
        # powers of all but one variable keep dim S/(I + J) <= 1
        skip = rng.randrange(n)
        extra = [ring.gen(i) ** rng.randint(2, 3) for i in range(n) if i != skip]
        I = Ideal(ring, Ideal(ring, I.gens + extra).mingens())
        J = _zero_ideal(ring) if rng.random() < 0.5 else random_monomial_ideal(rng, ring, (2, 3), (1, 2))
        t = rng.choice([0, 1, 2])
        m = len(I.mingens())
        if comb(m, t) <= cfg["max_rank"] and comb(m, t + 1) <= 4 * cfg["max_rank"]:
            return (I, J, t)


def _gen_definitional(rng, cfg, field):
    lo, hi = cfg["n"]
    ring = _ring(rng.randint(max(lo, 2), min(hi, 4)), field)
    while True:
        k = rng.randint(2, 4)
        gens = [random_homogeneous(rng, ring, rng.randint(1, 3)) for _ in range(k)]
        I = Ideal(ring, gens)
        if not I.is_principal() and not I.is_unit():
            return (I,)


def _gen_linres(rng, cfg, field):
    lo, hi = cfg["n"]
    while True:
        ring = _ring(rng.randint(2, min(hi, 3)), field)
        I = random_monomial_ideal(rng, ring, (1, 3), (2, 3))
        degs = {g.degree() for g in I.mingens()}
        if len(degs) < 2:
            continue
        J = _zero_ideal(ring) if rng.random() < 0.5 else random_monomial_ideal(rng, ring, (2, 3), (1, 1))
        i = rng.choice([1, 2])
        d = max(degs)
        m = len(truncation(I, d).mingens()) + sum(1 for g in I.mingens() if g.degree() < d)
        if comb(m, i) <= cfg["max_rank"] and comb(m, i + 1) <= 4 * cfg["max_rank"]:
            return (I, J, i)


def _gen_splitting(rng, cfg, field):
    lo, hi = cfg["n"]
    ring = _ring(rng.randint(max(lo, 2), min(hi, 4)), field)
    k = rng.randint(1, 3)
    f = [random_homogeneous(rng, ring, rng.randint(1, 2), terms=2) for _ in range(k)]
    dg = max(x.degree() for x in f) + rng.randint(0, 1)
    g = ring.zero()
    while g.is_zero():
        for x in f:
            if x.degree() <= dg:
                g = g + x * random_homogeneous(rng, ring, dg - x.degree(), terms=2) if dg > x.degree() \
                    else g + x * ring.field(rng.randint(1, 5))
    J = _zero_ideal(ring) if rng.random() < 0.5 else random_monomial_ideal(rng, ring, (2, 3), (1, 2))
    i = rng.randint(1, min(2, k + 1))
    return (f, g, J, i)


def _gen_oracle(rng, cfg, field):
    lo, hi = cfg["n"]
    while True:
        ring = _ring(rng.randint(lo, min(hi, 4)), field)
        I = random_monomial_ideal(rng, ring, (1, 3), (2, 4))
        J = _zero_ideal(ring) if rng.random() < 0.6 else random_monomial_ideal(rng, ring, (2, 3), (1, 2))
        t = rng.choice([1, 2])
        if comb(len(I.mingens()), t) <= 40:
            return (I, J, t)


CHECKS = {
    # id: (runner, generator, default field)
    "eq1": (check_eq1, _gen_eq1, GF32003),
    "subadditivity": (check_subadditivity, _gen_subadditivity, GF32003),
    "cor_subadkh": (check_cor_subadkh, _gen_subadditivity, GF32003),
    "thm2": (check_thm2, _gen_borel_pair, QQ),
    "cor3": (check_cor3, _gen_borel_pair, QQ),
    "borel": (check_borel_lemmas, _gen_borel_pair, QQ),
    "linres": (check_linres_reduction, _gen_linres, GF32003),
    "definitional": (check_definitional, _gen_definitional, GF32003),
    "splitting": (check_splitting, _gen_splitting, GF32003),
    "oracle": (check_oracle, _gen_oracle, GF32003),
}


class UnexpectedFailure(RuntimeError):
    def __init__(self, report, witness_path, reports):
        super().__init__(f"{report.check} failed unexpectedly; witness at {witness_path}")
        self.report = report
        self.witness_path = witness_path
        self.reports = reports


def run_trial(check, seed, cfg=None, field=None):
    cfg = {**DEFAULTS, **(cfg or {})}
    runner, gen, default_field = CHECKS[check]
    fld = field or default_field
    rng = random.Random(seed)
    args = gen(rng, cfg, fld)
    rep = runner(*args)
    rep.instance["seed"] = seed
    return rep


def witness(report):
    return {"check": report.check, "instance": report.instance}


def replay(w):
    """Re-run a single serialized instance."""
    check = w["check"]
    inst = dict(w["instance"])
    ring, I, J = load_instance(inst)
    runner = CHECKS[check][0] if check in CHECKS else None
    if check in ("eq1", "thm2", "cor3", "borel", "oracle"):
        return runner(I, J, inst["t"])
    if check in ("subadditivity", "cor_subadkh"):
        return runner(I, inst["s"], inst["t"])
    if check == "linres":
        return runner(I, J, inst["i"])
    if check == "definitional":
        return runner(I)
    if check == "splitting":
        return runner(I.gens, ring.parse(inst["g"]), J, inst["i"])
    raise ValueError(f"cannot replay check {check!r}")


def run_harness(config):
    """Run seeded random trials.

    config keys: checks (list of ids), trials, seed, field (None = per-check default),
    n (lo, hi), degrees (lo, hi), max_rank, jsonl (path or None), witness_dir, on_report.
    """
    checks = config.get("checks") or ["thm2"]
    trials = int(config.get("trials", 10))
    seed = int(config.get("seed", 0))
    fld = config.get("field")
    if isinstance(fld, str):
        fld = Field.parse(fld)
    cfg = {k: tuple(config[k]) if k in ("n", "degrees") else config[k]
           for k in ("n", "degrees", "max_rank") if k in config}
    for c in checks:
        if c not in CHECKS:
            raise ValueError(f"unknown check {c!r}; known: {', '.join(sorted(CHECKS))}")
    sink = open(config["jsonl"], "a") if config.get("jsonl") else None
    on_report = config.get("on_report")
    reports = []
    try:
        for ci, check in enumerate(checks):
            for k in range(trials):
                s = sub_seed(seed, ci * 1_000_003 + k)
                rep = run_trial(check, s, cfg, fld)
                rep.instance["trial"] = k
                reports.append(rep)
                if sink:
                    sink.write(json.dumps(rep.to_json()) + "\n")
                    sink.flush()
                if on_report:
                    on_report(rep)
                if not rep.ok:
                    wdir = config.get("witness_dir") or "."
                    os.makedirs(wdir, exist_ok=True)
                    path = os.path.join(wdir, f"witness-{check}-{s}.json")
                    with open(path, "w") as fh:
                        json.dump(witness(rep), fh, indent=2)
                    raise UnexpectedFailure(rep, path, reports)
    finally:
        if sink:
            sink.close()
    return reports


def summarize(reports):
    out = {}
    for r in reports:
        c = out.setdefault(r.check, {"trials": 0, "ok": 0})
        c["trials"] += 1
        c["ok"] += int(r.ok)
    return out


# --- reproduction of the worked examples -----------------------------------

def reproduce(eid, field=None, progress=None):
    """(ok, lines) comparing computed against expected values for one example id."""
    if eid in instances.EXPECTED_Z2:
        rep = check_eq2_counterexamples([eid], field, progress)[0]
        exp = rep.details["expected_rows"]
        got = rep.details["rows"]
        lines = [f"{eid} ({rep.instance['instance']}, {rep.instance['field']}): Z_2 Betti rows"]
        for r in sorted(set(exp) | set(got), key=int):
            lines.append(f"  {r}: expected {exp.get(r, [])}  computed {got.get(r, [])}")
        lines.append(f"  reg Z_2 = {format_reg(rep.lhs)} vs 2(reg I + 1) = {rep.rhs}")
        ok = rep.details["table_match"] and rep.lhs == 9 and rep.rhs == 8
        return ok, lines, rep
    if eid in instances.EXPECTED_CHAIN:
        name, exp = instances.EXPECTED_CHAIN[eid]
        I = instances.get(name, field)
        rep = check_subadditivity(I, 1, 1)
        got = tuple(rep.details["chain"])
        labels = ["reg Z_2", "reg Z_1(I, Z_1)", "reg Z_1 (x) Z_1", "reg Z_1 + reg Z_1"]
        lines = [f"{eid} ({name}, {I.ring.field.name}): s = t = 1 chain"]
        for lab, e, g in zip(labels, exp, got):
            lines.append(f"  {lab}: expected {e}  computed {format_reg(g)}")
        return got == tuple(exp), lines, rep
    raise KeyError(f"unknown example id {eid!r}; valid ids: {', '.join(instances.EXAMPLE_IDS)}")
