"""Shared test utilities: random homogeneous elements of submodules."""

import random

from koszulreg.modules import vadd, vmul_poly


def random_combination(free, gens, rng, degree=None, scalars=(1, 50)):
    """A random homogeneous element of the span of ``gens`` in ``free``."""
    R = free.ring
    p = free.p
    gens = [g for g in gens if g]
    if not gens:
        return {}
    degs = [free.vector_degree(g) for g in gens]
    d = max(degs) if degree is None else degree
    out = {}
    for g, dg in zip(gens, degs):
        if dg > d:
            continue
        mons = R.monomials_of_degree(d - dg)
        e = rng.choice(mons)
        poly = {R.codec.encode(e): rng.randint(*scalars)}
        out = vadd(out, vmul_poly(g, poly, free.order.scale, p), p)
    return out


def rng_for(seed):
    return random.Random(seed)
