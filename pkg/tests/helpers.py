"""Shared random-element generators for the test suite (seeded)."""

from fractions import Fraction

from hopfcc.hopf import HopfContext
from hopfcc.jets import multi_indices
from hopfcc.poly import MPoly
from hopfcc.tensor import Tensor, f_atom, u_atom


def rand_f(rng, ctx: HopfContext, depth=None, nterms=3, deg=2):
    """Random F-element of bounded jet depth and polynomial degree."""
    depth = depth or ctx.k
    names = [ctx.avar(i, alpha)
             for i in range(1, ctx.n + 1)
             for alpha in multi_indices(ctx.n, 2, depth)]
    p = MPoly.zero()
    for _ in range(nterms):
        term = MPoly.const(rng.randint(-3, 3))
        for _ in range(rng.randint(0, deg)):
            term = term * MPoly.var(rng.choice(names))
        p = p + term
    return p


def rand_u(rng, ctx: HopfContext, deg=2, x_budget=None):
    """Random U-element; x_budget caps translation generators per monomial."""
    u = {}
    for _ in range(2):
        exps = [0] * ctx.m
        total = rng.randint(0, deg)
        xs_used = 0
        for _ in range(total):
            g = rng.randrange(ctx.m)
            if g < ctx.n:
                if x_budget is not None and xs_used >= x_budget:
                    g = ctx.n + rng.randrange(ctx.m - ctx.n)
                else:
                    xs_used += 1
            exps[g] += 1
        key = tuple(exps)
        u[key] = u.get(key, Fraction(0)) + rng.randint(-2, 2)
    return {e: c for e, c in u.items() if c} or ctx.u_unit()


def rand_h(rng, ctx: HopfContext, fdepth=2, udeg=2, x_budget=1):
    f = rand_f(rng, ctx, depth=fdepth, nterms=2, deg=1)
    u = rand_u(rng, ctx, deg=udeg, x_budget=x_budget)
    h = ctx.h_from(f, u)
    if h.is_zero():
        h = ctx.h_unit()
    return h


def f_tensor_to_pair_dict(t: Tensor):
    return t


def mp(c):
    return MPoly.promote(c)
