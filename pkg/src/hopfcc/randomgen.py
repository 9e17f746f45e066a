"""Seeded random elements for verification suites.

Coefficients are uniform in {-3..3}; F-legs have bounded jet depth and
polynomial degree, per the replay contract of the verify reports.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

from .cochain import Cochain
from .hopf import HopfContext
from .jets import Jet, multi_indices
from .poly import MPoly
from .tensor import Tensor, e_atom, f_atom, u_atom


def rand_fmono(rng, ctx: HopfContext, depth=2, deg=2):
    names = [ctx.avar(i, alpha)
             for i in range(1, ctx.n + 1)
             for alpha in multi_indices(ctx.n, 2, depth)]
    mono = {}
    for _ in range(rng.randint(0, deg)):
        v = rng.choice(names)
        mono[v] = mono.get(v, 0) + 1
    return tuple(sorted(mono.items()))


def rand_f(rng, ctx, depth=2, nterms=2, deg=2):
    p = MPoly.zero()
    for _ in range(nterms):
        c = rng.randint(-3, 3)
        p = p + MPoly({rand_fmono(rng, ctx, depth, deg): Fraction(c)})
    return p


def rand_uatom(rng, ctx, deg=2, x_budget=1):
    exps = [0] * ctx.m
    xs = 0
    for _ in range(rng.randint(0, deg)):
        g = rng.randrange(ctx.m)
        if g < ctx.n and xs >= x_budget:
            g = ctx.n + rng.randrange(ctx.m - ctx.n)
        if g < ctx.n:
            xs += 1
        exps[g] += 1
    return tuple(exps)


def rand_eword(rng, space, p):
    if p > space.dim:
        raise ValueError("degree exceeds space dimension")
    choices = list(combinations(range(space.dim), p))
    return rng.choice(choices)


def rand_cochain(rng, ctx, complex_id, p, q, nterms=2, depth=2, fdeg=1,
                 x_budget=1):
    """Random cochain of the given shape; F-legs of bounded depth/degree."""
    from .cochain import E_SPACE
    words = {}
    for _ in range(nterms):
        c = Fraction(rng.randint(-3, 3))
        if not c:
            continue
        if complex_id == "UF":
            w = tuple(u_atom(rand_uatom(rng, ctx, x_budget=x_budget)) for _ in range(p)) + \
                tuple(f_atom(rand_fmono(rng, ctx, depth, fdeg)) for _ in range(q))
        elif complex_id == "UF1":
            w = tuple(u_atom(rand_uatom(rng, ctx, x_budget=x_budget)) for _ in range(p + 1)) + \
                tuple(f_atom(rand_fmono(rng, ctx, depth, fdeg)) for _ in range(q + 1))
        elif complex_id in ("gF", "gsF", "coinv", "cw", "gF_rel", "gsF_rel",
                            "coinv_rel", "cw_rel"):
            space = ctx.spaces[E_SPACE[complex_id]]
            nf = q + (0 if complex_id.startswith(("gF", "gsF")) else 1)
            w = (e_atom(E_SPACE[complex_id], rand_eword(rng, space, p)),) + \
                tuple(f_atom(rand_fmono(rng, ctx, depth, fdeg)) for _ in range(nf))
        elif complex_id in ("K", "K_rel"):
            space = ctx.spaces[E_SPACE[complex_id]]
            w = (e_atom(E_SPACE[complex_id], rand_eword(rng, space, p)),
                 u_atom(rand_uatom(rng, ctx, x_budget=x_budget))) + \
                tuple(f_atom(rand_fmono(rng, ctx, depth, fdeg)) for _ in range(q))
        else:
            raise ValueError(complex_id)
        words[w] = words.get(w, Fraction(0)) + c
    data = Tensor(words)
    c0 = Cochain(ctx, complex_id, p, q, data)
    if complex_id.startswith("cw"):
        from .cochain import _antisymmetrize_f
        c0 = c0.replace(_antisymmetrize_f(data, 1))
    return c0


def rand_normalized_cochain(rng, ctx, complex_id, p, q, **kw):
    from .cochain import normalize_f_legs
    return normalize_f_legs(ctx, rand_cochain(rng, ctx, complex_id, p, q, **kw))


def rand_n_jet(rng, n, k, denom=1):
    coeffs = {}
    for i in range(1, n + 1):
        for alpha in multi_indices(n, 2, k):
            coeffs[(i, alpha)] = Fraction(rng.randint(-2, 2), denom)
    return Jet.from_coeffs(n, k, coeffs)
