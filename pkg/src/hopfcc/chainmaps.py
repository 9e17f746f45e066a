"""Chain maps between the cochain models: Psi, AW, antisymmetrizations,
Poincare duality, the Connes duality isomorphism I, the group-cochain map J,
and the relative filters."""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations

from .cochain import Cochain, E_SPACE, _antisymmetrize_f, _diag_f_mult, uf_dh, uf_dv
from .exterior import ExtElement, sort_word
from .hopf import HopfContext, _mono_mul
from .poly import CASError, MPoly
from .tensor import F_ONE, Tensor, f_atom, u_atom


# ---------------------------------------------------------------------------
# (1.22) antisymmetrization wedge(g) -> U tensors, and its F-side analogues
# ---------------------------------------------------------------------------


def antisym_g(ctx: HopfContext, c: Cochain) -> Cochain:
    """alpha-tilde_g: gF(p, q) -> UF(p, q) by (1.22)."""
    if c.complex_id not in ("gF", "gF_rel"):
        raise CASError("antisym_g expects a gF cochain")
    out = Tensor.zero()
    space = ctx.spaces[E_SPACE[c.complex_id]]
    for w, coeff in c.data.terms.items():
        word = w[0][2]
        p = len(word)
        labs = [space.labels[i] for i in word]
        norm = Fraction(coeff, _fact(p))
        for perm in permutations(range(p)):
            sign = _perm_sign(perm)
            legs = tuple(u_atom(next(iter(ctx.u_gen(labs[i])))) for i in perm)
            out = out + Tensor({legs + w[1:]: norm * sign})
    return Cochain(ctx, "UF", c.p, c.q, out)


def antisym_f(ctx, c: Cochain) -> Cochain:
    """(1.65): cw -> coinv."""
    if not c.complex_id.startswith("cw"):
        raise CASError("antisym_f expects a wedge cochain")
    target = "coinv" if c.complex_id == "cw" else "coinv_rel"
    return Cochain(ctx, target, c.p, c.q, _antisymmetrize_f(c.data, 1))


def proj_f(ctx, c: Cochain) -> Cochain:
    """(1.66): coinv -> cw projection (left inverse of antisym_f)."""
    target = "cw" if c.complex_id == "coinv" else "cw_rel"
    return Cochain(ctx, target, c.p, c.q, _antisymmetrize_f(c.data, 1))


def _perm_sign(perm):
    sign = 1
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                sign = -sign
    return sign


def _fact(r):
    out = 1
    for i in range(2, r + 1):
        out *= i
    return out


# ---------------------------------------------------------------------------
# (1.27)/(4.10) Poincare isomorphism
# ---------------------------------------------------------------------------


def poincare_D(ctx, c: Cochain) -> Cochain:
    """D_g: gsF(p,q)-> gF(m-p,q): alpha -> iota(alpha)(covolume)."""
    src = c.complex_id
    if src not in ("gsF", "gsF_rel"):
        raise CASError("poincare_D expects a gsF cochain")
    tgt = "gF" if src == "gsF" else "gF_rel"
    space = ctx.spaces[E_SPACE[src]]
    m = space.dim
    top = tuple(range(m))
    out = Tensor.zero()
    for w, coeff in c.data.terms.items():
        word = w[0][2]
        cur = ExtElement(ctx.spaces[E_SPACE[tgt]], {top: Fraction(1)})
        for i in word:
            cur = cur.contract_index(i)
        for nw, cc in cur.terms.items():
            out = out + Tensor({(("E", E_SPACE[tgt], nw),) + w[1:]: coeff * cc})
    return Cochain(ctx, tgt, m - c.p, c.q, out)


def poincare_D_inv(ctx, c: Cochain) -> Cochain:
    src = c.complex_id
    if src not in ("gF", "gF_rel"):
        raise CASError("poincare_D_inv expects a gF cochain")
    tgt = "gsF" if src == "gF" else "gsF_rel"
    space = ctx.spaces[E_SPACE[src]]
    m = space.dim
    # invert the linear map on basis words
    table = {}
    top = tuple(range(m))
    from itertools import combinations
    for q in range(m + 1):
        for word in combinations(range(m), q):
            cur = ExtElement(space, {top: Fraction(1)})
            for i in word:
                cur = cur.contract_index(i)
            (img_word, cc), = cur.terms.items()
            table[img_word] = (word, Fraction(1) / cc)
    out = Tensor.zero()
    for w, coeff in c.data.terms.items():
        word, cc = table[w[0][2]]
        out = out + Tensor({(("E", E_SPACE[tgt], word),) + w[1:]: coeff * cc})
    return Cochain(ctx, tgt, m - c.p, c.q, out)


# ---------------------------------------------------------------------------
# (1.47)/(1.48) Connes duality isomorphism I
# ---------------------------------------------------------------------------


def map_I(ctx, c: Cochain) -> Cochain:
    """I: gsF(p,q) -> coinv(p,q)."""
    src = c.complex_id
    tgt = "coinv" if src == "gsF" else "coinv_rel"
    skey = E_SPACE[src]
    q = c.q
    out = Tensor.zero()
    for w, coeff in c.data.terms.items():
        eco = ctx.coaction_space_word(skey, w[0][2])
        fmonos = [a[1] for a in w[1:]]

        # all ways of splitting each f^i into (f^i_(1), f^i_(2))
        def expand(i):
            if i == len(fmonos):
                return [((), (), Fraction(1))]
            res = []
            cop = ctx._f_cop_mono(fmonos[i])
            for (a, b), cc in cop.terms.items():
                for firsts, seconds, c2 in expand(i + 1):
                    res.append(((a[1],) + firsts, (b[1],) + seconds, cc * c2))
            return res

        for firsts, seconds, c2 in expand(0):
            for (ea, fa), c3 in eco.terms.items():
                legs = []
                for j in range(q):
                    val = MPoly({firsts[j]: Fraction(1)})
                    if j > 0:
                        val = ctx.f_antipode(MPoly({seconds[j - 1]: Fraction(1)})) * val
                    legs.append(val)
                tail = fa[1] if q == 0 else _mono_mul(fa[1], seconds[q - 1])
                legs.append(ctx.f_antipode(MPoly({tail: Fraction(1)})))
                words = [((), Fraction(1))]
                for leg in legs:
                    words = [(wd + (m,), cw * cc2)
                             for wd, cw in words for m, cc2 in leg.terms.items()]
                for wd, cw in words:
                    nw = (ea,) + tuple(f_atom(m) for m in wd)
                    out = out + Tensor({nw: coeff * c2 * c3 * cw})
    return Cochain(ctx, tgt, c.p, q, out)


def map_I_inv(ctx, c: Cochain) -> Cochain:
    """I^{-1}: coinv(p,q) -> gsF(p,q) by (1.48)."""
    src = c.complex_id
    tgt = "gsF" if src == "coinv" else "gsF_rel"
    q = c.q
    out = Tensor.zero()
    for w, coeff in c.data.terms.items():
        fmonos = [a[1] for a in w[1:]]
        eps_last = MPoly({fmonos[q]: Fraction(1)}).constant_term()
        if not eps_last:
            continue
        # legs j=1..q: f^0_(j) f^1_(j-1) ... f^{j-1}_(1)
        parts = []
        for i in range(q):
            r = q - i
            cur = Tensor({(f_atom(fmonos[i]),): Fraction(1)})
            for _ in range(r - 1):
                cur = cur.map_leg(0, lambda a: ctx._f_cop_mono(a[1]))
            parts.append(cur)
        combos = [((), Fraction(1))]
        for t in parts:
            combos = [(wd + (tw,), cw * cc) for wd, cw in combos
                      for tw, cc in t.terms.items()]
        for wd, cw in combos:
            legs = []
            for j in range(1, q + 1):
                mono = ()
                for i in range(j):
                    mono = _mono_mul(mono, wd[i][j - 1 - i][1])
                legs.append(f_atom(mono))
            nw = w[:1] + tuple(legs)
            out = out + Tensor({nw: coeff * cw * eps_last})
    return Cochain(ctx, tgt, c.p, q, out)


# ---------------------------------------------------------------------------
# (1.15)/(1.16) Psi between the diagonal and Hopf cochains of H
# ---------------------------------------------------------------------------


def map_psi(ctx, c: Cochain) -> Cochain:
    """Psi: diagonal UF(n, n) -> H-cochains with n legs."""
    if c.complex_id != "UF" or c.p != c.q:
        raise CASError("Psi needs a diagonal UF cochain")
    nn = c.p
    out = Tensor.zero()
    for w, coeff in c.data.terms.items():
        us = [a[1] for a in w[:nn]]
        fs = [a[1] for a in w[nn:]]
        coacted = [ctx.coaction_iter(u, nn - 1 - i) for i, u in enumerate(us)]
        combos = [((), Fraction(1))]
        for t in coacted:
            combos = [(wd + (tw,), cw * cc) for wd, cw in combos
                      for tw, cc in t.terms.items()]
        for wd, cw in combos:
            legs = []
            for j in range(1, nn + 1):
                fm = fs[j - 1]
                for i in range(1, j):
                    fm = _mono_mul(fm, wd[i - 1][j - i][1])
                legs.append(f_atom(fm))
                legs.append(wd[j - 1][0])
            out = out + Tensor({tuple(legs): coeff * cw})
    return Cochain(ctx, "H", 0, nn, out)


def map_psi_inv(ctx, c: Cochain) -> Cochain:
    """Psi^{-1}: H-cochains with n legs -> diagonal UF(n, n)."""
    if c.complex_id != "H":
        raise CASError("Psi_inv needs an H cochain")
    nn = c.q
    out = Tensor.zero()
    for w, coeff in c.data.terms.items():
        fs = [w[2 * j][1] for j in range(nn)]
        us = [w[2 * j + 1][1] for j in range(nn)]
        coacted = [ctx.coaction_iter(us[i], nn - 1 - i) for i in range(nn)]
        combos = [((), Fraction(1))]
        for t in coacted:
            combos = [(wd + (tw,), cw * cc) for wd, cw in combos
                      for tw, cc in t.terms.items()]
        for wd, cw in combos:
            ulegs = tuple(wd[i][0] for i in range(nn))
            flegs = []
            for j in range(1, nn + 1):
                prod = ()
                for i in range(1, j):
                    prod = _mono_mul(prod, wd[i - 1][nn - j + 1][1])
                fm = MPoly({fs[j - 1]: Fraction(1)}) \
                    * ctx.f_antipode(MPoly({prod: Fraction(1)}))
                flegs.append(fm)
            words = [((), Fraction(1))]
            for leg in flegs:
                words = [(wd2 + (m,), cw2 * cc2)
                         for wd2, cw2 in words for m, cc2 in leg.terms.items()]
            for wd2, cw2 in words:
                nw = ulegs + tuple(f_atom(m) for m in wd2)
                out = out + Tensor({nw: coeff * cw * cw2})
    return Cochain(ctx, "UF", nn, nn, out)


def map_IH(ctx, c: Cochain) -> Cochain:
    """(3.30): 1 ox h_1 ox ... ox h_n -> 1 ox h_n ox ... ox h_1."""
    if c.complex_id != "H":
        raise CASError("map_IH needs an H cochain")
    nn = c.q
    perm = []
    for j in range(nn - 1, -1, -1):
        perm.extend([2 * j, 2 * j + 1])
    return Cochain(ctx, "H", 0, nn, c.data.permute(perm))


# ---------------------------------------------------------------------------
# (1.19) Alexander-Whitney
# ---------------------------------------------------------------------------


def map_AW(ctx, c: Cochain) -> Cochain:
    """AW_{p,q}: UF(p, q) -> diagonal UF(p+q, p+q).

    Composition of top horizontal cofaces and zeroth vertical cofaces; with
    this engine's coface conventions the chain-map (Eilenberg-Zilber)
    property b_D o AW = AW o b_T holds with no extra sign prefactor.
    """
    if c.complex_id != "UF":
        raise CASError("AW expects a UF cochain")
    p, q = c.p, c.q
    n = p + q
    cur = c
    for i in range(p + 1, n + 1):
        cur = uf_dh(ctx, cur, i)
    for _ in range(p):
        cur = uf_dv(ctx, cur, 0)
    return cur


# ---------------------------------------------------------------------------
# (1.59) the group-cochain map J and (1.67) J^wedge
# ---------------------------------------------------------------------------


def map_J(ctx, c: Cochain):
    """J: coinv(p, q) -> polynomial group cochain evaluator."""
    from .groupcochain import GroupCochain
    if c.complex_id not in ("coinv", "coinv_rel", "cw", "cw_rel"):
        raise CASError("J expects a homogeneous cochain")
    skey = E_SPACE[c.complex_id]
    space = ctx.spaces[skey]

    def evaluate(jets):
        if len(jets) != c.q + 1:
            raise CASError("J: argument count mismatch")
        out = ExtElement.zero(space)
        for w, coeff in c.data.terms.items():
            val = MPoly.const(coeff)
            for j, a in enumerate(w[1:]):
                val = val * ctx.f_eval(MPoly({a[1]: Fraction(1)}), jets[j])
            out = out + ExtElement(space, {w[0][2]: val})
        return out

    return GroupCochain(ctx, c.p, c.q, evaluate, space=space)


def map_J_wedge(ctx, c: Cochain):
    """J^wedge of (1.67) on wedge cochains (same values as J o antisym)."""
    return map_J(ctx, antisym_f(ctx, c))


# ---------------------------------------------------------------------------
# relative filter (4.14)/(4.20)
# ---------------------------------------------------------------------------


def relative_filter(ctx, c: Cochain) -> bool:
    """True iff iota_X = 0 and L_X = 0 for every X in h = gl_n."""
    skey = E_SPACE.get(c.complex_id)
    if skey is None:
        raise CASError("relative filter needs an E-legged cochain")
    space = ctx.spaces[skey]
    hlabels = [lab for lab in ctx.lie.labels if lab[0] == "L"]
    # contraction condition: no L-indices in the exterior word
    for w in c.data.terms:
        for i in w[0][2]:
            if space.labels[i][0] == "L":
                return False
    # Lie derivative condition: coadjoint on the E-leg + diagonal action on F-legs
    for lab in hlabels:
        total = Tensor.zero()
        for w, coeff in c.data.terms.items():
            el = ExtElement(space, {w[0][2]: Fraction(1)})
            co = ctx.lie.coadjoint(lab, el)
            for nw, cc in co.terms.items():
                total = total + Tensor({(("E", skey, nw),) + w[1:]: coeff * cc})
            for j in range(1, len(w)):
                acted = ctx.act_gen(lab, MPoly({w[j][1]: Fraction(1)}))
                for m, cc in acted.terms.items():
                    nw = w[:j] + (f_atom(m),) + w[j + 1:]
                    total = total + Tensor({nw: coeff * cc})
        if not total.is_zero():
            return False
    return True


def to_relative(ctx, c: Cochain) -> Cochain:
    """Reinterpret a gl_n-basic gsF/coinv/cw cochain over the q*-spaces."""
    mapping = {"gsF": "gsF_rel", "coinv": "coinv_rel", "cw": "cw_rel", "K": "K_rel"}
    tgt = mapping[c.complex_id]
    skey_src, skey_tgt = E_SPACE[c.complex_id], E_SPACE[tgt]
    src_space, tgt_space = ctx.spaces[skey_src], ctx.spaces[skey_tgt]
    out = Tensor.zero()
    for w, coeff in c.data.terms.items():
        labs = [src_space.labels[i] for i in w[0][2]]
        if any(lab[0] == "L" for lab in labs):
            raise CASError("cochain does not pass the contraction filter")
        nw = tuple(tgt_space.index[lab] for lab in labs)
        out = out + Tensor({(("E", skey_tgt, nw),) + w[1:]: coeff})
    return Cochain(ctx, tgt, c.p, c.q, out)
