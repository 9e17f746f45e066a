"""Cochain containers and the (co)boundary operators of all complexes.

One generic Cochain wraps a Tensor whose leg signature is fixed by a
complex id:

  UF1     u^0..u^p, f^0..f^q      first bicocyclic module
  UF      u^1..u^p, f^1..f^q      second bicocyclic module (C_delta implicit)
  gF      E(g), f^1..f^q          Lie-homology x Hochschild bicomplex
  gsF     E(g*), f^1..f^q         Lie-cohomology x Hochschild bicomplex
  coinv   E(g*), f^0..f^q         coinvariant (homogeneous) bicomplex
  cw      E(g*), f^0..f^q         coinvariant wedge subcomplex
  K       E(g*), u, f^1..f^q      Koszul-coefficient complex over tensor_U
  H       (f,u) pairs, n of them  Hopf cochains of the bicrossed product

Relative variants use the q/q* spaces: gF_rel, gsF_rel, coinv_rel, cw_rel.
Operators are exposed as functions plus a machine-readable OPERATOR_TABLE
mapping names to their defining displays.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations

from .exterior import merge_sign
from .hopf import HopfContext, _mono_mul
from .poly import CASError, MPoly
from .tensor import F_ONE, Tensor, f_atom, u_atom

E_SPACE = {"gF": "g", "gsF": "g*", "coinv": "g*", "cw": "g*", "K": "g*",
           "gF_rel": "q", "gsF_rel": "q*", "coinv_rel": "q*", "cw_rel": "q*",
           "K_rel": "q*"}

F_OFFSET = {"gF": 1, "gsF": 1, "coinv": 1, "cw": 1, "K": 2,
            "gF_rel": 1, "gsF_rel": 1, "coinv_rel": 1, "cw_rel": 1, "K_rel": 2}


class Cochain:
    """Typed multi-tensor with a complex id and bidegree (p, q)."""

    __slots__ = ("ctx", "complex_id", "p", "q", "data")

    def __init__(self, ctx: HopfContext, complex_id, p, q, data: Tensor):
        self.ctx = ctx
        self.complex_id = complex_id
        self.p = p
        self.q = q
        self.data = data
        self._validate()

    def _validate(self):
        cid = self.complex_id
        for w in self.data.terms:
            if cid == "UF1":
                _expect(w, ["U"] * (self.p + 1) + ["F"] * (self.q + 1))
            elif cid == "UF":
                _expect(w, ["U"] * self.p + ["F"] * self.q)
            elif cid in ("gF", "gsF", "coinv", "cw", "gF_rel", "gsF_rel",
                         "coinv_rel", "cw_rel"):
                nf = self.q + (0 if cid.startswith(("gF", "gsF")) else 1)
                _expect(w, ["E"] + ["F"] * nf)
                if len(w[0][2]) != self.p:
                    raise CASError("exterior degree does not match p")
            elif cid in ("K", "K_rel"):
                _expect(w, ["E", "U"] + ["F"] * self.q)
                if len(w[0][2]) != self.p:
                    raise CASError("exterior degree does not match p")
            elif cid == "H":
                _expect(w, ["F", "U"] * self.q)
            else:
                raise CASError(f"unknown complex id {cid}")

    def replace(self, data, p=None, q=None):
        return Cochain(self.ctx, self.complex_id, self.p if p is None else p,
                       self.q if q is None else q, data)

    def __add__(self, other):
        if (self.complex_id, self.p, self.q) != (other.complex_id, other.p, other.q):
            raise CASError("cochain shape mismatch")
        return self.replace(self.data + other.data)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        return self.replace(self.data.scale(c))

    def is_zero(self):
        return self.data.is_zero()

    def __eq__(self, other):
        return (isinstance(other, Cochain)
                and (self.complex_id, self.p, self.q) == (other.complex_id, other.p, other.q)
                and self.data == other.data)

    def __repr__(self):
        return f"Cochain[{self.complex_id}]({self.p},{self.q}): {self.data}"


def _expect(word, kinds):
    if len(word) != len(kinds):
        raise CASError(f"word length {len(word)} != {len(kinds)}")
    for a, k in zip(word, kinds):
        if a[0] != k:
            raise CASError(f"bad leg {a} where {k} expected")


# ---------------------------------------------------------------------------
# helpers on words
# ---------------------------------------------------------------------------


def _coact_uleg(ctx, word, pos):
    """Replace u-leg at pos by its coaction; new F-atom returned separately."""
    out = []
    for (ua, fa), c in ctx.coaction(word[pos][1]).terms.items():
        out.append((word[:pos] + (ua,) + word[pos + 1:], fa, c))
    return out


def _f_mult_at(word, pos, mono):
    atom = word[pos]
    return word[:pos] + (f_atom(_mono_mul(atom[1], mono)),) + word[pos + 1:]


def _diag_f_mult(ctx, f: MPoly, monos):
    """f . (g^1 ox ... ox g^r) via the iterated coproduct of F."""
    r = len(monos)
    if r == 0:
        return Tensor.scalar(ctx.f_counit(f))
    out = Tensor.zero()
    for mono, c in f.terms.items():
        cur = Tensor({(f_atom(mono),): Fraction(1)})
        for _ in range(r - 1):
            cur = cur.map_leg(0, lambda a: ctx.f_coproduct_var_safe(a))
        for w, c2 in cur.terms.items():
            nw = tuple(f_atom(_mono_mul(a[1], m)) for a, m in zip(w, monos))
            out = out + Tensor({nw: c * c2})
    return out


def _fcop_atom(ctx, atom):
    return ctx._f_cop_mono(atom[1])


# HopfContext helper: coproduct of a single F-atom as Tensor
def _patch_context():
    def f_coproduct_var_safe(self, atom):
        return self._f_cop_mono(atom[1])
    if not hasattr(HopfContext, "f_coproduct_var_safe"):
        HopfContext.f_coproduct_var_safe = f_coproduct_var_safe


_patch_context()


# ---------------------------------------------------------------------------
# second bicocyclic module "UF" (1.13)/(1.14)
# ---------------------------------------------------------------------------


def uf_dh(ctx, c: Cochain, i) -> Cochain:
    p, q = c.p, c.q
    if i == 0:
        data = c.data.map_word(lambda w: Tensor({(u_atom((0,) * ctx.m),) + w: Fraction(1)}))
    elif i == p + 1:
        data = c.data.map_word(lambda w: Tensor(
            {w[:p] + (u_atom((0,) * ctx.m),) + w[p:]: Fraction(1)}))
    elif 1 <= i <= p:
        data = c.data.map_leg(i - 1, lambda a: ctx.u_coproduct(a[1], 2))
    else:
        raise CASError("coface index out of range")
    return Cochain(ctx, "UF", p + 1, q, data)


def uf_sh(ctx, c: Cochain, j) -> Cochain:
    p, q = c.p, c.q
    if not 0 <= j <= p - 1:
        raise CASError("codegeneracy index out of range")
    data = c.data.map_leg(j + 1 - 1, lambda a: Tensor.scalar(
        ctx.u_counit({a[1]: Fraction(1)})))
    return Cochain(ctx, "UF", p - 1, q, data)


def uf_th(ctx, c: Cochain) -> Cochain:
    """(1.13) horizontal cyclic operator."""
    p, q = c.p, c.q
    out = Tensor.zero()
    for w, coeff in c.data.terms.items():
        u1 = w[0][1]
        rest_u = [a[1] for a in w[1:p]] + [(0,) * ctx.m]
        fmonos = tuple(a[1] for a in w[p:])
        for w3, c3 in ctx.u_coproduct(u1, 3).terms.items():
            ua, ub, uc = w3[0][1], w3[1][1], w3[2][1]
            d = ctx.delta_u({ua: Fraction(1)})
            if not d:
                continue
            su_c = ctx.u_antipode(uc)
            su_b = ctx.u_antipode(ub)
            diag = Tensor.zero()
            for m1, cc in su_c.items():
                diag = diag + ctx.u_diag_act({m1: Fraction(1)}, rest_u).scale(cc)
            fact = Tensor.zero()
            for m2, cc in su_b.items():
                fact = fact + ctx.bullet({m2: Fraction(1)}, fmonos).scale(cc)
            for uw, cu in diag.terms.items():
                for fw, cf in fact.terms.items():
                    out = out + Tensor({uw + fw: coeff * c3 * d * cu * cf})
    return Cochain(ctx, "UF", p, q, out)


def uf_dv(ctx, c: Cochain, i) -> Cochain:
    p, q = c.p, c.q
    if i == 0:
        data = c.data.map_word(lambda w: Tensor({w[:p] + (F_ONE,) + w[p:]: Fraction(1)}))
    elif 1 <= i <= q:
        data = c.data.map_leg(p + i - 1, _fcop_atom_fn(ctx))
    elif i == q + 1:
        out = Tensor.zero()
        for w, coeff in c.data.terms.items():
            pieces = [(w, (), coeff)]
            for pos in range(p):
                new_pieces = []
                for nw, acc, cc in pieces:
                    for nw2, fa, c2 in _coact_uleg(ctx, nw, pos):
                        new_pieces.append((nw2, _mono_mul(acc, fa[1]), cc * c2))
                pieces = new_pieces
            for nw, acc, cc in pieces:
                sacc = ctx.f_antipode(MPoly({acc: Fraction(1)}))
                for m, c2 in sacc.terms.items():
                    out = out + Tensor({nw + (f_atom(m),): cc * c2})
        data = out
    else:
        raise CASError("coface index out of range")
    return Cochain(ctx, "UF", p, q + 1, data)


def _fcop_atom_fn(ctx):
    return lambda a: ctx._f_cop_mono(a[1])


def uf_sv(ctx, c: Cochain, j) -> Cochain:
    p, q = c.p, c.q
    if not 0 <= j <= q - 1:
        raise CASError("codegeneracy index out of range")
    data = c.data.map_leg(p + j, lambda a: Tensor.scalar(
        MPoly({a[1]: Fraction(1)}).constant_term()))
    return Cochain(ctx, "UF", p, q - 1, data)


def uf_tv(ctx, c: Cochain) -> Cochain:
    """(1.14) vertical cyclic operator."""
    p, q = c.p, c.q
    out = Tensor.zero()
    for w, coeff in c.data.terms.items():
        pieces = [(tuple(w[:p]), (), coeff)]
        for pos in range(p):
            new_pieces = []
            for uw, acc, cc in pieces:
                for (ua, fa), c2 in ctx.coaction(uw[pos][1]).terms.items():
                    new_pieces.append((uw[:pos] + (ua,) + uw[pos + 1:],
                                       _mono_mul(acc, fa[1]), cc * c2))
            pieces = new_pieces
        f1 = MPoly({w[p][1]: Fraction(1)})
        rest = [a[1] for a in w[p + 1:]]
        for uw, acc, cc in pieces:
            sacc = ctx.f_antipode(MPoly({acc: Fraction(1)}))
            sf1 = ctx.f_antipode(f1)
            for m2, c3 in sacc.terms.items():
                monos = tuple(rest) + (m2,)
                fact = _diag_f_mult(ctx, sf1, monos)
                for fw, c4 in fact.terms.items():
                    out = out + Tensor({uw + fw: cc * c3 * c4})
    return Cochain(ctx, "UF", p, q, out)


def uf_bh(ctx, c):
    out = None
    for i in range(c.p + 2):
        term = uf_dh(ctx, c, i).scale(Fraction(-1) ** i)
        out = term if out is None else out + term
    return out


def uf_bv(ctx, c):
    out = None
    for i in range(c.q + 2):
        term = uf_dv(ctx, c, i).scale(Fraction(-1) ** i)
        out = term if out is None else out + term
    return out


def uf_bT(ctx, c):
    """(1.17) total Hochschild coboundary with the bicomplex twist.

    The engine's b-h and b-v commute, so the totalization is
    b_T = b-h + (-1)^p b-v (squares to zero; verified in tests).
    """
    return uf_bh(ctx, c), uf_bv(ctx, c).scale(Fraction(-1) ** c.p)


def uf_Bh(ctx, c):
    """(1.18) horizontal B: (sum (-1)^{(p-1)i} tau^i) sigma_{p-1} tau."""
    p = c.p
    if p == 0:
        return Cochain(ctx, "UF", 0, c.q, Tensor.zero())
    t = uf_th(ctx, c)
    st = uf_sh(ctx, t, p - 1)
    out = None
    cur = st
    for i in range(p):
        term = cur.scale(Fraction(-1) ** ((p - 1) * i))
        out = term if out is None else out + term
        if i < p - 1:
            cur = uf_th(ctx, cur)
    return out


def uf_Bv(ctx, c):
    q = c.q
    if q == 0:
        return Cochain(ctx, "UF", c.p, 0, Tensor.zero())
    t = uf_tv(ctx, c)
    st = uf_sv(ctx, t, q - 1)
    out = None
    cur = st
    for i in range(q):
        term = cur.scale(Fraction(-1) ** ((q - 1) * i))
        out = term if out is None else out + term
        if i < q - 1:
            cur = uf_tv(ctx, cur)
    return out


# ---------------------------------------------------------------------------
# first bicocyclic module "UF1" (1.9)/(1.10)
# ---------------------------------------------------------------------------


def uf1_dh(ctx, c: Cochain, i) -> Cochain:
    p, q = c.p, c.q
    if 0 <= i <= p:
        data = c.data.map_leg(i, lambda a: ctx.u_coproduct(a[1], 2))
    elif i == p + 1:
        out = Tensor.zero()
        for w, coeff in c.data.terms.items():
            u0 = w[0][1]
            for w2, c2 in ctx.u_coproduct(u0, 2).terms.items():
                u01, u02 = w2[0][1], w2[1][1]
                co = ctx.coaction_iter(u01, q + 1)
                for cw, c3 in co.terms.items():
                    ua, flegs = cw[0], cw[1:]
                    nw = (u_atom(u02),) + w[1:p + 1] + (ua,)
                    fw = tuple(f_atom(_mono_mul(w[p + 1 + j][1], flegs[j][1]))
                               for j in range(q + 1))
                    out = out + Tensor({nw + fw: coeff * c2 * c3})
        data = out
    else:
        raise CASError("coface index out of range")
    return Cochain(ctx, "UF1", p + 1, q, data)


def uf1_sh(ctx, c: Cochain, j) -> Cochain:
    data = c.data.map_leg(j + 1, lambda a: Tensor.scalar(
        ctx.u_counit({a[1]: Fraction(1)})))
    return Cochain(ctx, "UF1", c.p - 1, c.q, data)


def uf1_th(ctx, c: Cochain) -> Cochain:
    p, q = c.p, c.q
    out = Tensor.zero()
    for w, coeff in c.data.terms.items():
        u0 = w[0][1]
        co = ctx.coaction_iter(u0, q + 1)
        for cw, c3 in co.terms.items():
            ua, flegs = cw[0], cw[1:]
            nw = w[1:p + 1] + (ua,)
            fw = tuple(f_atom(_mono_mul(w[p + 1 + j][1], flegs[j][1]))
                       for j in range(q + 1))
            out = out + Tensor({nw + fw: coeff * c3})
    return Cochain(ctx, "UF1", p, q, out)


def uf1_dv(ctx, c: Cochain, i) -> Cochain:
    p, q = c.p, c.q
    if 0 <= i <= q:
        data = c.data.map_leg(p + 1 + i, _fcop_atom_fn(ctx))
    elif i == q + 1:
        out = Tensor.zero()
        for w, coeff in c.data.terms.items():
            pieces = [(tuple(w[:p + 1]), (), coeff)]
            for pos in range(p + 1):
                new_pieces = []
                for uw, acc, cc in pieces:
                    for (ua, fa), c2 in ctx.coaction(uw[pos][1]).terms.items():
                        new_pieces.append((uw[:pos] + (ua,) + uw[pos + 1:],
                                           _mono_mul(acc, fa[1]), cc * c2))
                pieces = new_pieces
            f0 = MPoly({w[p + 1][1]: Fraction(1)})
            rest = w[p + 2:]
            for uw, acc, cc in pieces:
                cop = ctx.f_coproduct(f0)
                for (f01, f02), c3 in cop.terms.items():
                    last = ctx.f_antipode(MPoly({acc: Fraction(1)})) * MPoly({f01[1]: 1})
                    for m, c4 in last.terms.items():
                        nw = uw + (f02,) + rest + (f_atom(m),)
                        out = out + Tensor({nw: cc * c3 * c4})
        data = out
    else:
        raise CASError("coface index out of range")
    return Cochain(ctx, "UF1", p, q + 1, data)


def uf1_sv(ctx, c: Cochain, j) -> Cochain:
    data = c.data.map_leg(c.p + 1 + j + 1, lambda a: Tensor.scalar(
        MPoly({a[1]: Fraction(1)}).constant_term()))
    return Cochain(ctx, "UF1", c.p, c.q - 1, data)


def uf1_tv(ctx, c: Cochain) -> Cochain:
    p, q = c.p, c.q
    out = Tensor.zero()
    for w, coeff in c.data.terms.items():
        pieces = [(tuple(w[:p + 1]), (), coeff)]
        for pos in range(p + 1):
            new_pieces = []
            for uw, acc, cc in pieces:
                for (ua, fa), c2 in ctx.coaction(uw[pos][1]).terms.items():
                    new_pieces.append((uw[:pos] + (ua,) + uw[pos + 1:],
                                       _mono_mul(acc, fa[1]), cc * c2))
            pieces = new_pieces
        f0 = MPoly({w[p + 1][1]: Fraction(1)})
        rest = w[p + 2:]
        for uw, acc, cc in pieces:
            last = f0 * ctx.f_antipode(MPoly({acc: Fraction(1)}))
            for m, c3 in last.terms.items():
                nw = uw + rest + (f_atom(m),)
                out = out + Tensor({nw: cc * c3})
    return Cochain(ctx, "UF1", p, q, out)


# ---------------------------------------------------------------------------
# E-legged bicomplexes: gF (1.24)-(1.25), gsF (1.37)-(1.38), coinv, cw, K
# ---------------------------------------------------------------------------


def _coact_E(ctx, cid, word):
    return ctx.coaction_space_word(E_SPACE[cid], word)


def hoch_b(ctx, c: Cochain) -> Cochain:
    """Hochschild coboundary of F with E-leg comodule coefficients (1.24 pattern)."""
    cid = c.complex_id
    if cid in ("coinv", "coinv_rel", "cw", "cw_rel"):
        raise CASError("use coinv_b on homogeneous complexes")
    off = F_OFFSET[cid]
    q = c.q
    out = Tensor.zero()
    for w, coeff in c.data.terms.items():
        out = out + Tensor({w[:off] + (F_ONE,) + w[off:]: coeff})
        for i in range(1, q + 1):
            piece = Tensor({w: coeff}).map_leg(off + i - 1, _fcop_atom_fn(ctx))
            out = out + piece.scale(Fraction(-1) ** i)
        co = _coact_E(ctx, cid, w[0][2])
        for (ea, fa), c2 in co.terms.items():
            sf = ctx.f_antipode(MPoly({fa[1]: Fraction(1)}))
            for m, c3 in sf.terms.items():
                nw = (ea,) + w[1:] + (f_atom(m),)
                out = out + Tensor({nw: coeff * c2 * c3 * Fraction(-1) ** (q + 1)})
    return Cochain(ctx, cid, c.p, q + 1, out)


def hoch_tau(ctx, c: Cochain) -> Cochain:
    """(1.25) cyclic operator on gF/gsF-type complexes."""
    cid = c.complex_id
    off = F_OFFSET[cid]
    q = c.q
    if q == 0:
        raise CASError("tau needs q >= 1")
    out = Tensor.zero()
    for w, coeff in c.data.terms.items():
        f1 = MPoly({w[off][1]: Fraction(1)})
        rest = [a[1] for a in w[off + 1:]]
        co = _coact_E(ctx, cid, w[0][2])
        for (ea, fa), c2 in co.terms.items():
            sf = ctx.f_antipode(MPoly({fa[1]: Fraction(1)}))
            sf1 = ctx.f_antipode(f1)
            for m, c3 in sf.terms.items():
                monos = tuple(rest) + (m,)
                fact = _diag_f_mult(ctx, sf1, monos)
                for fw, c4 in fact.terms.items():
                    nw = (ea,) + w[1:off] + fw
                    out = out + Tensor({nw: coeff * c2 * c3 * c4})
    return Cochain(ctx, cid, c.p, q, out)


def hoch_sigma(ctx, c: Cochain) -> Cochain:
    """final codegeneracy: counit on the last F-leg."""
    cid = c.complex_id
    out = c.data.map_leg(len_word(c) - 1, lambda a: Tensor.scalar(
        MPoly({a[1]: Fraction(1)}).constant_term()))
    return Cochain(ctx, cid, c.p, c.q - 1, out)


def len_word(c: Cochain):
    for w in c.data.terms:
        return len(w)
    return F_OFFSET[c.complex_id] + c.q


def hoch_B(ctx, c: Cochain) -> Cochain:
    q = c.q
    if q == 0:
        return Cochain(ctx, c.complex_id, c.p, 0, Tensor.zero())
    t = hoch_tau(ctx, c)
    st = hoch_sigma(ctx, t)
    out = None
    cur = st
    for i in range(q):
        term = cur.scale(Fraction(-1) ** ((q - 1) * i))
        out = term if out is None else out + term
        if i < q - 1:
            cur = hoch_tau(ctx, cur)
    return out


def lie_boundary_g(ctx, c: Cochain) -> Cochain:
    """(1.21)-twisted Lie homology boundary on gF/gF_rel."""
    cid = c.complex_id
    space = ctx.spaces[E_SPACE[cid]]
    out = Tensor.zero()
    for w, coeff in c.data.terms.items():
        word = w[0][2]
        fmonos = tuple(a[1] for a in w[1:])
        for pos, idx in enumerate(word):
            lab = space.labels[idx]
            rest = word[:pos] + word[pos + 1:]
            sign = Fraction(-1) ** pos  # (-1)^{pos}: X_i removed from slot pos (0-based)
            dval = ctx.delta_u(ctx.u_gen(lab))
            base = Tensor({(("E", E_SPACE[cid], rest),) + w[1:]: Fraction(1)})
            if dval:
                out = out + base.scale(coeff * sign * dval)
            acted = ctx.bullet(ctx.u_gen(lab), fmonos)
            for fw, c2 in acted.terms.items():
                nw = (("E", E_SPACE[cid], rest),) + fw
                out = out + Tensor({nw: -coeff * sign * c2})
        # bracket terms
        for i in range(len(word)):
            for j in range(i + 1, len(word)):
                a = ctx.lie.index[space.labels[word[i]]]
                b = ctx.lie.index[space.labels[word[j]]]
                rest = tuple(x for t, x in enumerate(word) if t not in (i, j))
                for cidx, cc in ctx.lie.bracket_index(a, b).items():
                    lab_c = ctx.lie.labels[cidx]
                    if lab_c not in space.index:
                        continue
                    nw, sign = merge_sign((space.index[lab_c],), rest)
                    if nw is None:
                        continue
                    out = out + Tensor({(("E", E_SPACE[cid], nw),) + w[1:]:
                                        coeff * cc * sign * Fraction(-1) ** (i + j)})
    return Cochain(ctx, cid, c.p - 1, c.q, out)


def _ce_d_word(ctx, space_key, word):
    """CE differential of a basis wedge of g* (trivial coefficients)."""
    space = ctx.spaces[space_key]
    el_terms = {}
    for pos, c_idx in enumerate(word):
        c_global = ctx.lie.index[space.labels[c_idx]]
        sign0 = Fraction(-1) ** pos
        rest = word[:pos] + word[pos + 1:]
        for a in range(ctx.lie.dim):
            la = ctx.lie.labels[a]
            if la not in space.index:
                continue
            for b in range(a + 1, ctx.lie.dim):
                lb = ctx.lie.labels[b]
                if lb not in space.index:
                    continue
                cc = ctx.lie.C[(a, b)].get(c_global)
                if not cc:
                    continue
                pair = (space.index[la], space.index[lb])
                nw, sign = merge_sign(pair, rest)
                if nw is None:
                    continue
                el_terms[nw] = el_terms.get(nw, Fraction(0)) - cc * sign0 * sign
    return el_terms


def lie_coboundary_gs(ctx, c: Cochain, action="bullet") -> Cochain:
    """d(alpha) ox f - sum theta^a ^ alpha ox X_a act f on gsF/coinv complexes."""
    cid = c.complex_id
    skey = E_SPACE[cid]
    space = ctx.spaces[skey]
    out = Tensor.zero()
    for w, coeff in c.data.terms.items():
        word = w[0][2]
        fmonos = tuple(a[1] for a in w[1:])
        for nw, cc in _ce_d_word(ctx, skey, word).items():
            out = out + Tensor({(("E", skey, nw),) + w[1:]: coeff * cc})
        for a_local in range(space.dim):
            lab = space.labels[a_local]
            nw, sign = merge_sign((a_local,), word)
            if nw is None:
                continue
            if action == "bullet":
                acted = ctx.bullet(ctx.u_gen(lab), fmonos)
            else:  # diagonal
                acted = _diag_gen_act(ctx, lab, fmonos)
            for fw, c2 in acted.terms.items():
                out = out + Tensor({(("E", skey, nw),) + fw: coeff * sign * c2})
    return Cochain(ctx, cid, c.p + 1, c.q, out)


def _diag_gen_act(ctx, lab, fmonos):
    out = Tensor.zero()
    for j in range(len(fmonos)):
        acted = ctx.act_gen(lab, MPoly({fmonos[j]: Fraction(1)}))
        for m, c in acted.terms.items():
            nw = tuple(f_atom(fm) if t != j else f_atom(m)
                       for t, fm in enumerate(fmonos))
            out = out + Tensor({nw: c})
    return out


# -- coinvariant complex operators (displays after (1.50)) -------------------


def coinv_b(ctx, c: Cochain) -> Cochain:
    cid = c.complex_id
    q = c.q
    out = Tensor.zero()
    for w, coeff in c.data.terms.items():
        for i in range(q + 2):
            nw = w[:1 + i] + (F_ONE,) + w[1 + i:]
            out = out + Tensor({nw: coeff * Fraction(-1) ** i})
    return Cochain(ctx, cid, c.p, q + 1, out)


def coinv_tau(ctx, c: Cochain) -> Cochain:
    q = c.q
    perm = [0] + list(range(2, q + 2)) + [1]
    return Cochain(ctx, c.complex_id, c.p, q, c.data.permute(perm))


def coinv_sigma(ctx, c: Cochain) -> Cochain:
    q = c.q
    out = Tensor.zero()
    for w, coeff in c.data.terms.items():
        merged = f_atom(_mono_mul(w[q][1], w[q + 1][1]))
        out = out + Tensor({w[:q] + (merged,): coeff})
    return Cochain(ctx, c.complex_id, c.p, q - 1, out)


def coinv_B(ctx, c: Cochain) -> Cochain:
    q = c.q
    if q == 0:
        return Cochain(ctx, c.complex_id, c.p, 0, Tensor.zero())
    t = coinv_tau(ctx, c)
    st = coinv_sigma(ctx, t)
    out = None
    cur = st
    for i in range(q):
        term = cur.scale(Fraction(-1) ** ((q - 1) * i))
        out = term if out is None else out + term
        if i < q - 1:
            cur = coinv_tau(ctx, cur)
    return out


def coinv_lie(ctx, c: Cochain) -> Cochain:
    """partial_g^coinv: diagonal action version of the CE coboundary."""
    return lie_coboundary_gs(ctx, c, action="diag")


def cw_b(ctx, c: Cochain) -> Cochain:
    """(1.62): alpha ox 1 ^ f^0 ^ ... ^ f^q."""
    out = Tensor.zero()
    for w, coeff in c.data.terms.items():
        nw = w[:1] + (F_ONE,) + w[1:]
        out = out + Tensor({nw: coeff})
    out = _antisymmetrize_f(out, 1)
    return Cochain(ctx, c.complex_id, c.p, c.q + 1, out)


def cw_lie(ctx, c: Cochain) -> Cochain:
    """(1.64)."""
    return lie_coboundary_gs(ctx, c, action="diag")


def _antisymmetrize_f(t: Tensor, off) -> Tensor:
    """Project F-legs (from position off on) onto their antisymmetrization."""
    out = Tensor.zero()
    for w, coeff in t.terms.items():
        legs = w[off:]
        r = len(legs)
        norm = Fraction(coeff, 1)
        for perm in permutations(range(r)):
            sign = _perm_sign(perm)
            nw = w[:off] + tuple(legs[i] for i in perm)
            out = out + Tensor({nw: norm * sign / _fact(r)})
    return out


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
# Koszul complex (1.39)-(1.43)
# ---------------------------------------------------------------------------


def koszul_partial(ctx, c: Cochain) -> Cochain:
    """partial_K ox id_F: d(omega) ox u - sum theta^a ^ omega ox X_a u."""
    cid = c.complex_id
    skey = E_SPACE[cid]
    space = ctx.spaces[skey]
    out = Tensor.zero()
    for w, coeff in c.data.terms.items():
        word = w[0][2]
        for nw, cc in _ce_d_word(ctx, skey, word).items():
            out = out + Tensor({(("E", skey, nw),) + w[1:]: coeff * cc})
        for a_local in range(space.dim):
            lab = space.labels[a_local]
            nw, sign = merge_sign((a_local,), word)
            if nw is None:
                continue
            prod = ctx.u_mul(ctx.u_gen(lab), {w[1][1]: Fraction(1)})
            for mono, c2 in prod.items():
                out = out + Tensor(
                    {(("E", skey, nw), u_atom(mono)) + w[2:]: coeff * sign * c2})
    return Cochain(ctx, cid, c.p + 1, c.q, out)


def koszul_coaction(ctx, el: Tensor) -> Tensor:
    """(1.41) on words (E(g*), U): returns words (F, E, U)."""
    out = Tensor.zero()
    for w, coeff in el.terms.items():
        eword, uexp = w[0][2], w[1][1]
        eco = ctx.coaction_space_word("g*", eword)
        for (ea, wfa), c0 in eco.terms.items():
            for uw, c2 in ctx.coaction_iter(uexp, 1).terms.items():
                ua, ufa = uw[0], uw[1]
                for w2, c3 in ctx.u_coproduct(ua[1], 2).terms.items():
                    u1, u2 = w2[0][1], w2[1][1]
                    sf = ctx.f_antipode(MPoly({_mono_mul(ufa[1], wfa[1]): Fraction(1)}))
                    su2 = ctx.u_antipode(u2)
                    hval = MPoly.zero()
                    for m2, c4 in su2.items():
                        hval = hval + ctx.u_act({m2: Fraction(1)}, sf) * c4
                    for m, c5 in hval.terms.items():
                        nw = (f_atom(m), ea, u_atom(u1))
                        out = out + Tensor({nw: coeff * c0 * c2 * c3 * c5})
    return out


def k_b(ctx, c: Cochain) -> Cochain:
    """Hochschild b with V(g*)-coefficients via the Koszul coaction."""
    q = c.q
    out = Tensor.zero()
    for w, coeff in c.data.terms.items():
        out = out + Tensor({w[:2] + (F_ONE,) + w[2:]: coeff})
        for i in range(1, q + 1):
            piece = Tensor({w: coeff}).map_leg(2 + i - 1, _fcop_atom_fn(ctx))
            out = out + piece.scale(Fraction(-1) ** i)
        co = koszul_coaction(ctx, Tensor({w[:2]: Fraction(1)}))
        for (ha, ea, ua), c2 in co.terms.items():
            nw = (ea, ua) + w[2:] + (ha,)
            out = out + Tensor({nw: coeff * c2 * Fraction(-1) ** (q + 1)})
    return Cochain(ctx, c.complex_id, c.p, q + 1, out)


def k_tau(ctx, c: Cochain) -> Cochain:
    q = c.q
    out = Tensor.zero()
    for w, coeff in c.data.terms.items():
        f1 = MPoly({w[2][1]: Fraction(1)})
        rest = [a[1] for a in w[3:]]
        co = koszul_coaction(ctx, Tensor({w[:2]: Fraction(1)}))
        for (ha, ea, ua), c2 in co.terms.items():
            monos = tuple(rest) + (ha[1],)
            fact = _diag_f_mult(ctx, ctx.f_antipode(f1), monos)
            for fw, c3 in fact.terms.items():
                out = out + Tensor({(ea, ua) + fw: coeff * c2 * c3})
    return Cochain(ctx, c.complex_id, c.p, q, out)


def k_sigma(ctx, c: Cochain) -> Cochain:
    out = c.data.map_leg(2 + c.q - 1, lambda a: Tensor.scalar(
        MPoly({a[1]: Fraction(1)}).constant_term()))
    return Cochain(ctx, c.complex_id, c.p, c.q - 1, out)


def k_B(ctx, c: Cochain) -> Cochain:
    q = c.q
    if q == 0:
        return Cochain(ctx, c.complex_id, c.p, 0, Tensor.zero())
    t = k_tau(ctx, c)
    st = k_sigma(ctx, t)
    out = None
    cur = st
    for i in range(q):
        term = cur.scale(Fraction(-1) ** ((q - 1) * i))
        out = term if out is None else out + term
        if i < q - 1:
            cur = k_tau(ctx, cur)
    return out


def kappa(ctx, c: Cochain) -> Cochain:
    """Theorem 1.14: omega ox u ox_U f~ -> omega ox u bullet f~."""
    cid = "gsF" if c.complex_id == "K" else "gsF_rel"
    out = Tensor.zero()
    for w, coeff in c.data.terms.items():
        fmonos = tuple(a[1] for a in w[2:])
        acted = ctx.bullet({w[1][1]: Fraction(1)}, fmonos)
        for fw, c2 in acted.terms.items():
            out = out + Tensor({w[:1] + fw: coeff * c2})
    return Cochain(ctx, cid, c.p, c.q, out)


def kappa_inv(ctx, c: Cochain) -> Cochain:
    cid = "K" if c.complex_id == "gsF" else "K_rel"
    out = Tensor.zero()
    for w, coeff in c.data.terms.items():
        out = out + Tensor({w[:1] + (u_atom((0,) * ctx.m),) + w[1:]: coeff})
    return Cochain(ctx, cid, c.p, c.q, out)


# ---------------------------------------------------------------------------
# normalization helper
# ---------------------------------------------------------------------------


def normalize_f_legs(ctx, c: Cochain) -> Cochain:
    """Project every F-leg to the augmentation ideal (degeneracy-killed)."""
    off = 1 if c.complex_id in E_SPACE else (c.p + 1 if c.complex_id == "UF1" else c.p)
    data = c.data
    nf = len_word(c) - off if not c.data.is_zero() else 0
    for i in range(nf):
        data = data.map_leg(off + i, _reduce_f)
    return c.replace(data)


def _reduce_f(atom):
    if atom[0] != "F":
        return Tensor.word(atom)
    p = MPoly({atom[1]: Fraction(1)})
    eps = p.constant_term()
    out = Tensor.word(atom)
    if eps:
        out = out + Tensor.word(F_ONE, coeff=-eps)
    return out


OPERATOR_TABLE = [
    ("uf1_dh", "(1.9) horizontal cofaces of the first bicocyclic module"),
    ("uf1_sh", "(1.9) horizontal codegeneracies"),
    ("uf1_th", "(1.9) horizontal cyclic operator"),
    ("uf1_dv", "(1.10) vertical cofaces"),
    ("uf1_sv", "(1.10) vertical codegeneracies"),
    ("uf1_tv", "(1.10) vertical cyclic operator"),
    ("uf_dh", "(1.13) horizontal cofaces of the second bicocyclic module"),
    ("uf_sh", "(1.13) horizontal codegeneracies"),
    ("uf_th", "(1.13) horizontal cyclic operator"),
    ("uf_dv", "(1.14) vertical cofaces"),
    ("uf_sv", "(1.14) vertical codegeneracies"),
    ("uf_tv", "(1.14) vertical cyclic operator"),
    ("uf_bh/uf_bv/uf_Bh/uf_Bv", "(1.17)/(1.18) total (b, B) components"),
    ("lie_boundary_g", "display below (1.21): twisted Lie homology boundary"),
    ("hoch_b[gF]", "(1.24) Hochschild coboundary with wedge(g) coefficients"),
    ("hoch_B/hoch_tau/hoch_sigma", "(1.25) B-operator and its factors"),
    ("lie_coboundary_gs", "(1.37)/(1.38) Lie cohomology coboundary"),
    ("hoch_b[gsF]", "(1.37) Hochschild coboundary with wedge(g*) coefficients"),
    ("koszul_partial", "(1.39)/(1.40) Koszul coboundary"),
    ("koszul_coaction", "(1.41) coaction on the Koszul coefficients"),
    ("k_b/k_tau/k_sigma/k_B", "(1.43) and Prop 1.13: cyclic structure over tensor_U"),
    ("kappa/kappa_inv", "Theorem 1.14"),
    ("coinv_b", "display after (1.50): homogeneous Hochschild coboundary"),
    ("coinv_tau", "display after (1.50): tau_coinv"),
    ("coinv_sigma", "display after (1.50): sigma_coinv"),
    ("coinv_B", "display after (1.50): B_coinv"),
    ("coinv_lie", "display after (1.50): partial_g^coinv"),
    ("cw_b", "(1.62)"),
    ("cw_lie", "(1.63)/(1.64)"),
    ("relative variants", "(4.6)/(4.12)/(4.16)/(4.19)/(4.21) via *_rel complex ids"),
]
