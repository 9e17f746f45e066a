"""Polynomial group cochains on the jet group, as evaluators.

A GroupCochain of bidegree (p, q) takes q+1 jets and returns a wedge over
g* (or q*).  The operators (1.54)-(1.57) act by argument manipulation; the
g-action (1.57) is computed with dual-number flows, so evaluation also
works on jets with symbolic coefficients.
"""

from __future__ import annotations

from fractions import Fraction

from .exterior import ExtElement, merge_sign
from .jets import EPS, Jet, act_G_on_N, jet_compose
from .poly import CASError, MPoly


class GroupCochain:
    __slots__ = ("ctx", "p", "q", "fn", "space")

    def __init__(self, ctx, p, q, fn, space=None):
        self.ctx = ctx
        self.p = p
        self.q = q
        self.fn = fn
        self.space = space or ctx.lie.gstar_space

    def __call__(self, jets):
        return self.fn(list(jets))

    def b_pol(self) -> "GroupCochain":
        """(1.54): homogeneous group coboundary."""
        def fn(jets):
            out = ExtElement.zero(self.space)
            for i in range(len(jets)):
                rest = jets[:i] + jets[i + 1:]
                out = out + self.fn(rest).scale(Fraction(-1) ** i)
            return out
        return GroupCochain(self.ctx, self.p, self.q + 1, fn, self.space)

    def tau_pol(self) -> "GroupCochain":
        """Cyclic rotation paired with tau_coinv: (tau c)(psi_0,...,psi_q) =
        c(psi_q, psi_0, ..., psi_{q-1}), so that J tau_coinv = tau_pol J."""
        def fn(jets):
            return self.fn(jets[-1:] + jets[:-1])
        return GroupCochain(self.ctx, self.p, self.q, fn, self.space)

    def sigma_pol(self) -> "GroupCochain":
        """(1.55): repeat the last argument."""
        def fn(jets):
            return self.fn(jets + jets[-1:])
        return GroupCochain(self.ctx, self.p, self.q - 1, fn, self.space)

    def B_pol(self) -> "GroupCochain":
        q = self.q
        if q == 0:
            return GroupCochain(self.ctx, self.p, 0,
                                lambda jets: ExtElement.zero(self.space), self.space)
        t = self.tau_pol()
        st = t.sigma_pol()
        pieces = []
        cur = st
        for i in range(q):
            pieces.append((Fraction(-1) ** ((q - 1) * i), cur))
            if i < q - 1:
                cur = cur.tau_pol()

        def fn(jets):
            out = ExtElement.zero(self.space)
            for sgn, gc in pieces:
                out = out + gc.fn(jets).scale(sgn)
            return out
        return GroupCochain(self.ctx, self.p, q - 1, fn, self.space)

    def x_action(self, lab) -> "GroupCochain":
        """(1.57): sum over slots of d/dt at 0 along psi_i <| exp(t X)."""
        ctx = self.ctx

        def fn(jets):
            n, k = ctx.n, jets[0].k
            if lab[0] == "T":
                vec = [MPoly.var(EPS) if t == lab[1] - 1 else MPoly.const(0)
                       for t in range(n)]
                phi = Jet.translation(n, k, vec)
            else:
                _, ii, jj = lab
                mat = [[MPoly.const(Fraction(r == c)) for c in range(n)]
                       for r in range(n)]
                mat[ii - 1][jj - 1] = mat[ii - 1][jj - 1] + MPoly.var(EPS)
                phi = Jet.affine(n, k, mat)
            out = ExtElement.zero(self.space)
            for i in range(len(jets)):
                moved = jets[:i] + [act_G_on_N(jets[i], phi)[0]] + jets[i + 1:]
                val = self.fn(moved)
                out = out + val.coeff_map(_eps_part)
            return out
        return GroupCochain(self.ctx, self.p, self.q, fn, self.space)

    def partial_pol(self) -> "GroupCochain":
        """(1.56) with the engine's consistent sign: d(value) + sum theta^a ^ X_a(c)."""
        ctx = self.ctx
        space = self.space
        acted = [(a_local, self.x_action(space.labels[a_local]))
                 for a_local in range(space.dim)]

        def fn(jets):
            base = self.fn(jets)
            out = _ce_d_ext(ctx, space, base)
            for a_local, gc in acted:
                val = gc.fn(jets)
                for w, c in val.terms.items():
                    nw, sign = merge_sign((a_local,), w)
                    if nw is None:
                        continue
                    out = out + ExtElement(space, {nw: _scale_coeff(c, sign)})
            return out
        return GroupCochain(self.ctx, self.p + 1, self.q, fn, self.space)

    def covariance_defect(self, jets, psi) -> ExtElement:
        """(1.53): c(psi_0 psi, ..) - psi^{-1} |> c(psi_0, ..); zero iff covariant."""
        ctx = self.ctx
        translated = [jet_compose(j, psi) for j in jets]
        lhs = self.fn(translated)
        rhs = act_on_gstar(ctx, psi, self.fn(jets), inverse=True)
        return lhs - rhs


def _eps_part(c):
    if isinstance(c, MPoly):
        out = {}
        for m, cc in c.terms.items():
            d = dict(m)
            if EPS in d:
                out[tuple((v, e) for v, e in m if v != EPS)] = cc
        return MPoly(out)
    return MPoly.zero()


def _scale_coeff(c, sign):
    return c * sign


def _ce_d_ext(ctx, space, el: ExtElement) -> ExtElement:
    """CE differential with the Maurer-Cartan convention, coefficientwise."""
    from .cochain import _ce_d_word
    skey = "g*" if space == ctx.spaces["g*"] else "q*"
    out = ExtElement.zero(space)
    for w, c in el.terms.items():
        for nw, cc in _ce_d_word(ctx, skey, w).items():
            out = out + ExtElement(space, {nw: c * cc})
    return out


def act_on_gstar(ctx, psi: Jet, el: ExtElement, inverse=False) -> ExtElement:
    """Remark 1.8 action psi |> omega = omega_<1>(psi) omega_<0> on wedges."""
    space = el.space
    skey = "g*" if space == ctx.spaces["g*"] else "q*"
    arg = psi
    if inverse:
        from .jets import jet_invert
        arg = jet_invert(psi)
    out = ExtElement.zero(space)
    for w, c in el.terms.items():
        co = ctx.coaction_space_word(skey, w)
        for (ea, fa), cc in co.terms.items():
            val = ctx.f_eval(MPoly({fa[1]: Fraction(1)}), arg)
            out = out + ExtElement(space, {ea[2]: MPoly.promote(c) * val * cc})
    return out
