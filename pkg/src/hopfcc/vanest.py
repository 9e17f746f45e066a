"""The Gelfand-Fuks to group-cohomology chain map: invariant forms on jet
groups, exact simplex integration, and the auxiliary homotopy operators.

A GF cochain lives in the wedge over the formal vector field basis
x^alpha d/dx_i (order 0 and 1 spanning the affine part, order >= 2 the jet
part).  The engine materializes mu(omega) of the pushforward construction
as an exact polynomial differential form on the order-(d+1) jet-coordinate
space, where d is the highest jet order omega depends on.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

from .exterior import ExtElement, merge_sign
from .forms import FormSpace, PolyForm
from .groupcochain import GroupCochain
from .hopf import HopfContext
from .jets import (EPS, Jet, act_G_on_N, coeff_var, jet_compose, jet_invert,
                   multi_indices, x_vars)
from .lie import a_star_space, evaluate_wedge
from .poly import CASError, MPoly
from .simplex import Simplex, simplex_integrate


def gf_depth(omega: ExtElement) -> int:
    """Highest jet order among the n*-legs (1 if none)."""
    d = 1
    for w in omega.terms:
        for i in w:
            d = max(d, sum(omega.space.labels[i][1]))
    return d


def gf_space(n, depth):
    return a_star_space(n, depth)


def natural_split(ctx: HopfContext, omega: ExtElement):
    """Lemma 2.7 h-map, with the bidegree normalization of Corollary 2.9.

    Returns a list of (g*-ExtElement word data, n*-word, coefficient); the
    n-side picks up (-1)^p from the inversion differential, so that
    natural_split equals mu(omega) restricted to the identity jet.
    """
    n = ctx.n
    out = []
    for w, c in omega.terms.items():
        labs = [omega.space.labels[i] for i in w]
        g_part = [lab for lab in labs if sum(lab[1]) <= 1]
        n_part = [lab for lab in labs if sum(lab[1]) >= 2]
        # the word is sorted with all g-labels first (graded label order)
        if labs != g_part + n_part:
            raise CASError("unsorted split word")
        glabs = []
        for (i, alpha) in g_part:
            if sum(alpha) == 0:
                glabs.append(("T", i))
            else:
                j = alpha.index(1) + 1
                glabs.append(("L", i, j))
        gword = tuple(ctx.lie.gstar_space.index[lab] for lab in glabs)
        sign = Fraction(-1) ** len(n_part)
        out.append((gword, tuple(n_part), c * sign))
    return out


def split_to_gf(ctx, pieces, depth):
    """Inverse of natural_split."""
    space = gf_space(ctx.n, depth)
    out = ExtElement.zero(space)
    for gword, nlabs, c in pieces:
        labs = []
        for i in gword:
            lab = ctx.lie.gstar_space.labels[i]
            if lab[0] == "T":
                labs.append((lab[1], (0,) * ctx.n))
            else:
                _, a, b = lab
                labs.append((a, tuple(1 if t == b - 1 else 0 for t in range(ctx.n))))
        labs += list(nlabs)
        word = tuple(space.index[lab] for lab in labs)
        sign = Fraction(-1) ** len(nlabs)
        out = out + ExtElement(space, {word: c * sign})
    return out


class InvariantForm:
    """mu(omega): a g*-valued polynomial form on the jet coordinate space."""

    __slots__ = ("ctx", "order", "parts", "space")

    def __init__(self, ctx, order, parts, space):
        self.ctx = ctx
        self.order = order      # jet coordinates up to this order appear
        self.parts = parts      # {g*-word: PolyForm over the a-coordinates}
        self.space = space      # the coordinate FormSpace

    def add_part(self, gword, form):
        if gword in self.parts:
            self.parts[gword] = self.parts[gword] + form
        else:
            self.parts[gword] = form

    def at_identity(self):
        """Restriction at e: {(g*-word, n*-label word): Fraction}."""
        ctx = self.ctx
        out = {}
        for gword, form in self.parts.items():
            for w, c in form.terms.items():
                const = MPoly({m: cc for m, cc in c.terms.items() if not m})
                if const.is_zero():
                    continue
                labs = tuple(_name_label(self.space.variables[i], ctx.n) for i in w)
                out[(gword, labs)] = out.get((gword, labs), Fraction(0)) \
                    + const.constant_term()
        return {k: v for k, v in out.items() if v}


def _name_label(name, n):
    body = name[1:]
    i_str, alpha_str = body.split("x")
    return (int(i_str), tuple(int(ch) for ch in alpha_str))


def a_coordinate_space(n, order):
    names = [coeff_var("a", i, alpha)
             for alpha in multi_indices(n, 2, order)
             for i in range(1, n + 1)]
    names.sort(key=lambda s: (sum(_name_label(s, n)[1]), _name_label(s, n)[1],
                              _name_label(s, n)[0]))
    return FormSpace(tuple(names))


def _jet_to_vector(jet_eps: Jet):
    """eps-part of a jet curve as an {(i, alpha): MPoly} tangent vector."""
    out = {}
    xs = x_vars(jet_eps.n)
    for i in range(1, jet_eps.n + 1):
        comp = jet_eps.components[i - 1]
        for m, c in comp.terms.items():
            d = dict(m)
            if d.get(EPS, 0) != 1:
                continue
            alpha = tuple(d.get(v, 0) for v in xs)
            rest = tuple((v, e) for v, e in m if v != EPS and v not in xs)
            key = (i, alpha)
            out[key] = out.get(key, MPoly.zero()) + MPoly({rest: c})
    return out


class VanEst:
    """mu / E / D machinery for a fixed HopfContext."""

    def __init__(self, ctx: HopfContext):
        self.ctx = ctx
        self._tangent_cache = {}

    # -- tangent data at the generic jet --------------------------------

    def _tangents(self, order):
        """Generic-jet tangent vectors: per a-coordinate and per g-basis label.

        First-order perturbation collapses the nu-pushforwards to closed
        forms: the da-columns are L_psi iota_* (d/d a^j_beta) =
        -x^beta(psi^{-1}(x)) e_j, and the g-slot vectors
        L_psi(-iota_* X~ + iota_* X^<|) reduce to the dressed affine field
        (the two jet-order tails cancel): X_k + sum eta^i_{jk}(psi) Y^i_j.
        """
        if order in self._tangent_cache:
            return self._tangent_cache[order]
        ctx = self.ctx
        n = ctx.n
        psi = Jet.generic_n_jet(n, order)
        psi_inv = jet_invert(psi)
        xs = x_vars(n)
        zero = (0,) * n
        cols = {}
        for alpha in multi_indices(n, 2, order):
            mono = MPoly.const(1)
            for xv, e in zip(xs, alpha):
                mono = mono * MPoly.var(xv, e)
            sub = {xs[t]: psi_inv.components[t] for t in range(n)}
            comp = _trunc_x(mono.substitute(sub), xs, order)
            vec_template = {}
            for m, c in comp.terms.items():
                a = tuple(dict(m).get(v, 0) for v in xs)
                rest = tuple((v, e) for v, e in m if v not in xs)
                vec_template[a] = vec_template.get(a, MPoly.zero()) + MPoly({rest: -c})
            for i in range(1, n + 1):
                cols[(i, alpha)] = {(i, a): val for a, val in vec_template.items()
                                    if not val.is_zero()}
        gvecs = {}
        for lab in ctx.lie.labels:
            if lab[0] == "T":
                k = lab[1]
                vec = {(k, zero): MPoly.const(1)}
                for i in range(1, n + 1):
                    for j in range(1, n + 1):
                        alpha = tuple((j - 1 == t) + (k - 1 == t) for t in range(n))
                        mult = 2 if j == k else 1
                        c = psi.coefficient(i, alpha) * mult
                        if not c.is_zero():
                            e_j = tuple(1 if t == j - 1 else 0 for t in range(n))
                            vec[(i, e_j)] = vec.get((i, e_j), MPoly.zero()) + c
                gvecs[lab] = vec
            else:
                _, ii, jj = lab
                e_j = tuple(1 if t == jj - 1 else 0 for t in range(n))
                gvecs[lab] = {(ii, e_j): MPoly.const(1)}
        data = (cols, gvecs)
        self._tangent_cache[order] = data
        return data

    # -- mu(omega) -------------------------------------------------------

    def mu(self, omega: ExtElement) -> InvariantForm:
        """(2.27): the invariant g*-valued form on the jet coordinates."""
        ctx = self.ctx
        n = ctx.n
        d = gf_depth(omega)
        order = d + 1
        cols, gvecs = self._tangents(order)
        space = a_coordinate_space(n, order)
        col_names = [(_name_label(v, n), v) for v in space.variables]
        out = InvariantForm(ctx, order, {}, space)
        gstar = ctx.lie.gstar_space
        for w, coeff in omega.terms.items():
            r = len(w)
            for q in range(0, min(r, gstar.dim) + 1):
                p = r - q
                if p < 0:
                    continue
                for gword in combinations(range(gstar.dim), q):
                    gvs = [gvecs[gstar.labels[i]] for i in gword]
                    for swords in combinations(range(len(col_names)), p):
                        vs = gvs + [cols[col_names[s][0]] for s in swords]
                        val = evaluate_wedge(
                            ExtElement(omega.space, {w: coeff}), vs)
                        if val.is_zero():
                            continue
                        form = PolyForm(space, {tuple(swords): val})
                        out.add_part(gword, form)
        return out

    def mu_e(self, omega: ExtElement):
        return self.mu(omega).at_identity()

    # -- the chain map E ---------------------------------------------------

    def simplex_vertices(self, jets, order):
        verts = []
        for j in jets:
            if j.k < order:
                raise CASError("jet order too low for this form")
            v = {}
            for i in range(1, self.ctx.n + 1):
                for alpha in multi_indices(self.ctx.n, 2, order):
                    c = j.coefficient(i, alpha)
                    if not c.is_zero():
                        v[coeff_var("a", i, alpha)] = c if not c.is_constant() \
                            else c.constant_term()
            verts.append(v)
        return verts

    def E(self, omega: ExtElement, jets) -> ExtElement:
        """(2.28): integrate mu(omega) over the affine simplex of the jets."""
        iv = self.mu(omega)
        p = len(jets) - 1
        verts = self.simplex_vertices(jets, iv.order)
        simplex = Simplex(verts)
        out = ExtElement.zero(self.ctx.lie.gstar_space)
        for gword, form in iv.parts.items():
            part = form.homogeneous_part(p)
            if part.is_zero():
                continue
            val = simplex_integrate(part, simplex)
            if isinstance(val, Fraction):
                if val:
                    out = out + ExtElement(self.ctx.lie.gstar_space,
                                           {gword: val})
            elif not val.is_zero():
                out = out + ExtElement(self.ctx.lie.gstar_space, {gword: val})
        return out

    def E_cochain(self, omega: ExtElement, p: int) -> GroupCochain:
        def fn(jets):
            if len(jets) != p + 1:
                raise CASError("argument count mismatch")
            return self.E(omega, jets)
        q = None
        return GroupCochain(self.ctx, p, p, fn)

    def D(self, omega: ExtElement, jets, phi: Jet) -> ExtElement:
        """(2.26): the value at a G-point phi, via the <|-translated simplex."""
        moved = [act_G_on_N(j, phi)[0] for j in jets]
        return self.E(omega, moved)

    def E_inhomog(self, omega: ExtElement, jets) -> ExtElement:
        """(2.43): E(omega)(1, psi_1, psi_1 psi_2, ..., psi_1...psi_p)."""
        n, k = self.ctx.n, jets[0].k if jets else self.ctx.k
        args = [Jet.identity(n, k)]
        acc = None
        for j in jets:
            acc = j if acc is None else jet_compose(acc, j)
            args.append(acc)
        return self.E(omega, args)

    def right_translation_pullback(self, iv: InvariantForm, psi: Jet) -> InvariantForm:
        """R_psi^* of mu(omega) as a coordinate-space form pullback."""
        ctx = self.ctx
        n = ctx.n
        generic = Jet.generic_n_jet(n, iv.order)
        comp = jet_compose(generic, psi)
        mapping = {}
        for i in range(1, n + 1):
            for alpha in multi_indices(n, 2, iv.order):
                mapping[coeff_var("a", i, alpha)] = comp.coefficient(i, alpha)
        from .forms import pullback
        parts = {}
        for gword, form in iv.parts.items():
            parts[gword] = pullback(form, iv.space, mapping)
        return InvariantForm(ctx, iv.order, parts, iv.space)

    def act_psi_on_values(self, iv: InvariantForm, psi: Jet) -> InvariantForm:
        """psi^{-1} |> on the g*-legs (Remark 1.8 action)."""
        ctx = self.ctx
        inv = jet_invert(psi)
        parts = {}
        for gword, form in iv.parts.items():
            co = ctx.coaction_space_word("g*", gword)
            for (ea, fa), c in co.terms.items():
                val = ctx.f_eval(MPoly({fa[1]: Fraction(1)}), inv)
                scaled = form.scale(val * c)
                key = ea[2]
                parts[key] = parts.get(key, PolyForm.zero(iv.space)) + scaled
        return InvariantForm(ctx, iv.order, parts, iv.space)


# ---------------------------------------------------------------------------
# homotopy operators of Proposition 2.10
# ---------------------------------------------------------------------------


def radial_contraction(form: PolyForm) -> PolyForm:
    """chi o iota_Xi: exact radial homotopy on polynomial forms.

    For a term c a^beta da^gamma: contract with Xi = sum a d/da, then divide
    by the homogeneity weight |beta| + 1 of the contracted coefficient.
    """
    space = form.space
    out = PolyForm.zero(space)
    for w, c in form.terms.items():
        for mono, coeff in c.terms.items():
            weight = sum(e for _, e in mono) + 1
            piece = PolyForm(space, {w: MPoly({mono: coeff})})
            vec = {v: MPoly.var(v) for v in space.variables}
            contracted = piece.contract(vec)
            out = out + contracted.scale(Fraction(1, weight))
    return out


class InhomCochain:
    """Inhomogeneous polynomial group cochain valued in form-valued data.

    fn(psis) returns an InvariantForm; the star-action (2.33) and the
    horizontal operators (2.34)/(2.41) act by argument manipulation.
    """

    __slots__ = ("ve", "p", "fn")

    def __init__(self, ve: VanEst, p, fn):
        self.ve = ve
        self.p = p
        self.fn = fn

    def __call__(self, psis):
        return self.fn(list(psis))

    def star(self, psi):
        """(2.33): psi * alpha = psi |> R_psi^* alpha, on the value."""
        def wrap(iv):
            moved = self.ve.right_translation_pullback(iv, psi)
            return self.ve.act_psi_on_values(moved, psi)
        return wrap

    def d_h(self) -> "InhomCochain":
        ve = self.ve

        def fn(psis):
            first = self.fn(psis[1:])
            out = self.star(psis[0])(first)
            parts = dict(out.parts)
            for i in range(1, len(psis)):
                merged = psis[:i - 1] + [jet_compose(psis[i - 1], psis[i])] + psis[i + 1:]
                val = self.fn(merged)
                sgn = Fraction(-1) ** i
                for gw, f in val.parts.items():
                    parts[gw] = parts.get(gw, PolyForm.zero(val.space)) + f.scale(sgn)
            last = self.fn(psis[:-1])
            sgn = Fraction(-1) ** len(psis)
            for gw, f in last.parts.items():
                parts[gw] = parts.get(gw, PolyForm.zero(last.space)) + f.scale(sgn)
            return InvariantForm(ve.ctx, out.order, parts, out.space)
        return InhomCochain(ve, self.p + 1, fn)

    def kappa_v(self) -> "InhomCochain":
        """chi o iota_Xi on the value forms (column homotopy of Prop 2.10)."""
        ve = self.ve

        def fn(psis):
            iv = self.fn(psis)
            parts = {gw: radial_contraction(f) for gw, f in iv.parts.items()}
            return InvariantForm(ve.ctx, iv.order, parts, iv.space)
        return InhomCochain(ve, self.p, fn)


class HatCochain:
    """Group cochain valued in functions on the jet group (the hat picture).

    fn(psis, rho) returns the value of the coefficient function at rho; the
    N-action is right translation of rho (2.40), so the horizontal homotopy
    (2.41) and coboundary (2.34) are pure argument manipulations.
    """

    __slots__ = ("p", "fn")

    def __init__(self, p, fn):
        self.p = p
        self.fn = fn

    def __call__(self, psis, rho):
        return self.fn(list(psis), rho)

    def d_h(self) -> "HatCochain":
        def fn(psis, rho):
            out = self.fn(psis[1:], jet_compose(rho, psis[0]))
            for i in range(1, len(psis)):
                merged = psis[:i - 1] + [jet_compose(psis[i - 1], psis[i])] + psis[i + 1:]
                out = out + self.fn(merged, rho) * (Fraction(-1) ** i)
            out = out + self.fn(psis[:-1], rho) * (Fraction(-1) ** len(psis))
            return out
        return HatCochain(self.p + 1, fn)

    def kappa_h(self) -> "HatCochain":
        """(2.41): (kappa omega)(psi_1..psi_p)(rho) = omega(rho, psi_1...)(e)."""
        def fn(psis, rho):
            e = Jet.identity(rho.n, rho.k)
            return self.fn([rho] + psis, e)
        return HatCochain(self.p - 1, fn)


def right_invariant_extension(ve: VanEst, pieces, order) -> InvariantForm:
    """The star-invariant extension of a Lie-algebra cochain (Prop 2.10).

    `pieces`: {(g*-word, n-label word): Fraction} at the identity; the
    extension transports the n-part by right-invariance and the g*-legs by
    the generic inverse jet action, so that psi * beta~ = beta~.
    """
    ctx = ve.ctx
    n = ctx.n
    space = a_coordinate_space(n, order)
    col_names = [(_name_label(v, n), v) for v in space.variables]
    rho = Jet.generic_n_jet(n, order)
    rho_inv = jet_invert(rho)
    xs = x_vars(n)
    cols = {}
    for alpha in multi_indices(n, 2, order):
        for i in range(1, n + 1):
            mono = MPoly.var(EPS)
            for xv, e in zip(xs, alpha):
                mono = mono * MPoly.var(xv, e)
            pert = [rho.components[t] + (mono if t == i - 1 else MPoly.zero())
                    for t in range(n)]
            curve = jet_compose(Jet(n, order, pert), rho_inv)
            cols[(i, alpha)] = _jet_to_vector(curve)
    parts = {}
    gstar = ctx.lie.gstar_space
    for (gword, nlabs), coeff in pieces.items():
        # n-side: beta(R_{rho^{-1}*} columns) da^S
        nspace_labels = list(nlabs)
        p = len(nspace_labels)
        from .lie import a_star_space as asp
        wspace = asp(n, order)
        beta_el = ExtElement.from_word(wspace, nspace_labels, coeff)
        for swords in combinations(range(len(col_names)), p):
            vs = [cols[col_names[s][0]] for s in swords]
            val = evaluate_wedge(beta_el, vs)
            if val.is_zero():
                continue
            form = PolyForm(space, {tuple(swords): val})
            # g*-side: rho^{-1} |> theta-wedge, coefficients at the generic inverse
            co = ctx.coaction_space_word("g*", gword)
            for (ea, fa), c2 in co.terms.items():
                scal = ctx.f_eval(MPoly({fa[1]: Fraction(1)}), rho_inv)
                add = form.scale(scal * c2)
                key = ea[2]
                if key in parts:
                    parts[key] = parts[key] + add
                else:
                    parts[key] = add
    return InvariantForm(ctx, order, parts, space)


def cochain_value_at(iv: InvariantForm, jet: Jet):
    """Evaluate an InvariantForm's function part (0-form data) at a jet."""
    out = {}
    for gword, form in iv.parts.items():
        c = form.terms.get((), MPoly.zero())
        if c.is_zero():
            continue
        sub = {}
        for v in c.variables():
            i, alpha = _name_label(v, iv.ctx.n)
            sub[v] = jet.coefficient(i, alpha)
        val = c.assign(sub) if sub else c
        out[gword] = val
    return out
