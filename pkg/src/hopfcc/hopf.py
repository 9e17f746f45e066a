"""The Hopf algebras F(N_k) and U(g) and their matched pair.

F is the polynomial algebra in the jet coordinates a^i_alpha (2 <= |alpha|
<= k) of the group N_k; its coproduct, antipode and counit come from
symbolic composition/inversion of generic jets.  U(g) is presented in the
PBW basis X_1 < ... < X_n < Y^1_1 < ... < Y^n_n of the vector-field
realization X_k = d_k, Y^i_j = x^j d_i.  The action of U on F is computed
by dual-number flows; the coaction of F on U starts from the closed
formulas on generators and extends through the matched-pair product rule.

All HopfContext methods are pure; memo tables make repeated application
cheap and are safe for concurrent readers.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product as iproduct

from .jets import (EPS, Jet, act_G_on_N, coeff_var, jet_compose, jet_invert,
                   multi_indices, x_vars)
from .lie import lie_data
from .poly import CASError, MPoly, TruncationError
from .tensor import F_ONE, Tensor, f_atom, mpoly_to_tensor, tensor_to_mpoly, u_atom


def _mono_mul(m1, m2):
    if not m1:
        return m2
    if not m2:
        return m1
    d = dict(m1)
    for v, e in m2:
        d[v] = d.get(v, 0) + e
    return tuple(sorted(d.items()))


class HopfContext:
    """All Hopf-algebraic structure for fixed dimension n and jet order k."""

    def __init__(self, n, k=3):
        self.n = n
        self.k = k
        self.lie = lie_data(n)
        self.m = self.lie.dim
        self._avar_info = {}
        for i in range(1, n + 1):
            for alpha in multi_indices(n, 2, k):
                self._avar_info[coeff_var("a", i, alpha)] = (i, alpha)
        self._cop_var = {}
        self._S_var = {}
        self._cop_mono = {}
        self._S_mono = {}
        self._act_var = {}
        self._gen_mul = {}
        self._u_S = {}
        self._coact = {}
        self._coact_iter = {}
        self._generic = {}
        self._generic_inv = {}
        self._coact_g_word = {}
        self._coact_gs_word = {}
        self.spaces = {
            "g": self.lie.g_space,
            "g*": self.lie.gstar_space,
            "q": self.lie.q_space,
            "q*": self.lie.qstar_space,
        }

    # ------------------------------------------------------------------
    # F = F(N_k): commutative Hopf algebra of jet coordinates
    # ------------------------------------------------------------------

    def avar(self, i, alpha):
        name = coeff_var("a", i, tuple(alpha))
        if name not in self._avar_info:
            raise TruncationError(f"jet coordinate {name} beyond engine order {self.k}")
        return name

    def avar_info(self, name):
        return self._avar_info[name]

    def depth_of(self, f: MPoly) -> int:
        d = 1
        for v in f.variables():
            if v in self._avar_info:
                d = max(d, sum(self._avar_info[v][1]))
        return d

    def f_one(self) -> MPoly:
        return MPoly.const(1)

    def f_counit(self, f: MPoly) -> Fraction:
        return f.constant_term()

    def generic_jet(self, order, prefix="a") -> Jet:
        key = (order, prefix)
        if key not in self._generic:
            if order > self.k:
                raise TruncationError(f"generic jet of order {order} beyond engine order {self.k}")
            self._generic[key] = Jet.generic_n_jet(self.n, order, prefix)
        return self._generic[key]

    def _rename_prefix(self, p: MPoly, frm, to) -> MPoly:
        sub = {}
        for v in p.variables():
            if v.startswith(frm):
                i, alpha = _parse_cvar(v, frm)
                sub[v] = MPoly.var(coeff_var(to, i, alpha))
        return p.assign(sub) if sub else p

    def f_coproduct_var(self, name) -> Tensor:
        """Delta of a single jet coordinate, as a Tensor of two F-legs."""
        if name in self._cop_var:
            return self._cop_var[name]
        i, alpha = self._avar_info[name]
        d = sum(alpha)
        left = self.generic_jet(d, "a")
        right = self.generic_jet(d, "b")
        comp = jet_compose(left, right)
        coeff = comp.coefficient(i, alpha)
        out = {}
        for mono, c in coeff.terms.items():
            lpart, rpart = [], []
            for v, e in mono:
                if v.startswith("b"):
                    ii, aa = _parse_cvar(v, "b")
                    rpart.append((coeff_var("a", ii, aa), e))
                else:
                    lpart.append((v, e))
            w = (f_atom(tuple(sorted(lpart))), f_atom(tuple(sorted(rpart))))
            out[w] = out.get(w, Fraction(0)) + c
        t = Tensor(out)
        self._cop_var[name] = t
        return t

    def f_coproduct(self, f: MPoly) -> Tensor:
        out = Tensor.zero()
        for mono, c in f.terms.items():
            out = out + self._f_cop_mono(mono).scale(c)
        return out

    def _f_cop_mono(self, mono) -> Tensor:
        if mono in self._cop_mono:
            return self._cop_mono[mono]
        t = Tensor.word(F_ONE, F_ONE)
        for v, e in mono:
            dv = self.f_coproduct_var(v)
            for _ in range(e):
                t = _ff_mul(t, dv)
        self._cop_mono[mono] = t
        return t

    def f_antipode_var(self, name) -> MPoly:
        if name in self._S_var:
            return self._S_var[name]
        i, alpha = self._avar_info[name]
        d = sum(alpha)
        inv = jet_invert(self.generic_jet(d, "a"))
        out = inv.coefficient(i, alpha)
        self._S_var[name] = out
        return out

    def f_antipode(self, f: MPoly) -> MPoly:
        out = MPoly.zero()
        for mono, c in f.terms.items():
            if mono in self._S_mono:
                term = self._S_mono[mono]
            else:
                term = MPoly.const(1)
                for v, e in mono:
                    term = term * self.f_antipode_var(v) ** e
                self._S_mono[mono] = term
            out = out + term * c
        return out

    def f_eval(self, f: MPoly, jet: Jet):
        """Evaluate an F-element on a jet (coefficients may be symbolic)."""
        if jet.k < self.depth_of(f):
            raise TruncationError("jet order too low for this F-element")
        sub = {}
        for v in f.variables():
            i, alpha = self._avar_info[v]
            sub[v] = jet.coefficient(i, alpha)
        return f.assign(sub) if sub else f

    def eta(self, i, j, kk, ls=()) -> MPoly:
        """Generator eta^i_{j,k|l1...lm} in jet coordinates."""
        alpha = tuple((j - 1 == t) + (kk - 1 == t) for t in range(self.n))
        mult = 2 if j == kk else 1
        out = MPoly.var(self.avar(i, alpha)) * mult
        for l in ls:
            out = self.act_gen(("T", l), out)
        return out

    # -- U-action on F ---------------------------------------------------

    def act_var(self, lab, name) -> MPoly:
        """Action of a Lie-algebra basis element on one jet coordinate."""
        key = (lab, name)
        if key in self._act_var:
            return self._act_var[key]
        i, alpha = self._avar_info[name]
        d = sum(alpha)
        if lab[0] == "T":
            if d + 1 > self.k:
                raise TruncationError(
                    f"action of {lab} on depth-{d} coordinate needs order {d+1} > k={self.k}")
            psi = self.generic_jet(d + 1, "a")
            vec = [MPoly.var(EPS) if t == lab[1] - 1 else MPoly.const(0)
                   for t in range(self.n)]
            phi = Jet.translation(self.n, d + 1, vec)
        else:
            _, ii, jj = lab
            psi = self.generic_jet(d, "a")
            mat = [[MPoly.const(Fraction(r == c)) for c in range(self.n)]
                   for r in range(self.n)]
            mat[ii - 1][jj - 1] = mat[ii - 1][jj - 1] + MPoly.var(EPS)
            phi = Jet.affine(self.n, d, mat)
        tail, _ = act_G_on_N(psi, phi)
        coeff = tail.coefficient(i, alpha)
        deriv = MPoly({m_no_eps(mono): c for mono, c in coeff.terms.items()
                       if any(v == EPS for v, _ in mono)})
        self._act_var[key] = deriv
        return deriv

    def act_gen(self, lab, f: MPoly) -> MPoly:
        """Primitive generators act as derivations."""
        out = MPoly.zero()
        for mono, c in f.terms.items():
            for idx, (v, e) in enumerate(mono):
                if v not in self._avar_info:
                    continue
                rest = mono[:idx] + ((v, e - 1),) if e > 1 else mono[:idx]
                rest = rest + mono[idx + 1:]
                base = MPoly({tuple(sorted(rest)): c * e})
                out = out + base * self.act_var(lab, v)
        return out

    def u_act(self, u, f: MPoly) -> MPoly:
        """Left action of a UPoly {exps: coeff} on an F-element."""
        out = MPoly.zero()
        for exps, c in u.items():
            cur = f
            for g in reversed(_word_of(exps)):
                cur = self.act_gen(self.lie.labels[g], cur)
            out = out + cur * c
        return out

    # ------------------------------------------------------------------
    # U(g): PBW basis and Hopf structure
    # ------------------------------------------------------------------

    def u_unit(self):
        return {(0,) * self.m: Fraction(1)}

    def u_gen(self, lab):
        e = [0] * self.m
        e[self.lie.index[lab]] = 1
        return {tuple(e): Fraction(1)}

    def u_counit(self, u) -> Fraction:
        return u.get((0,) * self.m, Fraction(0))

    def gen_mul(self, g, exps):
        """Normal form of e_g * (PBW monomial exps): {exps: coeff}."""
        key = (g, exps)
        if key in self._gen_mul:
            return self._gen_mul[key]
        first = next((i for i, e in enumerate(exps) if e), None)
        if first is None or g <= first:
            out_exps = list(exps)
            out_exps[g] += 1
            result = {tuple(out_exps): Fraction(1)}
        else:
            h = first
            rest = list(exps)
            rest[h] -= 1
            rest = tuple(rest)
            # g*(h*rest) = h*(g*rest) + [g,h]*rest
            result = {}
            for mono, c in self.gen_mul(g, rest).items():
                for mono2, c2 in self.gen_mul(h, mono).items():
                    result[mono2] = result.get(mono2, Fraction(0)) + c * c2
            for cidx, cc in self.lie.bracket_index(g, h).items():
                for mono, c in self.gen_mul(cidx, rest).items():
                    result[mono] = result.get(mono, Fraction(0)) + c * cc
            result = {m: c for m, c in result.items() if c}
        self._gen_mul[key] = result
        return result

    def mono_mul_u(self, e1, e2):
        out = {e2: Fraction(1)}
        for g in reversed(_word_of(e1)):
            nxt = {}
            for mono, c in out.items():
                for mono2, c2 in self.gen_mul(g, mono).items():
                    nxt[mono2] = nxt.get(mono2, Fraction(0)) + c * c2
            out = {m: c for m, c in nxt.items() if c}
        return out

    def u_mul(self, u, v):
        out = {}
        for e1, c1 in u.items():
            for e2, c2 in v.items():
                for mono, c in self.mono_mul_u(e1, e2).items():
                    s = out.get(mono, Fraction(0)) + c1 * c2 * c
                    if s:
                        out[mono] = s
                    elif mono in out:
                        del out[mono]
        return out

    def u_coproduct(self, exps, parts=2) -> Tensor:
        """Iterated coproduct of a PBW monomial into `parts` U-legs."""
        splits = [()]
        for e in exps:
            new = []
            for pre in splits:
                for comp in _compositions(e, parts):
                    new.append(pre + (comp,))
            splits = new
        out = {}
        for spl in splits:
            coeff = Fraction(1)
            for e, comp in zip(exps, spl):
                coeff *= _multinomial(e, comp)
            word = tuple(u_atom(tuple(comp[p] for comp in spl))
                         for p in range(parts))
            out[word] = out.get(word, Fraction(0)) + coeff
        return Tensor(out)

    def u_antipode(self, exps):
        """S on a PBW monomial: (-1)^deg times the reversed product."""
        if exps in self._u_S:
            return self._u_S[exps]
        word = _word_of(exps)
        out = self.u_unit()
        for g in word:  # multiply gens in reversed order: g_last ... g_first
            out = self.u_mul(self.u_gen(self.lie.labels[g]), out)
        sign = Fraction(-1) ** len(word)
        out = {m: c * sign for m, c in out.items()}
        self._u_S[exps] = out
        return out

    def u_antipode_el(self, u):
        out = {}
        for exps, c in u.items():
            for m, cc in self.u_antipode(exps).items():
                s = out.get(m, Fraction(0)) + c * cc
                if s:
                    out[m] = s
                elif m in out:
                    del out[m]
        return out

    def delta_u(self, u) -> Fraction:
        """Modular character: delta(X) = Tr(ad X), extended multiplicatively."""
        total = Fraction(0)
        for exps, c in u.items():
            val = Fraction(1)
            for g, e in enumerate(exps):
                if e:
                    val *= self.lie.delta[g] ** e
            total += c * val
        return total

    # -- coaction of F on U ------------------------------------------------

    def coaction_gen(self, lab) -> Tensor:
        """coaction(X_k) = X_k ox 1 + sum Y^i_j ox eta^i_{jk}; coaction(Y) = Y ox 1."""
        if lab[0] == "L":
            return Tensor.word(u_atom(tuple(self.u_gen(lab))[0]), F_ONE)
        k = lab[1]
        out = Tensor.word(u_atom(next(iter(self.u_gen(lab)))), F_ONE)
        for i in range(1, self.n + 1):
            for j in range(1, self.n + 1):
                eta = self.eta(i, j, k)
                y_atom = u_atom(next(iter(self.u_gen(("L", i, j)))))
                out = out + mpoly_to_tensor(eta).map_word(
                    lambda w, ya=y_atom: Tensor.word(ya, w[0]))
        return out

    def coaction(self, exps) -> Tensor:
        """Right coaction on a PBW monomial, a Tensor with legs (U, F)."""
        if exps in self._coact:
            return self._coact[exps]
        if not any(exps):
            res = Tensor.word(u_atom(exps), F_ONE)
            self._coact[exps] = res
            return res
        g = next(i for i, e in enumerate(exps) if e)
        rest = list(exps)
        rest[g] -= 1
        rest = tuple(rest)
        vco = self.coaction(rest)
        gco = self.coaction_gen(self.lie.labels[g])
        out = Tensor.zero()
        # coaction(g v) = g<0> v<0> ox g<1> v<1>  +  v<0> ox (g |> v<1>)
        for (ga, gf), c1 in gco.terms.items():
            for (va, vf), c2 in vco.terms.items():
                prod = self.mono_mul_u(ga[1], va[1])
                fm = _mono_mul(gf[1], vf[1])
                for mono, c3 in prod.items():
                    out = out + Tensor.word(u_atom(mono), f_atom(fm),
                                            coeff=c1 * c2 * c3)
        for (va, vf), c2 in vco.terms.items():
            acted = self.act_gen(self.lie.labels[g], MPoly({vf[1]: Fraction(1)}))
            out = out + mpoly_to_tensor(acted).map_word(
                lambda w, va=va: Tensor.word(va, w[0])).scale(c2)
        self._coact[exps] = out
        return out

    def coaction_el(self, u) -> Tensor:
        out = Tensor.zero()
        for exps, c in u.items():
            out = out + self.coaction(exps).scale(c)
        return out

    def coaction_iter(self, exps, r) -> Tensor:
        """r-fold coaction: Tensor with legs (U, F^r); r = 0 gives (U,)."""
        if r == 0:
            return Tensor.word(u_atom(exps))
        key = (exps, r)
        if key in self._coact_iter:
            return self._coact_iter[key]
        prev = self.coaction_iter(exps, r - 1)
        out = Tensor.zero()
        for w, c in prev.terms.items():
            co = self.coaction(w[0][1])
            for (ua, fa), c2 in co.terms.items():
                out = out + Tensor({(ua, fa) + w[1:]: c * c2})
        self._coact_iter[key] = out
        return out

    # -- derived actions -----------------------------------------------------

    def bullet(self, u, fmonos) -> Tensor:
        """The U-action (1-style) on F-tensor words; returns q F-legs."""
        q = len(fmonos)
        if q == 0:
            return Tensor.scalar(self.u_counit(u))
        if q == 1:
            acted = self.u_act(u, MPoly({fmonos[0]: Fraction(1)}))
            return mpoly_to_tensor(acted)
        out = Tensor.zero()
        for exps, c in u.items():
            for w2, c2 in self.u_coproduct(exps, 2).terms.items():
                u1, u2 = w2[0][1], w2[1][1]
                rec = self.bullet({u2: Fraction(1)}, fmonos[1:])
                co = self.coaction_iter(u1, q - 1)
                for (ua, *fl), c3 in co.terms.items():
                    first = self.u_act({ua[1]: Fraction(1)},
                                       MPoly({fmonos[0]: Fraction(1)}))
                    for rw, c4 in rec.terms.items():
                        word = tuple(f_atom(_mono_mul(fl[j][1], rw[j][1]))
                                     for j in range(q - 1))
                        for fm, c5 in first.terms.items():
                            full = (f_atom(fm),) + word
                            out = out + Tensor({full: c * c2 * c3 * c4 * c5})
        return out

    def bullet_tensor(self, u, t: Tensor) -> Tensor:
        """bullet applied to a Tensor of pure F-legs, linearly."""
        out = Tensor.zero()
        for w, c in t.terms.items():
            fmonos = tuple(a[1] for a in w)
            out = out + self.bullet(u, fmonos).scale(c)
        return out

    def black(self, u, f: MPoly) -> MPoly:
        """u |>> f = S^{-1}(u_<1>) (u_<0> |> f); S^{-1} = S on commutative F."""
        out = MPoly.zero()
        co = self.coaction_el(u)
        for (ua, fa), c in co.terms.items():
            sf = self.f_antipode(MPoly({fa[1]: Fraction(1)}))
            acted = self.u_act({ua[1]: Fraction(1)}, f)
            out = out + sf * acted * c
        return out

    # -- coactions on exterior legs ---------------------------------------

    def coaction_gstar_1f(self, lab):
        """The F-coaction on basis covectors of g* (closed formulas).

        nabla(theta^k) = theta^k ox 1;
        nabla(varpi^i_j) = varpi^i_j ox 1 + sum_v theta^v ox S(eta^i_{jv}).
        """
        terms = {(lab, ()): Fraction(1)}
        if lab[0] == "L":
            _, i, j = lab
            for v in range(1, self.n + 1):
                seta = self.f_antipode(self.eta(i, j, v))
                for m, c in seta.terms.items():
                    key = (("T", v), m)
                    terms[key] = terms.get(key, Fraction(0)) + c
        return terms

    def coaction_space_word(self, space_key, word) -> Tensor:
        """F-coaction on a basis wedge of g, g*, q or q*; legs (E, F)."""
        cache = self._coact_gs_word if space_key in ("g*", "q*") else self._coact_g_word
        ckey = (space_key, word)
        if ckey in cache:
            return cache[ckey]
        space = self.spaces[space_key]
        out = Tensor.word(("E", space_key, ()), F_ONE)
        for idx in word:
            lab = space.labels[idx]
            if space_key in ("g*", "q*"):
                one = self.coaction_gstar_1f(lab)
                pieces = []
                for (lab2, fm), c in one.items():
                    if lab2 in space.index:
                        pieces.append((space.index[lab2], fm, c))
            else:
                # coaction on vectors from the U-coaction restricted to g
                co = self.coaction_gen(lab)
                pieces = []
                for (ua, fa), c in co.terms.items():
                    exps = ua[1]
                    g = next(i for i, e in enumerate(exps) if e)
                    lab2 = self.lie.labels[g]
                    if lab2 in space.index:
                        pieces.append((space.index[lab2], fa[1], c))
            from .exterior import merge_sign
            acc = {}
            for w, c in out.terms.items():
                ew, fm0 = w[0][2], w[1][1]
                for idx2, fm, cc in pieces:
                    nw, sign = merge_sign(ew, (idx2,))
                    if nw is None:
                        continue
                    key = (("E", space_key, nw), f_atom(_mono_mul(fm0, fm)))
                    acc[key] = acc.get(key, Fraction(0)) + c * cc * sign
            out = Tensor(acc)
        cache[ckey] = out
        return out

    def u_diag_act(self, u, ulegs):
        """Diagonal action u . (v^1 ox ... ox v^p) via the coproduct."""
        p = len(ulegs)
        if p == 0:
            return Tensor.scalar(self.u_counit(u))
        out = Tensor.zero()
        for exps, c in u.items():
            for w, c2 in self.u_coproduct(exps, p).terms.items():
                words = [self.mono_mul_u(w[j][1], ulegs[j]) for j in range(p)]
                for combo in _dict_product(words):
                    monos, c3 = combo
                    out = out + Tensor({tuple(u_atom(mm) for mm in monos): c * c2 * c3})
        return out

    # ------------------------------------------------------------------
    # H = F |>< U (bicrossed product); words are (F-atom, U-atom)
    # ------------------------------------------------------------------

    def h_unit(self) -> Tensor:
        return Tensor.word(F_ONE, u_atom((0,) * self.m))

    def h_from(self, f: MPoly, u) -> Tensor:
        out = Tensor.zero()
        for fm, c1 in f.terms.items():
            for exps, c2 in u.items():
                out = out + Tensor.word(f_atom(fm), u_atom(exps), coeff=c1 * c2)
        return out

    def h_mul(self, t1: Tensor, t2: Tensor) -> Tensor:
        out = Tensor.zero()
        for (fa1, ua1), c1 in t1.terms.items():
            for (fa2, ua2), c2 in t2.terms.items():
                for w, c3 in self.u_coproduct(ua1[1], 2).terms.items():
                    u11, u12 = w[0][1], w[1][1]
                    acted = self.u_act({u11: Fraction(1)}, MPoly({fa2[1]: Fraction(1)}))
                    uprod = self.mono_mul_u(u12, ua2[1])
                    for fm, c4 in acted.terms.items():
                        fmono = _mono_mul(fa1[1], fm)
                        for mono, c5 in uprod.items():
                            out = out + Tensor.word(f_atom(fmono), u_atom(mono),
                                                    coeff=c1 * c2 * c3 * c4 * c5)
        return out

    def h_counit(self, t: Tensor) -> Fraction:
        total = Fraction(0)
        for (fa, ua), c in t.terms.items():
            if fa == F_ONE and not any(ua[1]):
                total += c
        return total

    def h_coproduct(self, t: Tensor) -> Tensor:
        """Delta(f |> u), a Tensor with legs (F, U, F, U)."""
        out = Tensor.zero()
        for (fa, ua), c in t.terms.items():
            fcop = self._f_cop_mono(fa[1])
            for w, c2 in self.u_coproduct(ua[1], 2).terms.items():
                u1, u2 = w[0][1], w[1][1]
                co = self.coaction(u1)
                for (u10, h), c3 in co.terms.items():
                    for (f1, f2), c4 in fcop.terms.items():
                        word = (f1, u10, f_atom(_mono_mul(f2[1], h[1])), u_atom(u2))
                        out = out + Tensor({word: c * c2 * c3 * c4})
        return out

    def h_antipode(self, t: Tensor) -> Tensor:
        """S(f |> u) = (1 |> S(u_<0>)) (S(f u_<1>) |> 1)."""
        out = Tensor.zero()
        for (fa, ua), c in t.terms.items():
            co = self.coaction(ua[1])
            for (u0, h), c2 in co.terms.items():
                su = self.u_antipode(u0[1])
                sf = self.f_antipode(MPoly({_mono_mul(fa[1], h[1]): Fraction(1)}))
                left = Tensor.zero()
                for mono, c3 in su.items():
                    left = left + Tensor.word(F_ONE, u_atom(mono), coeff=c3)
                right = self.h_from(sf, self.u_unit())
                out = out + self.h_mul(left, right).scale(c * c2)
        return out

    def delta_h(self, t: Tensor) -> Fraction:
        """delta(f |> u) = eps(f) delta(u)."""
        total = Fraction(0)
        for (fa, ua), c in t.terms.items():
            if fa == F_ONE:
                total += c * self.delta_u({ua[1]: Fraction(1)})
        return total

    def s_delta(self, t: Tensor) -> Tensor:
        """S_delta(h) = delta(h_(1)) S(h_(2))."""
        out = Tensor.zero()
        cop = self.h_coproduct(t)
        for (f1, u1, f2, u2), c in cop.terms.items():
            d = self.delta_h(Tensor.word(f1, u1))
            if d:
                out = out + self.h_antipode(Tensor.word(f2, u2)).scale(c * d)
        return out


def _parse_cvar(name, prefix):
    body = name[len(prefix):]
    i_str, alpha_str = body.split("x")
    return int(i_str), tuple(int(ch) for ch in alpha_str)


def m_no_eps(mono):
    return tuple((v, e) for v, e in mono if v != EPS)


def _word_of(exps):
    w = []
    for g, e in enumerate(exps):
        w.extend([g] * e)
    return w


def _compositions(e, parts):
    if parts == 1:
        yield (e,)
        return
    for first in range(e + 1):
        for rest in _compositions(e - first, parts - 1):
            yield (first,) + rest


def _multinomial(e, comp):
    from math import factorial
    out = Fraction(factorial(e))
    for c in comp:
        out /= factorial(c)
    return out


def _ff_mul(t1: Tensor, t2: Tensor) -> Tensor:
    out = {}
    for w1, c1 in t1.terms.items():
        for w2, c2 in t2.terms.items():
            w = tuple(f_atom(_mono_mul(a[1], b[1])) for a, b in zip(w1, w2))
            out[w] = out.get(w, Fraction(0)) + c1 * c2
    return Tensor(out)


def _dict_product(dicts):
    """Cartesian product of {mono: coeff} dicts -> (monos tuple, coeff)."""
    keys = [list(d.items()) for d in dicts]
    for combo in iproduct(*keys):
        monos = tuple(m for m, _ in combo)
        c = Fraction(1)
        for _, cc in combo:
            c *= cc
        yield monos, c


_CONTEXTS = {}


def hopf_context(n, k=3) -> HopfContext:
    if (n, k) not in _CONTEXTS:
        _CONTEXTS[(n, k)] = HopfContext(n, k)
    return _CONTEXTS[(n, k)]
