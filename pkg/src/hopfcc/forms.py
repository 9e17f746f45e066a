"""Differential forms with exact polynomial coefficients.

A PolyForm lives over a FormSpace: an ordered tuple of coordinate names plus
a coefficient-ring adapter (plain MPoly, or the det-localized ring of the
frame bundle).  Words are strictly increasing index tuples into the
coordinate list; d, wedge, interior product and pullback are exact.
"""

from __future__ import annotations

from fractions import Fraction

from .exterior import merge_sign, sort_word
from .poly import CASError, MPoly


class MPolyRing:
    """Adapter for plain MPoly coefficients."""

    def promote(self, c):
        return MPoly.promote(c)

    def is_zero(self, c):
        return c.is_zero()

    def diff(self, c, var):
        return c.diff(var)

    def __eq__(self, other):
        return isinstance(other, MPolyRing)

    def __hash__(self):
        return hash("MPolyRing")


MPOLY_RING = MPolyRing()


class FormSpace:
    __slots__ = ("ring", "variables", "index")

    def __init__(self, variables, ring=MPOLY_RING):
        self.ring = ring
        self.variables = tuple(variables)
        self.index = {v: i for i, v in enumerate(self.variables)}

    def __eq__(self, other):
        return isinstance(other, FormSpace) and self.variables == other.variables \
            and self.ring == other.ring

    def __hash__(self):
        return hash(self.variables)

    def __repr__(self):
        return f"FormSpace({self.variables})"


class PolyForm:
    """Graded-commutative differential form; possibly of mixed degree."""

    __slots__ = ("space", "terms")

    def __init__(self, space: FormSpace, terms=None):
        self.space = space
        t = {}
        if terms:
            for w, c in terms.items():
                c = space.ring.promote(c)
                if not space.ring.is_zero(c):
                    t[w] = c
        self.terms = t

    # -- constructors ---------------------------------------------------

    @classmethod
    def zero(cls, space):
        return cls(space, {})

    @classmethod
    def function(cls, space, c):
        return cls(space, {(): c})

    @classmethod
    def d_var(cls, space, name):
        return cls(space, {(space.index[name],): space.ring.promote(1)})

    @classmethod
    def from_word(cls, space, coeff, names):
        word = tuple(space.index[v] for v in names)
        w, sign = sort_word(word)
        if w is None:
            return cls.zero(space)
        return cls(space, {w: space.ring.promote(coeff) * sign})

    # -- queries ----------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def degree(self):
        degs = {len(w) for w in self.terms}
        if not degs:
            return 0
        if len(degs) > 1:
            raise CASError("inhomogeneous form has no single degree")
        return degs.pop()

    def homogeneous_part(self, p):
        return PolyForm(self.space, {w: c for w, c in self.terms.items()
                                     if len(w) == p})

    def max_degree(self):
        return max((len(w) for w in self.terms), default=0)

    def coefficient(self, names):
        word = tuple(sorted(self.space.index[v] for v in names))
        return self.terms.get(word, self.space.ring.promote(0))

    # -- algebra ----------------------------------------------------------

    def _check(self, other):
        if self.space != other.space:
            raise CASError("mismatched form spaces")

    def __add__(self, other):
        self._check(other)
        ring = self.space.ring
        t = dict(self.terms)
        for w, c in other.terms.items():
            s = t.get(w)
            s = c if s is None else s + c
            if ring.is_zero(s):
                t.pop(w, None)
            else:
                t[w] = s
        return PolyForm(self.space, t)

    def __neg__(self):
        return PolyForm(self.space, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = self.space.ring.promote(c)
        return PolyForm(self.space, {w: c0 * c for w, c0 in self.terms.items()})

    def wedge(self, other):
        self._check(other)
        ring = self.space.ring
        t = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w, sign = merge_sign(w1, w2)
                if w is None:
                    continue
                c = c1 * c2 if sign > 0 else -(c1 * c2)
                s = t.get(w)
                s = c if s is None else s + c
                if ring.is_zero(s):
                    t.pop(w, None)
                else:
                    t[w] = s
        return PolyForm(self.space, t)

    def __mul__(self, other):
        if isinstance(other, PolyForm):
            return self.wedge(other)
        return self.scale(other)

    __rmul__ = scale

    def __eq__(self, other):
        if not isinstance(other, PolyForm):
            return NotImplemented
        if self.space != other.space:
            return False
        return (self - other).is_zero()

    # -- calculus -----------------------------------------------------------

    def d(self):
        ring = self.space.ring
        t = {}
        for w, c in self.terms.items():
            for i, v in enumerate(self.space.variables):
                dc = ring.diff(c, v)
                if ring.is_zero(dc):
                    continue
                w2, sign = merge_sign((i,), w)
                if w2 is None:
                    continue
                add = dc if sign > 0 else -dc
                s = t.get(w2)
                s = add if s is None else s + add
                if ring.is_zero(s):
                    t.pop(w2, None)
                else:
                    t[w2] = s
        return PolyForm(self.space, t)

    def contract(self, vector):
        """Interior product with a vector field {var name: coefficient}."""
        ring = self.space.ring
        comps = {self.space.index[v]: ring.promote(c) for v, c in vector.items()}
        t = {}
        for w, c in self.terms.items():
            for r, i in enumerate(w):
                vi = comps.get(i)
                if vi is None or ring.is_zero(vi):
                    continue
                w2 = w[:r] + w[r + 1:]
                add = c * vi
                if r % 2:
                    add = -add
                s = t.get(w2)
                s = add if s is None else s + add
                if ring.is_zero(s):
                    t.pop(w2, None)
                else:
                    t[w2] = s
        return PolyForm(self.space, t)

    def coeff_map(self, fn):
        return PolyForm(self.space, {w: fn(c) for w, c in self.terms.items()})

    def __str__(self):
        if not self.terms:
            return "0"
        bits = []
        for w in sorted(self.terms, key=lambda w: (len(w), w)):
            word = "^".join("d" + self.space.variables[i] for i in w) or "1"
            bits.append(f"({self.terms[w]})·{word}")
        return " + ".join(bits)

    __repr__ = __str__


def pullback(form: PolyForm, target_space: FormSpace, mapping) -> PolyForm:
    """Pull back along the map whose components are mapping: {src var: expr}.

    The expressions live in the target space's coefficient ring (plain MPoly
    coefficients only); d of the mapping components is taken in the target
    variables.
    """
    ring = target_space.ring
    exprs = {v: ring.promote(e) for v, e in mapping.items()}
    dexprs = {}
    for v, e in exprs.items():
        df = PolyForm.zero(target_space)
        for i, tv in enumerate(target_space.variables):
            de = ring.diff(e, tv)
            if not ring.is_zero(de):
                df = df + PolyForm(target_space, {(i,): de})
        dexprs[v] = df
    out = PolyForm.zero(target_space)
    for w, c in form.terms.items():
        if not isinstance(c, MPoly):
            raise CASError("pullback expects MPoly coefficients on the source")
        missing = c.variables() - set(mapping)
        if missing:
            raise CASError(f"pullback: unmapped variables {sorted(missing)}")
        cc = ring.promote(Fraction(c.constant_term()))
        for m, co in c.terms.items():
            if m == ():
                continue
            piece = ring.promote(co)
            for v, e in m:
                for _ in range(e):
                    piece = piece * exprs[v]
            cc = cc + piece
        term = PolyForm.function(target_space, cc)
        for i in w:
            term = term.wedge(dexprs[form.space.variables[i]])
        out = out + term
    return out


def lie_derivative(form: PolyForm, vector) -> PolyForm:
    """Cartan formula L_X = d i_X + i_X d."""
    return form.contract(vector).d() + form.d().contract(vector)


def integrate_box(poly: MPoly, bounds) -> Fraction:
    """Exact integral of a polynomial over a box {var: (lo, hi)}."""
    cur = poly
    for v, (lo, hi) in bounds.items():
        anti = {}
        for m, c in cur.terms.items():
            e = dict(m).get(v, 0)
            rest = tuple((vv, ee) for vv, ee in m if vv != v)
            m2 = tuple(sorted(rest + ((v, e + 1),)))
            anti[m2] = anti.get(m2, Fraction(0)) + c / (e + 1)
        ap = MPoly(anti)
        cur = ap.assign({v: MPoly.const(Fraction(hi))}) - ap.assign({v: MPoly.const(Fraction(lo))})
    return cur.as_fraction() if cur.is_constant() else cur


def integrate_ordered_simplex(poly: MPoly, tvars) -> Fraction:
    """Exact integral over {0 <= t_1 <= ... <= t_p <= 1} of a polynomial."""
    cur = poly
    tvars = list(tvars)
    for i, v in enumerate(tvars):
        anti = {}
        for m, c in cur.terms.items():
            e = dict(m).get(v, 0)
            rest = tuple((vv, ee) for vv, ee in m if vv != v)
            m2 = tuple(sorted(rest + ((v, e + 1),)))
            anti[m2] = anti.get(m2, Fraction(0)) + c / (e + 1)
        ap = MPoly(anti)
        upper = MPoly.var(tvars[i + 1]) if i + 1 < len(tvars) else MPoly.const(1)
        cur = ap.assign({v: upper}) - ap.assign({v: MPoly.const(0)})
    if not cur.is_constant():
        return cur
    return cur.as_fraction()
