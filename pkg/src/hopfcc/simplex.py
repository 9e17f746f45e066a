"""Affine simplices in coordinate space and exact integration of forms.

The integral of a monomial over the standard simplex {t_i >= 0, sum <= 1}
is (prod alpha_i!)/(|alpha| + p)!; a p-form is integrated over an affine
simplex by pulling back through t -> v0 + sum t_i (v_i - v0).
"""

from __future__ import annotations

from fractions import Fraction

from .forms import FormSpace, PolyForm, pullback
from .poly import CASError, MPoly, simplex_monomial_integral


class Simplex:
    """p-simplex given by p+1 vertices, each a {coordinate: Fraction} map."""

    __slots__ = ("vertices",)

    def __init__(self, vertices):
        self.vertices = [dict(v) for v in vertices]
        if not self.vertices:
            raise CASError("simplex needs at least one vertex")

    @property
    def dim(self):
        return len(self.vertices) - 1

    def coordinates(self):
        names = set()
        for v in self.vertices:
            names.update(v)
        return sorted(names)

    def barycentric_map(self, tvars):
        """{coordinate: affine MPoly in tvars} for t -> v0 + sum t_i (v_i-v0).

        Vertex entries may be Fractions or MPoly (e.g. dual-number flows).
        """
        if len(tvars) != self.dim:
            raise CASError("parameter count must equal simplex dimension")
        v0 = self.vertices[0]
        out = {}
        for name in self.coordinates():
            expr = MPoly.promote(v0.get(name, 0))
            for i, vi in enumerate(self.vertices[1:]):
                dc = MPoly.promote(vi.get(name, 0)) - MPoly.promote(v0.get(name, 0))
                if not dc.is_zero():
                    expr = expr + MPoly.var(tvars[i]) * dc
            out[name] = expr
        return out


def integrate_standard_simplex(poly: MPoly, tvars):
    """Exact integral over {t_i >= 0, sum t_i <= 1}.

    Variables other than the t's are treated as constants; the result is a
    Fraction when none remain, an MPoly otherwise.
    """
    tvars = list(tvars)
    pos = {v: i for i, v in enumerate(tvars)}
    total = MPoly.zero()
    for m, c in poly.terms.items():
        alpha = [0] * len(tvars)
        rest = []
        for v, e in m:
            if v in pos:
                alpha[pos[v]] = e
            else:
                rest.append((v, e))
        total = total + MPoly({tuple(rest): c * simplex_monomial_integral(alpha)})
    if total.is_constant():
        return total.constant_term()
    return total


def simplex_integrate(form: PolyForm, simplex: Simplex) -> Fraction:
    """Integrate a p-form with polynomial coefficients over an affine p-simplex.

    Degenerate simplices integrate to 0.  The orientation is the one induced
    by the vertex order.
    """
    p = simplex.dim
    if p == 0:
        if form.max_degree() > 0:
            f = form.homogeneous_part(0)
        else:
            f = form
        c = f.terms.get((), MPoly.zero())
        sub = {v: MPoly.promote(simplex.vertices[0].get(v, 0)) for v in c.variables()}
        val = c.assign(sub) if sub else c
        return val.constant_term() if val.is_constant() else val
    for w in form.terms:
        if len(w) != p:
            raise CASError("form degree must equal simplex dimension")
    tvars = [f"t{i+1}" for i in range(p)]
    tspace = FormSpace(tuple(tvars))
    mapping = simplex.barycentric_map(tvars)
    # coefficients may mention coordinates absent from the vertices
    needed = set()
    for c in form.terms.values():
        needed |= c.variables()
    for name in needed - set(mapping):
        mapping[name] = MPoly.const(0)
    pulled = pullback(form, tspace, mapping)
    top = pulled.terms.get(tuple(range(p)))
    if top is None:
        return Fraction(0)
    return integrate_standard_simplex(top, tvars)
