"""Truncated jets of diffeomorphisms of R^n at 0, as exact polynomial maps.

A Jet stores one polynomial per component in the reserved variables x1..xn;
symbolic coefficients (generic jets, dual-number flows) live in extra
variables.  The variable "eps" is globally nilpotent: every jet operation
truncates eps-degree to <= 1.

Composition is polynomial composition truncated at x-degree k.  On jets
without constant term (the group N_k, and the affine subgroup) the
truncation is a group congruence, so group laws hold exactly; operations
whose exact answer would need a higher order must be fed jets of sufficient
order by the caller (the Hopf layer tracks this depth).
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product

from .poly import CASError, MPoly, TruncationError

EPS = "eps"


def x_vars(n):
    return tuple(f"x{i+1}" for i in range(n))


def multi_indices(n, low, high):
    """All alpha in Z_{>=0}^n with low <= |alpha| <= high, graded order."""
    out = []
    for d in range(low, high + 1):
        for alpha in product(range(d + 1), repeat=n):
            if sum(alpha) == d:
                out.append(alpha)
    return out


def coeff_var(prefix, i, alpha):
    return f"{prefix}{i}x" + "".join(str(a) for a in alpha)


def mono_of_alpha(alpha, xs):
    m = MPoly.const(1)
    for xv, e in zip(xs, alpha):
        if e:
            m = m * MPoly.var(xv, e)
    return m


def _trunc(p: MPoly, xs, k: int) -> MPoly:
    xset = set(xs)
    t = {}
    for m, c in p.terms.items():
        xdeg = 0
        epsdeg = 0
        for v, e in m:
            if v in xset:
                xdeg += e
            elif v == EPS:
                epsdeg = e
        if xdeg <= k and epsdeg <= 1:
            t[m] = c
    return MPoly(t)


class Jet:
    """Order-k polynomial jet of a map R^n -> R^n (0-jet part allowed)."""

    __slots__ = ("n", "k", "components")

    def __init__(self, n, k, components):
        self.n = n
        self.k = k
        xs = x_vars(n)
        comps = []
        for c in components:
            c = MPoly.promote(c)
            comps.append(_trunc(c, xs, k))
        if len(comps) != n:
            raise CASError("component count must equal dimension")
        self.components = tuple(comps)

    # -- constructors ---------------------------------------------------

    @classmethod
    def identity(cls, n, k):
        return cls(n, k, [MPoly.var(v) for v in x_vars(n)])

    @classmethod
    def affine(cls, n, k, matrix, translation=None):
        xs = x_vars(n)
        comps = []
        for i in range(n):
            c = MPoly.const(0) if translation is None else MPoly.promote(translation[i])
            for j in range(n):
                c = c + MPoly.promote(matrix[i][j]) * MPoly.var(xs[j])
            comps.append(c)
        return cls(n, k, comps)

    @classmethod
    def translation(cls, n, k, vector):
        eye = [[Fraction(i == j) for j in range(n)] for i in range(n)]
        return cls.affine(n, k, eye, vector)

    @classmethod
    def generic_n_jet(cls, n, k, prefix="a"):
        """N-jet with symbolic coefficients a^i_alpha, 2 <= |alpha| <= k."""
        xs = x_vars(n)
        comps = []
        for i in range(n):
            c = MPoly.var(xs[i])
            for alpha in multi_indices(n, 2, k):
                c = c + MPoly.var(coeff_var(prefix, i + 1, alpha)) * mono_of_alpha(alpha, xs)
            comps.append(c)
        return cls(n, k, comps)

    @classmethod
    def from_coeffs(cls, n, k, coeffs):
        """Build an N-jet from {(i, alpha): coefficient}, i in 1..n."""
        xs = x_vars(n)
        comps = []
        for i in range(n):
            c = MPoly.var(xs[i])
            for (ci, alpha), val in coeffs.items():
                if ci == i + 1:
                    if not (2 <= sum(alpha) <= k):
                        raise CASError(f"N-jet coefficient of order {sum(alpha)} out of range")
                    c = c + MPoly.promote(val) * mono_of_alpha(alpha, xs)
            comps.append(c)
        return cls(n, k, comps)

    # -- queries ----------------------------------------------------------

    def constant_part(self):
        return [c.truncate_degree(x_vars(self.n), 0) for c in self.components]

    def linear_matrix(self):
        xs = x_vars(self.n)
        return [[self.components[i].diff(xs[j]).truncate_degree(xs, 0)
                 for j in range(self.n)] for i in range(self.n)]

    def coefficient(self, i, alpha):
        """Coefficient polynomial of x^alpha in component i (1-based)."""
        xs = x_vars(self.n)
        c = self.components[i - 1]
        out = MPoly.zero()
        for m, co in c.terms.items():
            xpart = tuple(e for e in (dict(m).get(v, 0) for v in xs))
            if xpart == tuple(alpha):
                rest = tuple((v, e) for v, e in m if v not in xs)
                out = out + MPoly({rest: co})
        return out

    def is_affine(self):
        return all(c.degree_in(x_vars(self.n)) <= 1 for c in self.components)

    def has_zero_translation(self):
        return all(c.is_zero() for c in self.constant_part())

    def is_n_jet(self):
        if not self.has_zero_translation():
            return False
        eye = MPoly.const(1)
        L = self.linear_matrix()
        for i in range(self.n):
            for j in range(self.n):
                want = eye if i == j else MPoly.zero()
                if L[i][j] != want:
                    return False
        return True

    def coeff_dict(self):
        """{(i, alpha): MPoly} for 2 <= |alpha| <= k (N-jet chart)."""
        out = {}
        for i in range(1, self.n + 1):
            for alpha in multi_indices(self.n, 2, self.k):
                c = self.coefficient(i, alpha)
                if not c.is_zero():
                    out[(i, alpha)] = c
        return out

    def __eq__(self, other):
        return (isinstance(other, Jet) and self.n == other.n and self.k == other.k
                and self.components == other.components)

    def __hash__(self):
        return hash((self.n, self.k, self.components))

    def __str__(self):
        return "Jet(" + "; ".join(str(c) for c in self.components) + ")"

    __repr__ = __str__


def jet_compose(f: Jet, g: Jet) -> Jet:
    """Taylor expansion of f o g truncated at order k."""
    if f.n != g.n or f.k != g.k:
        raise CASError("jet dimension/order mismatch")
    xs = x_vars(f.n)
    sub = {xs[i]: g.components[i] for i in range(f.n)}
    comps = []
    for c in f.components:
        full = {v: sub.get(v, MPoly.var(v)) for v in c.variables()} if c.variables() else {}
        comps.append(c.substitute(full) if full else c)
    return Jet(f.n, f.k, comps)


def _split_eps(p: MPoly):
    """p = a + b*eps (eps-degree <= 1 assumed)."""
    a, b = {}, {}
    for m, c in p.terms.items():
        d = dict(m)
        if EPS in d:
            m2 = tuple((v, e) for v, e in m if v != EPS)
            b[m2] = c
        else:
            a[m] = c
    return MPoly(a), MPoly(b)


def _matrix_inverse(M):
    """Inverse of a matrix of MPoly constants of the form R + eps*N."""
    n = len(M)
    R = [[None] * n for _ in range(n)]
    N = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            a, b = _split_eps(M[i][j])
            if not a.is_constant():
                raise CASError("linear part must be rational + eps-nilpotent")
            R[i][j] = a.as_fraction()
            N[i][j] = b
    # rational inverse by Gaussian elimination
    A = [row[:] + [Fraction(i == j) for j in range(n)] for i, row in enumerate(R)]
    for col in range(n):
        piv = next((r for r in range(col, n) if A[r][col]), None)
        if piv is None:
            raise CASError("singular linear part")
        A[col], A[piv] = A[piv], A[col]
        pv = A[col][col]
        A[col] = [x / pv for x in A[col]]
        for r in range(n):
            if r != col and A[r][col]:
                fac = A[r][col]
                A[r] = [x - fac * y for x, y in zip(A[r], A[col])]
    Rinv = [[A[i][n + j] for j in range(n)] for i in range(n)]
    if all(b.is_zero() for row in N for b in row):
        return [[MPoly.const(Rinv[i][j]) for j in range(n)] for i in range(n)]
    # (R + eN)^{-1} = R^{-1} - e R^{-1} N R^{-1}
    eps = MPoly.var(EPS)
    out = [[MPoly.const(Rinv[i][j]) for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(n):
            corr = MPoly.zero()
            for a in range(n):
                for b in range(n):
                    corr = corr + N[a][b] * (Rinv[i][a] * Rinv[b][j])
            out[i][j] = out[i][j] - eps * corr
    return out


def jet_invert(f: Jet) -> Jet:
    """Compositional inverse at order k.

    Requires an invertible linear part; a nonzero constant part is accepted
    only when nilpotent (proportional to eps).
    """
    n, k = f.n, f.k
    xs = x_vars(n)
    const = f.constant_part()
    if f.is_affine():
        Linv = _matrix_inverse(f.linear_matrix())
        trans = []
        for i in range(n):
            c = MPoly.zero()
            for j in range(n):
                c = c - Linv[i][j] * const[j]
            trans.append(c)
        return Jet.affine(n, k, Linv, trans)
    for c in const:
        a, _ = _split_eps(c)
        if not a.is_zero():
            raise CASError("jet with non-nilpotent translation is not invertible as a jet at 0")
    L = _matrix_inverse(f.linear_matrix())
    # g0 = L^{-1} (x - c)
    comps = []
    for i in range(n):
        c = MPoly.zero()
        for j in range(n):
            c = c + L[i][j] * (MPoly.var(xs[j]) - const[j])
        comps.append(c)
    g = Jet(n, k, comps)
    ident = Jet.identity(n, k)
    for _ in range(k + 2):
        err = jet_compose(f, g)
        delta = [err.components[i] - ident.components[i] for i in range(n)]
        if all(d.is_zero() for d in delta):
            return g
        # Newton step in the filtration: g <- g - L^{-1} o delta
        comps = []
        for i in range(n):
            c = g.components[i]
            for j in range(n):
                c = c - L[i][j] * delta[j]
            comps.append(c)
        g = Jet(n, k, comps)
    err = jet_compose(f, g)
    delta = [err.components[i] - ident.components[i] for i in range(n)]
    if all(d.is_zero() for d in delta):
        return g
    raise TruncationError("jet inversion did not converge at this order")


def kac_factorize(phi: Jet):
    """phi = affine . tail with tail in N; returns (affine, tail)."""
    const = phi.constant_part()
    L = phi.linear_matrix()
    affine = Jet.affine(phi.n, phi.k, L, const)
    aff_inv = jet_invert(affine)
    tail = jet_compose(aff_inv, phi)
    return affine, tail


def act_G_on_N(psi: Jet, phi: Jet):
    """Kac factorization of psi o phi: returns (psi <| phi in N, psi |> phi in G)."""
    if not phi.is_affine():
        raise CASError("acting element must be affine")
    g_part, n_part = kac_factorize(jet_compose(psi, phi))
    return n_part, g_part


def jet_serialize(j: Jet):
    comps = []
    for i in range(1, j.n + 1):
        entries = []
        for alpha in multi_indices(j.n, 0, j.k):
            c = j.coefficient(i, alpha)
            if not c.is_zero():
                entries.append({"alpha": list(alpha), "coeff": _poly_obj(c)})
        comps.append(entries)
    return {"n": j.n, "k": j.k, "components": comps}


def jet_deserialize(obj) -> Jet:
    n, k = obj["n"], obj["k"]
    xs = x_vars(n)
    comps = []
    for entries in obj["components"]:
        c = MPoly.zero()
        for ent in entries:
            alpha = tuple(ent["alpha"])
            c = c + _poly_from_obj(ent["coeff"]) * mono_of_alpha(alpha, xs)
        comps.append(c)
    return Jet(n, k, comps)


def _poly_obj(p: MPoly):
    terms = []
    for m, c in p.sorted_terms():
        terms.append({"mono": [[v, e] for v, e in m],
                      "num": str(c.numerator), "den": str(c.denominator)})
    return {"vars": sorted(p.variables()), "terms": terms}


def _poly_from_obj(obj) -> MPoly:
    t = {}
    for ent in obj["terms"]:
        m = tuple((v, int(e)) for v, e in ent["mono"])
        t[m] = Fraction(int(ent["num"]), int(ent["den"]))
    return MPoly(t)
