"""Globally defined polynomial diffeomorphisms with exact inverses.

A TameDiffeo is a word of elementary factors: invertible affine maps and
elementary triangular maps x_i -> x_i + p(x_{other}).  Every factor has an
exact polynomial inverse, so Jacobians, pullbacks and Taylor jets at any
rational (or symbolic) base point are exact.
"""

from __future__ import annotations

from fractions import Fraction

from .jets import Jet, multi_indices, x_vars
from .poly import CASError, MPoly


class TameDiffeo:
    """Word of factors, outermost first: word [g1, g2] is the map g1 o g2."""

    __slots__ = ("n", "word")

    def __init__(self, n, word=()):
        self.n = n
        self.word = tuple(word)
        for f in self.word:
            if f[0] == "affine":
                _, A, b = f
                if len(A) != n or len(b) != n:
                    raise CASError("bad affine factor")
            elif f[0] == "elem":
                _, i, p = f
                if not (1 <= i <= n):
                    raise CASError("bad elementary index")
                if f"x{i}" in p.variables():
                    raise CASError("elementary polynomial must not involve its own variable")
            else:
                raise CASError(f"unknown factor kind {f[0]}")

    # -- constructors ---------------------------------------------------

    @classmethod
    def identity(cls, n):
        return cls(n, ())

    @classmethod
    def affine(cls, n, matrix, translation=None):
        A = tuple(tuple(Fraction(x) for x in row) for row in matrix)
        b = tuple(Fraction(x) for x in (translation or [0] * n))
        _invert_matrix(A)  # invertibility check
        return cls(n, (("affine", A, b),))

    @classmethod
    def translation(cls, n, vector):
        eye = [[Fraction(i == j) for j in range(n)] for i in range(n)]
        return cls.affine(n, eye, vector)

    @classmethod
    def elementary(cls, n, i, poly: MPoly):
        return cls(n, (("elem", i, poly),))

    def compose(self, other: "TameDiffeo") -> "TameDiffeo":
        if self.n != other.n:
            raise CASError("dimension mismatch")
        return TameDiffeo(self.n, self.word + other.word)

    def inverse(self) -> "TameDiffeo":
        inv = []
        for f in reversed(self.word):
            if f[0] == "affine":
                _, A, b = f
                Ainv = _invert_matrix(A)
                binv = tuple(-sum(Ainv[i][j] * b[j] for j in range(self.n))
                             for i in range(self.n))
                inv.append(("affine", Ainv, binv))
            else:
                _, i, p = f
                inv.append(("elem", i, -p))
        return TameDiffeo(self.n, inv)

    def is_affine_word(self):
        return all(f[0] == "affine" for f in self.word)

    # -- evaluation -------------------------------------------------------

    def apply(self, point):
        """Apply to a point given as a list of MPoly/Fraction (exact)."""
        pt = [MPoly.promote(c) for c in point]
        for f in reversed(self.word):
            if f[0] == "affine":
                _, A, b = f
                pt = [MPoly.const(b[i]) + sum((MPoly.const(A[i][j]) * pt[j]
                                               for j in range(self.n)), MPoly.zero())
                      for i in range(self.n)]
            else:
                _, i, p = f
                sub = {f"x{j+1}": pt[j] for j in range(self.n) if f"x{j+1}" in p.variables()}
                pt = pt[:]
                pt[i - 1] = pt[i - 1] + (p.substitute(sub) if sub else p)
        return pt

    def as_polynomials(self):
        """Exact components as MPoly in x1..xn."""
        return self.apply([MPoly.var(v) for v in x_vars(self.n)])

    def jacobian(self, at=None):
        """Jacobian matrix of MPoly in x1..xn (or evaluated at a point)."""
        comps = self.as_polynomials()
        xs = x_vars(self.n)
        J = [[comps[i].diff(xs[j]) for j in range(self.n)] for i in range(self.n)]
        if at is not None:
            sub = {xs[j]: MPoly.promote(at[j]) for j in range(self.n)}
            J = [[_subst_all(e, sub) for e in row] for row in J]
        return J

    def jacobian_det(self) -> Fraction:
        J = self.jacobian()
        d = _det_poly(J)
        if not d.is_constant():
            raise CASError("tame word with non-constant Jacobian determinant")
        return d.as_fraction()


def _subst_all(p: MPoly, sub):
    use = {v: sub[v] for v in p.variables() if v in sub}
    return p.substitute({**{v: MPoly.var(v) for v in p.variables()}, **use}) if p.variables() else p


def _det_poly(M):
    n = len(M)
    if n == 1:
        return M[0][0]
    det = MPoly.zero()
    for j in range(n):
        minor = [row[:j] + row[j + 1:] for row in M[1:]]
        term = M[0][j] * _det_poly(minor)
        det = det + (term if j % 2 == 0 else -term)
    return det


def _invert_matrix(A):
    n = len(A)
    M = [list(row) + [Fraction(i == j) for j in range(n)] for i, row in enumerate(A)]
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col]), None)
        if piv is None:
            raise CASError("singular affine factor")
        M[col], M[piv] = M[piv], M[col]
        pv = M[col][col]
        M[col] = [x / pv for x in M[col]]
        for r in range(n):
            if r != col and M[r][col]:
                fac = M[r][col]
                M[r] = [x - fac * y for x, y in zip(M[r], M[col])]
    return tuple(tuple(M[i][n + j] for j in range(n)) for i in range(n))


def tame_jet_at(phi: TameDiffeo, base, k: int) -> Jet:
    """Taylor jet at `base`, in the translated chart x -> phi(base+x) - phi(base).

    `base` entries may be Fractions or MPoly symbols (generic base point).
    """
    n = phi.n
    xs = x_vars(n)
    shifted = [MPoly.promote(base[i]) + MPoly.var(xs[i]) for i in range(n)]
    img = phi.apply(shifted)
    center = phi.apply(list(base))
    comps = [img[i] - MPoly.promote(center[i]) for i in range(n)]
    return Jet(n, k, comps)


def tame_serialize(phi: TameDiffeo):
    word = []
    for f in phi.word:
        if f[0] == "affine":
            _, A, b = f
            word.append({"kind": "affine",
                         "matrix": [[str(x) for x in row] for row in A],
                         "translation": [str(x) for x in b]})
        else:
            _, i, p = f
            from .jets import _poly_obj
            word.append({"kind": "elem", "i": i, "poly": _poly_obj(p)})
    return {"n": phi.n, "word": word}


def tame_deserialize(obj) -> TameDiffeo:
    from .jets import _poly_from_obj
    factors = []
    for f in obj["word"]:
        if f["kind"] == "affine":
            A = tuple(tuple(Fraction(x) for x in row) for row in f["matrix"])
            b = tuple(Fraction(x) for x in f["translation"])
            factors.append(("affine", A, b))
        else:
            factors.append(("elem", f["i"], _poly_from_obj(f["poly"])))
    return TameDiffeo(obj["n"], factors)


def random_tame(rng, n, length=2, max_poly_deg=2, affine_only=False):
    """Seeded random tame word with small integer data."""
    factors = []
    for _ in range(length):
        if affine_only or n == 1 or rng.random() < 0.4:
            while True:
                A = [[Fraction(rng.randint(-2, 2)) for _ in range(n)] for _ in range(n)]
                try:
                    _invert_matrix(tuple(tuple(r) for r in A))
                    break
                except CASError:
                    continue
            b = [Fraction(rng.randint(-2, 2)) for _ in range(n)]
            factors.append(("affine", tuple(tuple(r) for r in A), tuple(b)))
        else:
            i = rng.randint(1, n)
            others = [j for j in range(1, n + 1) if j != i]
            p = MPoly.zero()
            for alpha in multi_indices(len(others), 1, max_poly_deg):
                if rng.random() < 0.5:
                    term = MPoly.const(rng.randint(-2, 2))
                    for ov, e in zip(others, alpha):
                        term = term * MPoly.var(f"x{ov}", e)
                    p = p + term
            factors.append(("elem", i, p))
    return TameDiffeo(n, factors)
