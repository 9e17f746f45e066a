"""Linear combinations of tensor words over hashable atoms.

A word is a tuple of atoms; every atom is a tagged hashable:
  ("F", mono)        monomial of the jet-coordinate algebra F
  ("U", exps)        PBW monomial of U(g), exps indexed by the g-basis
  ("E", space, word) basis wedge of a registered exterior space
Coefficients are Fractions.  All Hopf and complex operators act leg-wise
through map_leg / map_word.
"""

from __future__ import annotations

from fractions import Fraction

from .poly import CASError, MPoly


def f_atom(mono):
    return ("F", mono)


def u_atom(exps):
    return ("U", tuple(exps))


def e_atom(space_name, word):
    return ("E", space_name, tuple(word))


F_ONE = ("F", ())


def u_one(m):
    return ("U", (0,) * m)


class Tensor:
    """dict {word: Fraction} with no zero coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        t = {}
        if terms:
            for w, c in terms.items():
                c = Fraction(c)
                if c:
                    t[w] = c
        self.terms = t

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def word(cls, *atoms, coeff=1):
        return cls({tuple(atoms): Fraction(coeff)})

    @classmethod
    def scalar(cls, c):
        return cls({(): Fraction(c)})

    def is_zero(self):
        return not self.terms

    def arity(self):
        ar = {len(w) for w in self.terms}
        if not ar:
            return None
        if len(ar) > 1:
            raise CASError("mixed arity tensor")
        return ar.pop()

    def __add__(self, other):
        t = dict(self.terms)
        for w, c in other.terms.items():
            s = t.get(w, _F0) + c
            if s:
                t[w] = s
            else:
                del t[w]
        out = Tensor.__new__(Tensor)
        out.terms = t
        return out

    def __neg__(self):
        out = Tensor.__new__(Tensor)
        out.terms = {w: -c for w, c in self.terms.items()}
        return out

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = Fraction(c)
        if not c:
            return Tensor.zero()
        out = Tensor.__new__(Tensor)
        out.terms = {w: c0 * c for w, c0 in self.terms.items()}
        return out

    __mul__ = scale
    __rmul__ = scale

    def __eq__(self, other):
        return isinstance(other, Tensor) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def tensor(self, other: "Tensor") -> "Tensor":
        t = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                t[w] = t.get(w, _F0) + c1 * c2
        return Tensor(t)

    def map_leg(self, pos, fn) -> "Tensor":
        """Replace leg `pos` by fn(atom) -> Tensor (any arity), splicing."""
        out = {}
        cache = {}
        for w, c in self.terms.items():
            atom = w[pos]
            rep = cache.get(atom)
            if rep is None:
                rep = fn(atom)
                cache[atom] = rep
            for rw, rc in rep.terms.items():
                nw = w[:pos] + rw + w[pos + 1:]
                s = out.get(nw, _F0) + c * rc
                if s:
                    out[nw] = s
                elif nw in out:
                    del out[nw]
        return Tensor(out)

    def map_word(self, fn) -> "Tensor":
        """Replace each whole word by fn(word) -> Tensor, linearly."""
        out = Tensor.zero()
        for w, c in self.terms.items():
            out = out + fn(w).scale(c)
        return out

    def permute(self, perm) -> "Tensor":
        """Word w -> (w[perm[0]], w[perm[1]], ...)."""
        t = {}
        for w, c in self.terms.items():
            nw = tuple(w[p] for p in perm)
            t[nw] = t.get(nw, _F0) + c
        return Tensor(t)

    def insert_leg(self, pos, atom) -> "Tensor":
        t = {}
        for w, c in self.terms.items():
            t[w[:pos] + (atom,) + w[pos:]] = c
        return Tensor(t)

    def __str__(self):
        if not self.terms:
            return "0"
        bits = []
        for w, c in sorted(self.terms.items(), key=lambda kv: str(kv[0])):
            bits.append(f"({c})·{w}")
        return " + ".join(bits)

    __repr__ = __str__


_F0 = Fraction(0)


# -- conversions between Tensor legs and polynomial/exterior objects -------


def mpoly_to_tensor(p: MPoly) -> Tensor:
    """F-element as an arity-1 tensor of F-atoms."""
    return Tensor({(f_atom(m),): c for m, c in p.terms.items()})


def tensor_to_mpoly(t: Tensor) -> MPoly:
    out = {}
    for w, c in t.terms.items():
        if len(w) != 1 or w[0][0] != "F":
            raise CASError("tensor is not a plain F-element")
        out[w[0][1]] = out.get(w[0][1], _F0) + c
    return MPoly(out)


def atom_to_mpoly(atom) -> MPoly:
    if atom[0] != "F":
        raise CASError("not an F-atom")
    return MPoly({atom[1]: Fraction(1)})


def ext_to_tensor(el, space_name) -> Tensor:
    """ExtElement with Fraction coefficients -> arity-1 tensor of E-atoms."""
    t = {}
    for w, c in el.terms.items():
        if isinstance(c, MPoly):
            c = c.as_fraction()
        t[(e_atom(space_name, w),)] = Fraction(c)
    return Tensor(t)
