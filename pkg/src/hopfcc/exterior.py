"""Exterior algebra elements over labeled finite bases.

An ExtElement is a linear combination of basis wedges of a declared space
(g, g*, q, q*, d, n*, ...).  Words are strictly increasing tuples of basis
indices; constructing from an unsorted word introduces the permutation sign,
repeated indices give 0.  Coefficients may be Fraction or MPoly.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

from .poly import CASError, MPoly


def sort_word(word):
    """Return (sorted tuple, sign) or (None, 0) when an index repeats."""
    w = list(word)
    sign = 1
    # insertion sort, counting transpositions
    for i in range(1, len(w)):
        j = i
        while j > 0 and w[j - 1] > w[j]:
            w[j - 1], w[j] = w[j], w[j - 1]
            sign = -sign
            j -= 1
    for i in range(1, len(w)):
        if w[i - 1] == w[i]:
            return None, 0
    return tuple(w), sign


def merge_sign(w1, w2):
    """Sign of sorting the concatenation of two sorted words; None if clash."""
    sign = 1
    i = j = 0
    out = []
    while i < len(w1) and j < len(w2):
        if w1[i] == w2[j]:
            return None, 0
        if w1[i] < w2[j]:
            out.append(w1[i])
            i += 1
        else:
            # w2[j] jumps over the remaining len(w1)-i entries of w1
            if (len(w1) - i) % 2:
                sign = -sign
            out.append(w2[j])
            j += 1
    out.extend(w1[i:])
    out.extend(w2[j:])
    return tuple(out), sign


def _is_zero(c):
    if isinstance(c, MPoly):
        return c.is_zero()
    return not c


def _promote(c):
    if isinstance(c, (int, Fraction, MPoly)):
        return c
    raise CASError(f"bad exterior coefficient: {c!r}")


class ExtSpace:
    """A labeled basis for an exterior algebra factor."""

    __slots__ = ("name", "labels", "index")

    def __init__(self, name: str, labels):
        self.name = name
        self.labels = tuple(labels)
        self.index = {lab: i for i, lab in enumerate(self.labels)}
        if len(self.index) != len(self.labels):
            raise CASError(f"duplicate labels in basis of {name}")

    @property
    def dim(self):
        return len(self.labels)

    def __eq__(self, other):
        return isinstance(other, ExtSpace) and self.name == other.name \
            and self.labels == other.labels

    def __hash__(self):
        return hash((self.name, self.labels))

    def __repr__(self):
        return f"ExtSpace({self.name}, dim={self.dim})"


class ExtElement:
    """Element of the exterior algebra over an ExtSpace."""

    __slots__ = ("space", "terms")

    def __init__(self, space: ExtSpace, terms=None):
        self.space = space
        t = {}
        if terms:
            for w, c in terms.items():
                c = _promote(c)
                if not _is_zero(c):
                    t[w] = c
        self.terms = t

    # -- constructors ---------------------------------------------------

    @classmethod
    def zero(cls, space):
        return cls(space, {})

    @classmethod
    def unit(cls, space):
        return cls(space, {(): Fraction(1)})

    @classmethod
    def basis_vector(cls, space, label):
        return cls(space, {(space.index[label],): Fraction(1)})

    @classmethod
    def from_word(cls, space, labels, coeff=1):
        word = tuple(space.index[lab] for lab in labels)
        w, sign = sort_word(word)
        if w is None:
            return cls.zero(space)
        return cls(space, {w: _promote(coeff) * sign})

    def basis_words(self, degree):
        return combinations(range(self.space.dim), degree)

    # -- queries ----------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def degree(self):
        degs = {len(w) for w in self.terms}
        if not degs:
            return 0
        if len(degs) > 1:
            raise CASError("inhomogeneous exterior element has no degree")
        return degs.pop()

    def homogeneous_part(self, p):
        return ExtElement(self.space, {w: c for w, c in self.terms.items()
                                       if len(w) == p})

    def word_labels(self, w):
        return tuple(self.space.labels[i] for i in w)

    # -- linear structure -------------------------------------------------

    def _check(self, other):
        if self.space != other.space:
            raise CASError("mismatched exterior base spaces")

    def __add__(self, other):
        self._check(other)
        t = dict(self.terms)
        for w, c in other.terms.items():
            s = t.get(w, 0) + c
            if _is_zero(s):
                t.pop(w, None)
            else:
                t[w] = s
        return ExtElement(self.space, t)

    def __neg__(self):
        return ExtElement(self.space, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = _promote(c)
        if _is_zero(c):
            return ExtElement.zero(self.space)
        return ExtElement(self.space, {w: c0 * c for w, c0 in self.terms.items()})

    def __mul__(self, c):
        return self.scale(c)

    __rmul__ = __mul__

    def coeff_map(self, fn):
        return ExtElement(self.space, {w: fn(c) for w, c in self.terms.items()})

    def wedge(self, other):
        self._check(other)
        t = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w, sign = merge_sign(w1, w2)
                if w is None:
                    continue
                s = t.get(w, 0) + c1 * c2 * sign
                if _is_zero(s):
                    t.pop(w, None)
                else:
                    t[w] = s
        return ExtElement(self.space, t)

    def __eq__(self, other):
        if not isinstance(other, ExtElement):
            return NotImplemented
        return self.space == other.space and self.terms == other.terms

    def __hash__(self):
        return hash((self.space, frozenset(self.terms.items())))

    # -- contraction --------------------------------------------------------

    def contract_index(self, i: int):
        """Interior product by the dual basis covector of index i."""
        t = {}
        for w, c in self.terms.items():
            if i in w:
                r = w.index(i)
                w2 = w[:r] + w[r + 1:]
                sign = -1 if r % 2 else 1
                s = t.get(w2, 0) + c * sign
                if _is_zero(s):
                    t.pop(w2, None)
                else:
                    t[w2] = s
        return ExtElement(self.space, t)

    def __str__(self):
        if not self.terms:
            return "0"
        bits = []
        for w in sorted(self.terms, key=lambda w: (len(w), w)):
            c = self.terms[w]
            word = "^".join(str(self.space.labels[i]) for i in w) or "1"
            bits.append(f"({c})·{word}")
        return " + ".join(bits)

    __repr__ = __str__


def wedge_contract(lam: ExtElement, xi: ExtElement, dual_spaces) -> ExtElement:
    """Iterated contraction i(l1^...^lq) := i(lq) o ... o i(l1) applied to xi.

    `dual_spaces` is a pair (covector space, vector space) declaring which
    space is dual to which; lam must live in the first, xi in the second,
    and the two bases are paired index-by-index.
    """
    cov, vec = dual_spaces
    if lam.space != cov or xi.space != vec:
        raise CASError("wedge_contract: mismatched base spaces")
    out = ExtElement.zero(vec)
    for w, c in lam.terms.items():
        cur = xi.scale(c)
        # i(l1 ^ ... ^ lq) = i(lq) o ... o i(l1): apply the word left to right
        for i in w:
            cur = cur.contract_index(i)
        out = out + cur
    return out


def ext_basis_elements(space: ExtSpace, degree: int):
    """All basis wedges of the given degree, as ExtElements."""
    for w in combinations(range(space.dim), degree):
        yield ExtElement(space, {w: Fraction(1)})
