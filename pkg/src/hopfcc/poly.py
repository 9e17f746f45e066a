"""Exact multivariate polynomial arithmetic over Q.

Monomials are tuples of (variable name, exponent) pairs sorted by name;
coefficients are fractions.Fraction.  The canonical term order used for
printing and serialization is graded-lexicographic on variable names.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial


class CASError(Exception):
    """Engine-level error (bad substitution, signature mismatch, ...)."""


class TruncationError(CASError):
    """An operation would need jet order beyond the engine order k."""


Mono = tuple  # tuple[tuple[str, int], ...]

ONE_MONO: Mono = ()


def mono_mul(m1: Mono, m2: Mono) -> Mono:
    if not m1:
        return m2
    if not m2:
        return m1
    out = dict(m1)
    for v, e in m2:
        out[v] = out.get(v, 0) + e
    return tuple(sorted(out.items()))


def mono_degree(m: Mono) -> int:
    return sum(e for _, e in m)


def mono_key(m: Mono):
    # graded-lex: total degree first, then the name/exponent word
    return (mono_degree(m), m)


def _coerce(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    raise CASError(f"not an exact scalar: {c!r}")


class MPoly:
    """Sparse polynomial; immutable, hashable, no zero coefficients stored."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms=None):
        t = {}
        if terms:
            for m, c in terms.items():
                c = _coerce(c)
                if c:
                    t[m] = c
        self.terms = t
        self._hash = None

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls) -> "MPoly":
        return _ZERO

    @classmethod
    def const(cls, c) -> "MPoly":
        c = _coerce(c)
        if not c:
            return _ZERO
        return cls({ONE_MONO: c})

    @classmethod
    def var(cls, name: str, exp: int = 1) -> "MPoly":
        if exp == 0:
            return _ONE
        return cls({((name, exp),): Fraction(1)})

    @classmethod
    def promote(cls, x) -> "MPoly":
        if isinstance(x, MPoly):
            return x
        return cls.const(x)

    # -- basic queries -------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(m == ONE_MONO for m in self.terms)

    def constant_term(self) -> Fraction:
        return self.terms.get(ONE_MONO, Fraction(0))

    def as_fraction(self) -> Fraction:
        if not self.is_constant():
            raise CASError(f"not a constant polynomial: {self}")
        return self.constant_term()

    def variables(self):
        vs = set()
        for m in self.terms:
            for v, _ in m:
                vs.add(v)
        return vs

    def total_degree(self) -> int:
        return max((mono_degree(m) for m in self.terms), default=0)

    def degree_in(self, names) -> int:
        names = set(names)
        best = 0
        for m in self.terms:
            d = sum(e for v, e in m if v in names)
            if d > best:
                best = d
        return best

    # -- arithmetic ----------------------------------------------------

    def __add__(self, other):
        other = MPoly.promote(other)
        if not self.terms:
            return other
        if not other.terms:
            return self
        t = dict(self.terms)
        for m, c in other.terms.items():
            s = t.get(m, _F0) + c
            if s:
                t[m] = s
            else:
                del t[m]
        p = MPoly.__new__(MPoly)
        p.terms = t
        p._hash = None
        return p

    __radd__ = __add__

    def __neg__(self):
        p = MPoly.__new__(MPoly)
        p.terms = {m: -c for m, c in self.terms.items()}
        p._hash = None
        return p

    def __sub__(self, other):
        return self + (-MPoly.promote(other))

    def __rsub__(self, other):
        return MPoly.promote(other) + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = _coerce(other)
            if not c:
                return _ZERO
            p = MPoly.__new__(MPoly)
            p.terms = {m: c0 * c for m, c0 in self.terms.items()}
            p._hash = None
            return p
        if not isinstance(other, MPoly):
            return NotImplemented
        if not self.terms or not other.terms:
            return _ZERO
        t = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono_mul(m1, m2)
                s = t.get(m, _F0) + c1 * c2
                if s:
                    t[m] = s
                elif m in t:
                    del t[m]
        p = MPoly.__new__(MPoly)
        p.terms = t
        p._hash = None
        return p

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise CASError("negative power of a polynomial")
        out = _ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base if n > 1 else base
            n >>= 1
        return out

    def __truediv__(self, other):
        c = _coerce(other)
        if not c:
            raise ZeroDivisionError("division by zero scalar")
        return self * (Fraction(1) / c)

    # -- structure -----------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MPoly.const(other)
        if not isinstance(other, MPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: mono_key(kv[0]))

    def leading_mono(self) -> Mono:
        if not self.terms:
            raise CASError("zero polynomial has no leading monomial")
        return max(self.terms, key=mono_key)

    # -- calculus ------------------------------------------------------

    def substitute(self, mapping) -> "MPoly":
        """Total substitution: every variable of self must be mapped."""
        missing = self.variables() - set(mapping)
        if missing:
            raise CASError(f"unknown variable in substitution map: missing {sorted(missing)}")
        return self.assign(mapping)

    def assign(self, mapping) -> "MPoly":
        """Partial substitution; unmapped variables stay."""
        out = _ZERO
        pow_cache = {}
        for m, c in self.terms.items():
            term = MPoly.const(c)
            for v, e in m:
                if v in mapping:
                    key = (v, e)
                    pw = pow_cache.get(key)
                    if pw is None:
                        pw = MPoly.promote(mapping[v]) ** e
                        pow_cache[key] = pw
                    term = term * pw
                else:
                    term = term * MPoly.var(v, e)
            out = out + term
        return out

    def diff(self, name: str) -> "MPoly":
        t = {}
        for m, c in self.terms.items():
            for i, (v, e) in enumerate(m):
                if v == name:
                    if e == 1:
                        m2 = m[:i] + m[i + 1:]
                    else:
                        m2 = m[:i] + ((v, e - 1),) + m[i + 1:]
                    s = t.get(m2, _F0) + c * e
                    if s:
                        t[m2] = s
                    elif m2 in t:
                        del t[m2]
                    break
        return MPoly(t)

    def truncate_degree(self, names, k: int) -> "MPoly":
        """Drop terms whose degree in the given variables exceeds k."""
        names = set(names)
        t = {m: c for m, c in self.terms.items()
             if sum(e for v, e in m if v in names) <= k}
        return MPoly(t)

    def coefficients_in(self, names):
        """Split into {mono over names: MPoly over the rest}."""
        names = set(names)
        out = {}
        for m, c in self.terms.items():
            inside = tuple((v, e) for v, e in m if v in names)
            outside = tuple((v, e) for v, e in m if v not in names)
            d = out.setdefault(inside, {})
            d[outside] = d.get(outside, _F0) + c
        return {m: MPoly(t) for m, t in out.items() if any(t.values())}

    def eval(self, point) -> Fraction:
        """Evaluate at a rational point given as {name: Fraction}."""
        total = Fraction(0)
        for m, c in self.terms.items():
            val = c
            for v, e in m:
                if v not in point:
                    raise CASError(f"unknown variable in evaluation point: {v}")
                val *= Fraction(point[v]) ** e
            total += val
        return total

    # -- display -------------------------------------------------------

    def __str__(self):
        if not self.terms:
            return "0"
        bits = []
        for m, c in self.sorted_terms():
            mono = "*".join(f"{v}^{e}" if e > 1 else v for v, e in m)
            if mono:
                if c == 1:
                    bits.append(mono)
                elif c == -1:
                    bits.append(f"-{mono}")
                else:
                    bits.append(f"{c}*{mono}")
            else:
                bits.append(str(c))
        s = " + ".join(bits).replace("+ -", "- ")
        return s

    __repr__ = __str__


_ZERO = MPoly.__new__(MPoly)
_ZERO.terms = {}
_ZERO._hash = None
_ONE = MPoly.__new__(MPoly)
_ONE.terms = {ONE_MONO: Fraction(1)}
_ONE._hash = None
_F0 = Fraction(0)


def mpoly_one() -> MPoly:
    return _ONE


class DualScalar:
    """Dual number a + b*eps with eps^2 = 0; parts are MPoly."""

    __slots__ = ("value", "infinitesimal")

    def __init__(self, value, infinitesimal=0):
        self.value = MPoly.promote(value)
        self.infinitesimal = MPoly.promote(infinitesimal)

    @classmethod
    def eps(cls) -> "DualScalar":
        return cls(0, 1)

    @classmethod
    def promote(cls, x) -> "DualScalar":
        if isinstance(x, DualScalar):
            return x
        return cls(x)

    def __add__(self, other):
        other = DualScalar.promote(other)
        return DualScalar(self.value + other.value,
                          self.infinitesimal + other.infinitesimal)

    __radd__ = __add__

    def __neg__(self):
        return DualScalar(-self.value, -self.infinitesimal)

    def __sub__(self, other):
        return self + (-DualScalar.promote(other))

    def __rsub__(self, other):
        return DualScalar.promote(other) + (-self)

    def __mul__(self, other):
        other = DualScalar.promote(other)
        return DualScalar(self.value * other.value,
                          self.value * other.infinitesimal
                          + self.infinitesimal * other.value)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = DualScalar(1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        other = DualScalar.promote(other)
        return (self.value == other.value
                and self.infinitesimal == other.infinitesimal)

    def __hash__(self):
        return hash((self.value, self.infinitesimal))

    def inverse(self) -> "DualScalar":
        """(a + b eps)^-1 for constant invertible a."""
        a = self.value.as_fraction()
        if not a:
            raise CASError("dual scalar with nilpotent value is not invertible")
        inv = Fraction(1) / a
        return DualScalar(MPoly.const(inv), self.infinitesimal * (-inv * inv))

    def __str__(self):
        return f"({self.value}) + ({self.infinitesimal})*eps"

    __repr__ = __str__


def simplex_monomial_integral(alpha) -> Fraction:
    """Integral of t^alpha over {t_i >= 0, sum t_i <= 1} in len(alpha) vars."""
    p = len(alpha)
    num = 1
    for a in alpha:
        num *= factorial(a)
    return Fraction(num, factorial(sum(alpha) + p))
