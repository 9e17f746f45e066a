"""The Lie algebra of the affine group and formal vector fields on R^n.

Everything is derived from one fixed realization by vector fields:
X_k = d/dx_k and Y^i_j = x^j d/dx_i, with the commutator bracket.  Basis
fields of the formal algebra are x^alpha d/dx_i; brackets of monomial
fields stay monomial, so all structure constants are exact integers.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

from .exterior import ExtElement, ExtSpace
from .jets import multi_indices
from .poly import CASError


def bracket_fields(v, w):
    """Commutator of vector fields given as {(i, alpha): coeff} dicts."""
    out = {}

    def add(key, c):
        if c:
            out[key] = out.get(key, Fraction(0)) + c
            if not out[key]:
                del out[key]

    for (i, alpha), a in v.items():
        for (j, beta), b in w.items():
            # x^alpha d_i (x^beta) d_j = beta_i x^(alpha+beta-e_i) d_j
            if beta[i - 1] > 0:
                gamma = tuple(x + y for x, y in zip(alpha, beta))
                gamma = gamma[:i - 1] + (gamma[i - 1] - 1,) + gamma[i:]
                add((j, gamma), a * b * beta[i - 1])
            if alpha[j - 1] > 0:
                gamma = tuple(x + y for x, y in zip(alpha, beta))
                gamma = gamma[:j - 1] + (gamma[j - 1] - 1,) + gamma[j:]
                add((i, gamma), -a * b * alpha[j - 1])
    return out


def g_labels(n):
    """PBW-ordered basis labels of g = R^n x| gl_n: X_1..X_n, Y^1_1..Y^n_n."""
    labs = [("T", k) for k in range(1, n + 1)]
    labs += [("L", i, j) for i in range(1, n + 1) for j in range(1, n + 1)]
    return labs


def q_labels(n):
    return [("T", k) for k in range(1, n + 1)]


def h_labels(n):
    return [("L", i, j) for i in range(1, n + 1) for j in range(1, n + 1)]


def label_field(n, lab):
    zero = (0,) * n
    if lab[0] == "T":
        return {(lab[1], zero): Fraction(1)}
    _, i, j = lab
    e_j = tuple(1 if t == j - 1 else 0 for t in range(n))
    return {(i, e_j): Fraction(1)}


class LieData:
    """Structure constants, modular character and CE differentials for g.

    The engine bracket is the OPPOSITE of the derivation commutator of the
    base realization: [A, B] := -[A~, B~]_fields.  This is the convention
    under which the dressing flows (X |> f)(psi) = d/dt f(psi <| exp tX)
    form a left U(g)-module structure and the matched-pair identities hold
    exactly; concretely [Y^i_j, X_k] = +delta^j_k X_i and delta(Y^i_j) =
    +delta^i_j (the classical transverse-geometry values).
    """

    def __init__(self, n):
        self.n = n
        self.labels = g_labels(n)
        self.dim = len(self.labels)
        self.g_space = ExtSpace("g", self.labels)
        self.gstar_space = ExtSpace("g*", self.labels)
        self.q_space = ExtSpace("q", q_labels(n))
        self.qstar_space = ExtSpace("q*", q_labels(n))
        self.index = {lab: i for i, lab in enumerate(self.labels)}
        self.fields = [label_field(n, lab) for lab in self.labels]
        # structure constants: [e_a, e_b] = sum_c C[a][b][c] e_c
        self.C = {}
        for a in range(self.dim):
            for b in range(self.dim):
                br = bracket_fields(self.fields[b], self.fields[a])
                comps = {}
                for key, c in br.items():
                    lab = self._field_key_label(key)
                    comps[self.index[lab]] = c
                self.C[(a, b)] = comps
        # modular character delta = Tr(ad .)
        self.delta = []
        for a in range(self.dim):
            tr = Fraction(0)
            for b in range(self.dim):
                tr += self.C[(a, b)].get(b, Fraction(0))
            self.delta.append(tr)

    def _field_key_label(self, key):
        i, alpha = key
        d = sum(alpha)
        if d == 0:
            return ("T", i)
        if d == 1:
            j = alpha.index(1) + 1
            return ("L", i, j)
        raise CASError("bracket left the affine algebra")

    def bracket_index(self, a, b):
        return self.C[(a, b)]

    def delta_of_label(self, lab):
        return self.delta[self.index[lab]]

    # -- Chevalley-Eilenberg differential on wedge(g*), trivial coefficients --

    def ce_d_gstar(self, omega: ExtElement) -> ExtElement:
        """d(theta^c) = -1/2 sum c^c_{ab} theta^a ^ theta^b, extended as a derivation."""
        if omega.space != self.gstar_space:
            raise CASError("ce_d_gstar expects a wedge over g*")
        out = ExtElement.zero(self.gstar_space)
        for w, coeff in omega.terms.items():
            for pos, c_idx in enumerate(w):
                rest = w[:pos] + w[pos + 1:]
                sign = Fraction(-1) ** pos
                for a in range(self.dim):
                    for b in range(a + 1, self.dim):
                        cc = self.C[(a, b)].get(c_idx)
                        if not cc:
                            continue
                        wedge = ExtElement(self.gstar_space, {(a, b): -cc})
                        rest_el = ExtElement(self.gstar_space, {rest: coeff * sign})
                        out = out + wedge.wedge(rest_el)
        return out

    def coadjoint(self, lab, omega: ExtElement) -> ExtElement:
        """Lie derivative L_X on a wedge of dual-basis covectors.

        Works over g* or any subspace of its labels (e.g. q*):
        L_X theta^c = -sum_b c^c_{X,b} theta^b.
        """
        from .exterior import sort_word
        a = self.index[lab]
        space = omega.space
        out = ExtElement.zero(space)
        for w, coeff in omega.terms.items():
            for pos, c_local in enumerate(w):
                c_global = self.index[space.labels[c_local]]
                for b_local in range(space.dim):
                    b_global = self.index[space.labels[b_local]]
                    cc = self.C[(a, b_global)].get(c_global)
                    if not cc:
                        continue
                    sw, sign = sort_word(w[:pos] + (b_local,) + w[pos + 1:])
                    if sw is None:
                        continue
                    out = out + ExtElement(space, {sw: -coeff * cc * sign})
        return out

    def volume_form(self):
        """Top wedge over g* (the covolume dual)."""
        return ExtElement(self.gstar_space, {tuple(range(self.dim)): Fraction(1)})

    def covolume(self):
        return ExtElement(self.g_space, {tuple(range(self.dim)): Fraction(1)})


_LIE_CACHE = {}


def lie_data(n) -> LieData:
    if n not in _LIE_CACHE:
        _LIE_CACHE[n] = LieData(n)
    return _LIE_CACHE[n]


# -- formal vector fields (for the van Est side) ---------------------------


def a_labels(n, depth):
    """Basis labels (i, alpha) of the formal algebra up to order depth."""
    labs = []
    for alpha in multi_indices(n, 0, depth):
        for i in range(1, n + 1):
            labs.append((i, alpha))
    # graded order: by |alpha| then lexicographic, then component
    labs.sort(key=lambda t: (sum(t[1]), t[1], t[0]))
    return labs


def a_star_space(n, depth) -> ExtSpace:
    return ExtSpace(f"a*({depth})", a_labels(n, depth))


def n_star_labels(n, depth):
    return [lab for lab in a_labels(n, depth) if sum(lab[1]) >= 2]


def evaluate_wedge(omega: ExtElement, vectors):
    """Evaluate a wedge of dual-basis covectors on a list of vectors.

    Vectors are {(i, alpha): coefficient} dicts; coefficients may be MPoly.
    Returns a scalar/MPoly: sum over terms of coeff * det(pairings).
    """
    from .poly import MPoly
    r = len(vectors)
    total = MPoly.const(0)
    for w, coeff in omega.terms.items():
        if len(w) != r:
            raise CASError("degree mismatch in wedge evaluation")
        labels = [omega.space.labels[i] for i in w]
        mat = [[MPoly.promote(v.get(lab, 0)) for v in vectors] for lab in labels]
        total = total + MPoly.promote(coeff) * _det_mpoly(mat)
    return total


def _det_mpoly(M):
    from .poly import MPoly
    r = len(M)
    if r == 0:
        return MPoly.const(1)
    if r == 1:
        return M[0][0]
    det = MPoly.const(0)
    for j in range(r):
        minor = [row[:j] + row[j + 1:] for row in M[1:]]
        term = M[0][j] * _det_mpoly(minor)
        det = det + (term if j % 2 == 0 else -term)
    return det


def ce_d_formal(omega: ExtElement, n: int) -> ExtElement:
    """CE differential of a cochain over a_star(n, D), landing in depth D+1."""
    depth = max((sum(lab[1]) for lab in omega.space.labels), default=0)
    target = a_star_space(n, depth + 1)
    out = ExtElement.zero(target)
    src_labels = omega.space.labels
    tgt_labels = target.labels
    tgt_index = target.index
    r_words = {}
    for w, coeff in omega.terms.items():
        r = len(w) + 1
        # (d w)(v_0..v_r) = sum_{i<j} (-1)^{i+j} w([v_i,v_j], v_0..^i..^j..v_r)
        # expand over basis vectors of the target space
        for word in combinations(range(len(tgt_labels)), r):
            val = Fraction(0)
            labs = [tgt_labels[t] for t in word]
            for i in range(r):
                for j in range(i + 1, r):
                    rest = [labs[t] for t in range(r) if t not in (i, j)]
                    if any(lab not in omega.space.index for lab in rest):
                        continue
                    br = bracket_fields({labs[i]: Fraction(1)}, {labs[j]: Fraction(1)})
                    for key, c in br.items():
                        if key not in omega.space.index:
                            continue
                        from .exterior import sort_word
                        idx_word = tuple(omega.space.index[lab] for lab in [key] + rest)
                        sw, sign = sort_word(idx_word)
                        if sw is None or sw != w:
                            continue
                        val += coeff * c * sign * ((-1) ** (i + j))
            if val:
                r_words[word] = r_words.get(word, Fraction(0)) + val
    for word, val in r_words.items():
        if val:
            out = out + ExtElement(target, {word: val})
    return out
