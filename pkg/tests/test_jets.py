import random
from fractions import Fraction

import pytest

from hopfcc.jets import (EPS, Jet, act_G_on_N, jet_compose, jet_deserialize,
                         jet_invert, jet_serialize, kac_factorize, multi_indices)
from hopfcc.poly import CASError, MPoly
from hopfcc.tame import TameDiffeo, random_tame, tame_jet_at


def n1_jet(k, coeffs):
    """1-d N-jet x + c2 x^2 + c3 x^3 + ..."""
    return Jet.from_coeffs(1, k, {(1, (d,)): c for d, c in coeffs.items()})


def rand_n_jet(rng, n, k):
    coeffs = {}
    for i in range(1, n + 1):
        for alpha in multi_indices(n, 2, k):
            coeffs[(i, alpha)] = Fraction(rng.randint(-2, 2))
    return Jet.from_coeffs(n, k, coeffs)


class TestCompose:
    def test_quadratic_composition(self):
        a, b = MPoly.var("a"), MPoly.var("b")
        f = Jet(1, 2, [MPoly.var("x1") + a * MPoly.var("x1") ** 2])
        g = Jet(1, 2, [MPoly.var("x1") + b * MPoly.var("x1") ** 2])
        fg = jet_compose(f, g)
        assert fg.coefficient(1, (2,)) == a + b

    def test_identity_neutral(self):
        rng = random.Random(1)
        f = rand_n_jet(rng, 2, 3)
        e = Jet.identity(2, 3)
        assert jet_compose(f, e) == f
        assert jet_compose(e, f) == f

    def test_cubic_composition(self):
        a2, a3 = MPoly.var("a2"), MPoly.var("a3")
        b2, b3 = MPoly.var("b2"), MPoly.var("b3")
        x = MPoly.var("x1")
        f = Jet(1, 3, [x + a2 * x ** 2 + a3 * x ** 3])
        g = Jet(1, 3, [x + b2 * x ** 2 + b3 * x ** 3])
        fg = jet_compose(f, g)
        assert fg.coefficient(1, (2,)) == a2 + b2
        assert fg.coefficient(1, (3,)) == a3 + 2 * a2 * b2 + b3

    def test_associativity_random(self):
        rng = random.Random(7)
        for n, k in [(1, 4), (2, 3), (2, 4)]:
            for _ in range(4):
                f, g, h = (rand_n_jet(rng, n, k) for _ in range(3))
                assert jet_compose(jet_compose(f, g), h) == jet_compose(f, jet_compose(g, h))


class TestInvert:
    def test_order2(self):
        f = n1_jet(2, {2: MPoly.var("a")})
        assert jet_invert(f).coefficient(1, (2,)) == -MPoly.var("a")

    def test_order3(self):
        a = MPoly.var("a")
        f = n1_jet(3, {2: a})
        inv = jet_invert(f)
        assert inv.coefficient(1, (2,)) == -a
        assert inv.coefficient(1, (3,)) == 2 * a * a

    def test_identity(self):
        e = Jet.identity(2, 3)
        assert jet_invert(e) == e

    def test_round_trip_random(self):
        rng = random.Random(13)
        for n, k in [(1, 4), (2, 3)]:
            f = rand_n_jet(rng, n, k)
            assert jet_compose(f, jet_invert(f)) == Jet.identity(n, k)
            assert jet_compose(jet_invert(f), f) == Jet.identity(n, k)

    def test_affine_with_translation(self):
        f = Jet.affine(1, 3, [[Fraction(2)]], [Fraction(5)])
        g = jet_invert(f)
        assert jet_compose(f, g) == Jet.identity(1, 3)


class TestKac:
    def test_example(self):
        # 2x + x^2 -> affine 2x, tail x + x^2/2
        x = MPoly.var("x1")
        phi = Jet(1, 2, [2 * x + x ** 2])
        aff, tail = kac_factorize(phi)
        assert aff == Jet.affine(1, 2, [[Fraction(2)]], [Fraction(0)])
        assert tail.coefficient(1, (2,)) == MPoly.const(Fraction(1, 2))
        assert jet_compose(aff, tail) == phi

    def test_n_jet_is_normalized(self):
        rng = random.Random(3)
        psi = rand_n_jet(rng, 2, 3)
        aff, tail = kac_factorize(psi)
        assert aff == Jet.identity(2, 3)
        assert tail == psi

    def test_affine_input(self):
        phi = Jet.affine(2, 3, [[1, 1], [0, 1]], [Fraction(2), Fraction(0)])
        aff, tail = kac_factorize(phi)
        assert aff == phi
        assert tail == Jet.identity(2, 3)

    def test_recomposition_random(self):
        rng = random.Random(17)
        psi = rand_n_jet(rng, 2, 3)
        phi = Jet.affine(2, 3, [[1, 2], [1, 1]], [Fraction(1), Fraction(-1)])
        prod = jet_compose(psi, phi)
        aff, tail = kac_factorize(prod)
        assert tail.is_n_jet()
        assert jet_compose(aff, tail) == prod


class TestActGonN:
    def test_identity_action(self):
        rng = random.Random(5)
        psi = rand_n_jet(rng, 2, 3)
        e = Jet.identity(2, 3)
        tail, head = act_G_on_N(psi, e)
        assert tail == psi and head == e

    def test_translation_flow_derivative(self):
        # d/dt of the second coefficient of psi <| exp(t d/dx): 2a2 -> 6a3 - 4a2^2
        a2, a3 = MPoly.var("a2"), MPoly.var("a3")
        x = MPoly.var("x1")
        psi = Jet(1, 3, [x + a2 * x ** 2 + a3 * x ** 3])
        phi = Jet.translation(1, 3, [MPoly.var(EPS)])
        tail, _ = act_G_on_N(psi, phi)
        c2 = tail.coefficient(1, (2,))
        dc2 = MPoly({m[:-1] if m and m[-1][0] == EPS else m: c
                     for m, c in c2.terms.items() if any(v == EPS for v, _ in m)})
        # eta = 2 a2, X |> eta = 6a3 - 4a2^2, so d/dt a2 = 3a3 - 2a2^2
        assert dc2 == 3 * a3 - 2 * a2 * a2

    def test_scaling_flow(self):
        a2 = MPoly.var("a2")
        x = MPoly.var("x1")
        psi = Jet(1, 2, [x + a2 * x ** 2])
        phi = Jet.affine(1, 2, [[MPoly.const(1) + MPoly.var(EPS)]])
        tail, _ = act_G_on_N(psi, phi)
        assert tail.coefficient(1, (2,)) == a2 * (MPoly.const(1) + MPoly.var(EPS))

    def test_right_action_law(self):
        rng = random.Random(23)
        psi = rand_n_jet(rng, 2, 3)
        phi1 = Jet.affine(2, 3, [[1, 1], [0, 1]], [Fraction(1), Fraction(2)])
        phi2 = Jet.affine(2, 3, [[2, 0], [1, 1]], [Fraction(0), Fraction(-1)])
        lhs, _ = act_G_on_N(psi, jet_compose(phi1, phi2))
        t1, _ = act_G_on_N(psi, phi1)
        rhs, _ = act_G_on_N(t1, phi2)
        assert lhs == rhs

    def test_non_affine_rejected(self):
        rng = random.Random(2)
        psi = rand_n_jet(rng, 1, 3)
        with pytest.raises(CASError):
            act_G_on_N(psi, psi)


class TestSimplexCovariance:
    def test_affine_combination_right_translation(self):
        # Delta(psi_0 psi, ..., psi_p psi) = Delta(psi_0,...,psi_p) psi on coefficients
        rng = random.Random(29)
        n, k = 1, 3
        psis = [rand_n_jet(rng, n, k) for _ in range(3)]
        psi = rand_n_jet(rng, n, k)
        ts = [Fraction(1, 2), Fraction(1, 3), Fraction(1, 6)]

        def combo(jets):
            acc = {}
            for t, j in zip(ts, jets):
                for key, val in j.coeff_dict().items():
                    acc[key] = acc.get(key, MPoly.zero()) + t * val
            return Jet.from_coeffs(n, k, acc)

        lhs = combo([jet_compose(p, psi) for p in psis])
        rhs = jet_compose(combo(psis), psi)
        assert lhs == rhs

    def test_affine_combination_is_n_jet(self):
        rng = random.Random(31)
        psis = [rand_n_jet(rng, 2, 2) for _ in range(2)]
        acc = {}
        for t, j in zip([Fraction(1, 4), Fraction(3, 4)], psis):
            for key, val in j.coeff_dict().items():
                acc[key] = acc.get(key, MPoly.zero()) + t * val
        assert Jet.from_coeffs(2, 2, acc).is_n_jet()


class TestTame:
    def test_affine_jet_constant(self):
        phi = TameDiffeo.affine(2, [[1, 2], [0, 1]], [3, 4])
        j = tame_jet_at(phi, [Fraction(5), Fraction(-1)], 3)
        assert j.is_affine()
        assert j.linear_matrix()[0][1] == MPoly.const(2)

    def test_shear_jet(self):
        phi = TameDiffeo.elementary(2, 1, MPoly.var("x2") ** 2)
        j = tame_jet_at(phi, [Fraction(0), Fraction(0)], 3)
        assert j.coefficient(1, (0, 2)) == MPoly.const(1)
        assert j.coefficient(2, (0, 2)).is_zero()

    def test_inverse_word(self):
        rng = random.Random(37)
        phi = random_tame(rng, 2, length=3)
        comp = phi.compose(phi.inverse())
        pt = [Fraction(1, 3), Fraction(-2, 5)]
        assert [c.as_fraction() for c in comp.apply(pt)] == pt

    def test_jacobian_shear(self):
        phi = TameDiffeo.elementary(2, 1, MPoly.var("x2") ** 2)
        J = phi.jacobian()
        assert J[0][1] == 2 * MPoly.var("x2")
        assert J[0][0] == MPoly.const(1)
        assert J[1][0].is_zero() and J[1][1] == MPoly.const(1)

    def test_jacobian_of_inverse_composition(self):
        rng = random.Random(41)
        phi = random_tame(rng, 2, length=2)
        comp = phi.compose(phi.inverse())
        J = comp.jacobian()
        for i in range(2):
            for j in range(2):
                assert J[i][j] == MPoly.const(Fraction(i == j))

    def test_jacobian_det_constant(self):
        rng = random.Random(43)
        for _ in range(5):
            phi = random_tame(rng, 2, length=3)
            assert phi.jacobian_det() != 0

    def test_base_translation_chart(self):
        # n=2, phi(x,y) = (x+y^2, y) at base (0,1): d/dy slot shifts
        phi = TameDiffeo.elementary(2, 1, MPoly.var("x2") ** 2)
        j = tame_jet_at(phi, [Fraction(0), Fraction(1)], 2)
        # phi(base + z) - phi(base) = (z1 + 2 z2 + z2^2, z2)
        assert j.linear_matrix()[0][1] == MPoly.const(2)
        assert j.coefficient(1, (0, 2)) == MPoly.const(1)


class TestSerialization:
    def test_round_trip(self):
        rng = random.Random(47)
        j = rand_n_jet(rng, 2, 3)
        assert jet_deserialize(jet_serialize(j)) == j
