from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from jjalg import GF, QQ
from jjalg import fixtures as fx
from jjalg.algebras import FDAlgebra, check_structure
from jjalg.deformations import (DeformationGenerator, MultDeformation, NijenhuisCandidate,
                                build_NT, coboundary_generator, deformation_equivalence_check,
                                deformed_algebra, delta1, generates_mult_deformation,
                                generates_mult_deformation_polynomial, generates_rb_deformation,
                                generates_rb_deformation_polynomial, induced_product_deformation,
                                intertwines, is_nijenhuis_element, is_nijenhuis_operator,
                                is_weight_rb_minus_one, mult_deformation_equivalence,
                                nijenhuis_set, nt_is_nijenhuis, partial,
                                rb_nijenhuis_composition_check, reduce_context,
                                trivial_deformation)
from jjalg.errors import DimensionError, NotJacobiJordan, NotRelativeRB, PreconditionError
from jjalg.linalg import coerce, identity, zeros
from jjalg.relative_rb import RelRBContext, induced_product, is_relative_rb
from jjalg.representations import Representation, regular_representation, zero_representation

from strategies import matrices

F5 = GF(5)
E1_TO_E2 = fx.a3_family_zero(1, 0)          # the generator e1 -> e2, everything else -> 0
N_E21 = [[0, 0, 0], [1, 0, 0], [0, 0, 0]]   # the same map read as an endomorphism of A3


def a3(t, field=QQ):
    a = fx.A3(field)
    return RelRBContext(a, regular_representation(a), coerce(t, field))


def p2(t, field=QQ):
    a = fx.P2(field)
    return RelRBContext(a, regular_representation(a, "prejj"), coerce(t, field))


B2 = a3(fx.a3_b2_operator())
P2T = p2(fx.p2_T_prime(0, 1))


class TestGenerators:
    @pytest.mark.parametrize("ctx", [B2, P2T], ids=["A3", "P2"])
    def test_zero_and_operator(self, ctx):
        assert generates_rb_deformation(DeformationGenerator(ctx, zeros(ctx.t.shape, QQ)))
        assert generates_rb_deformation(DeformationGenerator(ctx, ctx.t))

    def test_family_direction(self):
        g = DeformationGenerator(B2, E1_TO_E2)
        assert generates_rb_deformation(g) and generates_rb_deformation_polynomial(g)
        for t in (-2, 1, 3):
            assert is_relative_rb(B2.with_operator(fx.a3_family_b2(t, 1, 0)))

    def test_non_generator(self):
        bad = coerce([[1, 0, 0], [0, 0, 0], [0, 0, 0]], QQ)
        g = DeformationGenerator(B2, bad)
        assert not generates_rb_deformation(g)
        assert not generates_rb_deformation_polynomial(g)

    def test_requires_operator(self):
        ctx = B2.with_operator([[1, 0, 0], [0, 0, 0], [0, 0, 0]])
        with pytest.raises(NotRelativeRB):
            generates_rb_deformation(DeformationGenerator(ctx, zeros((3, 3), QQ)))

    def test_shape(self):
        with pytest.raises(DimensionError):
            DeformationGenerator(B2, zeros((3, 2), QQ))


class TestInducedProductDeformation:
    def test_zero(self):
        assert np.all(induced_product_deformation(DeformationGenerator(B2, zeros((3, 3), QQ))) == 0)

    @pytest.mark.parametrize("ctx", [B2, P2T], ids=["A3", "P2"])
    def test_operator_gives_induced_product(self, ctx):
        omega = induced_product_deformation(DeformationGenerator(ctx, ctx.t))
        assert np.all(omega == induced_product(ctx))

    def test_family_direction_table(self):
        # rho(e2) = 0 and only T-images in span(e2) enter, so omega vanishes identically
        omega = induced_product_deformation(DeformationGenerator(B2, E1_TO_E2))
        assert np.all(omega == 0)

    def test_prejj_uses_both_actions(self):
        # on Q3 (e1.e3 = e2) the operator e3 -> e3 induces e1 ._T e3 = e2 but e3 ._T e1 = 0;
        # the symmetric form rho(Zu)v + rho(Zv)u would give 0 in both slots
        a = fx.Q3()
        ctx = RelRBContext(a, regular_representation(a, "prejj"), [[0, 0, 0], [0, 0, 0], [0, 0, 1]])
        omega = induced_product_deformation(DeformationGenerator(ctx, ctx.t))
        assert omega[0, 2, 1] == 1 and omega[2, 0, 1] == 0
        symmetric = np.einsum("pi,pab,bj->ija", ctx.t, ctx.rho, identity(3, QQ))
        symmetric = symmetric + np.einsum("ijk->jik", symmetric)
        assert np.all(symmetric == 0)

    def test_precondition(self):
        with pytest.raises(PreconditionError):
            induced_product_deformation(DeformationGenerator(B2, [[1, 0, 0], [0, 0, 0], [0, 0, 0]]))


class TestEquivalence:
    def test_same_generator(self):
        g = DeformationGenerator(B2, E1_TO_E2)
        assert deformation_equivalence_check(g, g, [0, 0, 0])

    def test_coboundary_pair(self):
        j2 = coboundary_generator(B2, [1, 0, 0])
        assert np.all(j2 == -partial(B2, [1, 0, 0]))
        g1 = DeformationGenerator(B2, zeros((3, 3), QQ))
        assert deformation_equivalence_check(g1, DeformationGenerator(B2, j2), [1, 0, 0])

    def test_difference_not_a_coboundary(self):
        g1 = DeformationGenerator(B2, zeros((3, 3), QQ))
        g2 = DeformationGenerator(B2, E1_TO_E2)
        chk = deformation_equivalence_check(g1, g2, [0, 0, 0])
        assert not chk and "J2 - J1" in chk.condition

    def test_different_operators(self):
        g1 = DeformationGenerator(B2, zeros((3, 3), QQ))
        g2 = DeformationGenerator(a3(fx.a3_family_b2(1, 1, 0)), zeros((3, 3), QQ))
        with pytest.raises(DimensionError):
            deformation_equivalence_check(g1, g2, [0, 0, 0])


class TestNijenhuisElements:
    @pytest.mark.parametrize("x", [[0, 0, 0], [0, 1, 0], [1, 0, 0]])
    def test_examples(self, x):
        assert is_nijenhuis_element(B2, x)

    def test_zero_algebra(self):
        z = fx.Z(2, F5)
        ctx = RelRBContext(z, zero_representation(z, 2), fx.T0(2, 2, F5))
        assert len(nijenhuis_set(ctx).elements) == 25

    def test_finite_sets(self):
        assert len(nijenhuis_set(a3(fx.a3_b2_operator(F5), F5)).elements) == 125
        assert len(nijenhuis_set(p2(fx.p2_T_prime(0, 1, F5), F5)).elements) == 25

    def test_rational_guide(self):
        s = nijenhuis_set(B2)
        assert s.guide_prime == 5 and len(s.elements) == 125
        assert [1, 2, 3] in s

    def test_guide_unavailable(self):
        ctx = a3(fx.a3_family_b2(Fraction(1, 5), 1, 0))
        s = nijenhuis_set(ctx)
        assert s.elements is None and s.guide_prime is None
        with pytest.raises(PreconditionError):
            reduce_context(ctx, 5)


class TestTrivialDeformation:
    def test_t_zero(self):
        assert np.all(trivial_deformation(B2, [1, 2, 3], 0) == B2.t)

    def test_lands_in_family(self):
        assert np.all(trivial_deformation(B2, [1, 0, 0], 1) == fx.a3_family_b2(1, 1, 0))

    @pytest.mark.parametrize("t", [1, -1, Fraction(1, 2), 2])
    def test_central_element(self, t):
        assert np.all(trivial_deformation(B2, [0, 1, 0], t) == B2.t)

    @pytest.mark.parametrize("t", [1, -1, Fraction(1, 2)])
    def test_prejj(self, t):
        out = trivial_deformation(P2T, [1, 0], t)
        assert is_relative_rb(P2T.with_operator(out))
        assert np.all(out == P2T.t + t * coboundary_generator(P2T, [1, 0]))

    def test_requires_nijenhuis_element(self):
        ctx = twisted_context()
        chk = is_nijenhuis_element(ctx, [0, 0, 1])
        assert not chk and chk.condition.startswith("theta_A T theta_V")
        with pytest.raises(PreconditionError):
            trivial_deformation(ctx, [0, 0, 1], 1)
        assert len(nijenhuis_set(ctx).elements) == 25


def twisted_context():
    """A3 on F5^2 with rho(e1) = E12, rho(e3) = 2 E12 and T(v1) = e1 + 2 e3.

    T is an operator only because 1 + 2^2 = 0 in F5; here most elements fail
    the last Nijenhuis condition, unlike the regular contexts.
    """
    a = fx.A3(F5)
    rep = Representation(a, coerce([[[0, 1], [0, 0]], [[0, 0], [0, 0]], [[0, 2], [0, 0]]], F5), 2)
    return RelRBContext(a, rep, coerce([[1, 0], [0, 0], [2, 0]], F5))


class TestMultDeformations:
    def test_examples(self):
        a = fx.A3()
        for psi in (zeros((3, 3, 3), QQ), a.c, delta1(a, N_E21)):
            md = MultDeformation(a, psi)
            assert generates_mult_deformation(md) and generates_mult_deformation_polynomial(md)

    def test_asymmetric_psi(self):
        psi = zeros((3, 3, 3), QQ)
        psi[0, 2, 1] = QQ(1)
        chk = generates_mult_deformation(MultDeformation(fx.A3(), psi))
        assert not chk and "symmetric" in chk.condition
        assert not generates_mult_deformation_polynomial(MultDeformation(fx.A3(), psi))

    def test_requires_jj(self):
        with pytest.raises(NotJacobiJordan):
            generates_mult_deformation(MultDeformation(fx.A4x(), zeros((4, 4, 4), QQ)))

    def test_equivalence(self):
        a = fx.A3()
        assert is_nijenhuis_operator(NijenhuisCandidate(a, N_E21))
        assert mult_deformation_equivalence(a, a.c, a.c, zeros((3, 3), QQ))
        assert mult_deformation_equivalence(a, delta1(a, N_E21), zeros((3, 3, 3), QQ), N_E21)
        assert intertwines(a, delta1(a, N_E21), zeros((3, 3, 3), QQ), N_E21)
        chk = mult_deformation_equivalence(a, zeros((3, 3, 3), QQ), a.c, zeros((3, 3), QQ))
        assert not chk and "delta1" in chk.condition


class TestNijenhuisOperators:
    def test_examples(self):
        a = fx.A3()
        assert is_nijenhuis_operator(NijenhuisCandidate(a, identity(3, QQ)))
        assert is_nijenhuis_operator(NijenhuisCandidate(a, zeros((3, 3), QQ)))
        assert is_nijenhuis_operator(NijenhuisCandidate(a, 2 * identity(3, QQ)))
        chk = is_nijenhuis_operator(NijenhuisCandidate(a, [[1, 0, 0], [0, 2, 0], [0, 0, 1]]))
        assert not chk and chk.witness == (0, 0)

    def test_identity_is_weight_minus_one(self):
        assert is_weight_rb_minus_one(NijenhuisCandidate(fx.A3(), identity(3, QQ)))

    def test_deformed_algebras(self):
        a = fx.A3()
        assert deformed_algebra(NijenhuisCandidate(a, identity(3, QQ)), "jj") == a
        assert np.all(deformed_algebra(NijenhuisCandidate(a, zeros((3, 3), QQ)), "jj").c == 0)
        assert np.all(deformed_algebra(NijenhuisCandidate(a, 2 * identity(3, QQ)), "jj").c == 2 * a.c)
        p = fx.P2()
        assert check_structure(deformed_algebra(NijenhuisCandidate(p, 2 * identity(2, QQ)), "prejj"),
                               "left_prejj")

    def test_deformed_algebra_preconditions(self):
        with pytest.raises(PreconditionError):
            deformed_algebra(NijenhuisCandidate(fx.A3(), [[1, 0, 0], [0, 2, 0], [0, 0, 1]]), "jj")
        with pytest.raises(PreconditionError):
            deformed_algebra(NijenhuisCandidate(fx.A4x(), identity(4, QQ)), "jj")

    def test_square(self):
        with pytest.raises(DimensionError):
            NijenhuisCandidate(fx.A3(), zeros((3, 2), QQ))


class TestBlockOperator:
    def test_zero_operator(self):
        ctx = p2(fx.T0(2, 2))
        n = build_NT(ctx, 1)
        assert np.all(n[:, :2] == 0) and np.all(n[2:, 2:] == -identity(2, QQ))
        assert nt_is_nijenhuis(ctx, 1)

    def test_examples(self):
        assert nt_is_nijenhuis(P2T, 0)
        assert nt_is_nijenhuis(B2, 0)
        bad = B2.with_operator([[1, 0, 0], [0, 0, 0], [0, 0, 0]])
        assert np.all(build_NT(bad)[:3, 3:] == bad.t)
        assert not nt_is_nijenhuis(bad, 0)


class TestComposition:
    def test_examples(self):
        assert rb_nijenhuis_composition_check(B2, identity(3, QQ))
        assert rb_nijenhuis_composition_check(B2, zeros((3, 3), QQ))
        assert rb_nijenhuis_composition_check(P2T, 2 * identity(2, QQ))
        assert np.all(2 * P2T.t == fx.p2_T_prime(0, 2))

    def test_non_nijenhuis(self):
        with pytest.raises(PreconditionError):
            rb_nijenhuis_composition_check(B2, [[1, 0, 0], [0, 2, 0], [0, 0, 1]])


# -- properties ---------------------------------------------------------------------------------

@given(matrices(3, 3, st.integers(0, 4)))
def test_generator_routes_agree_a3(z):
    g = DeformationGenerator(a3(fx.a3_b2_operator(F5), F5), coerce(z, F5))
    assert bool(generates_rb_deformation(g)) == bool(generates_rb_deformation_polynomial(g))


@given(matrices(2, 2, st.integers(0, 4)), st.integers(0, 4), st.integers(0, 4))
def test_generator_routes_agree_p2(z, y, b):
    ctx = p2(fx.p2_T_prime(y, b, F5), F5)
    g = DeformationGenerator(ctx, coerce(z, F5))
    ok = bool(generates_rb_deformation(g))
    assert ok == bool(generates_rb_deformation_polynomial(g))
    if ok:
        omega = induced_product_deformation(g)
        assert omega.shape == (2, 2, 2)


@given(matrices(3, 3, st.integers(0, 4)))
def test_nijenhuis_operators_deform_multiplication(n):
    a = fx.A3(F5)
    n = coerce(n, F5)
    if is_nijenhuis_operator(NijenhuisCandidate(a, n)):
        psi = delta1(a, n)
        assert generates_mult_deformation(MultDeformation(a, psi))
        assert intertwines(a, psi, zeros((3, 3, 3), F5), n)
        deformed_algebra(NijenhuisCandidate(a, n), "jj")
    else:
        assert not intertwines(a, delta1(a, n), zeros((3, 3, 3), F5), n)


@given(st.integers(-2, 2), st.integers(0, 2), st.integers(-2, 2),
       st.lists(st.integers(-2, 2), min_size=3, max_size=3),
       st.sampled_from([1, -1, Fraction(1, 2), Fraction(-1, 2), 2]))
def test_trivial_deformation_on_family(a2, b2, c2, x, t):
    ctx = a3(fx.a3_family_b2(a2, b2, c2))
    if is_nijenhuis_element(ctx, x):
        out = trivial_deformation(ctx, x, t)          # cross-checks both routes internally
        assert is_relative_rb(ctx.with_operator(out))


@given(st.integers(1, 3), st.integers(0, 4))
def test_zero_algebra_everything_nijenhuis(n, seed):
    f = F5
    z = fx.Z(n, f)
    rng = np.random.default_rng(seed)
    m = coerce(rng.integers(0, 5, size=(n, n)).tolist(), f)
    assert is_nijenhuis_operator(NijenhuisCandidate(z, m))
    assert deformed_algebra(NijenhuisCandidate(z, m), "jj") == FDAlgebra.zero(n, f)
