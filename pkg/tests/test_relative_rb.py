from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from jjalg import GF, QQ
from jjalg import fixtures as fx
from jjalg.algebras import FDAlgebra, check_structure, is_rota_baxter_weight, sub_adjacent
from jjalg.deformations import NijenhuisCandidate, is_nijenhuis_operator
from jjalg.errors import NotRelativeRB, PreconditionError, SingularMatrixError
from jjalg.linalg import coerce, identity, zeros
from jjalg.relative_rb import (MorphismPair, RelRBContext, are_compatible, conjugate_rb,
                               graph_subalgebra_check, induced_prejj_from_jj, induced_structures,
                               is_rb_morphism, is_relative_rb, lift_is_rota_baxter, lift_operator,
                               nijenhuis_from_compatible, pencil_is_rb, pencil_sampled,
                               prejj_from_invertible_rb, projection_operator,
                               rb_implies_subadjacent_rb, satisfies_scaled_rb)
from jjalg.representations import is_valid, regular_representation, zero_representation

from strategies import matrices

SWAP13 = coerce([[0, 0, 1], [0, 1, 0], [1, 0, 0]], QQ)
BAD_A3 = [[1, 0, 0], [0, 0, 0], [0, 0, 0]]      # e1 -> e1


def a3(t):
    a = fx.A3()
    return RelRBContext(a, regular_representation(a), t)


def p2(t):
    a = fx.P2()
    return RelRBContext(a, regular_representation(a, "prejj"), t)


class TestOperatorIdentity:
    def test_examples(self):
        assert is_relative_rb(a3(fx.T0(3, 3)))
        assert is_relative_rb(a3(fx.a3_family_b2(1, 1, 0)))
        assert is_relative_rb(p2(fx.p2_T_prime(0, 1)))

    def test_witness(self):
        chk = is_relative_rb(a3(BAD_A3))
        assert not chk and chk.witness == (0, 0) and chk.value == "e2"

    def test_shape_checked(self):
        with pytest.raises(ValueError):
            a3([[1, 0], [0, 1]])

    def test_graph_and_lift_agree(self):
        for t in (fx.T0(3, 3), fx.a3_family_b2(1, 1, 0), BAD_A3):
            ctx = a3(t)
            assert bool(graph_subalgebra_check(ctx)) == bool(is_relative_rb(ctx)) == bool(lift_is_rota_baxter(ctx))
        assert np.all(lift_operator(a3(fx.T0(3, 3))) == 0)
        assert not lift_is_rota_baxter(a3(BAD_A3))


class TestInduced:
    def test_zero_operator(self):
        ind = induced_structures(a3(fx.T0(3, 3)))
        assert np.all(ind.v_alg.c == 0) and np.all(ind.a_rep.rho == 0)

    def test_b2_operator(self):
        ind = induced_structures(a3(fx.a3_b2_operator()))
        c = ind.v_alg.c
        assert c[2, 2, 1] == 4 and sum(1 for v in c.flat if v != 0) == 1
        t = fx.a3_b2_operator()
        assert list(t @ c[2, 2]) == [0, 4, 0]

    def test_e2_acts_trivially(self):
        ind = induced_structures(a3(fx.a3_family_zero(1, 0)))
        assert np.all(ind.v_alg.c == 0) and np.all(ind.a_rep.rho == 0)

    def test_requires_operator(self):
        with pytest.raises(NotRelativeRB):
            induced_structures(a3(BAD_A3))

    def test_prejj_from_jj(self):
        assert np.all(induced_prejj_from_jj(a3(fx.T0(3, 3))).c == 0)
        ctx = a3(fx.a3_b2_operator())
        dot = induced_prejj_from_jj(ctx)
        assert dot.c[2, 2, 1] == 2
        assert check_structure(dot, "left_prejj")
        assert sub_adjacent(dot) == FDAlgebra(3, QQ, induced_structures(ctx).v_alg.c)

    def test_weight_zero_corollary(self):
        a = fx.A3()
        r = coerce([[0, 0, 0], [1, 0, 0], [0, 0, 0]], QQ)
        assert is_rota_baxter_weight(a, r, 0)
        dot = induced_prejj_from_jj(a3(r))
        assert np.all(dot.c == np.einsum("pi,pjk->ijk", r, a.c))
        assert check_structure(dot, "left_prejj")

    def test_invertible_operator(self):
        jj = rb_implies_subadjacent_rb(p2(fx.p2_T_prime(0, 1)))
        dot = prejj_from_invertible_rb(jj)
        assert np.all(dot.c + np.einsum("jik->ijk", dot.c) == jj.alg.c)
        assert check_structure(dot, "left_prejj")


class TestMorphisms:
    def test_identity_pairs(self):
        ctx = a3(fx.a3_family_b2(1, 1, 0))
        other = a3(fx.a3_family_b2(0, 1, 0))
        ident = MorphismPair(identity(3, QQ), identity(3, QQ))
        assert is_rb_morphism(ident, ctx, ctx)
        assert not is_rb_morphism(ident, ctx, other)

    @pytest.mark.parametrize("a2,c2", [(1, 2), (-2, 0), (0, 1)])
    def test_swap_exchanges_parameters(self, a2, c2):
        src, dst = a3(fx.a3_family_zero(c2, a2)), a3(fx.a3_family_zero(a2, c2))
        assert is_rb_morphism(MorphismPair(SWAP13, SWAP13), src, dst)

    def test_swap_leaves_b2_family(self):
        t = fx.a3_family_b2(1, 1, 0)
        swapped = SWAP13 @ t @ SWAP13
        assert is_relative_rb(a3(swapped))
        assert not np.all(swapped == fx.a3_family_b2(0, 1, 1))

    def test_conjugation(self):
        ctx = a3(fx.a3_family_b2(1, 1, 0))
        assert np.all(conjugate_rb(MorphismPair(identity(3, QQ), identity(3, QQ)), ctx) == ctx.t)
        out = conjugate_rb(MorphismPair(SWAP13, SWAP13), a3(fx.a3_family_zero(1, 2)))
        assert np.all(out == fx.a3_family_zero(2, 1)) and is_relative_rb(a3(out))

    def test_uniform_scaling(self):
        two = 2 * identity(3, QQ)
        with pytest.raises(PreconditionError):      # 2 Id is not an automorphism of A3
            conjugate_rb(MorphismPair(two, two), a3(fx.a3_b2_operator()))
        z = fx.Z(3)
        ctx = RelRBContext(z, zero_representation(z, 2), [[1, 0], [0, 1], [2, 3]])
        assert np.all(conjugate_rb(MorphismPair(two, 2 * identity(2, QQ)), ctx) == ctx.t)

    def test_singular_conjugators(self):
        z = fx.Z(2)
        ctx = RelRBContext(z, zero_representation(z, 2), identity(2, QQ))
        with pytest.raises(SingularMatrixError):
            conjugate_rb(MorphismPair(identity(2, QQ), zeros((2, 2), QQ)), ctx)


class TestCompatible:
    def test_examples(self):
        t = a3(fx.a3_family_b2(1, 1, 0))
        assert are_compatible(t, t)
        assert are_compatible(a3(fx.T0(3, 3)), t)
        c1, c2 = p2(fx.p2_T_prime(0, 1)), p2(fx.p2_T_prime(0, 2))
        assert are_compatible(c1, c2) and pencil_is_rb(c1, c2) and pencil_sampled(c1, c2)

    def test_incompatible_pair(self):
        # k1 T'_{0,1} + k2 T_{0,1} = [[2k1, 0], [0, k1 + k2]] needs k2 = 0
        c1, c2 = p2(fx.p2_T_prime(0, 1)), p2(fx.p2_T(0, 1))
        assert is_relative_rb(c1) and is_relative_rb(c2)
        chk = are_compatible(c1, c2)
        assert not chk and chk.witness == (0, 0)
        assert not pencil_is_rb(c1, c2) and not pencil_sampled(c1, c2)
        c4 = a3(fx.a3_family_zero(1, 0))
        assert are_compatible(a3(fx.a3_b2_operator()), c4)

    def test_nijenhuis_from_pairs(self):
        c1 = p2(fx.p2_T_prime(0, 1))
        assert np.all(nijenhuis_from_compatible(c1, c1) == identity(2, QQ))
        assert np.all(nijenhuis_from_compatible(p2(fx.T0(2, 2)), c1) == 0)
        n = nijenhuis_from_compatible(p2(fx.p2_T_prime(0, 2)), c1)
        assert np.all(n == 2 * identity(2, QQ))
        assert is_nijenhuis_operator(NijenhuisCandidate(fx.P2(), n))

    def test_singular_second_operator(self):
        c = p2(fx.p2_T(1, 1))
        with pytest.raises(SingularMatrixError):
            nijenhuis_from_compatible(c, c)


class TestSubadjacent:
    @pytest.mark.parametrize("t", [fx.T0(2, 2), fx.p2_T_prime(0, 1), fx.p2_T(1, 2),
                                   fx.p2_T(-2, 1), fx.p2_T_prime(3, -1)])
    def test_operator_survives(self, t):
        jj = rb_implies_subadjacent_rb(p2(t))
        assert jj.species == "jj" and is_relative_rb(jj)

    def test_requires_prejj(self):
        with pytest.raises(PreconditionError):
            rb_implies_subadjacent_rb(a3(fx.T0(3, 3)))


class TestProjection:
    def test_scalar_two(self):
        a = fx.A3()
        rep = regular_representation(a)
        for scale in (1, Fraction(1, 2), 3):
            ctx = projection_operator(a, rep, scale)
            assert satisfies_scaled_rb(ctx, 2)
            assert not is_relative_rb(ctx)


@given(matrices(3, 3, st.integers(0, 4)))
def test_equivalences_on_random_maps(m):
    a = fx.A3(GF(5))
    ctx = RelRBContext(a, regular_representation(a), coerce(m, GF(5)))
    rb = bool(is_relative_rb(ctx))
    assert rb == bool(graph_subalgebra_check(ctx)) == bool(lift_is_rota_baxter(ctx))
    if rb:
        ind = induced_structures(ctx)      # raises if a stated consequence fails
        assert is_valid(ind.a_rep)


@given(st.integers(-3, 3), st.integers(-3, 3), st.integers(-3, 3))
def test_family_is_closed_under_pencils(a2, b2, c2):
    if b2 < 0:
        b2 = -b2
    c1, c2_ = a3(fx.a3_family_b2(a2, b2, c2)), a3(fx.a3_family_zero(c2, a2))
    assert bool(are_compatible(c1, c2_)) == bool(pencil_is_rb(c1, c2_))
