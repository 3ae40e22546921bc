from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from jjalg import GF, QQ
from jjalg.errors import FieldMismatchError, SingularMatrixError
from jjalg.fields import Fp, field_from_name
from jjalg.linalg import coerce, det, identity, invert, kernel_basis, rank, solve

from strategies import FIELDS, matrices

F5 = GF(5)


def q(rows):
    return coerce(rows, QQ)


class TestScalars:
    def test_rationals_are_canonical(self):
        assert QQ("-6/4") == Fraction(-3, 2)
        assert QQ(Fraction(6, -4)).denominator == 2

    def test_residues_reduced(self):
        assert F5(7) == F5(2) and int(F5(-1)) == 4
        assert F5(Fraction(1, 2)) == F5(3)

    def test_denominator_divisible_by_p(self):
        with pytest.raises(ZeroDivisionError):
            F5("3/10")

    def test_field_mismatch(self):
        with pytest.raises(FieldMismatchError):
            Fp(1, 5) + Fp(1, 7)
        with pytest.raises(FieldMismatchError):
            QQ(Fp(1, 5))
        with pytest.raises(FieldMismatchError):
            rank(np.array([[Fp(1, 5), Fp(1, 7)]], dtype=object))

    def test_small_characteristic_needs_override(self):
        with pytest.raises(ValueError):
            GF(2)
        assert GF(3, allow_small_char=True).p == 3
        with pytest.raises(ValueError):
            GF(6)

    def test_floats_rejected(self):
        with pytest.raises(TypeError):
            QQ(0.5)

    def test_field_names(self):
        assert field_from_name("Q") == QQ and field_from_name("F7") == GF(7)
        with pytest.raises(ValueError):
            field_from_name("R")


class TestRank:
    def test_one_pivot(self):
        assert rank(q([[1, 0], [0, 0]])) == 1

    def test_zero(self):
        assert rank(q(np.zeros((3, 3), dtype=int))) == 0

    def test_dependent_rows(self):
        assert rank(q([[1, 2], [2, 4]])) == 1

    def test_rank_depends_on_field(self):
        m = [[1, 2], [3, 1]]          # det = -5
        assert rank(q(m)) == 2 and rank(coerce(m, F5)) == 1


class TestKernel:
    def test_single_row(self):
        (v,) = kernel_basis(q([[1, 1]]))
        assert list(v) == [-1, 1]

    def test_identity(self):
        assert kernel_basis(identity(2, QQ)) == []

    def test_dependent(self):
        m = q([[1, 2], [2, 4]])
        (v,) = kernel_basis(m)
        assert all(x == 0 for x in m @ v)


class TestInvert:
    def test_identity(self):
        assert np.all(invert(identity(3, QQ)) == identity(3, QQ))

    def test_f5_scalar(self):
        assert invert(coerce([[2]], F5))[0, 0] == F5(3)

    def test_unipotent(self):
        assert np.all(invert(q([[1, 1], [0, 1]])) == q([[1, -1], [0, 1]]))

    def test_singular(self):
        with pytest.raises(SingularMatrixError):
            invert(q([[1, 2], [2, 4]]))

    def test_denominators_grow_exactly(self):
        hilbert = q([[Fraction(1, i + j + 1) for j in range(5)] for i in range(5)])
        inv = invert(hilbert)
        assert inv[4, 4] == 44100
        assert np.all(hilbert @ inv == identity(5, QQ))


def test_solve_and_det():
    m = q([[2, 1], [1, 3]])
    x = solve(m, [3, 5])
    assert list(m @ x) == [3, 5]
    assert det(m) == 5
    with pytest.raises(SingularMatrixError):
        solve(q([[1, 1], [1, 1]]), [0, 1])


@given(FIELDS, st.integers(1, 4), st.integers(1, 4), st.data())
def test_rank_nullity(field, r, c, data):
    m = coerce(data.draw(matrices(r, c)), field)
    basis = kernel_basis(m)
    assert rank(m) + len(basis) == c
    for v in basis:
        assert all(x == 0 for x in m @ v)


@given(FIELDS, st.integers(1, 4), st.data())
def test_inverse_both_sides(field, n, data):
    m = coerce(data.draw(matrices(n, n)), field)
    try:
        inv = invert(m)
    except SingularMatrixError:
        assert rank(m) < n and det(m) == 0
        return
    assert np.all(m @ inv == identity(n, field)) and np.all(inv @ m == identity(n, field))


@given(FIELDS, st.data())
def test_deterministic(field, data):
    m = coerce(data.draw(matrices(3, 4)), field)
    a, b = kernel_basis(m), kernel_basis(m.copy())
    assert len(a) == len(b) and all(np.all(x == y) for x, y in zip(a, b))
