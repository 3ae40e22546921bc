"""The small example algebras and operator families used throughout the tests."""
import numpy as np

from .algebras import FDAlgebra
from .fields import QQ
from .linalg import coerce


def A3(field=QQ):
    """3-dim JJ algebra: e1*e1 = e2 = e3*e3."""
    return FDAlgebra.from_table(3, field, {(0, 0): {1: 1}, (2, 2): {1: 1}}, name="A3")


def A4x(field=QQ):
    """e1*e1 = e2, e1*e4 = e4*e1 = e4. Jacobi only in characteristic 2."""
    return FDAlgebra.from_table(4, field, {(0, 0): {1: 1}, (0, 3): {3: 1}, (3, 0): {3: 1}},
                                name="A4x")


def P2(field=QQ):
    """2-dim left pre-JJ algebra: e1.e1 = e2."""
    return FDAlgebra.from_table(2, field, {(0, 0): {1: 1}}, name="P2")


def Q3(field=QQ):
    """Noncommutative 2-step nilpotent algebra e1.e3 = e2; left pre-JJ."""
    return FDAlgebra.from_table(3, field, {(0, 2): {1: 1}}, name="Q3")


def Z(n, field=QQ):
    return FDAlgebra.zero(n, field)


def T0(a_dim, v_dim, field=QQ):
    return coerce(np.zeros((a_dim, v_dim), dtype=int), field)


def a3_family_zero(a2, c2, field=QQ):
    """A3 operator with T(e1) = a2 e2, T(e3) = c2 e2, T(e2) = 0."""
    return coerce([[0, 0, 0], [a2, 0, c2], [0, 0, 0]], field)


def a3_family_b2(a2, b2, c2, field=QQ):
    """A3 operator with T(e1) = a2 e2, T(e2) = b2 e2, T(e3) = c2 e2 + 2 b2 e3."""
    return coerce([[0, 0, 0], [a2, b2, c2], [0, 0, 2 * b2]], field)


def a3_b2_operator(field=QQ):
    """T(e2) = e2, T(e3) = 2e3: the family above at a2 = c2 = 0, b2 = 1."""
    return a3_family_b2(0, 1, 0, field)


def p2_T_prime(y, b, field=QQ):
    """[[2b, 0], [y, b]]."""
    return coerce([[2 * b, 0], [y, b]], field)


def p2_T(y, b, field=QQ):
    """[[0, 0], [y, b]]."""
    return coerce([[0, 0], [y, b]], field)


def a3_system(t):
    """Residuals of the polynomial system cutting out RB operators on A3 (regular rep).

    t is an integer array (..., 3, 3) with columns T(e1), T(e2), T(e3); the
    returned array stacks the residuals on the last axis.
    """
    a1, a2, a3 = t[..., 0, 0], t[..., 1, 0], t[..., 2, 0]
    b1, b2, b3 = t[..., 0, 1], t[..., 1, 1], t[..., 2, 1]
    c1, c2, c3 = t[..., 0, 2], t[..., 1, 2], t[..., 2, 2]
    del a2, c2                  # free parameters: they appear in no equation
    return np.stack([
        b1, b3,
        a1 * a1 + a3 * a3 - 2 * a1 * b2,
        a1 * c1 + a3 * c3 - a3 * b2 - b2 * c1,
        c1 * c1 + c3 * c3 - 2 * b2 * c3,
    ], axis=-1)


def p2_system(t):
    """Residuals for P2 with T = [[x, a], [y, b]]: x^2 - 2xb, xa, a^2, xa - ab."""
    x, a, b = t[..., 0, 0], t[..., 0, 1], t[..., 1, 1]
    return np.stack([x * x - 2 * x * b, x * a, a * a, x * a - a * b], axis=-1)
