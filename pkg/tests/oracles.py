"""Independent reference computations for the test suite.

Everything here is written with plain loops over Fractions (or ints mod p) and
sympy ranks, so it shares no code path with the einsum-based library.
"""
from fractions import Fraction
import itertools

import sympy


def _num(v):
    """Library scalar -> Fraction (F_p residues come back as ints)."""
    return Fraction(int(v)) if hasattr(v, "p") else Fraction(v)


def tensor(c):
    n = len(c)
    return [[[_num(c[i][j][k]) for k in range(n)] for j in range(n)] for i in range(n)]


def matrix(m):
    return [[_num(v) for v in row] for row in m]


def mul(c, x, y):
    n = len(c)
    out = [Fraction(0)] * n
    for i in range(n):
        if x[i] == 0:
            continue
        for j in range(n):
            if y[j] == 0:
                continue
            for k in range(n):
                out[k] += x[i] * y[j] * c[i][j][k]
    return out


def apply(m, v):
    return [sum(m[r][s] * v[s] for s in range(len(v))) for r in range(len(m))]


def act(rho, x, v):
    """(sum_i x_i rho[i]) v."""
    out = [Fraction(0)] * len(v)
    for i, xi in enumerate(x):
        if xi:
            w = apply(rho[i], v)
            out = [a + xi * b for a, b in zip(out, w)]
    return out


def col(m, j):
    return [row[j] for row in m]


def unit(n, i):
    return [Fraction(int(k == i)) for k in range(n)]


def rb_holds(c, rho, mu, t, p=None):
    """T(u)T(v) == T(rho(Tu)v + mu(Tv)u) on all basis pairs."""
    v = len(t[0])
    for i in range(v):
        for j in range(v):
            tu, tv = col(t, i), col(t, j)
            lhs = mul(c, tu, tv)
            inner = [x + y for x, y in zip(act(rho, tu, unit(v, j)), act(mu, tv, unit(v, i)))]
            rhs = apply(t, inner)
            diff = [x - y for x, y in zip(lhs, rhs)]
            if p is None and any(diff):
                return False
            if p is not None and any(int(d) % p for d in diff):
                return False
    return True


def jacobi_holds(c, p=None):
    n = len(c)
    for x, y, z in itertools.product(range(n), repeat=3):
        e = lambda i: unit(n, i)
        s = [a + b + d for a, b, d in zip(mul(c, mul(c, e(x), e(y)), e(z)),
                                          mul(c, mul(c, e(y), e(z)), e(x)),
                                          mul(c, mul(c, e(z), e(x)), e(y)))]
        if any((int(v) % p if p else v) for v in s):
            return False
    return True


# -- cohomology by hand (degree-1 cohomology) -------------------------------------------------

def induced_jj(c, rho, t):
    """(star_T, rho_T) from the displayed formulas, as nested lists."""
    a, v = len(t), len(t[0])
    star = [[[Fraction(0)] * v for _ in range(v)] for _ in range(v)]
    for i in range(v):
        for j in range(v):
            w = [x + y for x, y in zip(act(rho, col(t, i), unit(v, j)), act(rho, col(t, j), unit(v, i)))]
            star[i][j] = w
    rho_t = []          # rho_t[u] is an a x a matrix
    for u in range(v):
        m = [[Fraction(0)] * a for _ in range(a)]
        for x in range(a):
            img = [p - q for p, q in zip(mul(c, col(t, u), unit(a, x)),
                                         apply(t, act(rho, unit(a, x), unit(v, u))))]
            for r in range(a):
                m[r][x] = img[r]
        rho_t.append(m)
    return star, rho_t


def d1_jj(c, rho, t):
    """Matrix of d^1 f(u1,u2) = rho_T(u1) f(u2) + rho_T(u2) f(u1) + f(u1 *_T u2).

    Columns index f(e_u)_r at u*a + r; rows index (u1, u2, k) lexicographically.
    """
    a, v = len(t), len(t[0])
    star, rho_t = induced_jj(c, rho, t)
    rows = []
    for u1 in range(v):
        for u2 in range(v):
            for k in range(a):
                row = [Fraction(0)] * (v * a)
                for r in range(a):
                    row[u2 * a + r] += rho_t[u1][k][r]
                    row[u1 * a + r] += rho_t[u2][k][r]
                for w in range(v):
                    row[w * a + k] += star[u1][u2][w]
                rows.append(row)
    return sympy.Matrix(rows), rho_t


def h1_jj(c, rho, t):
    """(dim H^1, dim ker d^1, rank delta^0) for a JJ context."""
    a, v = len(t), len(t[0])
    d1, rho_t = d1_jj(c, rho, t)
    z = v * a - d1.rank()
    d0 = sympy.Matrix([[rho_t[u][k][x] for x in range(a)] for u in range(v) for k in range(a)])
    return z - d0.rank(), z, d0.rank()
