"""Exact linear algebra on numpy object arrays over Q or F_p.

Matrices are 2-d object arrays whose columns are images of basis vectors.
Elimination is plain Gauss-Jordan; no pivoting strategy is needed because
arithmetic is exact.
"""
import numpy as np

from .errors import DimensionError, FieldMismatchError, SingularMatrixError
from .fields import QQ, Field, Fp


def detect_field(*arrays):
    """Field of the entries; plain ints/Fractions count as Q. Mixed primes raise."""
    p = None
    for a in arrays:
        for v in np.asarray(a, dtype=object).flat:
            if isinstance(v, Fp):
                if p is None:
                    p = v.p
                elif p != v.p:
                    raise FieldMismatchError(f"F_{p} and F_{v.p} entries mixed")
    return QQ if p is None else Field(p, allow_small_char=True)


def coerce(a, field=None):
    """Object array with every entry converted into `field` (detected if None)."""
    a = np.asarray(a, dtype=object)
    if field is None:
        field = detect_field(a)
    out = np.empty(a.shape, dtype=object)
    for idx, v in np.ndenumerate(a):
        out[idx] = field(v)
    return out


def zeros(shape, field):
    out = np.empty(shape, dtype=object)
    out.fill(field.zero)
    return out


def identity(n, field):
    m = zeros((n, n), field)
    for i in range(n):
        m[i, i] = field.one
    return m


def basis_vector(n, i, field):
    v = zeros(n, field)
    v[i] = field.one
    return v


def is_zero_array(a):
    return all(v == 0 for v in np.asarray(a, dtype=object).flat)


def _rref_mod_p(m, p):
    """Vectorised Gauss-Jordan on an int64 array with entries in [0, p)."""
    m = m.copy()
    rows, cols = m.shape
    r = 0
    pivots = []
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(m[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + nz[0]
        if piv != r:
            m[[r, piv]] = m[[piv, r]]
        m[r] = (m[r] * pow(int(m[r, c]), -1, p)) % p
        col = m[:, c].copy()
        col[r] = 0
        hit = np.nonzero(col)[0]
        if hit.size:
            m[hit] = (m[hit] - np.outer(col[hit], m[r])) % p
        pivots.append(c)
        r += 1
    return m, pivots


def rref(m, field=None):
    """Reduced row echelon form and pivot columns."""
    m = coerce(m, field)
    if m.ndim != 2:
        raise DimensionError("rref needs a 2-d array")
    if field is None:
        field = detect_field(m)
    if not field.is_rational and field.p < 2**20:
        ints = np.array([[v.v for v in row] for row in m], dtype=np.int64).reshape(m.shape)
        red, pivots = _rref_mod_p(ints, field.p)
        return np.vectorize(field, otypes=[object])(red).reshape(m.shape), pivots
    rows, cols = m.shape
    r = 0
    pivots = []
    for c in range(cols):
        if r == rows:
            break
        piv = next((i for i in range(r, rows) if m[i, c] != 0), None)
        if piv is None:
            continue
        if piv != r:
            m[[r, piv]] = m[[piv, r]]
        m[r] = m[r] / m[r, c]
        for i in range(rows):
            if i != r and m[i, c] != 0:
                m[i] = m[i] - m[i, c] * m[r]
        pivots.append(c)
        r += 1
    return m, pivots


def rank(m, field=None):
    m = np.asarray(m, dtype=object)
    if m.size == 0:
        return 0
    return len(rref(m, field)[1])


def kernel_basis(m, field=None):
    """Basis of {x : m x = 0}, one vector per free column (free entry set to 1)."""
    m = np.asarray(m, dtype=object)
    if field is None:
        field = detect_field(m)
    ncols = m.shape[1]
    if m.shape[0] == 0:
        return [basis_vector(ncols, j, field) for j in range(ncols)]
    r, pivots = rref(m, field)
    free = [j for j in range(ncols) if j not in pivots]
    basis = []
    for f in free:
        v = zeros(ncols, field)
        v[f] = field.one
        for row, pc in enumerate(pivots):
            v[pc] = -r[row, f]
        basis.append(v)
    return basis


def invert(m, field=None):
    m = np.asarray(m, dtype=object)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionError(f"cannot invert a {m.shape} array")
    if field is None:
        field = detect_field(m)
    n = m.shape[0]
    aug = np.concatenate([coerce(m, field), identity(n, field)], axis=1)
    r, pivots = rref(aug, field)
    if pivots[:n] != list(range(n)):
        raise SingularMatrixError("matrix is singular")
    return r[:, n:]


def solve(m, b, field=None):
    """One solution x of m x = b (free variables set to 0); raises if inconsistent."""
    m = np.asarray(m, dtype=object)
    b = np.asarray(b, dtype=object)
    if field is None:
        field = detect_field(m, b)
    n = m.shape[1]
    aug = np.concatenate([coerce(m, field), coerce(b.reshape(-1, 1), field)], axis=1)
    r, pivots = rref(aug, field)
    if n in pivots:
        raise SingularMatrixError("system is inconsistent")
    x = zeros(n, field)
    for row, pc in enumerate(pivots):
        x[pc] = r[row, n]
    return x


def det(m):
    """Determinant by elimination."""
    m = np.asarray(m, dtype=object)
    field = detect_field(m)
    a = coerce(m, field)
    n = a.shape[0]
    det = field.one
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i, c] != 0), None)
        if piv is None:
            return field.zero
        if piv != c:
            a[[c, piv]] = a[[piv, c]]
            det = -det
        det = det * a[c, c]
        for i in range(c + 1, n):
            if a[i, c] != 0:
                a[i] = a[i] - (a[i, c] / a[c, c]) * a[c]
    return det
