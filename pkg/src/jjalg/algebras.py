"""Finite-dimensional algebras given by structure constants, and their identities.

Convention: e_i . e_j = sum_k c[i, j, k] e_k. Linear maps are object matrices
whose columns are the images of basis vectors, so f(x) = f @ x.
"""
from dataclasses import dataclass
import itertools

import numpy as np

from .errors import Check, PASS, DimensionError, NotJacobiJordan, NotPreJacobiJordan, PreconditionError
from .fields import QQ
from .linalg import coerce, zeros, basis_vector


STRUCTURES = ("commutative", "jacobi_jordan", "left_prejj", "right_prejj", "comm_assoc")


@dataclass(frozen=True, eq=False)
class FDAlgebra:
    dim: int
    field: object
    c: np.ndarray
    labels: tuple = None
    name: str = ""

    def __post_init__(self):
        c = np.asarray(self.c, dtype=object)
        if c.shape != (self.dim,) * 3:
            raise DimensionError(f"structure constants of shape {c.shape} for dim {self.dim}")
        object.__setattr__(self, "c", coerce(c, self.field))
        if self.labels is None:
            object.__setattr__(self, "labels", tuple(f"e{i + 1}" for i in range(self.dim)))
        elif len(self.labels) != self.dim:
            raise DimensionError("one label per basis vector")

    def __eq__(self, other):
        return (isinstance(other, FDAlgebra) and self.dim == other.dim
                and self.field == other.field and bool(np.all(self.c == other.c)))

    def __hash__(self):
        return hash((self.dim, self.field, tuple(self.c.flat)))

    def basis(self, i):
        return basis_vector(self.dim, i, self.field)

    def vector(self, coeffs):
        v = coerce(coeffs, self.field)
        if v.shape != (self.dim,):
            raise DimensionError(f"expected a vector of length {self.dim}, got {v.shape}")
        return v

    def matrix(self, rows):
        m = coerce(rows, self.field)
        if m.ndim != 2:
            raise DimensionError("expected a matrix")
        return m

    def fmt(self, v):
        return format_vector(v, self.labels)

    def __repr__(self):
        name = self.name or "FDAlgebra"
        return f"<{name} dim={self.dim} over {self.field}>"

    @classmethod
    def zero(cls, dim, field=QQ, name=None):
        return cls(dim, field, zeros((dim,) * 3, field), name=name or f"Z{dim}")

    @classmethod
    def from_table(cls, dim, field, table, name="", labels=None):
        """table maps 0-based (i, j) to a coefficient vector or a {k: coeff} dict."""
        c = zeros((dim,) * 3, field)
        for (i, j), val in table.items():
            if isinstance(val, dict):
                for k, a in val.items():
                    c[i, j, k] = field(a)
            else:
                c[i, j] = coerce(val, field)
        return cls(dim, field, c, labels=labels, name=name)

    @classmethod
    def from_product(cls, dim, field, product, name="", labels=None):
        """Tabulate a bilinear map given on basis vectors."""
        c = zeros((dim,) * 3, field)
        for i in range(dim):
            for j in range(dim):
                c[i, j] = coerce(product(basis_vector(dim, i, field), basis_vector(dim, j, field)), field)
        return cls(dim, field, c, labels=labels, name=name)


def format_vector(v, labels=None):
    v = np.asarray(v, dtype=object)
    if labels is None:
        labels = [f"e{i + 1}" for i in range(len(v))]
    terms = []
    for a, lab in zip(v, labels):
        if a == 0:
            continue
        s = str(a)
        terms.append(lab if s == "1" else f"-{lab}" if s == "-1" else f"{s}{lab}")
    return " + ".join(terms).replace("+ -", "- ") if terms else "0"


def multiply(alg, x, y):
    return np.einsum("i,j,ijk->k", alg.vector(x), alg.vector(y), alg.c)


def left_mult(alg, x):
    """Matrix of y -> x.y."""
    return np.einsum("i,ijk->kj", alg.vector(x), alg.c)


def right_mult(alg, x):
    """Matrix of y -> y.x."""
    return np.einsum("j,ijk->ki", alg.vector(x), alg.c)


def jacobian(alg, x, y, z):
    m = lambda a, b: multiply(alg, a, b)
    return m(m(x, y), z) + m(m(y, z), x) + m(m(z, x), y)


def anti_associator(alg, x, y, z):
    m = lambda a, b: multiply(alg, a, b)
    return m(m(x, y), z) + m(x, m(y, z))


# -- whole-tensor versions used by the checkers ---------------------------------

def first_failure(t, nargs):
    """First multi-index (lexicographic) over the leading `nargs` axes where t is nonzero."""
    t = np.asarray(t, dtype=object)
    for idx in np.ndindex(*t.shape[:nargs]):
        v = t[idx]
        if np.ndim(v) == 0:
            if v != 0:
                return idx, v
        elif any(a != 0 for a in np.asarray(v).flat):
            return idx, v
    return None


def tensor_check(t, nargs, condition, fmt=None):
    hit = first_failure(t, nargs)
    if hit is None:
        return PASS
    idx, v = hit
    value = fmt(v) if fmt is not None and np.ndim(v) == 1 else v
    return Check(False, condition, tuple(int(i) for i in idx), value)


def left_assoc_tensor(c):
    """P[i,j,k] = (e_i e_j) e_k."""
    return np.einsum("ijm,mkl->ijkl", c, c)


def right_assoc_tensor(c):
    """Q[i,j,k] = e_i (e_j e_k)."""
    return np.einsum("jkm,iml->ijkl", c, c)


def jacobian_tensor(c):
    p = left_assoc_tensor(c)
    return p + np.einsum("jkil->ijkl", p) + np.einsum("kijl->ijkl", p)


def anti_associator_tensor(c):
    return left_assoc_tensor(c) + right_assoc_tensor(c)


def check_structure(alg, kind):
    fmt = alg.fmt
    if kind == "commutative":
        return tensor_check(alg.c - np.einsum("jik->ijk", alg.c), 2, "commutativity", fmt)
    if kind == "jacobi_jordan":
        comm = check_structure(alg, "commutative")
        if not comm:
            return comm
        return tensor_check(jacobian_tensor(alg.c), 3, "Jacobi identity", fmt)
    if kind == "left_prejj":
        a = anti_associator_tensor(alg.c)
        return tensor_check(a + np.einsum("jikl->ijkl", a), 3,
                            "anti-associator skew-symmetry in (x, y)", fmt)
    if kind == "right_prejj":
        a = anti_associator_tensor(alg.c)
        return tensor_check(a + np.einsum("ikjl->ijkl", a), 3,
                            "anti-associator skew-symmetry in (y, z)", fmt)
    if kind == "comm_assoc":
        comm = check_structure(alg, "commutative")
        if not comm:
            return comm
        return tensor_check(left_assoc_tensor(alg.c) - right_assoc_tensor(alg.c), 3,
                            "associativity", fmt)
    raise ValueError(f"unknown structure {kind!r}; expected one of {STRUCTURES}")


def is_jacobi_jordan(alg):
    return check_structure(alg, "jacobi_jordan")


def is_left_prejj(alg):
    return check_structure(alg, "left_prejj")


def require(check, exc, message):
    if not check:
        raise exc(message, check)


def sub_adjacent(alg):
    """The symmetrised product x*y = x.y + y.x of a left pre-JJ algebra."""
    require(is_left_prejj(alg), NotPreJacobiJordan, "not a left pre-Jacobi-Jordan algebra")
    return symmetrize(alg)


def symmetrize(alg):
    name = f"{alg.name}^C" if alg.name else ""
    return FDAlgebra(alg.dim, alg.field, alg.c + np.einsum("jik->ijk", alg.c),
                     labels=alg.labels, name=name)


def tensor_product_jj(a, l):
    """(x (x) p) o (y (x) q) = (x*y) (x) (p.q); basis e_i (x) f_s at index i*dim(l) + s."""
    require(is_jacobi_jordan(a), NotJacobiJordan, "first factor is not Jacobi-Jordan")
    require(check_structure(l, "comm_assoc"), PreconditionError,
            "second factor is not commutative associative")
    if a.field != l.field:
        raise DimensionError("factors over different fields")
    n = a.dim * l.dim
    c = np.einsum("ijk,stu->isjtku", a.c, l.c).reshape(n, n, n)
    labels = tuple(f"{x}(x){y}" for x in a.labels for y in l.labels)
    return FDAlgebra(n, a.field, c, labels=labels, name=f"{a.name}(x){l.name}")


def is_algebra_morphism(f, a, b):
    """f(e_i . e_j) = f(e_i) . f(e_j) for all basis pairs; f: a -> b."""
    f = coerce(f, a.field)
    if f.shape != (b.dim, a.dim):
        raise DimensionError(f"map of shape {f.shape} is not {a.dim} -> {b.dim}")
    lhs = np.einsum("ijm,km->ijk", a.c, f)
    rhs = np.einsum("pi,qj,pqk->ijk", f, f, b.c)
    return tensor_check(lhs - rhs, 2, "morphism", b.fmt)


def is_rota_baxter_weight(alg, r, lam):
    """R(x)R(y) = R(R(x)y + xR(y) + lam xy) on basis pairs."""
    r = coerce(r, alg.field)
    lam = alg.field(lam)
    c = alg.c
    lhs = np.einsum("pi,qj,pqk->ijk", r, r, c)
    inner = np.einsum("pi,pjm->ijm", r, c) + np.einsum("qj,iqm->ijm", r, c) + lam * c
    rhs = np.einsum("ijm,km->ijk", inner, r)
    return tensor_check(lhs - rhs, 2, f"Rota-Baxter identity of weight {lam}", alg.fmt)


def direct_sum(a, b):
    """Product algebra a (+) b with no cross terms."""
    n = a.dim + b.dim
    c = zeros((n, n, n), a.field)
    c[:a.dim, :a.dim, :a.dim] = a.c
    c[a.dim:, a.dim:, a.dim:] = b.c
    return FDAlgebra(n, a.field, c, labels=a.labels + tuple(f"{x}'" for x in b.labels))


def random_vectors(field, dim, rng, count, bound=3):
    """Small random vectors; used by the multilinearity spot checks."""
    return [coerce(rng.integers(-bound, bound + 1, size=dim).tolist(), field) for _ in range(count)]


def basis_tuples(dim, arity):
    return itertools.product(range(dim), repeat=arity)
