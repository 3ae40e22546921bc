"""Zigzag cochain complexes of a relative Rota-Baxter operator.

A degree-n cochain is an array of shape (v,)*n + (a,): f[i1..in] = f(e_i1, ..., e_in)
in coordinates of A. Differentials are evaluated on a whole batch of cochains at
once (leading axis), so the matrix of d^n is d^n applied to the identity batch.

JJ:
    d f(u_1..u_{n+1}) = sum_i rho_T(u_i) f(..^u_i..) + sum_{i<j} f(u_i *_T u_j, rest)
    delta: the same with the second sum negated.
pre-JJ (u = u_1..u_n, w = u_{n+1}):
    d f = sum_i rho_T(u_i) f(..^u_i.., w) + sum_i mu_T(w) f(..^u_i.., u_i)
          + sum_i f(..^u_i.., u_i ._T w) + sum_{i<j} f(u_i *_T u_j, ..^u_i..^u_j.., w)
    delta: last two sums negated.
"""
from dataclasses import dataclass
import itertools
import string

import numpy as np

from .algebras import tensor_check
from .errors import ConstraintViolation, DegreeOverflow, PreconditionError, TheoremViolation
from .linalg import coerce, identity, kernel_basis, rank, zeros
from .relative_rb import induced_structures

_LETTERS = string.ascii_lowercase


@dataclass(frozen=True, eq=False)
class Cochain:
    degree: int
    coeffs: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "coeffs", np.asarray(self.coeffs, dtype=object))
        if self.coeffs.ndim != self.degree + 1:
            raise ValueError(f"degree {self.degree} cochain needs {self.degree + 1} axes")

    def __add__(self, other):
        return Cochain(self.degree, self.coeffs + other.coeffs)

    def __rmul__(self, k):
        return Cochain(self.degree, k * self.coeffs)

    def is_zero(self):
        return all(v == 0 for v in self.coeffs.flat)

    def flat(self):
        return self.coeffs.reshape(-1)


@dataclass(frozen=True, eq=False)
class ComplexContext:
    """Complex of (V, ._T) (or *_T) with coefficients in A via the induced actions."""

    rb: object                 # RelRBContext
    degree_cap: int = 4

    def __post_init__(self):
        ind = induced_structures(self.rb)
        object.__setattr__(self, "induced", ind)
        dot = ind.v_alg.c
        object.__setattr__(self, "dot", dot)
        # JJ: the induced product already is *_T; pre-JJ: symmetrise ._T
        star = dot if self.rb.species == "jj" else dot + np.einsum("jik->ijk", dot)
        object.__setattr__(self, "star", star)
        object.__setattr__(self, "rho_t", ind.a_rep.rho)
        object.__setattr__(self, "mu_t", ind.a_rep.mu)

    @property
    def species(self):
        return self.rb.species

    @property
    def field(self):
        return self.rb.field

    @property
    def a_dim(self):
        return self.rb.a_dim

    @property
    def v_dim(self):
        return self.rb.v_dim

    def shape(self, n):
        return (self.v_dim,) * n + (self.a_dim,)

    def cochain_dim(self, n):
        return self.v_dim ** n * self.a_dim

    def check_degree(self, n):
        if n < 0 or n > self.degree_cap:
            raise DegreeOverflow(f"degree {n} outside 0..{self.degree_cap}")


def _einsum_terms(cx, f, n, sign):
    """d or delta (sign = -1) applied to a batch f of shape (B,) + (v,)*n + (a,)."""
    out_shape = (f.shape[0],) + cx.shape(n + 1)
    out = zeros(out_shape, cx.field)
    k = _LETTERS[:n + 1]                     # output argument letters
    tgt = "Z" + k + "P"
    if n == 0:
        out += np.einsum("aPQ,ZQ->ZaP", cx.rho_t, f)
        if cx.species == "prejj":
            out += np.einsum("aPQ,ZQ->ZaP", cx.mu_t, f)
        return out
    if cx.species == "jj":
        for pos in range(n + 1):
            rest = k[:pos] + k[pos + 1:]
            out += np.einsum(f"{k[pos]}PQ,Z{rest}Q->{tgt}", cx.rho_t, f)
        for i, j in itertools.combinations(range(n + 1), 2):
            rest = "".join(k[s] for s in range(n + 1) if s not in (i, j))
            term = np.einsum(f"{k[i]}{k[j]}M,ZM{rest}P->{tgt}", cx.star, f)
            out = out + term if sign > 0 else out - term
        return out
    w = k[n]
    for pos in range(n):
        rest = k[:pos] + k[pos + 1:]
        out += np.einsum(f"{k[pos]}PQ,Z{rest}Q->{tgt}", cx.rho_t, f)
    for i in range(n):
        rest = k[:i] + k[i + 1:n]
        out += np.einsum(f"{w}PQ,Z{rest}{k[i]}Q->{tgt}", cx.mu_t, f)
    for i in range(n):
        rest = k[:i] + k[i + 1:n]
        term = np.einsum(f"Z{rest}MP,{k[i]}{w}M->{tgt}", f, cx.dot)
        out = out + term if sign > 0 else out - term
    for i, j in itertools.combinations(range(n), 2):
        rest = "".join(k[s] for s in range(n + 1) if s not in (i, j))
        term = np.einsum(f"{k[i]}{k[j]}M,ZM{rest}P->{tgt}", cx.star, f)
        out = out + term if sign > 0 else out - term
    return out


def _apply(cx, f, sign):
    cx.check_degree(f.degree)
    batch = coerce(f.coeffs, cx.field)[None]
    return Cochain(f.degree + 1, _einsum_terms(cx, batch, f.degree, sign)[0])


def differential_d(cx, f):
    if cx.species == "prejj" and f.degree == 0:
        _require_member(cx, f)
    return _apply(cx, f, +1)


def differential_delta(cx, f):
    _require_member(cx, f)
    return _apply(cx, f, -1)


def _identity_batch(cx, n):
    dim = cx.cochain_dim(n)
    return identity(dim, cx.field).reshape((dim,) + cx.shape(n))


def d_matrix(cx, n, sign=+1):
    """Matrix of d^n (or delta^n for sign=-1) from C^n to C^{n+1}; columns = images."""
    cx.check_degree(n)
    images = _einsum_terms(cx, _identity_batch(cx, n), n, sign)
    return images.reshape(images.shape[0], -1).T


def delta_matrix(cx, n):
    return d_matrix(cx, n, -1)


# -- the constrained spaces A^n -----------------------------------------------------------

def _antisymmetry_rows(cx, batch, n, positions):
    """f(.., x, y, ..) + f(.., y, x, ..) for adjacent slots s, s+1 with s in positions."""
    rows = []
    for s in positions:
        perm = list(range(batch.ndim))
        perm[s + 1], perm[s + 2] = perm[s + 2], perm[s + 1]
        sym = batch + batch.transpose(perm)
        rows.append(sym.reshape(sym.shape[0], -1))
    return rows


def _cyclic_rows(cx, batch, n):
    """sum over cyclic (u, v, w) of f(u *_T v, u_1..u_{n-2}, w ._T u_n)."""
    mids = _LETTERS[4:4 + n - 2]
    out_idx = "Z" + "uvw" + mids + "nP"
    total = None
    for a, b, c in (("u", "v", "w"), ("v", "w", "u"), ("w", "u", "v")):
        term = np.einsum(f"ZM{mids}NP,{a}{b}M,{c}nN->{out_idx}", batch, cx.star, cx.dot)
        total = term if total is None else total + term
    return [total.reshape(total.shape[0], -1)]


def _prejj_a0_rows(cx):
    """rho_T(u ._T v)x + rho_T(u)rho_T(v)x as a (rows, a) matrix."""
    m = (np.einsum("uvm,mPQ->uvPQ", cx.dot, cx.rho_t)
         + np.einsum("uPR,vRQ->uvPQ", cx.rho_t, cx.rho_t))
    return m.reshape(-1, cx.a_dim)


def constraint_matrix(cx, n):
    """Rows are linear functionals vanishing exactly on A^n (None if A^n = C^n)."""
    cx.check_degree(n)
    if n == 0:
        return _prejj_a0_rows(cx) if cx.species == "prejj" else None
    batch = _identity_batch(cx, n)
    if cx.species == "jj":
        rows = _antisymmetry_rows(cx, batch, n, range(n - 1))
    else:
        rows = _antisymmetry_rows(cx, batch, n, range(n - 2))
        if n >= 2:
            rows += _cyclic_rows(cx, batch, n)
    if not rows:
        return None
    return np.concatenate(rows, axis=1).T


def a_space_basis(cx, n):
    m = constraint_matrix(cx, n)
    dim = cx.cochain_dim(n)
    vecs = ([identity(dim, cx.field)[:, j] for j in range(dim)] if m is None
            else kernel_basis(m, cx.field))
    return [Cochain(n, v.reshape(cx.shape(n))) for v in vecs]


def _require_member(cx, f):
    m = constraint_matrix(cx, f.degree)
    if m is None:
        return
    r = m @ coerce(f.flat(), cx.field)
    hit = next((i for i, v in enumerate(r) if v != 0), None)
    if hit is not None:
        raise ConstraintViolation(f"cochain violates the A^{f.degree} constraint #{hit} (value {r[hit]})")


def in_a_space(cx, f):
    try:
        _require_member(cx, f)
        return True
    except ConstraintViolation:
        return False


def random_a_cochain(cx, n, rng, basis=None, bound=4):
    basis = a_space_basis(cx, n) if basis is None else basis
    out = zeros(cx.shape(n), cx.field)
    for b in basis:
        out = out + cx.field(int(rng.integers(-bound, bound + 1))) * b.coeffs
    return Cochain(n, out)


# -- cohomology ----------------------------------------------------------------------------

def _columns(vectors, length, field):
    if not vectors:
        return zeros((length, 0), field)
    return np.stack([coerce(v, field) for v in vectors], axis=1)


def cohomology_report(cx, k):
    """Dimensions of C^k, Z^k = ker d^k, B^k = delta^{k-1}(A^{k-1}) and H^k = Z^k / B^k."""
    cx.check_degree(k)
    dk = _einsum_terms(cx, _identity_batch(cx, k), k, +1)
    dk = dk.reshape(dk.shape[0], -1).T
    if cx.species == "prejj" and k == 0:
        c0 = [b.flat() for b in a_space_basis(cx, 0)]
        dom = _columns(c0, cx.a_dim, cx.field)
        c_dim = len(c0)
        z_dim = c_dim - rank(dk @ dom, cx.field) if c_dim else 0
    else:
        c_dim = cx.cochain_dim(k)
        z_dim = c_dim - rank(dk, cx.field)
    b_dim = 0
    a_dim_prev = 0
    if k >= 1:
        basis = a_space_basis(cx, k - 1)
        a_dim_prev = len(basis)
        if basis:
            dm = delta_matrix(cx, k - 1)
            img = dm @ _columns([b.flat() for b in basis], cx.cochain_dim(k - 1), cx.field)
            leak = dk @ img
            chk = tensor_check(leak.T, 1, "d o delta = 0")
            if not chk:
                raise TheoremViolation("image of delta not inside ker d", chk)
            b_dim = rank(img, cx.field)
    return {"degree": k, "species": cx.species, "dim_C": c_dim, "dim_A_prev": a_dim_prev,
            "dim_Z": z_dim, "dim_B": b_dim, "dim_H": z_dim - b_dim}


def cohomology_dimension(cx, k):
    return cohomology_report(cx, k)["dim_H"]


def coboundary_map(cx, x):
    """partial(x): V -> A, v -> d^0 x (v); columns are the images of the basis of V."""
    return _apply(cx, Cochain(0, coerce(x, cx.field)), +1).coeffs.T


# -- explicit closedness formulas (JJ) -------------------------------------------------------

def is_closed_explicit(cx, f):
    """Degree 0: L_x T - T rho(x) = 0. Degree 1: T(u)*f(v) + T(v)*f(u)
    - T(rho(f(u))v + rho(f(v))u) - f(rho(T(u))v + rho(T(v))u) = 0."""
    if cx.species != "jj":
        raise PreconditionError("explicit closedness formulas are stated for Jacobi-Jordan contexts")
    rb = cx.rb
    t, c, rho = rb.t, rb.alg.c, rb.rho
    fc = coerce(f.coeffs, cx.field)
    if f.degree == 0:
        lx = np.einsum("i,ijk->kj", fc, c)
        rx = np.einsum("i,iab->ab", fc, rho)
        return tensor_check((lx @ t - t @ rx).T, 1, "L_x T - T rho(x)")
    if f.degree == 1:
        fm = fc.T                                    # a x v matrix
        prod = np.einsum("pi,qj,pqk->ijk", t, fm, c)
        inner_f = np.einsum("pi,pbj->ijb", fm, rho) + np.einsum("qj,qbi->ijb", fm, rho)
        inner_t = np.einsum("pi,pbj->ijb", t, rho) + np.einsum("qj,qbi->ijb", t, rho)
        lhs = prod + np.einsum("jik->ijk", prod)
        val = lhs - np.einsum("ijb,kb->ijk", inner_f, t) - np.einsum("ijb,kb->ijk", inner_t, fm)
        return tensor_check(val, 2, "explicit 1-cochain closedness")
    raise PreconditionError("explicit formulas exist for degrees 0 and 1 only")
