"""Representations of Jacobi-Jordan algebras, birepresentations of left pre-JJ
algebras, semidirect and bicrossed products.

rho[i] is the matrix of rho(e_i) acting on V (columns = images).
"""
from dataclasses import dataclass

import numpy as np

from .algebras import (FDAlgebra, check_structure, is_algebra_morphism, require, sub_adjacent,
                       symmetrize, tensor_check)
from .errors import Check, PASS, DimensionError, InvalidRepresentation, PreconditionError, all_of
from .linalg import coerce, zeros


def _actions(alg, mats, v_dim):
    mats = np.asarray(mats, dtype=object)
    if mats.size == 0:
        mats = zeros((alg.dim, v_dim, v_dim), alg.field)
    mats = coerce(mats, alg.field)
    if mats.shape != (alg.dim, v_dim, v_dim):
        raise DimensionError(f"action tensor of shape {mats.shape}, expected {(alg.dim, v_dim, v_dim)}")
    return mats


@dataclass(frozen=True, eq=False)
class Representation:
    alg: FDAlgebra
    rho: np.ndarray
    v_dim: int = None
    species = "jj"

    def __post_init__(self):
        if self.v_dim is None:
            object.__setattr__(self, "v_dim", np.asarray(self.rho, dtype=object).shape[-1])
        object.__setattr__(self, "rho", _actions(self.alg, self.rho, self.v_dim))

    @property
    def mu(self):
        return self.rho

    def action(self, x):
        return np.einsum("i,iab->ab", self.alg.vector(x), self.rho)

    def __eq__(self, other):
        return (type(other) is Representation and self.alg == other.alg
                and self.v_dim == other.v_dim and bool(np.all(self.rho == other.rho)))


@dataclass(frozen=True, eq=False)
class BiRepresentation:
    alg: FDAlgebra
    rho: np.ndarray
    mu: np.ndarray
    v_dim: int = None
    species = "prejj"

    def __post_init__(self):
        if self.v_dim is None:
            object.__setattr__(self, "v_dim", np.asarray(self.rho, dtype=object).shape[-1])
        object.__setattr__(self, "rho", _actions(self.alg, self.rho, self.v_dim))
        object.__setattr__(self, "mu", _actions(self.alg, self.mu, self.v_dim))

    def action(self, x):
        return np.einsum("i,iab->ab", self.alg.vector(x), self.rho)

    def right_action(self, x):
        return np.einsum("i,iab->ab", self.alg.vector(x), self.mu)

    def __eq__(self, other):
        return (type(other) is BiRepresentation and self.alg == other.alg
                and self.v_dim == other.v_dim and bool(np.all(self.rho == other.rho))
                and bool(np.all(self.mu == other.mu)))


def species_of(rep):
    return rep.species


def _anticommutator_defect(c, rho):
    """E[i,j] = rho(e_i * e_j) + rho_i rho_j + rho_j rho_i."""
    lhs = np.einsum("ijm,mab->ijab", c, rho)
    prod = np.einsum("iab,jbc->ijac", rho, rho)
    return lhs + prod + np.einsum("jiac->ijac", prod)


def is_representation(r):
    """rho(x*y) = -rho(x)rho(y) - rho(y)rho(x) on basis pairs."""
    return tensor_check(_anticommutator_defect(r.alg.c, r.rho), 2, "representation identity")


def is_birepresentation(r):
    c = r.alg.c
    star = c + np.einsum("jik->ijk", c)
    first = tensor_check(_anticommutator_defect(star, r.rho), 2,
                         "rho(x*y) = -rho(x)rho(y) - rho(y)rho(x)")
    if not first:
        return first
    rho, mu = r.rho, r.mu
    # mu(y)mu(x) + mu(x.y) + mu(y)rho(x) + rho(x)mu(y), with x = e_i, y = e_j
    defect = (np.einsum("jab,ibc->ijac", mu, mu) + np.einsum("ijm,mab->ijab", c, mu)
              + np.einsum("jab,ibc->ijac", mu, rho) + np.einsum("iab,jbc->ijac", rho, mu))
    return tensor_check(defect, 2, "mu(y)mu(x) + mu(x.y) = -mu(y)rho(x) - rho(x)mu(y)")


def is_valid(rep):
    return is_representation(rep) if rep.species == "jj" else is_birepresentation(rep)


def regular_representation(alg, species="jj"):
    if species == "jj":
        require(check_structure(alg, "jacobi_jordan"), PreconditionError, "not Jacobi-Jordan")
        return Representation(alg, np.einsum("ijk->ikj", alg.c), alg.dim)
    require(check_structure(alg, "left_prejj"), PreconditionError, "not left pre-Jacobi-Jordan")
    return BiRepresentation(alg, np.einsum("ijk->ikj", alg.c), np.einsum("jik->ikj", alg.c), alg.dim)


def zero_representation(alg, v_dim, species="jj"):
    z = zeros((alg.dim, v_dim, v_dim), alg.field)
    return Representation(alg, z, v_dim) if species == "jj" else BiRepresentation(alg, z, z, v_dim)


def pullback_representation(f, a, b):
    """rho(x) y := f(x) . y on the space of b, for a morphism f: a -> b."""
    f = coerce(f, a.field)
    require(is_algebra_morphism(f, a, b), PreconditionError, "not an algebra morphism")
    rho = np.einsum("mi,mkj->ijk", f, b.c)
    return Representation(a, rho, b.dim)


def dual_representation(r):
    require(is_representation(r), InvalidRepresentation, "dual of an invalid representation")
    return Representation(r.alg, np.einsum("iab->iba", r.rho), r.v_dim)


def sum_representation(r):
    """(V, rho + mu) as a representation of the sub-adjacent algebra."""
    require(is_birepresentation(r), InvalidRepresentation, "invalid birepresentation")
    return Representation(sub_adjacent(r.alg), r.rho + r.mu, r.v_dim)


def semidirect_product(alg, rep):
    """A (+) V with (x+u)(y+v) = xy + rho(x)v + mu(y)u (mu = rho for JJ). Validity not required."""
    n, m = alg.dim, rep.v_dim
    d = n + m
    c = zeros((d, d, d), alg.field)
    c[:n, :n, :n] = alg.c
    # e_i * f_b = rho(e_i) f_b ; f_a * e_j = mu(e_j) f_a
    c[:n, n:, n:] = np.einsum("iab->iba", rep.rho)
    c[n:, :n, n:] = np.einsum("jab->bja", rep.mu)
    labels = alg.labels + tuple(f"v{k + 1}" for k in range(m))
    return FDAlgebra(d, alg.field, c, labels=labels, name=f"{alg.name}x|V" if alg.name else "")


def extended_representation(alg, rep):
    """Action of alg on A (+) V: regular part on A, rep on V."""
    require(is_valid(rep), InvalidRepresentation, "invalid representation")
    n, m = alg.dim, rep.v_dim
    rho = zeros((n, n + m, n + m), alg.field)
    rho[:, :n, :n] = np.einsum("ijk->ikj", alg.c)
    rho[:, n:, n:] = rep.rho
    if rep.species == "jj":
        return Representation(alg, rho, n + m)
    mu = zeros((n, n + m, n + m), alg.field)
    mu[:, :n, :n] = np.einsum("jik->ikj", alg.c)
    mu[:, n:, n:] = rep.mu
    return BiRepresentation(alg, rho, mu, n + m)


# -- matched pairs ------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class MatchedPairData:
    """Two algebras acting on each other. For JJ, mu1/mu2 are left as None."""

    a1: FDAlgebra
    a2: FDAlgebra
    rho1: np.ndarray   # a1 acting on a2, shape (dim a1, dim a2, dim a2)
    rho2: np.ndarray   # a2 acting on a1
    mu1: np.ndarray = None
    mu2: np.ndarray = None

    def __post_init__(self):
        if self.a1.field != self.a2.field:
            raise DimensionError("matched pair over different fields")
        object.__setattr__(self, "rho1", _actions(self.a1, self.rho1, self.a2.dim))
        object.__setattr__(self, "rho2", _actions(self.a2, self.rho2, self.a1.dim))
        if (self.mu1 is None) != (self.mu2 is None):
            raise DimensionError("give both mu1 and mu2 or neither")
        if self.mu1 is not None:
            object.__setattr__(self, "mu1", _actions(self.a1, self.mu1, self.a2.dim))
            object.__setattr__(self, "mu2", _actions(self.a2, self.mu2, self.a1.dim))

    @property
    def species(self):
        return "jj" if self.mu1 is None else "prejj"

    def rep1(self):
        if self.species == "jj":
            return Representation(self.a1, self.rho1, self.a2.dim)
        return BiRepresentation(self.a1, self.rho1, self.mu1, self.a2.dim)

    def rep2(self):
        if self.species == "jj":
            return Representation(self.a2, self.rho2, self.a1.dim)
        return BiRepresentation(self.a2, self.rho2, self.mu2, self.a1.dim)


def _act(t, x, v):
    """(sum_i x_i t[i]) v."""
    return np.einsum("i,iab,b->a", x, t, v)


def _mul(c, x, y):
    return np.einsum("i,j,ijk->k", x, y, c)


def _pairwise(n1, n2, fn, condition):
    """Run fn(i, j) over basis pairs; report the first nonzero result."""
    for i in range(n1):
        for j in range(n2):
            v = fn(i, j)
            if any(a != 0 for a in v):
                return Check(False, condition, (i, j), v)
    return PASS


def is_matched_pair(mp):
    """Action validity plus the displayed compatibility conditions.

    Invalid actions return a failing check (not an exception) so that the
    equivalence with the bicrossed product can be tested in both directions.
    """
    a1, a2 = mp.a1, mp.a2
    for tag, alg in (("A1", a1), ("A2", a2)):
        kind = "jacobi_jordan" if mp.species == "jj" else "left_prejj"
        chk = check_structure(alg, kind)
        if not chk:
            return Check(False, f"{tag} structure: {chk.condition}", chk.witness, chk.value)
    for tag, rep in (("rho1", mp.rep1()), ("rho2", mp.rep2())):
        chk = is_valid(rep)
        if not chk:
            return Check(False, f"{tag} not a representation: {chk.condition}", chk.witness, chk.value)
    e1 = [a1.basis(i) for i in range(a1.dim)]
    e2 = [a2.basis(i) for i in range(a2.dim)]
    c1, c2 = a1.c, a2.c
    r1, r2 = mp.rho1, mp.rho2
    if mp.species == "jj":
        def mp1(x, a, b):
            return (_act(r1, x, _mul(c2, a, b)) + _mul(c2, _act(r1, x, a), b)
                    + _mul(c2, _act(r1, x, b), a) + _act(r1, _act(r2, a, x), b)
                    + _act(r1, _act(r2, b, x), a))

        def mp2(a, x, y):
            return (_act(r2, a, _mul(c1, x, y)) + _mul(c1, _act(r2, a, x), y)
                    + _mul(c1, _act(r2, a, y), x) + _act(r2, _act(r1, x, a), y)
                    + _act(r2, _act(r1, y, a), x))

        return all_of(
            _triples(e1, e2, e2, mp1, "rho1 compatibility with products in A2"),
            _triples(e2, e1, e1, mp2, "rho2 compatibility with products in A1"))
    m1, m2 = mp.mu1, mp.mu2
    s1 = c1 + np.einsum("jik->ijk", c1)
    s2 = c2 + np.einsum("jik->ijk", c2)

    def cond1(x, a, b):
        lhs = _act(r1, x, _mul(c2, a, b))
        rhs = (-_act(r1, _act(r2, a, x) + _act(m2, a, x), b)
               - _mul(c2, _act(r1, x, a) + _act(m1, x, a), b)
               - _act(m1, _act(m2, b, x), a) - _mul(c2, a, _act(r1, x, b)))
        return lhs - rhs

    def cond2(x, a, b):
        lhs = _act(m1, x, _mul(s2, a, b))
        rhs = (-_mul(c2, a, _act(m1, x, b)) - _mul(c2, b, _act(m1, x, a))
               - _act(m1, _act(r2, a, x), b) - _act(m1, _act(r2, b, x), a))
        return lhs - rhs

    def cond3(a, x, y):
        lhs = _act(r2, a, _mul(c1, x, y))
        rhs = (-_act(r2, _act(r1, x, a) + _act(m1, x, a), y)
               - _mul(c1, _act(r2, a, x) + _act(m2, a, x), y)
               - _act(m2, _act(m1, y, a), x) - _mul(c1, x, _act(r2, a, y)))
        return lhs - rhs

    def cond4(a, x, y):
        lhs = _act(m2, a, _mul(s1, x, y))
        rhs = (-_mul(c1, x, _act(m2, a, y)) - _mul(c1, y, _act(m2, a, x))
               - _act(m2, _act(r1, x, a), y) - _act(m2, _act(r1, y, a), x))
        return lhs - rhs

    return all_of(
        _triples(e1, e2, e2, cond1, "rho1 on products in A2"),
        _triples(e1, e2, e2, cond2, "mu1 on sub-adjacent products in A2"),
        _triples(e2, e1, e1, cond3, "rho2 on products in A1"),
        _triples(e2, e1, e1, cond4, "mu2 on sub-adjacent products in A1"))


def _triples(first, second, third, fn, condition):
    for i, x in enumerate(first):
        for j, a in enumerate(second):
            for k, b in enumerate(third):
                v = fn(x, a, b)
                if any(t != 0 for t in v):
                    return Check(False, condition, (i, j, k), v)
    return PASS


def bicrossed_product(mp):
    """Product on A1 (+) A2 from the two-sided actions (validity not required)."""
    a1, a2 = mp.a1, mp.a2
    n1, n2 = a1.dim, a2.dim
    mu1 = mp.rho1 if mp.species == "jj" else mp.mu1
    mu2 = mp.rho2 if mp.species == "jj" else mp.mu2
    n = n1 + n2
    c = zeros((n, n, n), a1.field)
    c[:n1, :n1, :n1] = a1.c
    c[n1:, n1:, n1:] = a2.c
    # x . b = mu2(b) x + rho1(x) b ; a . y = rho2(a) y + mu1(y) a
    c[:n1, n1:, :n1] = np.einsum("jab->bja", mu2)
    c[:n1, n1:, n1:] = np.einsum("iab->iba", mp.rho1)
    c[n1:, :n1, :n1] = np.einsum("iab->iba", mp.rho2)
    c[n1:, :n1, n1:] = np.einsum("jab->bja", mu1)
    labels = a1.labels + tuple(f"{x}'" for x in a2.labels)
    return FDAlgebra(n, a1.field, c, labels=labels)


def bicrossed_structure(mp):
    kind = "jacobi_jordan" if mp.species == "jj" else "left_prejj"
    return check_structure(bicrossed_product(mp), kind)


def matched_pair_subadjacent(mp):
    require(is_matched_pair(mp), PreconditionError, "not a matched pair")
    return MatchedPairData(symmetrize(mp.a1), symmetrize(mp.a2), mp.rho1 + mp.mu1, mp.rho2 + mp.mu2)
